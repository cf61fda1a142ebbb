//! Symplectic linear algebra over Pauli groups.
//!
//! All span and centralizer questions here are phase-blind: they act on the
//! binary `(x | z)` vectors, i.e. on the group modulo `<iI>`.

use crate::gf2::{self, BitVec, Echelon};
use crate::pauli::PauliOperator;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymplecticError {
    #[error("empty generator list")]
    Empty,
    #[error("operator {index} acts on {found} qubits, expected {expected}")]
    QubitCountMismatch { index: usize, expected: usize, found: usize },
    #[error("generator {index} is dependent on earlier generators")]
    Dependent { index: usize },
    #[error("operator {index} is not Hermitian (it squares to -I)")]
    NotHermitian { index: usize },
    #[error("no operator anticommutes with isotropic generator {index} alone")]
    NoDestabilizer { index: usize },
}

fn check_width(ops: &[PauliOperator], n: usize) -> Result<(), SymplecticError> {
    for (i, o) in ops.iter().enumerate() {
        if o.num_qubits() != n {
            return Err(SymplecticError::QubitCountMismatch {
                index: i,
                expected: n,
                found: o.num_qubits(),
            });
        }
    }
    Ok(())
}

/// Earliest-first maximal independent subset of `ops` (identity dropped).
pub fn independent_generators(ops: &[PauliOperator]) -> Result<Vec<PauliOperator>, SymplecticError> {
    let first = ops.first().ok_or(SymplecticError::Empty)?;
    let n = first.num_qubits();
    check_width(ops, n)?;
    let mut e = Echelon::new(2 * n);
    Ok(ops
        .iter()
        .filter(|o| e.insert(&o.to_symplectic()).is_ok())
        .cloned()
        .collect())
}

/// Independent generating list of a subgroup of the `n`-qubit Pauli group,
/// with a cached echelon form for membership tests.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    n: usize,
    generators: Vec<PauliOperator>,
    echelon: Echelon,
}

impl PartialEq for GeneratorSet {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.generators == other.generators
    }
}

impl GeneratorSet {
    pub fn empty(n: usize) -> Self {
        GeneratorSet { n, generators: Vec::new(), echelon: Echelon::new(2 * n) }
    }

    /// Requires the list to be independent.
    pub fn new(n: usize, ops: Vec<PauliOperator>) -> Result<Self, SymplecticError> {
        check_width(&ops, n)?;
        let mut echelon = Echelon::new(2 * n);
        for (i, o) in ops.iter().enumerate() {
            if echelon.insert(&o.to_symplectic()).is_err() {
                return Err(SymplecticError::Dependent { index: i });
            }
        }
        Ok(GeneratorSet { n, generators: ops, echelon })
    }

    /// Drops dependent operators (keeping the earliest).
    pub fn spanning(n: usize, ops: &[PauliOperator]) -> Result<Self, SymplecticError> {
        check_width(ops, n)?;
        let mut echelon = Echelon::new(2 * n);
        let generators = ops
            .iter()
            .filter(|o| echelon.insert(&o.to_symplectic()).is_ok())
            .cloned()
            .collect();
        Ok(GeneratorSet { n, generators, echelon })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    pub fn contains(&self, op: &PauliOperator) -> bool {
        self.echelon.contains(&op.to_symplectic())
    }

    /// Coefficients expressing `op` (up to phase) as a product of generators.
    pub fn express(&self, op: &PauliOperator) -> Option<Vec<usize>> {
        let (r, combo) = self.echelon.reduce(&op.to_symplectic());
        r.is_zero().then(|| combo.iter_ones().collect())
    }

    /// `true` iff `op` commutes with every generator.
    pub fn centralizes(&self, op: &PauliOperator) -> bool {
        self.generators.iter().all(|g| g.commutes(op))
    }

    /// Commutation bits of `op` against each generator.
    pub fn syndrome(&self, op: &PauliOperator) -> BitVec {
        BitVec::from_bools(&self.generators.iter().map(|g| g.anticommutes(op)).collect::<Vec<_>>())
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        (0..g.len()).all(|i| (i + 1..g.len()).all(|j| g[i].commutes(&g[j])))
    }

    /// Same span as another set (phase-blind).
    pub fn same_span(&self, other: &GeneratorSet) -> bool {
        self.n == other.n
            && self.len() == other.len()
            && other.generators.iter().all(|g| self.contains(g))
    }

    /// Generators of the centralizer of this set.
    pub fn centralizer(&self) -> Vec<PauliOperator> {
        symplectic_complement(self.n, &self.generators)
    }
}

/// Phase-blind membership of `op` in the span of `group`.
pub fn in_span(op: &PauliOperator, group: &GeneratorSet) -> bool {
    group.contains(op)
}

/// `true` iff `op` commutes with every generator of `group`.
pub fn in_centralizer(op: &PauliOperator, group: &GeneratorSet) -> bool {
    group.centralizes(op)
}

/// Basis of `{v : v commutes with every op}`, as Pauli operators.
pub fn symplectic_complement(n: usize, ops: &[PauliOperator]) -> Vec<PauliOperator> {
    let rows: Vec<BitVec> = ops.iter().map(|o| o.to_swapped()).collect();
    gf2::nullspace(&rows, 2 * n).iter().map(PauliOperator::from_symplectic).collect()
}

/// Finds an operator whose commutation bits against `ops` equal `target`.
pub fn solve_commutation(n: usize, ops: &[PauliOperator], target: &BitVec) -> Option<PauliOperator> {
    let rows: Vec<BitVec> = ops.iter().map(|o| o.to_swapped()).collect();
    gf2::solve(&rows, target, 2 * n).map(|v| PauliOperator::from_symplectic(&v))
}

/// Product of two operators made Hermitian; used wherever generators are
/// only meaningful up to phase.
pub fn herm_mul(a: &PauliOperator, b: &PauliOperator) -> PauliOperator {
    a.mul(b).hermitian()
}

/// Result of symplectic Gram-Schmidt on an ordered generator list.
///
/// `generators[i]` is the cleaned version of input `i`, so roles can be
/// mapped back to input positions. `pairs` holds `(first, partner)`
/// positions in discovery order; `first` is the earlier of the two in the
/// input. `isotropic` holds the remaining positions in input order.
#[derive(Clone, Debug, PartialEq)]
pub struct SymplecticDecomposition {
    pub generators: Vec<PauliOperator>,
    pub pairs: Vec<(usize, usize)>,
    pub isotropic: Vec<usize>,
}

impl SymplecticDecomposition {
    pub fn num_pairs(&self) -> usize {
        self.pairs.len()
    }

    pub fn num_isotropic(&self) -> usize {
        self.isotropic.len()
    }

    pub fn pair_ops(&self) -> Vec<(PauliOperator, PauliOperator)> {
        self.pairs
            .iter()
            .map(|&(a, b)| (self.generators[a].clone(), self.generators[b].clone()))
            .collect()
    }

    pub fn isotropic_ops(&self) -> Vec<PauliOperator> {
        self.isotropic.iter().map(|&i| self.generators[i].clone()).collect()
    }
}

/// Symplectic Gram-Schmidt. Generators are scanned in order; each one takes
/// the first later generator it anticommutes with as partner, and every
/// other remaining generator is multiplied by pair members until it commutes
/// with both. Generators left without a partner are isotropic.
pub fn decompose(ops: &[PauliOperator]) -> Result<SymplecticDecomposition, SymplecticError> {
    let first = ops.first().ok_or(SymplecticError::Empty)?;
    let n = first.num_qubits();
    check_width(ops, n)?;
    let mut e = Echelon::new(2 * n);
    for (i, o) in ops.iter().enumerate() {
        if e.insert(&o.to_symplectic()).is_err() {
            return Err(SymplecticError::Dependent { index: i });
        }
    }
    let mut gens: Vec<PauliOperator> = ops.to_vec();
    let mut remaining: Vec<usize> = (0..ops.len()).collect();
    let mut pairs = Vec::new();
    let mut isotropic = Vec::new();
    while !remaining.is_empty() {
        let a = remaining.remove(0);
        let partner = remaining.iter().position(|&j| gens[a].anticommutes(&gens[j]));
        match partner {
            None => isotropic.push(a),
            Some(pos) => {
                let b = remaining.remove(pos);
                let (ga, gb) = (gens[a].clone(), gens[b].clone());
                for &r in &remaining {
                    let with_b = gens[r].anticommutes(&gb);
                    let with_a = gens[r].anticommutes(&ga);
                    if with_b {
                        gens[r] = herm_mul(&gens[r], &ga);
                    }
                    if with_a {
                        gens[r] = herm_mul(&gens[r], &gb);
                    }
                }
                pairs.push((a, b));
            }
        }
    }
    isotropic.sort_unstable();
    Ok(SymplecticDecomposition { generators: gens, pairs, isotropic })
}

/// For each isotropic generator, an operator that anticommutes with it and
/// commutes with every other generator of the decomposition (pair members
/// included). Free variables of the linear solve are set to zero.
pub fn destabilizers(dec: &SymplecticDecomposition) -> Result<Vec<PauliOperator>, SymplecticError> {
    let Some(first) = dec.generators.first() else {
        return Ok(Vec::new());
    };
    let n = first.num_qubits();
    let m = dec.generators.len();
    dec.isotropic
        .iter()
        .map(|&j| {
            let target = BitVec::unit(m, j);
            solve_commutation(n, &dec.generators, &target)
                .ok_or(SymplecticError::NoDestabilizer { index: j })
        })
        .collect()
}

/// If the span of a commuting list contains `-I` (or `±iI`), returns the
/// positions of a subset whose product is that scalar, or a single
/// non-Hermitian generator.
pub fn nontrivial_scalar_witness(ops: &[PauliOperator]) -> Option<Vec<usize>> {
    if let Some(i) = ops.iter().position(|o| !o.is_hermitian()) {
        return Some(vec![i]);
    }
    let n = ops.first()?.num_qubits();
    let mut e = Echelon::new(2 * n);
    let mut kept = Vec::new();
    for (i, o) in ops.iter().enumerate() {
        match e.insert(&o.to_symplectic()) {
            Ok(()) => kept.push(i),
            Err(combo) => {
                let mut idx: Vec<usize> = combo.iter_ones().map(|c| kept[c]).collect();
                idx.push(i);
                let prod = idx
                    .iter()
                    .fold(PauliOperator::identity(n), |acc, &k| acc.mul(&ops[k]));
                if prod.phase() != 0 {
                    return Some(idx);
                }
            }
        }
    }
    None
}

/// Commutation matrix `M[i][j] = 1` iff `a[i]` anticommutes with `b[j]`.
pub fn commutation_matrix(a: &[PauliOperator], b: &[PauliOperator]) -> Vec<Vec<u8>> {
    a.iter()
        .map(|x| b.iter().map(|y| x.anticommutes(y) as u8).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::p;

    #[test]
    fn decomposes_six_qubit_example() {
        let h: Vec<_> = ["ZIIIII", "XIIIII", "IZIIII", "IXIIII", "IIZIII", "IIIZII"]
            .iter()
            .map(|s| p(s))
            .collect();
        let d = decompose(&h).unwrap();
        assert_eq!(d.pairs, vec![(0, 1), (2, 3)]);
        assert_eq!(d.isotropic, vec![4, 5]);
        assert_eq!(d.generators, h);
        let ds = destabilizers(&d).unwrap();
        assert_eq!(ds, vec![p("IIXIII"), p("IIIXII")]);
    }

    #[test]
    fn decomposition_cleans_later_generators() {
        let h = vec![p("XX"), p("ZI"), p("IZ")];
        let d = decompose(&h).unwrap();
        assert_eq!(d.pairs.len(), 1);
        assert_eq!(d.isotropic.len(), 1);
        let iso = &d.generators[d.isotropic[0]];
        assert!(iso.commutes(&d.generators[0]) && iso.commutes(&d.generators[1]));
    }

    #[test]
    fn isotropic_z_gives_x_destabilizers() {
        let h = vec![p("ZII"), p("IZI"), p("IIZ")];
        let d = decompose(&h).unwrap();
        assert_eq!(destabilizers(&d).unwrap(), vec![p("XII"), p("IXI"), p("IIX")]);
    }

    #[test]
    fn dependent_inputs_are_rejected() {
        let h = vec![p("XX"), p("ZZ"), p("YY")];
        assert_eq!(decompose(&h), Err(SymplecticError::Dependent { index: 2 }));
        assert_eq!(independent_generators(&h).unwrap().len(), 2);
        assert_eq!(independent_generators(&[]), Err(SymplecticError::Empty));
    }

    #[test]
    fn scalar_witness_detects_minus_identity() {
        assert!(nontrivial_scalar_witness(&[p("XX"), p("ZZ")]).is_none());
        let w = nontrivial_scalar_witness(&[p("XX"), p("ZZ"), p("YY")]).unwrap();
        assert_eq!(w, vec![0, 1, 2]);
        assert!(nontrivial_scalar_witness(&[p("XX"), p("ZZ"), p("-YY")]).is_none());
        assert_eq!(nontrivial_scalar_witness(&[p("iZ")]), Some(vec![0]));
    }

    #[test]
    fn complement_commutes_and_has_right_dimension() {
        let ops = vec![p("XXI"), p("IZZ")];
        let c = symplectic_complement(3, &ops);
        assert_eq!(c.len(), 4);
        for v in &c {
            assert!(ops.iter().all(|o| o.commutes(v)));
        }
    }
}
