//! Classical/quantum structure of codes with no gauge qubits.
//!
//! The quantum stabilizer is `S_Q = Z(<T0>) ∩ H`. A split of `H` into quantum
//! and classical generators is extracted by a single pass over `H` that pairs
//! each classical generator with one transversal generator; the code is
//! representable in classical/quantum form iff the coset set is a group and
//! every classical generator commutes with the center of `S_Q`.

use crate::code::{CodeError, EaoaqecCode};
use crate::correct::{self, CorrectionError, DistanceMode};
use crate::gf2::{self, BitVec};
use crate::pauli::PauliOperator;
use crate::search::{self, BranchTag, Strategy, TargetSet};
use crate::symplectic::{decompose, herm_mul, independent_generators, GeneratorSet, SymplecticError};
use serde::Serialize;
use std::collections::HashSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EacqError {
    #[error("code has r = {0} gauge pairs; this analysis needs a trivial gauge group")]
    GaugeNotTrivial(usize),
    #[error("split invariant violated: {0}")]
    Invariant(&'static str),
    #[error(transparent)]
    Symplectic(#[from] SymplecticError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Correction(#[from] CorrectionError),
}

/// Quantum and classical generators of `H` plus the transversal generators
/// matched to the classical ones (`classical[i]` anticommutes with
/// `transversal[i]` and with no other).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EacqSplit {
    pub quantum: Vec<PauliOperator>,
    pub classical: Vec<PauliOperator>,
    pub transversal: Vec<PauliOperator>,
}

impl EacqSplit {
    /// Checks the three structural properties of a split of `h`.
    pub fn check(&self, h: &GeneratorSet) -> Result<(), EacqError> {
        let n = h.num_qubits();
        let mut all = self.quantum.clone();
        all.extend(self.classical.iter().cloned());
        let joint = GeneratorSet::spanning(n, &all)?;
        if joint.len() != all.len() || !joint.same_span(h) {
            return Err(EacqError::Invariant("quantum and classical generators must split H"));
        }
        if self.quantum.iter().any(|q| self.transversal.iter().any(|t| q.anticommutes(t))) {
            return Err(EacqError::Invariant("quantum generators must commute with transversal generators"));
        }
        for (i, c) in self.classical.iter().enumerate() {
            for (j, t) in self.transversal.iter().enumerate() {
                if c.anticommutes(t) != (i == j) {
                    return Err(EacqError::Invariant(
                        "each classical generator must anticommute with exactly its own transversal generator",
                    ));
                }
            }
        }
        Ok(())
    }
}

fn require_no_gauge(code: &EaoaqecCode) -> Result<(), EacqError> {
    match code.gauge_pairs().len() {
        0 => Ok(()),
        r => Err(EacqError::GaugeNotTrivial(r)),
    }
}

/// Generators of `Z(<T0^(n)>) ∩ H`.
pub fn quantum_stabilizer_subgroup(code: &EaoaqecCode) -> Result<Vec<PauliOperator>, EacqError> {
    require_no_gauge(code)?;
    Ok(stabilizer_commuting_with(code.h_group().generators(), &code.transversal_n()))
}

/// Elements of `span(h)` commuting with every `t`, as products of `h`.
pub fn stabilizer_commuting_with(h: &[PauliOperator], t: &[PauliOperator]) -> Vec<PauliOperator> {
    let m = h.len();
    if m == 0 {
        return Vec::new();
    }
    let n = h[0].num_qubits();
    let rows: Vec<BitVec> = t
        .iter()
        .map(|tj| BitVec::from_bools(&h.iter().map(|hi| hi.anticommutes(tj)).collect::<Vec<_>>()))
        .collect();
    gf2::nullspace(&rows, m)
        .iter()
        .map(|c| c.iter_ones().fold(PauliOperator::identity(n), |acc, i| herm_mul(&acc, &h[i])))
        .collect()
}

/// Single pass over `h`: a generator that anticommutes with a live transversal
/// generator becomes classical (claiming the first such transversal, which
/// then cleans the other live ones); otherwise it is cleaned against the
/// classical generators found so far and becomes quantum. The matched
/// transversal generators are finally back-substituted so the classical
/// commutation matrix is the identity. Transversal generators are only
/// independent modulo `Z(H)`; leftovers are dropped.
pub fn extract_split(h: &[PauliOperator], t: &[PauliOperator]) -> Result<EacqSplit, EacqError> {
    // representatives of the trivial coset (the identity or anything in Z(H)) carry no bit
    let nontrivial: Vec<PauliOperator> =
        t.iter().filter(|o| h.iter().any(|hi| hi.anticommutes(o))).cloned().collect();
    let mut live = if nontrivial.is_empty() { Vec::new() } else { independent_generators(&nontrivial)? };
    let mut quantum = Vec::new();
    let mut classical: Vec<PauliOperator> = Vec::new();
    let mut matched: Vec<PauliOperator> = Vec::new();
    for hi in h {
        if let Some(j) = live.iter().position(|tj: &PauliOperator| tj.anticommutes(hi)) {
            let tj = live.remove(j);
            for tp in live.iter_mut() {
                if tp.anticommutes(hi) {
                    *tp = herm_mul(tp, &tj);
                }
            }
            matched.push(tj);
            classical.push(hi.clone());
        } else {
            let mut g = hi.clone();
            for j in (0..matched.len()).rev() {
                if g.anticommutes(&matched[j]) {
                    g = herm_mul(&g, &classical[j]);
                }
            }
            quantum.push(g);
        }
    }
    // whatever is still live commutes with all of H: a product of the
    // matched cosets, so it adds nothing
    for k in (0..classical.len()).rev() {
        for j in 0..k {
            if matched[j].anticommutes(&classical[k]) {
                matched[j] = herm_mul(&matched[j], &matched[k]);
            }
        }
    }
    let split = EacqSplit { quantum, classical, transversal: matched };
    if let Some(first) = h.first() {
        let hs = GeneratorSet::spanning(first.num_qubits(), h)?;
        split.check(&hs)?;
    }
    Ok(split)
}

/// `true` iff the `Z(S)` cosets of the transversal are closed under products.
pub fn coset_set_is_group(code: &EaoaqecCode) -> bool {
    let s = code.s_group();
    let syn: Vec<BitVec> = code.transversal().iter().map(|t| s.syndrome(t)).collect();
    let set: HashSet<&BitVec> = syn.iter().collect();
    syn.iter().all(|a| syn.iter().all(|b| set.contains(&a.xor(b))))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum NotRepresentable {
    /// The transversal cosets are not closed under products.
    CosetSetNotGroup,
    /// A classical generator anticommutes with an element of the center of `S_Q`.
    ClassicalOutsideCenterCentralizer { classical: PauliOperator, center_element: PauliOperator },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Representability {
    pub representable: bool,
    pub failure: Option<NotRepresentable>,
    pub split: Option<EacqSplit>,
}

impl Representability {
    pub fn message(&self) -> &'static str {
        match &self.failure {
            None => "representable",
            Some(NotRepresentable::CosetSetNotGroup) => "not representable (coset set is not a group)",
            Some(NotRepresentable::ClassicalOutsideCenterCentralizer { .. }) => {
                "not representable (classical generators do not commute with the center of S_Q)"
            }
        }
    }
}

/// Full representability test. On success the returned split has its
/// classical generators moved into the centralizer of `S_Q`.
pub fn is_eacq_representable(code: &EaoaqecCode) -> Result<Representability, EacqError> {
    require_no_gauge(code)?;
    if !coset_set_is_group(code) {
        return Ok(Representability {
            representable: false,
            failure: Some(NotRepresentable::CosetSetNotGroup),
            split: None,
        });
    }
    let mut split = extract_split(code.h_group().generators(), &code.transversal_n())?;
    if !split.quantum.is_empty() {
        let dec = decompose(&split.quantum)?;
        let center = dec.isotropic_ops();
        for c in &split.classical {
            if let Some(z) = center.iter().find(|z| z.anticommutes(c)) {
                return Ok(Representability {
                    representable: false,
                    failure: Some(NotRepresentable::ClassicalOutsideCenterCentralizer {
                        classical: c.clone(),
                        center_element: z.clone(),
                    }),
                    split: Some(split),
                });
            }
        }
        for c in split.classical.iter_mut() {
            for (x, z) in dec.pair_ops() {
                let ax = c.anticommutes(&x);
                let az = c.anticommutes(&z);
                if ax {
                    *c = herm_mul(c, &z);
                }
                if az {
                    *c = herm_mul(c, &x);
                }
            }
        }
        split.check(code.h_group())?;
    }
    Ok(Representability { representable: true, failure: None, split: Some(split) })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SqBound {
    pub cutoff: usize,
    pub code_distance: Option<usize>,
    pub sq_distance: Option<usize>,
    /// `None` when either distance exceeded the cutoff.
    pub holds: Option<bool>,
}

/// Minimum weight of `Z(S_Q) \ <center of S_Q>`.
pub fn sq_distance(sq: &[PauliOperator], n: usize, cutoff: usize) -> Result<Option<usize>, EacqError> {
    let mut set = TargetSet::new(n);
    let cent = set.centralizer_of(sq).map_err(CorrectionError::from)?;
    let center = if sq.is_empty() { Vec::new() } else { decompose(sq)?.isotropic_ops() };
    let out = set.not_in_span(&center).map_err(CorrectionError::from)?;
    set.add_branch(BranchTag::CentralizerMinusGauge, vec![cent, out]);
    Ok(search::min_weight(&set, cutoff, Strategy::default()).weight)
}

/// Compares the code distance with that of the code defined by `S_Q` alone.
pub fn sq_distance_bound_check(code: &EaoaqecCode, cutoff: Option<usize>) -> Result<SqBound, EacqError> {
    let sq = quantum_stabilizer_subgroup(code)?;
    let cutoff = cutoff.unwrap_or(code.n());
    let dc = correct::distance(code, DistanceMode::Dressed, Some(cutoff))?.distance;
    let dq = sq_distance(&sq, code.n(), cutoff)?;
    let holds = match (dc, dq) {
        (Some(a), Some(b)) => Some(a >= b),
        (None, Some(_)) => Some(true),
        (Some(_), None) => Some(false),
        (None, None) => None,
    };
    Ok(SqBound { cutoff, code_distance: dc, sq_distance: dq, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::p;

    #[test]
    fn seven_qubit_split_from_updated_generators() {
        let s12 = p("ZZXYYXY");
        let s23 = p("IIZIZIZ");
        let s3 = p("IIXXXII");
        let t1 = p("ZIIZIIZ");
        let t2 = p("XIXXIXI");
        let split = extract_split(&[s12.clone(), s23.clone(), s3.clone()], &[p("IIIIIII"), t1, t2]).unwrap();
        assert_eq!(split.quantum, vec![s12]);
        assert_eq!(split.classical, vec![s23, s3]);
    }

    #[test]
    fn empty_transversal_makes_everything_quantum() {
        let h = vec![p("XX"), p("ZZ")];
        let split = extract_split(&h, &[p("II")]).unwrap();
        assert_eq!(split.quantum.len(), 2);
        assert!(split.classical.is_empty());
    }

    #[test]
    fn commuting_subgroup_kernel() {
        let h = vec![p("ZII"), p("IZI"), p("IIZ")];
        let sq = stabilizer_commuting_with(&h, &[p("XXI")]);
        let span = GeneratorSet::spanning(3, &sq).unwrap();
        assert_eq!(span.len(), 2);
        assert!(span.contains(&p("ZZI")) && span.contains(&p("IIZ")));
    }
}
