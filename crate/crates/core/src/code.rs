//! The code tuple: the `n`-qubit group `H`, its Abelian extension `S` on
//! `n + e` qubits, gauge pairs, logical pairs and the coset transversal.

use crate::pauli::{Pauli1, PauliOperator};
use crate::symplectic::{
    self, decompose, destabilizers, nontrivial_scalar_witness, GeneratorSet, SymplecticDecomposition,
    SymplecticError,
};
use crate::gf2::Echelon;
use serde::Serialize;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error(transparent)]
    Symplectic(#[from] SymplecticError),
    #[error("{what} {index} acts on {found} qubits, expected {expected}")]
    QubitCount { what: &'static str, index: usize, expected: usize, found: usize },
    #[error("generator {index} of H squares to -I, so the extension would contain -I")]
    NonHermitian { index: usize },
    #[error("{what} operators do not form symplectic pairs")]
    NotSymplectic { what: &'static str },
    #[error("stabilizer table has {found} qubits, fewer than n = {n}")]
    StabilizerTooNarrow { n: usize, found: usize },
    #[error("full transversal would have 2^{m} elements, above the limit 2^{limit}")]
    TransversalTooLarge { m: usize, limit: usize },
    #[error("cannot complete logical operators: {0}")]
    LogicalCompletion(String),
    #[error("missing {0}")]
    Missing(&'static str),
}

/// Abelian extension of `h`: each symplectic pair `j` gets one extra qubit
/// `n + j`; the earlier member of the pair is extended by `Z`, its partner by
/// `X`, and isotropic generators by `I`. Generators keep their input
/// positions (after Gram-Schmidt cleaning).
pub fn extend_to_abelian(
    h: &[PauliOperator],
) -> Result<(Vec<PauliOperator>, SymplecticDecomposition), CodeError> {
    if let Some(i) = h.iter().position(|o| !o.is_hermitian()) {
        return Err(CodeError::NonHermitian { index: i });
    }
    let dec = decompose(h)?;
    let e = dec.num_pairs();
    let mut ext: Vec<PauliOperator> = dec.generators.iter().map(|g| g.pad(e)).collect();
    let n = h[0].num_qubits();
    for (j, &(a, b)) in dec.pairs.iter().enumerate() {
        let mut za = ext[a].clone();
        za.set(n + j, Pauli1::Z);
        ext[a] = za;
        let mut xb = ext[b].clone();
        xb.set(n + j, Pauli1::X);
        ext[b] = xb;
    }
    Ok((ext, dec))
}

fn is_symplectic_pairing(ops: &[PauliOperator]) -> bool {
    if ops.len() % 2 != 0 {
        return false;
    }
    for i in 0..ops.len() {
        for j in i + 1..ops.len() {
            let partners = i / 2 == j / 2;
            if ops[i].anticommutes(&ops[j]) != partners {
                return false;
            }
        }
    }
    true
}

/// Groups a flat list into symplectic pairs. A list already laid out as
/// consecutive pairs is kept as is; otherwise it is re-paired by
/// Gram-Schmidt and rejected if anything isotropic remains.
pub fn pair_up(
    ops: &[PauliOperator],
    what: &'static str,
) -> Result<Vec<(PauliOperator, PauliOperator)>, CodeError> {
    if ops.is_empty() {
        return Ok(Vec::new());
    }
    if is_symplectic_pairing(ops) {
        return Ok(ops.chunks(2).map(|c| (c[0].clone(), c[1].clone())).collect());
    }
    let dec = decompose(ops)?;
    if dec.num_isotropic() > 0 {
        return Err(CodeError::NotSymplectic { what });
    }
    Ok(dec.pair_ops())
}

fn flatten(pairs: &[(PauliOperator, PauliOperator)]) -> Vec<PauliOperator> {
    pairs.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect()
}

/// Logical pairs completing `<H_I, G0>` to the centralizer of `H`.
pub fn complete_logicals(
    n: usize,
    h: &[PauliOperator],
    h_isotropic: &[PauliOperator],
    gauge: &[(PauliOperator, PauliOperator)],
) -> Result<Vec<(PauliOperator, PauliOperator)>, CodeError> {
    let centralizer = symplectic::symplectic_complement(n, h);
    let mut span = Echelon::new(2 * n);
    for o in h_isotropic.iter().chain(flatten(gauge).iter()) {
        let _ = span.insert(&o.to_symplectic());
    }
    let mut rest = Vec::new();
    for c in centralizer {
        if span.insert(&c.to_symplectic()).is_ok() {
            let mut v = c;
            for (gx, gz) in gauge {
                let ax = v.anticommutes(gx);
                let az = v.anticommutes(gz);
                if ax {
                    v = symplectic::herm_mul(&v, gz);
                }
                if az {
                    v = symplectic::herm_mul(&v, gx);
                }
            }
            rest.push(v);
        }
    }
    if rest.is_empty() {
        return Ok(Vec::new());
    }
    let dec = decompose(&rest)?;
    if dec.num_isotropic() > 0 {
        return Err(CodeError::LogicalCompletion(
            "centralizer modulo <H_I, G0> is not symplectic".into(),
        ));
    }
    Ok(dec.pair_ops())
}

/// `[[n, k; r, e, c_b]]` plus the isotropic count `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CodeParameters {
    pub n: usize,
    pub k: isize,
    pub r: usize,
    pub e: usize,
    pub c_b: usize,
    pub s: usize,
}

impl CodeParameters {
    pub fn with_distance(&self, d: &str) -> String {
        format!("[[{},{},{};{},{},{}]]", self.n, self.k, d, self.r, self.e, self.c_b)
    }
}

impl fmt::Display for CodeParameters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{};{},{},{}]]", self.n, self.k, self.r, self.e, self.c_b)
    }
}

/// One named validation check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

/// Assembles a code from possibly partial inputs.
#[derive(Clone, Debug, Default)]
pub struct CodeBuilder {
    name: Option<String>,
    n: Option<usize>,
    h: Option<Vec<PauliOperator>>,
    s: Option<Vec<PauliOperator>>,
    gauge: Vec<PauliOperator>,
    logical: Option<Vec<PauliOperator>>,
    transversal: Vec<PauliOperator>,
}

impl CodeBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn num_qubits(mut self, n: usize) -> Self {
        self.n = Some(n);
        self
    }

    pub fn h(mut self, h: Vec<PauliOperator>) -> Self {
        self.h = Some(h);
        self
    }

    pub fn s(mut self, s: Vec<PauliOperator>) -> Self {
        self.s = Some(s);
        self
    }

    /// Flat gauge list, `(G_X1, G_Z1, G_X2, ...)` or any symplectic list.
    pub fn gauge(mut self, g: Vec<PauliOperator>) -> Self {
        self.gauge = g;
        self
    }

    /// Flat logical list; computed from the rest of the code when absent.
    pub fn logical(mut self, l: Vec<PauliOperator>) -> Self {
        self.logical = Some(l);
        self
    }

    pub fn transversal(mut self, t: Vec<PauliOperator>) -> Self {
        self.transversal = t;
        self
    }

    pub fn build(self) -> Result<EaoaqecCode, CodeError> {
        let n = match (&self.n, &self.h, &self.s) {
            (Some(n), _, _) => *n,
            (None, Some(h), _) if !h.is_empty() => h[0].num_qubits(),
            _ => return Err(CodeError::Missing("qubit count n (give H or META n)")),
        };
        let (h, s) = match (self.h, self.s) {
            (h_in, Some(s)) if !s.is_empty() => {
                let total = s[0].num_qubits();
                for (i, o) in s.iter().enumerate() {
                    if o.num_qubits() != total {
                        return Err(CodeError::QubitCount {
                            what: "stabilizer",
                            index: i,
                            expected: total,
                            found: o.num_qubits(),
                        });
                    }
                }
                if total < n {
                    return Err(CodeError::StabilizerTooNarrow { n, found: total });
                }
                let h = h_in.unwrap_or_else(|| s.iter().map(|o| o.truncate(n)).collect());
                (h, s)
            }
            (Some(h), _) if !h.is_empty() => {
                let (s, _) = extend_to_abelian(&h)?;
                (h, s)
            }
            _ => (Vec::new(), Vec::new()),
        };
        for (i, o) in h.iter().enumerate() {
            if o.num_qubits() != n {
                return Err(CodeError::QubitCount { what: "H generator", index: i, expected: n, found: o.num_qubits() });
            }
        }
        let total = s.first().map(|o| o.num_qubits()).unwrap_or(n);
        let e = total - n;
        let h_set = GeneratorSet::new(n, h)?;
        let s_set = GeneratorSet::new(total, s)?;
        let widen = |ops: Vec<PauliOperator>, what: &'static str| -> Result<Vec<PauliOperator>, CodeError> {
            ops.into_iter()
                .enumerate()
                .map(|(i, o)| match o.num_qubits() {
                    q if q == total => Ok(o),
                    q if q == n => Ok(o.pad(e)),
                    q => Err(CodeError::QubitCount { what, index: i, expected: total, found: q }),
                })
                .collect()
        };
        let gauge = pair_up(&widen(self.gauge, "gauge operator")?, "gauge")?;
        let mut code = EaoaqecCode {
            name: self.name,
            n,
            e,
            h: h_set,
            s: s_set,
            gauge,
            logical: Vec::new(),
            transversal: Vec::new(),
            h_isotropic: Vec::new(),
        };
        code.h_isotropic = code.compute_h_isotropic()?;
        code.logical = match self.logical {
            Some(l) => pair_up(&widen(l, "logical operator")?, "logical")?,
            None => {
                let g_n: Vec<_> =
                    code.gauge.iter().map(|(a, b)| (a.truncate(n), b.truncate(n))).collect();
                complete_logicals(n, code.h.generators(), &code.h_isotropic, &g_n)?
                    .into_iter()
                    .map(|(a, b)| (a.pad(e), b.pad(e)))
                    .collect()
            }
        };
        code.transversal = normalise_transversal(widen(self.transversal, "transversal operator")?, total);
        Ok(code)
    }
}

/// Puts the identity first (inserting it if absent) and keeps the rest in order.
fn normalise_transversal(t: Vec<PauliOperator>, total: usize) -> Vec<PauliOperator> {
    let mut out = vec![PauliOperator::identity(total)];
    out.extend(t.into_iter().filter(|o| !o.is_identity()));
    out
}

/// Entanglement-assisted operator algebra code.
#[derive(Clone, Debug, PartialEq)]
pub struct EaoaqecCode {
    name: Option<String>,
    n: usize,
    e: usize,
    h: GeneratorSet,
    s: GeneratorSet,
    gauge: Vec<(PauliOperator, PauliOperator)>,
    logical: Vec<(PauliOperator, PauliOperator)>,
    transversal: Vec<PauliOperator>,
    h_isotropic: Vec<PauliOperator>,
}

/// The same code viewed as an operator algebra code on `n + e` qubits.
#[derive(Clone, Debug)]
pub struct OaqecCode {
    pub stabilizers: GeneratorSet,
    pub gauge: Vec<PauliOperator>,
    pub transversal: Vec<PauliOperator>,
}

impl EaoaqecCode {
    /// Assembles a code from already paired, full-width parts.
    pub fn from_parts(
        name: Option<String>,
        n: usize,
        h: Vec<PauliOperator>,
        s: Vec<PauliOperator>,
        gauge: Vec<(PauliOperator, PauliOperator)>,
        logical: Vec<(PauliOperator, PauliOperator)>,
        transversal: Vec<PauliOperator>,
    ) -> Result<Self, CodeError> {
        let total = s.first().map(|o| o.num_qubits()).unwrap_or(n);
        let mut code = EaoaqecCode {
            name,
            n,
            e: total - n,
            h: GeneratorSet::new(n, h)?,
            s: GeneratorSet::new(total, s)?,
            gauge,
            logical,
            transversal: normalise_transversal(transversal, total),
            h_isotropic: Vec::new(),
        };
        code.h_isotropic = code.compute_h_isotropic()?;
        Ok(code)
    }

    fn compute_h_isotropic(&self) -> Result<Vec<PauliOperator>, CodeError> {
        if self.h.is_empty() {
            return Ok(Vec::new());
        }
        Ok(decompose(self.h.generators())?.isotropic_ops())
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Same code with a different transversal list (identity kept first).
    pub fn with_transversal(&self, t: Vec<PauliOperator>) -> Result<Self, CodeError> {
        let total = self.total_qubits();
        let mut out = self.clone();
        let mut widened = Vec::new();
        for (i, o) in t.into_iter().enumerate() {
            widened.push(match o.num_qubits() {
                q if q == total => o,
                q if q == self.n => o.pad(self.e),
                q => {
                    return Err(CodeError::QubitCount {
                        what: "transversal operator",
                        index: i,
                        expected: total,
                        found: q,
                    })
                }
            });
        }
        out.transversal = normalise_transversal(widened, total);
        Ok(out)
    }

    /// Same code with the gauge group re-paired. The new pairs must be
    /// symplectic and span the same group as the old ones.
    pub fn with_gauge_pairs(&self, pairs: Vec<(PauliOperator, PauliOperator)>) -> Result<Self, CodeError> {
        let total = self.total_qubits();
        let flat = flatten(&pairs);
        for (i, o) in flat.iter().enumerate() {
            if o.num_qubits() != total {
                return Err(CodeError::QubitCount { what: "gauge operator", index: i, expected: total, found: o.num_qubits() });
            }
        }
        if !is_symplectic_pairing(&flat) {
            return Err(CodeError::NotSymplectic { what: "re-paired gauge" });
        }
        let same = match flat.len() == self.gauge.len() * 2 {
            false => false,
            true if flat.is_empty() => true,
            true => GeneratorSet::spanning(total, &self.gauge_flat())?
                .same_span(&GeneratorSet::spanning(total, &flat)?),
        };
        if !same {
            return Err(CodeError::NotSymplectic { what: "re-paired gauge (different group)" });
        }
        let mut out = self.clone();
        out.gauge = pairs;
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn total_qubits(&self) -> usize {
        self.n + self.e
    }

    pub fn h_group(&self) -> &GeneratorSet {
        &self.h
    }

    pub fn s_group(&self) -> &GeneratorSet {
        &self.s
    }

    /// `(G_X, G_Z)` pairs on `n + e` qubits.
    pub fn gauge_pairs(&self) -> &[(PauliOperator, PauliOperator)] {
        &self.gauge
    }

    pub fn gauge_flat(&self) -> Vec<PauliOperator> {
        flatten(&self.gauge)
    }

    pub fn logical_pairs(&self) -> &[(PauliOperator, PauliOperator)] {
        &self.logical
    }

    pub fn logical_flat(&self) -> Vec<PauliOperator> {
        flatten(&self.logical)
    }

    /// Transversal on `n + e` qubits, identity first.
    pub fn transversal(&self) -> &[PauliOperator] {
        &self.transversal
    }

    /// Isotropic generators of `H` (they span the center of `H`).
    pub fn h_isotropic(&self) -> &[PauliOperator] {
        &self.h_isotropic
    }

    pub fn gauge_n(&self) -> Vec<PauliOperator> {
        self.gauge_flat().iter().map(|o| o.truncate(self.n)).collect()
    }

    pub fn logical_n(&self) -> Vec<PauliOperator> {
        self.logical_flat().iter().map(|o| o.truncate(self.n)).collect()
    }

    pub fn transversal_n(&self) -> Vec<PauliOperator> {
        self.transversal.iter().map(|o| o.truncate(self.n)).collect()
    }

    pub fn h_decomposition(&self) -> Result<SymplecticDecomposition, CodeError> {
        Ok(decompose(self.h.generators())?)
    }

    pub fn parameters(&self) -> CodeParameters {
        let m = self.h.len();
        let s = if m == 0 { 0 } else { self.h_isotropic.len() };
        let e_pairs = (m - s) / 2;
        let r = self.gauge.len();
        CodeParameters {
            n: self.n,
            k: self.n as isize - e_pairs as isize - s as isize - r as isize,
            r,
            e: self.e,
            c_b: self.transversal.len(),
            s,
        }
    }

    /// True when the transversal is just the identity.
    pub fn is_subsystem_only(&self) -> bool {
        self.transversal.len() == 1
    }

    pub fn extended(&self) -> OaqecCode {
        OaqecCode {
            stabilizers: self.s.clone(),
            gauge: self.gauge_flat(),
            transversal: self.transversal.clone(),
        }
    }

    /// Every coset representative `prod (X_j ⊗ I)^a (Z_j ⊗ I)^b prod (D_j ⊗ I)^c`
    /// over symplectic pairs of `H` and destabilizers of its isotropic part,
    /// enumerated in binary counting order (identity first).
    pub fn full_transversal(&self, limit: usize) -> Result<Vec<PauliOperator>, CodeError> {
        let m = self.h.len();
        if m > limit {
            return Err(CodeError::TransversalTooLarge { m, limit });
        }
        let mut basis = Vec::new();
        if m > 0 {
            let dec = decompose(self.h.generators())?;
            for (a, b) in dec.pair_ops() {
                basis.push(a.pad(self.e));
                basis.push(b.pad(self.e));
            }
            for d in destabilizers(&dec)? {
                basis.push(d.pad(self.e));
            }
        }
        let total = self.total_qubits();
        let mut out = Vec::with_capacity(1 << m);
        for mask in 0u64..(1u64 << m) {
            let mut op = PauliOperator::identity(total);
            for (i, b) in basis.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    op = symplectic::herm_mul(&op, b);
                }
            }
            out.push(op);
        }
        Ok(out)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut checks = Vec::new();
        let mut add = |name: &'static str, passed: bool, detail: String| {
            checks.push(Check { name, passed, detail });
        };
        let n = self.n;
        let total = self.total_qubits();
        let sg = self.s.generators();

        let bad_pair = (0..sg.len())
            .flat_map(|i| (i + 1..sg.len()).map(move |j| (i, j)))
            .find(|&(i, j)| sg[i].anticommutes(&sg[j]));
        add(
            "s_abelian",
            bad_pair.is_none(),
            bad_pair.map(|(i, j)| format!("S{} and S{} anticommute", i + 1, j + 1)).unwrap_or_default(),
        );

        let scalar = nontrivial_scalar_witness(sg);
        add(
            "s_excludes_minus_identity",
            scalar.is_none(),
            scalar
                .map(|w| format!("product of generators {:?} is a nontrivial scalar", w.iter().map(|i| i + 1).collect::<Vec<_>>()))
                .unwrap_or_default(),
        );

        let restricted: Vec<_> = sg.iter().map(|o| o.truncate(n)).collect();
        let restricted_set = GeneratorSet::spanning(n, &restricted).ok();
        let regen = restricted_set
            .map(|r| r.len() == sg.len() && r.same_span(&self.h))
            .unwrap_or(sg.is_empty() && self.h.is_empty());
        add(
            "s_restricts_to_h",
            regen,
            if regen { String::new() } else { "restriction of S to the first n qubits does not regenerate H".into() },
        );

        let ebit_qubits: Vec<usize> = (n..total).collect();
        let on_ebits = |o: &PauliOperator| !o.restrict(&ebit_qubits).is_identity();
        let mut bad = Vec::new();
        for (i, o) in self.gauge_flat().iter().enumerate() {
            if on_ebits(o) {
                bad.push(format!("G{}", i + 1));
            }
        }
        for (i, o) in self.logical_flat().iter().enumerate() {
            if on_ebits(o) {
                bad.push(format!("L{}", i + 1));
            }
        }
        for (i, o) in self.transversal.iter().enumerate() {
            if on_ebits(o) {
                bad.push(format!("T{}", i));
            }
        }
        add("identity_on_ebits", bad.is_empty(), bad.join(", "));

        let mut bad = Vec::new();
        for (label, ops) in [("G", self.gauge_flat()), ("L", self.logical_flat())] {
            for (i, o) in ops.iter().enumerate() {
                if !self.s.centralizes(o) {
                    bad.push(format!("{label}{}", i + 1));
                }
            }
        }
        add("gauge_logical_centralize_s", bad.is_empty(), bad.join(", "));

        let g = self.gauge_flat();
        let gp = is_symplectic_pairing(&g);
        add("gauge_pairs_symplectic", gp, if gp { String::new() } else { "gauge pairs are not symplectic".into() });
        let l = self.logical_flat();
        let lp = is_symplectic_pairing(&l);
        add("logical_pairs_symplectic", lp, if lp { String::new() } else { "logical pairs are not symplectic".into() });
        let cross = g.iter().enumerate().find_map(|(i, a)| {
            l.iter().position(|b| a.anticommutes(b)).map(|j| (i, j))
        });
        add(
            "gauge_commutes_with_logical",
            cross.is_none(),
            cross.map(|(i, j)| format!("G{} anticommutes with L{}", i + 1, j + 1)).unwrap_or_default(),
        );

        let mut e = Echelon::new(2 * total);
        let all: Vec<_> = sg.iter().chain(g.iter()).chain(l.iter()).collect();
        let independent = all.iter().all(|o| e.insert(&o.to_symplectic()).is_ok());
        let want = 2 * total - sg.len();
        let complete = independent && all.len() == want;
        add(
            "centralizer_generated",
            complete,
            if complete {
                String::new()
            } else {
                format!("S, G, L give rank {} of {}, expected {}", e.rank(), all.len(), want)
            },
        );

        let first_id = self.transversal.first().map(|t| t.is_identity()).unwrap_or(false);
        add("transversal_identity_first", first_id, String::new());

        let t = &self.transversal;
        let mut dup = None;
        'outer: for i in 0..t.len() {
            for j in i + 1..t.len() {
                if self.s.centralizes(&t[i].mul(&t[j])) {
                    dup = Some((i, j));
                    break 'outer;
                }
            }
        }
        add(
            "transversal_distinct_cosets",
            dup.is_none(),
            dup.map(|(i, j)| format!("T{i} and T{j} lie in the same coset")).unwrap_or_default(),
        );

        let p = self.parameters();
        let ok = p.k >= 0 && p.k as usize == self.logical.len();
        add(
            "parameter_count",
            ok,
            if ok {
                String::new()
            } else {
                format!("k = n - e - s - r = {} but {} logical pairs", p.k, self.logical.len())
            },
        );
        ValidationReport { checks }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::p;

    fn six_qubit() -> EaoaqecCode {
        CodeBuilder::new()
            .h(["ZIIIII", "XIIIII", "IZIIII", "IXIIII", "IIZIII", "IIIZII"].iter().map(|s| p(s)).collect())
            .gauge(vec![p("IIIIXI"), p("IIIIZI")])
            .logical(vec![p("IIIIIX"), p("IIIIIZ")])
            .transversal(vec![p("IIXIII"), p("IIIXII")])
            .build()
            .unwrap()
    }

    #[test]
    fn extension_matches_table() {
        let c = six_qubit();
        let s: Vec<String> = c.s_group().generators().iter().map(|o| o.to_text()).collect();
        assert_eq!(s, ["ZIIIIIZI", "XIIIIIXI", "IZIIIIIZ", "IXIIIIIX", "IIZIIIII", "IIIZIIII"]);
        assert_eq!(c.parameters().to_string(), "[[6,1;1,2,3]]");
        assert!(c.validate().is_valid(), "{:?}", c.validate().failures());
    }

    #[test]
    fn full_transversal_has_2_pow_m_distinct_cosets() {
        let c = six_qubit();
        let t = c.full_transversal(20).unwrap();
        assert_eq!(t.len(), 64);
        assert!(t[0].is_identity());
        let mut seen = std::collections::HashSet::new();
        for op in &t {
            assert!(seen.insert(c.s_group().syndrome(op)));
        }
    }

    #[test]
    fn validation_reports_every_failure() {
        let c = six_qubit().with_transversal(vec![p("IIXIII"), p("IIXIZI")]).unwrap();
        let rep = c.validate();
        let names: Vec<_> = rep.failures().iter().map(|f| f.name).collect();
        assert_eq!(names, vec!["transversal_distinct_cosets"]);
    }

    #[test]
    fn missing_logicals_are_completed() {
        let c = CodeBuilder::new()
            .h(vec![p("XXXX"), p("ZZZZ")])
            .build()
            .unwrap();
        assert_eq!(c.parameters().k, 2);
        assert_eq!(c.logical_pairs().len(), 2);
        assert!(c.validate().is_valid(), "{:?}", c.validate().failures());
    }

    #[test]
    fn non_hermitian_generator_rejected() {
        assert_eq!(extend_to_abelian(&[p("iZ")]).unwrap_err(), CodeError::NonHermitian { index: 0 });
    }
}
