//! Correctability of error sets and code distances.
//!
//! The general test works on `n` qubits: a set `{E_a}` is correctable iff
//! every product `E_a^† E_b` lies in `<H_I, G0, iI>` or outside the
//! centralizer `Z(H)`, and in no shifted centralizer `T_i T_j^{-1} Z(H)`
//! with `i != j`. The extended-space, subsystem-only and classical/quantum
//! forms are implemented separately so they can be checked against it.

use crate::code::{CodeError, EaoaqecCode, OaqecCode};
use crate::eacq::EacqSplit;
use crate::pauli::PauliOperator;
use crate::search::{self, BranchTag, SearchError, SearchResult, Strategy, TargetSet};
use crate::symplectic::{decompose, GeneratorSet};
use serde::Serialize;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CorrectionError {
    #[error("error {index} acts on {found} qubits, expected {expected}")]
    QubitCount { index: usize, expected: usize, found: usize },
    #[error("this test needs a code whose transversal is trivial (c_b = 1), found c_b = {0}")]
    HybridCode(usize),
    #[error("this test needs a code without gauge qubits, found r = {0}")]
    GaugeNotTrivial(usize),
    #[error("code carries no classical/quantum stabilizer split")]
    MissingSplit,
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// Which forbidden set an error product fell into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Violation {
    /// Commutes with the stabilizer-side group but is not in the gauge-extended isotropic group.
    CentralizerMinusGauge,
    /// Lies in `T_i T_j^{-1} Z` for some `i != j`.
    CosetUnion,
    /// Normalizes the quantum stabilizer but is not in `<S_QI, S_CI>`.
    NormalizerMinusIsotropic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub a: usize,
    pub b: usize,
    pub product: PauliOperator,
    pub violation: Violation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub correctable: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    fn ok() -> Self {
        Verdict { correctable: true, witness: None }
    }
}

fn check_widths(errors: &[PauliOperator], n: usize) -> Result<(), CorrectionError> {
    for (i, e) in errors.iter().enumerate() {
        if e.num_qubits() != n {
            return Err(CorrectionError::QubitCount { index: i, expected: n, found: e.num_qubits() });
        }
    }
    Ok(())
}

/// Applies `test` to every product `E_a^† E_b` with `a < b`.
fn scan_pairs(
    errors: &[PauliOperator],
    test: impl Fn(&PauliOperator) -> Option<Violation>,
) -> Verdict {
    for a in 0..errors.len() {
        for b in a + 1..errors.len() {
            let prod = errors[a].adjoint().mul(&errors[b]);
            if let Some(violation) = test(&prod) {
                return Verdict {
                    correctable: false,
                    witness: Some(Witness { a, b, product: prod, violation }),
                };
            }
        }
    }
    Verdict::ok()
}

/// Products `T_i T_j` for `i < j`, phase dropped.
fn transversal_products(t: &[PauliOperator]) -> Vec<PauliOperator> {
    let mut out = Vec::new();
    for i in 0..t.len() {
        for j in i + 1..t.len() {
            out.push(t[i].mul(&t[j]).unsigned());
        }
    }
    out
}

/// Span of `a ∪ b` as a generator set (dependent members dropped).
fn span_of(n: usize, parts: &[&[PauliOperator]]) -> GeneratorSet {
    let all: Vec<PauliOperator> = parts.iter().flat_map(|p| p.iter().cloned()).collect();
    GeneratorSet::spanning(n, &all).expect("operators share a width")
}

/// Shared test for `(span ∪ P\Z) ∩ (P \ ∪ coset)` on a given group.
fn general_test<'a>(
    group: &'a GeneratorSet,
    allowed: &'a GeneratorSet,
    products: &[PauliOperator],
) -> impl Fn(&PauliOperator) -> Option<Violation> + 'a {
    let products = products.to_vec();
    move |e: &PauliOperator| {
        if group.centralizes(e) && !allowed.contains(e) {
            return Some(Violation::CentralizerMinusGauge);
        }
        if products.iter().any(|t| group.centralizes(&t.mul(e))) {
            return Some(Violation::CosetUnion);
        }
        None
    }
}

/// General `n`-qubit correctability test for hybrid subsystem codes.
pub fn ea_correctable(code: &EaoaqecCode, errors: &[PauliOperator]) -> Result<Verdict, CorrectionError> {
    let n = code.n();
    check_widths(errors, n)?;
    let allowed = span_of(n, &[code.h_isotropic(), &code.gauge_n()]);
    let products = transversal_products(&code.transversal_n());
    let test = general_test(code.h_group(), &allowed, &products);
    Ok(scan_pairs(errors, test))
}

/// Extended-space test: errors act on all `n + e` qubits.
pub fn oaqec_correctable(code: &OaqecCode, errors: &[PauliOperator]) -> Result<Verdict, CorrectionError> {
    let total = code.stabilizers.num_qubits();
    check_widths(errors, total)?;
    let allowed = span_of(total, &[code.stabilizers.generators(), &code.gauge]);
    let products = transversal_products(&code.transversal);
    let test = general_test(&code.stabilizers, &allowed, &products);
    Ok(scan_pairs(errors, test))
}

/// Subsystem-only test: `E ∈ <H_I, H_G> ∪ (P \ Z(<H_I, H_E>))`.
pub fn eaoqec_correctable(code: &EaoaqecCode, errors: &[PauliOperator]) -> Result<Verdict, CorrectionError> {
    if !code.is_subsystem_only() {
        return Err(CorrectionError::HybridCode(code.transversal().len()));
    }
    let n = code.n();
    check_widths(errors, n)?;
    let dec = if code.h_group().is_empty() { None } else { Some(decompose(code.h_group().generators()).map_err(CodeError::from)?) };
    let (iso, sym): (Vec<PauliOperator>, Vec<PauliOperator>) = match &dec {
        None => (Vec::new(), Vec::new()),
        Some(d) => (d.isotropic_ops(), d.pair_ops().into_iter().flat_map(|(a, b)| [a, b]).collect()),
    };
    let gauge = code.gauge_n();
    let allowed = span_of(n, &[&iso, &gauge]);
    let stab_side = span_of(n, &[&iso, &sym]);
    Ok(scan_pairs(errors, |e| {
        (stab_side.centralizes(e) && !allowed.contains(e)).then_some(Violation::CentralizerMinusGauge)
    }))
}

/// Classical/quantum test: `E ∈ <S_QI, S_CI> ∪ (P \ N(S_Q))`.
pub fn eacq_correctable(
    code: &EaoaqecCode,
    split: Option<&EacqSplit>,
    errors: &[PauliOperator],
) -> Result<Verdict, CorrectionError> {
    let split = split.ok_or(CorrectionError::MissingSplit)?;
    let n = code.n();
    check_widths(errors, n)?;
    let sq = span_of(n, &[&split.quantum]);
    let sq_iso = if split.quantum.is_empty() {
        Vec::new()
    } else {
        decompose(&split.quantum).map_err(CodeError::from)?.isotropic_ops()
    };
    let sc_iso = if split.classical.is_empty() {
        Vec::new()
    } else {
        decompose(&split.classical).map_err(CodeError::from)?.isotropic_ops()
    };
    let allowed = span_of(n, &[&sq_iso, &sc_iso]);
    Ok(scan_pairs(errors, |e| {
        (sq.centralizes(e) && !allowed.contains(e)).then_some(Violation::NormalizerMinusIsotropic)
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistanceMode {
    /// `Z(H) \ <H_I, G0>` plus coset union, on `n` qubits.
    Dressed,
    /// `<H_I, L0> \ <H_I>` plus coset union, on `n` qubits.
    Bare,
    /// `Z(S) \ <S, G0>` plus coset union, on all `n + e` qubits.
    NoisyBob,
}

impl DistanceMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            DistanceMode::Dressed => "dressed",
            DistanceMode::Bare => "bare",
            DistanceMode::NoisyBob => "noisy-bob",
        }
    }
}

impl std::str::FromStr for DistanceMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dressed" => Ok(DistanceMode::Dressed),
            "bare" => Ok(DistanceMode::Bare),
            "noisy-bob" | "noisy_bob" => Ok(DistanceMode::NoisyBob),
            other => Err(format!("unknown distance mode {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceReport {
    pub mode: DistanceMode,
    pub cutoff: usize,
    pub distance: Option<usize>,
    pub witness: Option<PauliOperator>,
    pub branch: Option<BranchTag>,
}

impl DistanceReport {
    fn from_search(mode: DistanceMode, r: SearchResult) -> Self {
        DistanceReport { mode, cutoff: r.cutoff, distance: r.weight, witness: r.witness, branch: r.branch }
    }

    /// Distance as text; `>W` when nothing was found up to the cutoff.
    pub fn distance_text(&self) -> String {
        match self.distance {
            Some(d) => d.to_string(),
            None => format!(">{}", self.cutoff),
        }
    }
}

impl fmt::Display for DistanceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} distance {}", self.mode.as_str(), self.distance_text())?;
        if let (Some(w), Some(b)) = (&self.witness, &self.branch) {
            write!(f, " (witness {w}, {})", b.as_str())?;
        }
        Ok(())
    }
}

/// Default search depth: `min(qubits, 6)`.
pub fn default_cutoff(code: &EaoaqecCode, mode: DistanceMode) -> usize {
    let q = if mode == DistanceMode::NoisyBob { code.total_qubits() } else { code.n() };
    q.min(6)
}

/// The set whose minimum weight is the requested distance.
pub fn distance_target(code: &EaoaqecCode, mode: DistanceMode) -> Result<TargetSet, CorrectionError> {
    let n = code.n();
    match mode {
        DistanceMode::Dressed | DistanceMode::Bare => {
            let mut set = TargetSet::new(n);
            let hmask = set.add_checks(code.h_group().generators())?;
            let cu = set.coset_union(hmask, &code.transversal_n());
            if mode == DistanceMode::Dressed {
                let cent = set.centralizer_of(code.h_group().generators())?;
                let mut span = code.h_isotropic().to_vec();
                span.extend(code.gauge_n());
                let out = set.not_in_span(&span)?;
                set.add_branch(BranchTag::CentralizerMinusGauge, vec![cent, out]);
            } else {
                let mut span = code.h_isotropic().to_vec();
                span.extend(code.logical_n());
                let inside = set.in_span(&span)?;
                let out = set.not_in_span(code.h_isotropic())?;
                set.add_branch(BranchTag::LogicalMinusIsotropic, vec![inside, out]);
            }
            set.add_branch(BranchTag::CosetUnion, vec![cu]);
            Ok(set)
        }
        DistanceMode::NoisyBob => {
            let total = code.total_qubits();
            let mut set = TargetSet::new(total);
            let smask = set.add_checks(code.s_group().generators())?;
            let cu = set.coset_union(smask, code.transversal());
            let cent = set.centralizer_of(code.s_group().generators())?;
            let mut span = code.s_group().generators().to_vec();
            span.extend(code.gauge_flat());
            let out = set.not_in_span(&span)?;
            set.add_branch(BranchTag::CentralizerMinusGauge, vec![cent, out]);
            set.add_branch(BranchTag::CosetUnion, vec![cu]);
            Ok(set)
        }
    }
}

pub fn distance(code: &EaoaqecCode, mode: DistanceMode, cutoff: Option<usize>) -> Result<DistanceReport, CorrectionError> {
    distance_with(code, mode, cutoff, Strategy::default())
}

pub fn distance_with(
    code: &EaoaqecCode,
    mode: DistanceMode,
    cutoff: Option<usize>,
    strategy: Strategy,
) -> Result<DistanceReport, CorrectionError> {
    let set = distance_target(code, mode)?;
    let cutoff = cutoff.unwrap_or_else(|| default_cutoff(code, mode));
    Ok(DistanceReport::from_search(mode, search::min_weight(&set, cutoff, strategy)))
}

/// Distance computed without truncation (cutoff = number of qubits).
pub fn exact_distance(code: &EaoaqecCode, mode: DistanceMode) -> Result<DistanceReport, CorrectionError> {
    let q = if mode == DistanceMode::NoisyBob { code.total_qubits() } else { code.n() };
    distance(code, mode, Some(q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::CodeBuilder;
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
    fn transversal_shift_is_uncorrectable() {
        let c = six_qubit();
        let v = ea_correctable(&c, &[p("IIIIII"), p("IIXIII")]).unwrap();
        assert!(!v.correctable);
        assert_eq!(v.witness.unwrap().violation, Violation::CosetUnion);
        let v = ea_correctable(&c, &[p("IIIIII"), p("IIIIIX")]).unwrap();
        assert_eq!(v.witness.unwrap().violation, Violation::CentralizerMinusGauge);
        assert!(ea_correctable(&c, &[p("IIZIII"), p("IIIIXI")]).unwrap().correctable);
    }

    #[test]
    fn distances_of_six_qubit_example() {
        let c = six_qubit();
        let d = exact_distance(&c, DistanceMode::Dressed).unwrap();
        assert_eq!(d.distance, Some(1));
        assert_eq!(d.witness.unwrap().to_text(), "IIXIII");
        assert_eq!(d.branch, Some(BranchTag::CosetUnion));
    }

    #[test]
    fn width_mismatch_is_an_error() {
        let c = six_qubit();
        assert!(matches!(
            ea_correctable(&c, &[p("III")]),
            Err(CorrectionError::QubitCount { expected: 6, found: 3, .. })
        ));
    }
}
