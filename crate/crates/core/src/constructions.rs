//! Code-to-code constructions: gauge fixing (GF), clean qubits (CQ and its
//! CSS shortcut), entanglement-assisted gauge fixing (EAGF) and the general
//! combination of GF and EAGF (GGF).
//!
//! Each construction checks that the output parameters follow the expected
//! arithmetic and, when asked, evaluates the distance hypotheses attached to
//! it with the same bounded enumeration used for distances.

use crate::code::{extend_to_abelian, CodeError, CodeParameters, EaoaqecCode};
use crate::correct::{self, CorrectionError, DistanceMode, DistanceReport};
use crate::gf2::{self, BitVec, Echelon};
use crate::pauli::PauliOperator;
use crate::search::{self, BranchTag, SearchError, Strategy, TargetSet};
use crate::symplectic::{herm_mul, GeneratorSet};
use serde::Serialize;
use std::collections::HashSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("gauge pair {index} does not exist (the code has {r} pairs)")]
    PairOutOfRange { index: usize, r: usize },
    #[error("gauge pair {index} is selected twice")]
    DuplicatePair { index: usize },
    #[error("gauge pair {index} is assigned to both the GF and the EAGF role")]
    OverlappingPairs { index: usize },
    #[error("gauge re-pairing refers to gauge operator {index}, but there are {len}")]
    GaugeIndexOutOfRange { index: usize, len: usize },
    #[error("the input code already uses {e} ebits; this construction needs e = 0")]
    HasEbits { e: usize },
    #[error("qubit {q} is out of range (n = {n})")]
    QubitOutOfRange { q: usize, n: usize },
    #[error("qubit {q} is listed twice")]
    DuplicateQubit { q: usize },
    #[error("check-matrix columns of qubits {qubits:?} are dependent: {witness} is in the centralizer of S and supported on them")]
    DependentColumns { qubits: Vec<usize>, witness: PauliOperator },
    #[error("code is not CSS with equal X and Z check matrices")]
    NotCss,
    #[error("asked for {e} ebits but the CSS check matrix has rank {rank}")]
    TooManyEbits { e: usize, rank: usize },
    #[error("transversal operator {index} ({op}) is not in the coset of any element of the allowed product set")]
    OutsideProductSet { index: usize, op: PauliOperator },
    #[error("transversal operator {index} ({op}) repeats an earlier coset")]
    DuplicateCoset { index: usize, op: PauliOperator },
    #[error("{kind} output {after} does not match the expected parameters: {detail}")]
    TableMismatch { kind: &'static str, after: String, detail: String },
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Correction(#[from] CorrectionError),
    #[error(transparent)]
    Search(#[from] SearchError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstructionKind {
    Gf,
    Cq,
    CssCq,
    Eagf,
    Ggf,
}

impl ConstructionKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ConstructionKind::Gf => "gf",
            ConstructionKind::Cq => "cq",
            ConstructionKind::CssCq => "css-cq",
            ConstructionKind::Eagf => "eagf",
            ConstructionKind::Ggf => "ggf",
        }
    }
}

/// Which member of a gauge pair becomes a stabilizer; the other one
/// generates new transversal elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairRole {
    #[default]
    StabilizeZ,
    StabilizeX,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PairSelection {
    pub index: usize,
    pub role: PairRole,
}

impl PairSelection {
    pub fn z(index: usize) -> Self {
        PairSelection { index, role: PairRole::StabilizeZ }
    }

    pub fn x(index: usize) -> Self {
        PairSelection { index, role: PairRole::StabilizeX }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum TransversalPolicy {
    /// Every product `t * g` with `t` in `T0` and `g` in the generated group,
    /// one per coset.
    #[default]
    FullProduct,
    /// A user list, each element checked against the product set's cosets.
    ExplicitList(Vec<PauliOperator>),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Options {
    /// Enumeration cutoff for distances; `None` uses the distance default.
    pub cutoff: Option<usize>,
    /// Skip all distance work when false.
    pub skip_hypotheses: bool,
}

impl Options {
    pub fn with_cutoff(cutoff: usize) -> Self {
        Options { cutoff: Some(cutoff), skip_hypotheses: false }
    }

    pub fn structural() -> Self {
        Options { cutoff: None, skip_hypotheses: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HypothesisStatus {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesisCheck {
    pub name: String,
    pub status: HypothesisStatus,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstructionResult {
    pub kind: ConstructionKind,
    #[serde(skip)]
    pub code: EaoaqecCode,
    pub before: CodeParameters,
    pub after: CodeParameters,
    pub hypothesis_report: Vec<HypothesisCheck>,
    pub distance_before: Option<DistanceReport>,
    pub distance_after: Option<DistanceReport>,
    /// Product-set elements dropped because their coset was already present.
    pub coset_collisions: usize,
    /// CQ: qubits turned into ebits, in input numbering.
    pub ebit_qubits: Vec<usize>,
    /// CQ: stabilizer generators after elimination, in input qubit order.
    pub row_reduced: Vec<PauliOperator>,
}

impl ConstructionResult {
    fn new(kind: ConstructionKind, input: &EaoaqecCode, code: EaoaqecCode) -> Self {
        ConstructionResult {
            kind,
            before: input.parameters(),
            after: code.parameters(),
            code,
            hypothesis_report: Vec::new(),
            distance_before: None,
            distance_after: None,
            coset_collisions: 0,
            ebit_qubits: Vec::new(),
            row_reduced: Vec::new(),
        }
    }

    pub fn hypotheses_hold(&self) -> bool {
        self.hypothesis_report.iter().all(|h| h.status != HypothesisStatus::Fail)
    }
}

fn derived_name(code: &EaoaqecCode, kind: ConstructionKind) -> Option<String> {
    Some(format!("{}+{}", code.name().unwrap_or("code"), kind.as_str()))
}

fn check_pairs(r: usize, indices: &[usize]) -> Result<(), ConstructionError> {
    let mut seen = HashSet::new();
    for &i in indices {
        if i >= r {
            return Err(ConstructionError::PairOutOfRange { index: i, r });
        }
        if !seen.insert(i) {
            return Err(ConstructionError::DuplicatePair { index: i });
        }
    }
    Ok(())
}

fn product(ops: &[PauliOperator], mask: u64, total: usize) -> PauliOperator {
    ops.iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .fold(PauliOperator::identity(total), |acc, (_, o)| herm_mul(&acc, o))
}

/// `T0 * <gens>` with one representative per coset of `Z(s)`, in the order
/// `t` outer, subset mask inner. Returns the list and the number dropped.
fn product_set(
    t0: &[PauliOperator],
    gens: &[PauliOperator],
    s: &GeneratorSet,
) -> (Vec<PauliOperator>, usize) {
    let total = s.num_qubits();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut collisions = 0;
    for t in t0 {
        for mask in 0u64..(1u64 << gens.len()) {
            let op = herm_mul(t, &product(gens, mask, total));
            if seen.insert(s.syndrome(&op)) {
                out.push(op);
            } else {
                collisions += 1;
            }
        }
    }
    (out, collisions)
}

fn widen(op: &PauliOperator, n: usize, total: usize) -> Result<PauliOperator, CodeError> {
    match op.num_qubits() {
        q if q == total => Ok(op.clone()),
        q if q == n => Ok(op.pad(total - n)),
        q => Err(CodeError::QubitCount { what: "transversal operator", index: 0, expected: total, found: q }),
    }
}

/// Checks an explicit transversal list against the cosets of `allowed`.
fn explicit_transversal(
    code: &EaoaqecCode,
    list: &[PauliOperator],
    allowed: &[PauliOperator],
) -> Result<Vec<PauliOperator>, ConstructionError> {
    let s = code.s_group();
    let allowed: HashSet<BitVec> = allowed.iter().map(|o| s.syndrome(o)).collect();
    let mut seen: HashSet<BitVec> = HashSet::new();
    seen.insert(BitVec::zeros(s.len()));
    let mut out = Vec::new();
    for (index, op) in list.iter().enumerate() {
        let op = widen(op, code.n(), code.total_qubits()).map_err(|e| match e {
            CodeError::QubitCount { what, expected, found, .. } => {
                CodeError::QubitCount { what, index, expected, found }
            }
            other => other,
        })?;
        if op.is_identity() {
            continue;
        }
        let syn = s.syndrome(&op);
        if !allowed.contains(&syn) {
            return Err(ConstructionError::OutsideProductSet { index, op });
        }
        if !seen.insert(syn) {
            return Err(ConstructionError::DuplicateCoset { index, op });
        }
        out.push(op);
    }
    Ok(out)
}

fn table_check(
    kind: ConstructionKind,
    after: &CodeParameters,
    expect: (usize, isize, usize, usize),
    c_b_max: usize,
    c_b_exact: bool,
) -> Result<(), ConstructionError> {
    let (n, k, r, e) = expect;
    let ok = after.n == n
        && after.k == k
        && after.r == r
        && after.e == e
        && if c_b_exact { after.c_b == c_b_max } else { after.c_b <= c_b_max };
    if ok {
        return Ok(());
    }
    let cb = if c_b_exact { format!("{c_b_max}") } else { format!("<={c_b_max}") };
    Err(ConstructionError::TableMismatch {
        kind: kind.as_str(),
        after: after.to_string(),
        detail: format!("expected [[{n},{k};{r},{e},{cb}]]"),
    })
}

/// Minimum weight of `<span> * <extra>^*`: elements of `span(span ∪ extra)`
/// outside `span(span)`.
fn min_weight_outside(
    n: usize,
    span: &[PauliOperator],
    extra: &[PauliOperator],
    cutoff: usize,
) -> Result<search::SearchResult, ConstructionError> {
    let mut set = TargetSet::new(n);
    let mut all = span.to_vec();
    all.extend(extra.iter().cloned());
    let inside = set.in_span(&all)?;
    let out = set.not_in_span(span)?;
    set.add_branch(BranchTag::Target, vec![inside, out]);
    Ok(search::min_weight(&set, cutoff, Strategy::default()))
}

/// `min wt(G'^(n) G_XT^(n)*) >= d`, where `G'^(n) = <H_I', G0'^(n)>`.
fn gauge_product_hypothesis(
    out: &EaoaqecCode,
    g_xt: &[PauliOperator],
    before: &DistanceReport,
) -> Result<HypothesisCheck, ConstructionError> {
    let n = out.n();
    let name = "min wt(G'^(n) G_XT^(n)*) >= d".to_string();
    if g_xt.is_empty() {
        return Ok(HypothesisCheck { name, status: HypothesisStatus::Pass, detail: "G_XT is trivial".into() });
    }
    let mut span = out.h_isotropic().to_vec();
    span.extend(out.gauge_n());
    let xt: Vec<PauliOperator> = g_xt.iter().map(|o| o.truncate(n)).collect();
    let (status, detail) = match before.distance {
        Some(d) => {
            let r = min_weight_outside(n, &span, &xt, d.saturating_sub(1))?;
            match (r.weight, r.witness) {
                (Some(w), Some(wit)) => (HypothesisStatus::Fail, format!("weight {w} element {wit} < d = {d}")),
                _ => (HypothesisStatus::Pass, format!("no element of weight < {d}")),
            }
        }
        None => {
            let r = min_weight_outside(n, &span, &xt, before.cutoff)?;
            match (r.weight, r.witness) {
                (Some(w), Some(wit)) => {
                    (HypothesisStatus::Fail, format!("weight {w} element {wit} while d > {}", before.cutoff))
                }
                _ => (HypothesisStatus::Inconclusive, format!("inconclusive at cutoff {}", before.cutoff)),
            }
        }
    };
    Ok(HypothesisCheck { name, status, detail })
}

fn bound_check(name: &str, before: &DistanceReport, after: &DistanceReport) -> HypothesisCheck {
    let (status, detail) = match (after.distance, before.distance) {
        (Some(a), Some(b)) => (
            if a >= b { HypothesisStatus::Pass } else { HypothesisStatus::Fail },
            format!("d' = {a}, d = {b}"),
        ),
        (None, Some(b)) => (HypothesisStatus::Pass, format!("d' > {}, d = {b}", after.cutoff)),
        (Some(a), None) if a <= before.cutoff => {
            (HypothesisStatus::Fail, format!("d' = {a}, d > {}", before.cutoff))
        }
        _ => (HypothesisStatus::Inconclusive, format!("inconclusive at cutoff {}", after.cutoff)),
    };
    HypothesisCheck { name: name.to_string(), status, detail }
}

fn distances(
    res: &mut ConstructionResult,
    input: &EaoaqecCode,
    opts: &Options,
) -> Result<(DistanceReport, DistanceReport), ConstructionError> {
    let before = correct::distance(input, DistanceMode::Dressed, opts.cutoff)?;
    let after = correct::distance(&res.code, DistanceMode::Dressed, opts.cutoff)?;
    res.distance_before = Some(before.clone());
    res.distance_after = Some(after.clone());
    Ok((before, after))
}

struct GfCore {
    code: EaoaqecCode,
    stabilized: Vec<PauliOperator>,
    transversal_gens: Vec<PauliOperator>,
    product: Vec<PauliOperator>,
    collisions: usize,
}

fn gf_core(code: &EaoaqecCode, sel: &[PairSelection]) -> Result<GfCore, ConstructionError> {
    let pairs = code.gauge_pairs();
    check_pairs(pairs.len(), &sel.iter().map(|s| s.index).collect::<Vec<_>>())?;
    let n = code.n();
    let mut stabilized = Vec::new();
    let mut transversal_gens = Vec::new();
    for s in sel {
        let (gx, gz) = &pairs[s.index];
        let (st, tr) = match s.role {
            PairRole::StabilizeZ => (gz, gx),
            PairRole::StabilizeX => (gx, gz),
        };
        stabilized.push(st.clone());
        transversal_gens.push(tr.clone());
    }
    let mut h = code.h_group().generators().to_vec();
    h.extend(stabilized.iter().map(|o| o.truncate(n)));
    let mut s = code.s_group().generators().to_vec();
    s.extend(stabilized.iter().cloned());
    let chosen: HashSet<usize> = sel.iter().map(|s| s.index).collect();
    let gauge: Vec<_> =
        pairs.iter().enumerate().filter(|(i, _)| !chosen.contains(i)).map(|(_, p)| p.clone()).collect();
    let out = EaoaqecCode::from_parts(
        derived_name(code, ConstructionKind::Gf),
        n,
        h,
        s,
        gauge,
        code.logical_pairs().to_vec(),
        Vec::new(),
    )?;
    let (product, collisions) = product_set(code.transversal(), &transversal_gens, out.s_group());
    let code = out.with_transversal(product.clone())?;
    Ok(GfCore { code, stabilized, transversal_gens, product, collisions })
}

/// Gauge fixing: the selected pairs lose one member to the stabilizer and
/// the other becomes a generator of new transversal elements.
pub fn gauge_fix(
    code: &EaoaqecCode,
    sel: &[PairSelection],
    policy: &TransversalPolicy,
    opts: &Options,
) -> Result<ConstructionResult, ConstructionError> {
    let core = gf_core(code, sel)?;
    let out = match policy {
        TransversalPolicy::FullProduct => core.code,
        TransversalPolicy::ExplicitList(list) => {
            let t = explicit_transversal(&core.code, list, &core.product)?;
            core.code.with_transversal(t)?
        }
    };
    let p = code.parameters();
    let y = sel.len();
    let mut res = ConstructionResult::new(ConstructionKind::Gf, code, out);
    res.coset_collisions = core.collisions;
    table_check(ConstructionKind::Gf, &res.after, (p.n, p.k, p.r - y, p.e), p.c_b << y, false)?;
    let weights = |ops: &[PauliOperator]| ops.iter().map(|o| o.weight().to_string()).collect::<Vec<_>>().join(",");
    res.hypothesis_report.push(HypothesisCheck {
        name: "selected operator weights".into(),
        status: HypothesisStatus::Pass,
        detail: format!(
            "stabilized [{}], transversal generators [{}]",
            weights(&core.stabilized),
            weights(&core.transversal_gens)
        ),
    });
    if !opts.skip_hypotheses {
        let (before, after) = distances(&mut res, code, opts)?;
        let premise = gauge_product_hypothesis(&res.code, &core.transversal_gens, &before)?;
        let premise_holds = premise.status == HypothesisStatus::Pass;
        res.hypothesis_report.push(premise);
        let mut concl = bound_check("d' >= d", &before, &after);
        if !premise_holds && concl.status == HypothesisStatus::Fail {
            concl.status = HypothesisStatus::Inconclusive;
            concl.detail.push_str(" (premise does not hold, no bound claimed)");
        }
        res.hypothesis_report.push(concl);
    }
    Ok(res)
}

fn check_qubits(n: usize, qs: &[usize]) -> Result<(), ConstructionError> {
    let mut seen = HashSet::new();
    for &q in qs {
        if q >= n {
            return Err(ConstructionError::QubitOutOfRange { q, n });
        }
        if !seen.insert(q) {
            return Err(ConstructionError::DuplicateQubit { q });
        }
    }
    Ok(())
}

/// A nonidentity operator supported on `qubits` commuting with every
/// generator, if one exists (i.e. the check-matrix columns are dependent).
pub fn support_dependency(stabilizers: &[PauliOperator], qubits: &[usize]) -> Option<PauliOperator> {
    let n = stabilizers.first()?.num_qubits();
    let w = 2 * qubits.len();
    // unknowns: (x_q, z_q) for each listed qubit
    let rows: Vec<BitVec> = stabilizers
        .iter()
        .map(|s| {
            let mut r = BitVec::zeros(w);
            for (i, &q) in qubits.iter().enumerate() {
                r.set(2 * i, s.z_bits().get(q));
                r.set(2 * i + 1, s.x_bits().get(q));
            }
            r
        })
        .collect();
    let v = gf2::nullspace(&rows, w).into_iter().next()?;
    let mut x = BitVec::zeros(n);
    let mut z = BitVec::zeros(n);
    for (i, &q) in qubits.iter().enumerate() {
        x.set(q, v.get(2 * i));
        z.set(q, v.get(2 * i + 1));
    }
    Some(PauliOperator::from_bits(x, z, 0).hermitian())
}

/// Clean qubits: the qubits in `e_q` become ebits. The stabilizer
/// generators are row-reduced on the `x` and `z` columns of each listed
/// qubit, the rest of the code is cleaned to act trivially there, and the
/// qubits are reordered with the remaining ones first and the ebits last.
pub fn clean_qubits(code: &EaoaqecCode, e_q: &[usize], opts: &Options) -> Result<ConstructionResult, ConstructionError> {
    clean_qubits_as(ConstructionKind::Cq, code, e_q, opts)
}

fn clean_qubits_as(
    kind: ConstructionKind,
    code: &EaoaqecCode,
    e_q: &[usize],
    opts: &Options,
) -> Result<ConstructionResult, ConstructionError> {
    if code.e() != 0 {
        return Err(ConstructionError::HasEbits { e: code.e() });
    }
    let n = code.n();
    check_qubits(n, e_q)?;
    let mut rows = code.s_group().generators().to_vec();
    if let Some(witness) = support_dependency(&rows, e_q) {
        return Err(ConstructionError::DependentColumns { qubits: e_q.to_vec(), witness });
    }
    let mut used = vec![false; rows.len()];
    let mut pivots = Vec::with_capacity(e_q.len());
    for &q in e_q {
        let mut pair = [0usize; 2];
        for (slot, is_x) in [(0, true), (1, false)] {
            let bit = |o: &PauliOperator| if is_x { o.x_bits().get(q) } else { o.z_bits().get(q) };
            let r = (0..rows.len())
                .find(|&r| !used[r] && bit(&rows[r]))
                .expect("independent columns always have a pivot row");
            used[r] = true;
            let pivot = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && bit(row) {
                    *row = herm_mul(row, &pivot);
                }
            }
            pair[slot] = r;
        }
        pivots.push((q, pair[0], pair[1]));
    }
    let clean = |op: &PauliOperator| -> PauliOperator {
        let mut o = op.clone();
        for &(q, xr, zr) in &pivots {
            if o.x_bits().get(q) {
                o = herm_mul(&o, &rows[xr]);
            }
            if o.z_bits().get(q) {
                o = herm_mul(&o, &rows[zr]);
            }
        }
        o
    };
    let ebits: HashSet<usize> = e_q.iter().copied().collect();
    let alice: Vec<usize> = (0..n).filter(|q| !ebits.contains(q)).collect();
    let mut order = alice.clone();
    order.extend_from_slice(e_q);
    let s: Vec<PauliOperator> = rows.iter().map(|r| r.restrict(&order)).collect();
    let h: Vec<PauliOperator> = rows.iter().map(|r| r.restrict(&alice)).collect();
    let move_pair = |(a, b): &(PauliOperator, PauliOperator)| (clean(a).restrict(&order), clean(b).restrict(&order));
    let gauge: Vec<_> = code.gauge_pairs().iter().map(move_pair).collect();
    let logical: Vec<_> = code.logical_pairs().iter().map(move_pair).collect();
    let t: Vec<_> = code.transversal().iter().map(|o| clean(o).restrict(&order)).collect();
    let name = if e_q.is_empty() { code.name().map(str::to_string) } else { derived_name(code, kind) };
    let out = EaoaqecCode::from_parts(name, n - e_q.len(), h, s, gauge, logical, t)?;
    let p = code.parameters();
    let e = e_q.len();
    let mut res = ConstructionResult::new(kind, code, out);
    table_check(kind, &res.after, (p.n - e, p.k, p.r, e), p.c_b, true)?;
    res.ebit_qubits = e_q.to_vec();
    res.row_reduced = rows;
    res.hypothesis_report.push(HypothesisCheck {
        name: "E_Q columns independent".into(),
        status: HypothesisStatus::Pass,
        detail: format!("qubits {:?}", e_q.iter().map(|q| q + 1).collect::<Vec<_>>()),
    });
    if !opts.skip_hypotheses {
        let (before, after) = distances(&mut res, code, opts)?;
        res.hypothesis_report.push(bound_check("noiseless-Bob d' >= d", &before, &after));
    }
    Ok(res)
}

/// Splits a CSS stabilizer list into its X and Z check matrices when both
/// have the same row space.
fn css_matrix(code: &EaoaqecCode) -> Option<Vec<BitVec>> {
    let mut hx = Vec::new();
    let mut hz = Vec::new();
    for g in code.s_group().generators() {
        match (g.x_bits().is_zero(), g.z_bits().is_zero()) {
            (false, true) => hx.push(g.x_bits().clone()),
            (true, false) => hz.push(g.z_bits().clone()),
            _ => return None,
        }
    }
    let w = code.total_qubits();
    let rx = gf2::rank(&hx, w);
    let both: Vec<BitVec> = hx.iter().chain(hz.iter()).cloned().collect();
    (rx == gf2::rank(&hz, w) && rx == gf2::rank(&both, w)).then_some(hx)
}

/// Clean qubits on a CSS code with equal X and Z check matrices: the ebits
/// are the first `e` pivot columns of the reduced row echelon form of `H`.
pub fn css_clean_qubits(code: &EaoaqecCode, e: usize, opts: &Options) -> Result<ConstructionResult, ConstructionError> {
    if code.e() != 0 {
        return Err(ConstructionError::HasEbits { e: code.e() });
    }
    let hx = css_matrix(code).ok_or(ConstructionError::NotCss)?;
    let mut ech = Echelon::new(code.n());
    for r in &hx {
        let _ = ech.insert(r);
    }
    if e > ech.rank() {
        return Err(ConstructionError::TooManyEbits { e, rank: ech.rank() });
    }
    let mut piv = ech.pivots().to_vec();
    piv.sort_unstable();
    piv.truncate(e);
    clean_qubits_as(ConstructionKind::CssCq, code, &piv, opts)
}

/// Qubit subsets of size `e` (lexicographic order, at most `limit`) whose
/// check-matrix columns are independent.
pub fn find_valid_eq(code: &EaoaqecCode, e: usize, limit: usize) -> Vec<Vec<usize>> {
    let n = code.n();
    let s: Vec<PauliOperator> = code.s_group().generators().iter().map(|o| o.truncate(n)).collect();
    let mut out = Vec::new();
    if e == 0 || e > n || limit == 0 {
        return out;
    }
    let mut idx: Vec<usize> = (0..e).collect();
    loop {
        if s.is_empty() || support_dependency(&s, &idx).is_none() {
            if !s.is_empty() {
                out.push(idx.clone());
                if out.len() >= limit {
                    return out;
                }
            }
        }
        let mut i = e;
        while i > 0 && idx[i - 1] == n - e + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..e {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn eagf_core(code: &EaoaqecCode, indices: &[usize]) -> Result<EaoaqecCode, ConstructionError> {
    let pairs = code.gauge_pairs();
    check_pairs(pairs.len(), indices)?;
    let n = code.n();
    let (mut firsts, mut partners, mut iso) = (Vec::new(), Vec::new(), Vec::new());
    if !code.h_group().is_empty() {
        let dec = code.h_decomposition()?;
        for &(a, b) in &dec.pairs {
            firsts.push(dec.generators[a].clone());
            partners.push(dec.generators[b].clone());
        }
        iso = dec.isotropic_ops();
    }
    for &i in indices {
        let (gx, gz) = &pairs[i];
        firsts.push(gz.truncate(n));
        partners.push(gx.truncate(n));
    }
    let mut h = firsts;
    h.extend(partners);
    h.extend(iso);
    if h.is_empty() {
        return Ok(code.clone());
    }
    let (s, dec) = extend_to_abelian(&h)?;
    let e = dec.num_pairs();
    let lift = |o: &PauliOperator| o.truncate(n).pad(e);
    let chosen: HashSet<usize> = indices.iter().copied().collect();
    let gauge: Vec<_> = pairs
        .iter()
        .enumerate()
        .filter(|(i, _)| !chosen.contains(i))
        .map(|(_, (a, b))| (lift(a), lift(b)))
        .collect();
    let logical: Vec<_> = code.logical_pairs().iter().map(|(a, b)| (lift(a), lift(b))).collect();
    let t: Vec<_> = code.transversal().iter().map(lift).collect();
    Ok(EaoaqecCode::from_parts(
        derived_name(code, ConstructionKind::Eagf),
        n,
        dec.generators,
        s,
        gauge,
        logical,
        t,
    )?)
}

/// Entanglement-assisted gauge fixing: the selected gauge pairs join `H` as
/// symplectic pairs and the extension gains one ebit per pair.
pub fn ea_gauge_fix(code: &EaoaqecCode, indices: &[usize], opts: &Options) -> Result<ConstructionResult, ConstructionError> {
    let out = if indices.is_empty() { code.clone() } else { eagf_core(code, indices)? };
    let p = code.parameters();
    let y = indices.len();
    let mut res = ConstructionResult::new(ConstructionKind::Eagf, code, out);
    table_check(ConstructionKind::Eagf, &res.after, (p.n, p.k, p.r - y, p.e + y), p.c_b, true)?;
    if !opts.skip_hypotheses {
        let (before, after) = distances(&mut res, code, opts)?;
        res.hypothesis_report.push(bound_check("d' >= d", &before, &after));
    }
    Ok(res)
}

/// A gauge pair given as products of entries of the flat gauge list
/// `(G_X1, G_Z1, G_X2, ...)`, 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GaugeRepairing(pub Vec<(Vec<usize>, Vec<usize>)>);

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GgfRequest {
    pub repair: Option<GaugeRepairing>,
    /// Pairs handled by gauge fixing.
    pub gf_pairs: Vec<PairSelection>,
    /// Pairs moved into `H` with new ebits.
    pub eagf_pairs: Vec<usize>,
    pub policy: TransversalPolicy,
}

pub fn repair_gauge(code: &EaoaqecCode, repair: &GaugeRepairing) -> Result<EaoaqecCode, ConstructionError> {
    let flat = code.gauge_flat();
    let total = code.total_qubits();
    let prod = |idx: &[usize]| -> Result<PauliOperator, ConstructionError> {
        idx.iter().try_fold(PauliOperator::identity(total), |acc, &i| {
            flat.get(i)
                .map(|g| herm_mul(&acc, g))
                .ok_or(ConstructionError::GaugeIndexOutOfRange { index: i, len: flat.len() })
        })
    };
    let pairs = repair.0.iter().map(|(a, b)| Ok((prod(a)?, prod(b)?))).collect::<Result<Vec<_>, ConstructionError>>()?;
    Ok(code.with_gauge_pairs(pairs)?)
}

/// General gauge fixing: optional re-pairing of the gauge group, gauge
/// fixing on `gf_pairs`, then entanglement-assisted gauge fixing on
/// `eagf_pairs`. Pair indices refer to the (re-paired) input code.
pub fn general_gauge_fix(code: &EaoaqecCode, req: &GgfRequest, opts: &Options) -> Result<ConstructionResult, ConstructionError> {
    let base = match &req.repair {
        Some(r) => repair_gauge(code, r)?,
        None => code.clone(),
    };
    let r = base.gauge_pairs().len();
    let gf_idx: Vec<usize> = req.gf_pairs.iter().map(|s| s.index).collect();
    check_pairs(r, &gf_idx)?;
    check_pairs(r, &req.eagf_pairs)?;
    if let Some(&index) = req.eagf_pairs.iter().find(|i| gf_idx.contains(i)) {
        return Err(ConstructionError::OverlappingPairs { index });
    }
    let core = gf_core(&base, &req.gf_pairs)?;
    let remaining: Vec<usize> = (0..r).filter(|i| !gf_idx.contains(i)).collect();
    let mapped: Vec<usize> = req
        .eagf_pairs
        .iter()
        .map(|i| remaining.iter().position(|j| j == i).expect("not a GF pair"))
        .collect();
    let eagf_members: Vec<PauliOperator> =
        req.eagf_pairs.iter().flat_map(|&i| [base.gauge_pairs()[i].0.clone(), base.gauge_pairs()[i].1.clone()]).collect();
    let mut out = if mapped.is_empty() { core.code.clone() } else { eagf_core(&core.code, &mapped)? };
    let n = code.n();
    let e_out = out.e();
    if let TransversalPolicy::ExplicitList(list) = &req.policy {
        let lift = |o: &PauliOperator| o.truncate(n).pad(e_out);
        let mut gens: Vec<PauliOperator> = core.transversal_gens.iter().map(lift).collect();
        gens.extend(eagf_members.iter().map(lift));
        let t0: Vec<PauliOperator> = base.transversal().iter().map(lift).collect();
        let (allowed, _) = product_set(&t0, &gens, out.s_group());
        let t = explicit_transversal(&out, list, &allowed)?;
        out = out.with_transversal(t)?;
    }
    out = out.with_name(derived_name(code, ConstructionKind::Ggf).unwrap_or_default());
    let p = code.parameters();
    let (yi, ys) = (req.gf_pairs.len(), req.eagf_pairs.len());
    let mut res = ConstructionResult::new(ConstructionKind::Ggf, code, out);
    res.coset_collisions = core.collisions;
    table_check(ConstructionKind::Ggf, &res.after, (p.n, p.k, p.r - yi - ys, p.e + ys), p.c_b << (yi + 2 * ys), false)?;
    if !opts.skip_hypotheses {
        let (before, after) = distances(&mut res, code, opts)?;
        let premise = gauge_product_hypothesis(&res.code, &core.transversal_gens, &before)?;
        let premise_holds = premise.status == HypothesisStatus::Pass;
        res.hypothesis_report.push(premise);
        let mut concl = bound_check("d' >= d", &before, &after);
        if !premise_holds && concl.status == HypothesisStatus::Fail {
            concl.status = HypothesisStatus::Inconclusive;
            concl.detail.push_str(" (premise does not hold, no bound claimed)");
        }
        res.hypothesis_report.push(concl);
    }
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog;
    use crate::pauli::p;

    #[test]
    fn gf_with_no_pairs_is_identity() {
        let c = catalog("subsystem_color_code").unwrap();
        let r = gauge_fix(&c, &[], &TransversalPolicy::FullProduct, &Options::structural()).unwrap();
        assert_eq!(r.after, r.before);
        assert_eq!(r.code.s_group(), c.s_group());
    }

    #[test]
    fn cq_row_reduction_matches_table() {
        let c = catalog("color_code_cq_input").unwrap();
        let r = clean_qubits(&c, &[0, 1], &Options::structural()).unwrap();
        assert_eq!(r.after.to_string(), "[[13,1;6,2,3]]");
        assert_eq!(r.row_reduced[1], p("IXXIIXXIIXXIIXX"));
        assert_eq!(r.row_reduced[5], p("IZZIIZZIIZZIIZZ"));
        for t in r.code.transversal() {
            assert!(t.restrict(&[13, 14]).is_identity());
        }
    }

    #[test]
    fn dependent_columns_are_reported() {
        let c = crate::code::CodeBuilder::new().h(vec![p("ZII"), p("IZZ")]).build().unwrap();
        let err = clean_qubits(&c, &[0], &Options::structural()).unwrap_err();
        assert!(matches!(err, ConstructionError::DependentColumns { .. }));
        assert!(find_valid_eq(&c, 1, 10).iter().all(|s| s != &vec![0]));
    }

    #[test]
    fn css_pivots_of_color_code() {
        let c = catalog("subsystem_color_code").unwrap();
        let r = css_clean_qubits(&c, 4, &Options::structural()).unwrap();
        assert_eq!(r.ebit_qubits, vec![0, 1, 3, 7]);
        assert!(matches!(
            css_clean_qubits(&c, 5, &Options::structural()),
            Err(ConstructionError::TooManyEbits { e: 5, rank: 4 })
        ));
    }

    #[test]
    fn eagf_parameters() {
        let c = catalog("color_code_hybrid_z").unwrap();
        let r = ea_gauge_fix(&c, &[0], &Options::structural()).unwrap();
        assert_eq!(r.after.to_string(), "[[15,1;5,1,2]]");
        assert!(r.code.validate().is_valid());
    }

    #[test]
    fn explicit_transversal_outside_product_set() {
        let c = catalog("subsystem_color_code").unwrap();
        let bad = TransversalPolicy::ExplicitList(vec![p("XIIIIIIIIIIIIII")]);
        let err = gauge_fix(&c, &[PairSelection::x(0)], &bad, &Options::structural()).unwrap_err();
        assert!(matches!(err, ConstructionError::OutsideProductSet { .. }));
    }
}
