//! Minimum-weight search over sets of Pauli operators cut out by linear
//! syndrome conditions.
//!
//! Every set the crate needs (centralizer minus a subgroup, unions of
//! centralizer cosets, a span minus a smaller span) is a boolean combination
//! of conditions on the commutation bits of a candidate against a fixed list
//! of check operators. Span membership is turned into a syndrome condition
//! through the symplectic complement: `E` is in `span(A)` iff `E` commutes
//! with every element of `A`'s complement.
//!
//! Candidates are visited by weight, then by support set in lexicographic
//! order, then by per-qubit symbols in the order `X < Y < Z` with the lowest
//! qubit most significant. The parallel search returns the same first hit as
//! the sequential one.

use crate::pauli::{Pauli1, PauliOperator};
use crate::symplectic::{symplectic_complement, GeneratorSet};
use serde::Serialize;
use std::collections::HashSet;
use thiserror::Error;

pub const SYNDROME_WORDS: usize = 4;
/// Maximum number of check operators a single search can use.
pub const MAX_CHECKS: usize = 64 * SYNDROME_WORDS;

pub type Syndrome = [u64; SYNDROME_WORDS];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("search needs {0} check operators, more than the supported {MAX_CHECKS}")]
    TooManyChecks(usize),
    #[error("operator acts on {found} qubits, expected {expected}")]
    QubitCount { expected: usize, found: usize },
}

/// Which part of a union produced a hit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BranchTag {
    /// In the centralizer but outside the gauge-extended isotropic group.
    CentralizerMinusGauge,
    /// In `T_i T_j^{-1} Z` for some `i != j`.
    CosetUnion,
    /// In `<H_I, L0>` but outside `<H_I>`.
    LogicalMinusIsotropic,
    /// Generic target set used by hypothesis checks.
    Target,
}

impl BranchTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            BranchTag::CentralizerMinusGauge => "centralizer_minus_gauge",
            BranchTag::CosetUnion => "coset_union",
            BranchTag::LogicalMinusIsotropic => "logical_minus_isotropic",
            BranchTag::Target => "target",
        }
    }
}

#[derive(Clone, Debug)]
pub enum Condition {
    Zero(Syndrome),
    Nonzero(Syndrome),
    InSet(Syndrome, HashSet<Syndrome>),
    Always,
    Never,
}

#[inline]
fn masked(s: &Syndrome, m: &Syndrome) -> Syndrome {
    let mut out = [0u64; SYNDROME_WORDS];
    for i in 0..SYNDROME_WORDS {
        out[i] = s[i] & m[i];
    }
    out
}

#[inline]
fn is_zero(s: &Syndrome) -> bool {
    s.iter().all(|&w| w == 0)
}

impl Condition {
    #[inline]
    fn holds(&self, s: &Syndrome) -> bool {
        match self {
            Condition::Zero(m) => is_zero(&masked(s, m)),
            Condition::Nonzero(m) => !is_zero(&masked(s, m)),
            Condition::InSet(m, set) => set.contains(&masked(s, m)),
            Condition::Always => true,
            Condition::Never => false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Branch {
    pub tag: BranchTag,
    pub conditions: Vec<Condition>,
}

/// Builder for the check list shared by all conditions of one search.
#[derive(Clone, Debug)]
pub struct TargetSet {
    n: usize,
    checks: Vec<PauliOperator>,
    branches: Vec<Branch>,
}

impl TargetSet {
    pub fn new(n: usize) -> Self {
        TargetSet { n, checks: Vec::new(), branches: Vec::new() }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn num_checks(&self) -> usize {
        self.checks.len()
    }

    /// Appends check operators and returns the mask selecting their bits.
    pub fn add_checks(&mut self, ops: &[PauliOperator]) -> Result<Syndrome, SearchError> {
        let mut mask = [0u64; SYNDROME_WORDS];
        for o in ops {
            if o.num_qubits() != self.n {
                return Err(SearchError::QubitCount { expected: self.n, found: o.num_qubits() });
            }
            let i = self.checks.len();
            if i >= MAX_CHECKS {
                return Err(SearchError::TooManyChecks(i + 1));
            }
            mask[i / 64] |= 1 << (i % 64);
            self.checks.push(o.clone());
        }
        Ok(mask)
    }

    /// Syndrome of `op` against the checks added so far.
    pub fn syndrome(&self, op: &PauliOperator) -> Syndrome {
        let mut s = [0u64; SYNDROME_WORDS];
        for (i, c) in self.checks.iter().enumerate() {
            if c.anticommutes(op) {
                s[i / 64] |= 1 << (i % 64);
            }
        }
        s
    }

    /// Condition "commutes with every op".
    pub fn centralizer_of(&mut self, ops: &[PauliOperator]) -> Result<Condition, SearchError> {
        if ops.is_empty() {
            return Ok(Condition::Always);
        }
        Ok(Condition::Zero(self.add_checks(ops)?))
    }

    fn complement_of_span(&self, ops: &[PauliOperator]) -> Result<Option<Vec<PauliOperator>>, SearchError> {
        let set = GeneratorSet::spanning(self.n, ops)
            .map_err(|_| SearchError::QubitCount { expected: self.n, found: 0 })?;
        if set.is_empty() {
            return Ok(None);
        }
        Ok(Some(symplectic_complement(self.n, set.generators())))
    }

    /// Condition "in `span(ops)`" (phase-blind).
    pub fn in_span(&mut self, ops: &[PauliOperator]) -> Result<Condition, SearchError> {
        match self.complement_of_span(ops)? {
            None => Ok(Condition::Never),
            Some(dual) if dual.is_empty() => Ok(Condition::Always),
            Some(dual) => Ok(Condition::Zero(self.add_checks(&dual)?)),
        }
    }

    /// Condition "not in `span(ops)`".
    pub fn not_in_span(&mut self, ops: &[PauliOperator]) -> Result<Condition, SearchError> {
        Ok(match self.in_span(ops)? {
            Condition::Never => Condition::Always,
            Condition::Always => Condition::Never,
            Condition::Zero(m) => Condition::Nonzero(m),
            _ => unreachable!(),
        })
    }

    /// Condition "in `t_i t_j^{-1} Z(group)` for some `i != j`", where
    /// `group_mask` selects the group's generators among the checks.
    pub fn coset_union(&self, group_mask: Syndrome, transversal: &[PauliOperator]) -> Condition {
        let syn: Vec<Syndrome> = transversal.iter().map(|t| masked(&self.syndrome(t), &group_mask)).collect();
        let mut set = HashSet::new();
        for i in 0..syn.len() {
            for j in i + 1..syn.len() {
                let mut d = [0u64; SYNDROME_WORDS];
                for w in 0..SYNDROME_WORDS {
                    d[w] = syn[i][w] ^ syn[j][w];
                }
                set.insert(d);
            }
        }
        if set.is_empty() {
            Condition::Never
        } else {
            Condition::InSet(group_mask, set)
        }
    }

    pub fn add_branch(&mut self, tag: BranchTag, conditions: Vec<Condition>) {
        self.branches.push(Branch { tag, conditions });
    }

    /// First branch containing an operator with this syndrome.
    pub fn classify(&self, s: &Syndrome) -> Option<BranchTag> {
        self.branches
            .iter()
            .find(|b| b.conditions.iter().all(|c| c.holds(s)))
            .map(|b| b.tag)
    }

    pub fn contains(&self, op: &PauliOperator) -> Option<BranchTag> {
        if op.is_identity() {
            return None;
        }
        self.classify(&self.syndrome(op))
    }

    fn is_empty_set(&self) -> bool {
        self.branches
            .iter()
            .all(|b| b.conditions.iter().any(|c| matches!(c, Condition::Never)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Sequential,
    #[default]
    Parallel,
}

/// Outcome of a bounded minimum-weight search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub cutoff: usize,
    pub weight: Option<usize>,
    pub witness: Option<PauliOperator>,
    pub branch: Option<BranchTag>,
}

impl SearchResult {
    pub fn exceeded_cutoff(&self) -> bool {
        self.weight.is_none()
    }
}

struct Prepared<'a> {
    n: usize,
    set: &'a TargetSet,
    columns: Vec<[Syndrome; 3]>,
}

fn xor(a: &Syndrome, b: &Syndrome) -> Syndrome {
    let mut out = *a;
    for i in 0..SYNDROME_WORDS {
        out[i] ^= b[i];
    }
    out
}

impl<'a> Prepared<'a> {
    fn new(set: &'a TargetSet) -> Self {
        let n = set.n;
        let columns = (0..n)
            .map(|q| {
                let mut c = [[0u64; SYNDROME_WORDS]; 3];
                for (t, p) in Pauli1::NONTRIVIAL.iter().enumerate() {
                    c[t] = set.syndrome(&PauliOperator::single(n, q, *p));
                }
                c
            })
            .collect();
        Prepared { n, set, columns }
    }

    /// Symbol assignments for one support set, lowest qubit most significant.
    fn scan_symbols(&self, support: &[usize], depth: usize, acc: Syndrome, symbols: &mut Vec<usize>) -> Option<BranchTag> {
        if depth == support.len() {
            return self.set.classify(&acc);
        }
        for t in 0..3 {
            symbols.push(t);
            let next = xor(&acc, &self.columns[support[depth]][t]);
            if let Some(tag) = self.scan_symbols(support, depth + 1, next, symbols) {
                return Some(tag);
            }
            symbols.pop();
        }
        None
    }

    /// All supports of size `w` beginning with `prefix`, in lexicographic order.
    fn scan_prefix(&self, prefix: &[usize], w: usize) -> Option<(PauliOperator, BranchTag)> {
        let mut support: Vec<usize> = prefix.to_vec();
        let need = w - prefix.len();
        let start = prefix.last().map(|&q| q + 1).unwrap_or(0);
        if start + need > self.n {
            return None;
        }
        // combination tail as an index array
        let mut tail: Vec<usize> = (start..start + need).collect();
        loop {
            support.truncate(prefix.len());
            support.extend_from_slice(&tail);
            let mut symbols = Vec::with_capacity(w);
            if let Some(tag) = self.scan_symbols(&support, 0, [0; SYNDROME_WORDS], &mut symbols) {
                let terms: Vec<(usize, Pauli1)> =
                    support.iter().zip(&symbols).map(|(&q, &t)| (q, Pauli1::NONTRIVIAL[t])).collect();
                return Some((PauliOperator::from_sparse(self.n, &terms), tag));
            }
            // advance the tail combination
            let mut i = need;
            loop {
                if i == 0 {
                    return None;
                }
                i -= 1;
                if tail[i] < self.n - need + i {
                    tail[i] += 1;
                    for j in i + 1..need {
                        tail[j] = tail[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    fn prefixes(&self, w: usize) -> Vec<Vec<usize>> {
        let n = self.n;
        if w == 1 {
            return (0..n).map(|q| vec![q]).collect();
        }
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if b + (w - 2) < n {
                    out.push(vec![a, b]);
                }
            }
        }
        out
    }

    fn search_weight(&self, w: usize, strategy: Strategy) -> Option<(PauliOperator, BranchTag)> {
        let prefixes = self.prefixes(w);
        match strategy {
            Strategy::Sequential => prefixes.iter().find_map(|p| self.scan_prefix(p, w)),
            Strategy::Parallel => parallel_find_first(&prefixes, |p| self.scan_prefix(p, w)),
        }
    }
}

#[cfg(feature = "parallel")]
fn parallel_find_first<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> Option<R> + Sync + Send) -> Option<R> {
    use rayon::prelude::*;
    items.par_iter().find_map_first(f)
}

#[cfg(not(feature = "parallel"))]
fn parallel_find_first<T, R>(items: &[T], f: impl Fn(&T) -> Option<R>) -> Option<R> {
    items.iter().find_map(f)
}

/// Smallest-weight element of `set` with weight at most `cutoff`.
pub fn min_weight(set: &TargetSet, cutoff: usize, strategy: Strategy) -> SearchResult {
    let cutoff = cutoff.min(set.n);
    let none = SearchResult { cutoff, weight: None, witness: None, branch: None };
    if set.is_empty_set() {
        return none;
    }
    let prepared = Prepared::new(set);
    for w in 1..=cutoff {
        if let Some((op, tag)) = prepared.search_weight(w, strategy) {
            return SearchResult { cutoff, weight: Some(w), witness: Some(op), branch: Some(tag) };
        }
    }
    none
}

/// Runs `f` with the data-parallel pool limited to `threads` workers.
/// Without the `parallel` feature, or with `None`, `f` runs directly.
pub fn with_threads<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    {
        if let Some(t) = threads {
            if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build() {
                return pool.install(f);
            }
        }
        f()
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        f()
    }
}

/// Number of worker threads available to the parallel search.
pub fn available_threads() -> usize {
    #[cfg(feature = "parallel")]
    {
        rayon::current_num_threads()
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::p;

    fn brute_force_min(n: usize, pred: impl Fn(&PauliOperator) -> bool, cutoff: usize) -> Option<PauliOperator> {
        // independent oracle: all 4^n operators sorted by the documented order
        let mut all = Vec::new();
        for code in 0..4usize.pow(n as u32) {
            let mut op = PauliOperator::identity(n);
            let mut c = code;
            for q in 0..n {
                op.set(q, [Pauli1::I, Pauli1::X, Pauli1::Y, Pauli1::Z][c % 4]);
                c /= 4;
            }
            if !op.is_identity() && op.weight() <= cutoff && pred(&op) {
                all.push(op);
            }
        }
        all.sort_by_key(|o| {
            let sup = o.support();
            let sym: Vec<Pauli1> = sup.iter().map(|&q| o.get(q)).collect();
            (sup.len(), sup, sym)
        });
        all.into_iter().next()
    }

    #[test]
    fn matches_brute_force_on_small_code() {
        let h = vec![p("XXXXI"), p("ZZZZI"), p("IIIZZ")];
        let gauge = vec![p("XXIII")];
        let mut set = TargetSet::new(5);
        let c = set.centralizer_of(&h).unwrap();
        let mut span = h.clone();
        span.extend(gauge.clone());
        let out = set.not_in_span(&span).unwrap();
        set.add_branch(BranchTag::CentralizerMinusGauge, vec![c, out]);
        let hs = GeneratorSet::spanning(5, &span).unwrap();
        let expected = brute_force_min(5, |o| h.iter().all(|g| g.commutes(o)) && !hs.contains(o), 5);
        for strategy in [Strategy::Sequential, Strategy::Parallel] {
            let r = min_weight(&set, 5, strategy);
            assert_eq!(r.witness, expected.clone().map(|o| o.unsigned()));
        }
    }

    #[test]
    fn empty_target_reports_cutoff() {
        let mut set = TargetSet::new(3);
        let never = set.in_span(&[]).unwrap();
        set.add_branch(BranchTag::Target, vec![never]);
        let r = min_weight(&set, 3, Strategy::Sequential);
        assert!(r.exceeded_cutoff());
    }

    #[test]
    fn coset_union_hits_shifted_centralizer() {
        let h = vec![p("ZZ"), p("XX")];
        let mut set = TargetSet::new(2);
        let mask = set.add_checks(&h).unwrap();
        let cu = set.coset_union(mask, &[p("II"), p("XI")]);
        set.add_branch(BranchTag::CosetUnion, vec![cu]);
        let r = min_weight(&set, 2, Strategy::Sequential);
        assert_eq!(r.weight, Some(1));
        assert_eq!(r.witness.unwrap().to_text(), "XI");
    }
}
