//! Pauli operators in binary symplectic form.
//!
//! An operator is stored as `i^phase * X^x * Z^z` where `X^x` and `Z^z` are
//! tensor products over qubits and every `X` factor sits to the left of every
//! `Z` factor. Qubit 0 is the leftmost character of the text form.
//!
//! Text form: an optional phase prefix (`+`, `-`, `i`, `+i`, `-i`) followed by
//! one symbol per qubit from `I X Y Z`. Whitespace-separated cells may also use
//! `XZ`, meaning the product `X Z` on that qubit (no extra phase), which is how
//! tables of transversal operators are usually printed.

use crate::gf2::BitVec;
use serde::{Serialize, Serializer};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PauliError {
    #[error("invalid Pauli symbol {symbol:?} at position {position}")]
    InvalidSymbol { symbol: String, position: usize },
    #[error("length mismatch: expected {expected} qubits, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("empty Pauli string")]
    Empty,
}

/// Single-qubit Pauli type used for enumeration and per-qubit access.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli1 {
    I,
    X,
    Y,
    Z,
}

impl Pauli1 {
    /// Non-identity symbols in enumeration order.
    pub const NONTRIVIAL: [Pauli1; 3] = [Pauli1::X, Pauli1::Y, Pauli1::Z];

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli1::I => (false, false),
            Pauli1::X => (true, false),
            Pauli1::Y => (true, true),
            Pauli1::Z => (false, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli1::I,
            (true, false) => Pauli1::X,
            (true, true) => Pauli1::Y,
            (false, true) => Pauli1::Z,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli1::I => 'I',
            Pauli1::X => 'X',
            Pauli1::Y => 'Y',
            Pauli1::Z => 'Z',
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    x: BitVec,
    z: BitVec,
    phase: u8,
}

const PREFIXES: [&str; 4] = ["", "i", "-", "-i"];

fn parse_prefix(tok: &str) -> Option<u8> {
    match tok {
        "+" | "+1" => Some(0),
        "i" | "+i" => Some(1),
        "-" | "-1" => Some(2),
        "-i" => Some(3),
        _ => None,
    }
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        PauliOperator { x: BitVec::zeros(n), z: BitVec::zeros(n), phase: 0 }
    }

    pub fn from_bits(x: BitVec, z: BitVec, phase: u8) -> Self {
        assert_eq!(x.len(), z.len(), "x and z parts must have equal length");
        PauliOperator { x, z, phase: phase & 3 }
    }

    /// Single-qubit operator `p` on qubit `q` of an `n`-qubit register.
    pub fn single(n: usize, q: usize, p: Pauli1) -> Self {
        let mut op = PauliOperator::identity(n);
        op.set(q, p);
        op
    }

    /// Builds an operator from `(qubit, symbol)` pairs, Hermitian form.
    pub fn from_sparse(n: usize, terms: &[(usize, Pauli1)]) -> Self {
        let mut op = PauliOperator::identity(n);
        for &(q, p) in terms {
            op.set(q, p);
        }
        op
    }

    /// Parses the text form. `n` is the expected qubit count, if known.
    pub fn parse(text: &str, n: Option<usize>) -> Result<Self, PauliError> {
        let text = text.trim();
        if text.is_empty() {
            return Err(PauliError::Empty);
        }
        let mut cells: Vec<&str> = if text.contains(char::is_whitespace) {
            text.split_whitespace().collect()
        } else {
            Vec::new()
        };
        let mut prefix = 0u8;
        if cells.is_empty() {
            // contiguous form with an optional leading prefix
            let mut rest = text;
            for (p, pre) in [(3u8, "-i"), (1, "+i"), (2, "-"), (0, "+")] {
                if let Some(r) = rest.strip_prefix(pre) {
                    prefix = p;
                    rest = r;
                    break;
                }
            }
            if prefix == 0 && rest.starts_with('i') {
                prefix = 1;
                rest = &rest[1..];
            }
            let offset = text.len() - rest.len();
            let mut ops = Vec::with_capacity(rest.len());
            for (i, ch) in rest.char_indices() {
                let p = match ch {
                    'I' | '_' => Pauli1::I,
                    'X' => Pauli1::X,
                    'Y' => Pauli1::Y,
                    'Z' => Pauli1::Z,
                    _ => {
                        return Err(PauliError::InvalidSymbol {
                            symbol: ch.to_string(),
                            position: offset + i,
                        })
                    }
                };
                ops.push(p);
            }
            if let Some(n) = n {
                if ops.len() != n {
                    return Err(PauliError::LengthMismatch { expected: n, found: ops.len() });
                }
            }
            if ops.is_empty() {
                return Err(PauliError::Empty);
            }
            let mut op = PauliOperator::identity(ops.len());
            let mut ny = 0u8;
            for (q, p) in ops.into_iter().enumerate() {
                if p == Pauli1::Y {
                    ny = (ny + 1) & 3;
                }
                let (x, z) = p.bits();
                op.x.set(q, x);
                op.z.set(q, z);
            }
            op.phase = (prefix + ny) & 3;
            return Ok(op);
        }
        if let Some(p) = parse_prefix(cells[0]) {
            prefix = p;
            cells.remove(0);
        }
        Self::from_cells(&cells, prefix, n)
    }

    /// Builds an operator from per-qubit cells in `{I, X, Y, Z, XZ}`.
    pub fn from_cells(cells: &[&str], prefix: u8, n: Option<usize>) -> Result<Self, PauliError> {
        if let Some(n) = n {
            if cells.len() != n {
                return Err(PauliError::LengthMismatch { expected: n, found: cells.len() });
            }
        }
        if cells.is_empty() {
            return Err(PauliError::Empty);
        }
        let mut op = PauliOperator::identity(cells.len());
        let mut ny = 0u8;
        for (q, cell) in cells.iter().enumerate() {
            let (x, z) = match *cell {
                "I" => (false, false),
                "X" => (true, false),
                "Z" => (false, true),
                "Y" => {
                    ny = (ny + 1) & 3;
                    (true, true)
                }
                "XZ" => (true, true),
                other => {
                    return Err(PauliError::InvalidSymbol { symbol: other.to_string(), position: q })
                }
            };
            op.x.set(q, x);
            op.z.set(q, z);
        }
        op.phase = (prefix + ny) & 3;
        Ok(op)
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.x.len()
    }

    #[inline]
    pub fn x_bits(&self) -> &BitVec {
        &self.x
    }

    #[inline]
    pub fn z_bits(&self) -> &BitVec {
        &self.z
    }

    #[inline]
    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn get(&self, q: usize) -> Pauli1 {
        Pauli1::from_bits(self.x.get(q), self.z.get(q))
    }

    /// Overwrites qubit `q`, keeping the operator in Hermitian-sign form for
    /// that qubit (a `Y` is stored as `i X Z`).
    pub fn set(&mut self, q: usize, p: Pauli1) {
        let old_y = self.x.get(q) && self.z.get(q);
        let (x, z) = p.bits();
        self.x.set(q, x);
        self.z.set(q, z);
        let new_y = p == Pauli1::Y;
        self.phase = (self.phase + 4 + new_y as u8 - old_y as u8) & 3;
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    pub fn weight(&self) -> usize {
        self.x.or(&self.z).count_ones()
    }

    pub fn support(&self) -> Vec<usize> {
        self.x.or(&self.z).iter_ones().collect()
    }

    /// Number of qubits carrying `Y` (both bits set).
    fn y_count(&self) -> u32 {
        self.x.and(&self.z).count_ones() as u32
    }

    /// Symplectic product: `true` iff the operators anticommute.
    pub fn anticommutes(&self, other: &PauliOperator) -> bool {
        debug_assert_eq!(self.num_qubits(), other.num_qubits());
        self.x.dot(&other.z) ^ self.z.dot(&other.x)
    }

    pub fn commutes(&self, other: &PauliOperator) -> bool {
        !self.anticommutes(other)
    }

    /// Operator product `self * other` with exact phase.
    pub fn mul(&self, other: &PauliOperator) -> PauliOperator {
        assert_eq!(self.num_qubits(), other.num_qubits(), "qubit count mismatch");
        // Z^z1 X^x2 = (-1)^{z1.x2} X^x2 Z^z1
        let swap = self.z.and(&other.x).count_ones() as u32;
        let phase = (self.phase as u32 + other.phase as u32 + 2 * swap) & 3;
        PauliOperator { x: self.x.xor(&other.x), z: self.z.xor(&other.z), phase: phase as u8 }
    }

    /// Exact inverse (equal to the adjoint for Pauli operators).
    pub fn inverse(&self) -> PauliOperator {
        let phase = (4 - self.phase as u32 + 2 * self.y_count()) & 3;
        PauliOperator { x: self.x.clone(), z: self.z.clone(), phase: phase as u8 }
    }

    pub fn adjoint(&self) -> PauliOperator {
        self.inverse()
    }

    pub fn is_hermitian(&self) -> bool {
        (self.phase as u32 + self.y_count()) % 2 == 0
    }

    /// Same bits, phase adjusted so the operator is Hermitian. Hermitian
    /// inputs are returned unchanged; otherwise the result is `i * self`.
    pub fn hermitian(&self) -> PauliOperator {
        if self.is_hermitian() {
            self.clone()
        } else {
            PauliOperator { x: self.x.clone(), z: self.z.clone(), phase: (self.phase + 1) & 3 }
        }
    }

    /// Same bits with the phase chosen so the text form has no prefix.
    pub fn unsigned(&self) -> PauliOperator {
        PauliOperator {
            x: self.x.clone(),
            z: self.z.clone(),
            phase: (self.y_count() & 3) as u8,
        }
    }

    /// Equality ignoring phase.
    pub fn same_bits(&self, other: &PauliOperator) -> bool {
        self.x == other.x && self.z == other.z
    }

    /// Tensor product `self ⊗ other`.
    pub fn tensor(&self, other: &PauliOperator) -> PauliOperator {
        PauliOperator {
            x: self.x.concat(&other.x),
            z: self.z.concat(&other.z),
            phase: (self.phase + other.phase) & 3,
        }
    }

    /// Pads with `extra` identity qubits on the right.
    pub fn pad(&self, extra: usize) -> PauliOperator {
        self.tensor(&PauliOperator::identity(extra))
    }

    /// Restriction to the given qubits (in the given order). The phase is
    /// recomputed so that each kept `Y` keeps its Hermitian sign.
    pub fn restrict(&self, qubits: &[usize]) -> PauliOperator {
        let mut out = PauliOperator::identity(qubits.len());
        let mut dropped_y = 0u32;
        let keep: std::collections::HashSet<usize> = qubits.iter().copied().collect();
        for q in 0..self.num_qubits() {
            if !keep.contains(&q) && self.x.get(q) && self.z.get(q) {
                dropped_y += 1;
            }
        }
        for (i, &q) in qubits.iter().enumerate() {
            out.x.set(i, self.x.get(q));
            out.z.set(i, self.z.get(q));
        }
        out.phase = ((self.phase as u32 + 3 * dropped_y) & 3) as u8;
        out
    }

    /// Restriction to the first `n` qubits.
    pub fn truncate(&self, n: usize) -> PauliOperator {
        let qs: Vec<usize> = (0..n).collect();
        self.restrict(&qs)
    }

    /// Binary symplectic vector `(x | z)` of length `2n`.
    pub fn to_symplectic(&self) -> BitVec {
        self.x.concat(&self.z)
    }

    pub fn from_symplectic(v: &BitVec) -> PauliOperator {
        let n = v.len() / 2;
        PauliOperator { x: v.slice(0, n), z: v.slice(n, n), phase: 0 }.unsigned()
    }

    /// Vector `(z | x)`: its dot product with `to_symplectic` of another
    /// operator is the commutation bit.
    pub fn to_swapped(&self) -> BitVec {
        self.z.concat(&self.x)
    }

    /// Text form with `Y` symbols and a phase prefix.
    pub fn to_text(&self) -> String {
        let prefix = (self.phase as u32 + 3 * self.y_count()) & 3;
        let mut s = String::from(PREFIXES[prefix as usize]);
        for q in 0..self.num_qubits() {
            s.push(self.get(q).symbol());
        }
        s
    }

    /// Whitespace-separated cells for tables. Uses `Y` cells unless the
    /// stored phase is zero and the operator has `Y` factors whose count
    /// would force a prefix, in which case `XZ` cells are written instead.
    pub fn to_cells(&self) -> (Option<&'static str>, Vec<&'static str>) {
        let ny = self.y_count();
        let prefix = (self.phase as u32 + 3 * ny) & 3;
        let use_xz = prefix != 0 && self.phase == 0;
        let mut cells = Vec::with_capacity(self.num_qubits());
        for q in 0..self.num_qubits() {
            cells.push(match self.get(q) {
                Pauli1::I => "I",
                Pauli1::X => "X",
                Pauli1::Z => "Z",
                Pauli1::Y => {
                    if use_xz {
                        "XZ"
                    } else {
                        "Y"
                    }
                }
            });
        }
        let pre = if use_xz || prefix == 0 { None } else { Some(PREFIXES[prefix as usize]) };
        (pre, cells)
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({})", self.to_text())
    }
}

impl std::str::FromStr for PauliOperator {
    type Err = PauliError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PauliOperator::parse(s, None)
    }
}

impl Serialize for PauliOperator {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_text())
    }
}

/// Shorthand used across the crate and in tests.
pub fn p(text: &str) -> PauliOperator {
    PauliOperator::parse(text, None).unwrap_or_else(|e| panic!("bad Pauli {text:?}: {e}"))
}

/// Product of a list of operators, left to right.
pub fn product(n: usize, ops: &[&PauliOperator]) -> PauliOperator {
    ops.iter().fold(PauliOperator::identity(n), |acc, o| acc.mul(o))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xz_products_and_y() {
        let x = p("X");
        let z = p("Z");
        let xz = x.mul(&z);
        assert_eq!(xz.phase(), 0);
        assert_eq!(xz.to_text(), "-iY");
        let zx = z.mul(&x);
        assert_eq!(zx.phase(), 2);
        assert_eq!(zx.to_text(), "iY");
        assert_eq!(p("Y").phase(), 1);
        assert_eq!(p("Y").mul(&p("Y")), p("I"));
    }

    #[test]
    fn commutation_examples() {
        assert!(p("XX").commutes(&p("ZZ")));
        assert!(p("XI").anticommutes(&p("ZI")));
        assert!(p("Y").anticommutes(&p("X")));
    }

    #[test]
    fn parse_cells_with_xz() {
        let t = PauliOperator::parse("I I XZ Z Z", None).unwrap();
        assert_eq!(t.phase(), 0);
        assert_eq!(t.get(2), Pauli1::Y);
        let (pre, cells) = t.to_cells();
        assert_eq!(pre, None);
        assert_eq!(cells, vec!["I", "I", "XZ", "Z", "Z"]);
        let back = PauliOperator::from_cells(&cells, 0, Some(5)).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn text_round_trip_with_prefix() {
        for s in ["-XYZ", "iXX", "-iZ", "YYYY", "IIII"] {
            assert_eq!(p(s).to_text(), s);
        }
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            PauliOperator::parse("XQZ", None),
            Err(PauliError::InvalidSymbol { position: 1, .. })
        ));
        assert!(matches!(
            PauliOperator::parse("XZ", Some(3)),
            Err(PauliError::LengthMismatch { expected: 3, found: 2 })
        ));
    }

    #[test]
    fn restrict_keeps_hermitian_sign() {
        let op = p("YXY");
        let r = op.restrict(&[0, 1]);
        assert_eq!(r.to_text(), "YX");
        assert_eq!(op.truncate(1).to_text(), "Y");
    }

    #[test]
    fn hermitian_normalisation() {
        let prod = p("X").mul(&p("Z"));
        assert!(!prod.is_hermitian());
        assert!(prod.hermitian().is_hermitian());
    }
}
