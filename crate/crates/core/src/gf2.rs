//! Packed GF(2) vectors and the small amount of linear algebra the rest of
//! the crate needs: echelon forms, rank, nullspace and linear solves.

use std::fmt;

/// Fixed-length bit vector packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

#[inline]
fn word_count(len: usize) -> usize {
    len.div_ceil(64)
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec { len, words: vec![0; word_count(len)] }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = BitVec::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = BitVec::zeros(len);
        v.set(i, true);
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, b: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if b {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn and(&self, other: &BitVec) -> BitVec {
        debug_assert_eq!(self.len, other.len);
        BitVec {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn or(&self, other: &BitVec) -> BitVec {
        debug_assert_eq!(self.len, other.len);
        BitVec {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        let mut acc = 0u32;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= (a & b).count_ones();
        }
        acc & 1 == 1
    }

    pub fn first_one(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + t)
                }
            })
        })
    }

    /// Copy of bits `start..start+len`.
    pub fn slice(&self, start: usize, len: usize) -> BitVec {
        let mut out = BitVec::zeros(len);
        for i in 0..len {
            if self.get(start + i) {
                out.set(i, true);
            }
        }
        out
    }

    /// Concatenation `self ++ other`.
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.len + other.len);
        for i in self.iter_ones() {
            out.set(i, true);
        }
        for i in other.iter_ones() {
            out.set(self.len + i, true);
        }
        out
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Incrementally built reduced row echelon basis.
///
/// Every stored row remembers which inserted vectors were combined to make
/// it, so membership queries can also return an explicit combination.
#[derive(Clone, Debug)]
pub struct Echelon {
    width: usize,
    inserted: usize,
    rows: Vec<BitVec>,
    combos: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(width: usize) -> Self {
        Echelon { width, inserted: 0, rows: Vec::new(), combos: Vec::new(), pivots: Vec::new() }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    fn grow_combos(&mut self, len: usize) {
        for c in &mut self.combos {
            if c.len() < len {
                let mut g = BitVec::zeros(len);
                for i in c.iter_ones() {
                    g.set(i, true);
                }
                *c = g;
            }
        }
    }

    /// Reduces `v` against the basis. Returns the residual and the
    /// combination (over inserted vectors) that was subtracted.
    pub fn reduce(&self, v: &BitVec) -> (BitVec, BitVec) {
        let mut r = v.clone();
        let mut combo = BitVec::zeros(self.inserted);
        for (row, (&p, c)) in self.rows.iter().zip(self.pivots.iter().zip(&self.combos)) {
            if r.get(p) {
                r.xor_assign(row);
                for i in c.iter_ones() {
                    combo.flip(i);
                }
            }
        }
        (r, combo)
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).0.is_zero()
    }

    /// Inserts `v`. On success returns `Ok(())`; if `v` is already in the
    /// span returns the combination of earlier insertions equal to it and
    /// leaves the basis unchanged (the insertion counter is not advanced).
    pub fn insert(&mut self, v: &BitVec) -> Result<(), BitVec> {
        debug_assert_eq!(v.len(), self.width);
        let (r, mut combo) = self.reduce(v);
        if r.is_zero() {
            return Err(combo);
        }
        let idx = self.inserted;
        self.inserted += 1;
        self.grow_combos(self.inserted);
        let mut c2 = BitVec::zeros(self.inserted);
        for i in combo.iter_ones() {
            c2.set(i, true);
        }
        c2.set(idx, true);
        combo = c2;
        let p = r.first_one().expect("nonzero residual");
        for (row, c) in self.rows.iter_mut().zip(self.combos.iter_mut()) {
            if row.get(p) {
                row.xor_assign(&r);
                c.xor_assign(&combo);
            }
        }
        // keep rows ordered by pivot for deterministic reduction
        let pos = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(pos, r);
        self.combos.insert(pos, combo);
        self.pivots.insert(pos, p);
        Ok(())
    }
}

/// Rank of a list of vectors of equal width.
pub fn rank(vectors: &[BitVec], width: usize) -> usize {
    let mut e = Echelon::new(width);
    for v in vectors {
        let _ = e.insert(v);
    }
    e.rank()
}

/// Basis of `{x : <row, x> = 0 for every row}`.
pub fn nullspace(rows: &[BitVec], width: usize) -> Vec<BitVec> {
    let mut e = Echelon::new(width);
    for r in rows {
        let _ = e.insert(r);
    }
    let pivots: Vec<usize> = e.pivots().to_vec();
    let is_pivot = {
        let mut m = vec![false; width];
        for &p in &pivots {
            m[p] = true;
        }
        m
    };
    let mut basis = Vec::new();
    for f in (0..width).filter(|&c| !is_pivot[c]) {
        let mut v = BitVec::unit(width, f);
        for (row, &p) in e.rows().iter().zip(&pivots) {
            if row.get(f) {
                v.set(p, true);
            }
        }
        basis.push(v);
    }
    basis
}

/// Solves `<rows[i], x> = rhs[i]` for all `i`. Free variables are zero.
pub fn solve(rows: &[BitVec], rhs: &BitVec, width: usize) -> Option<BitVec> {
    debug_assert_eq!(rows.len(), rhs.len());
    let aug: Vec<BitVec> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| r.concat(&BitVec::from_bools(&[rhs.get(i)])))
        .collect();
    let mut e = Echelon::new(width + 1);
    for r in &aug {
        let _ = e.insert(r);
    }
    let mut x = BitVec::zeros(width);
    for (row, &p) in e.rows().iter().zip(e.pivots()) {
        if p == width {
            return None;
        }
        if row.get(width) {
            x.set(p, true);
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(s: &str) -> BitVec {
        BitVec::from_bools(&s.chars().map(|c| c == '1').collect::<Vec<_>>())
    }

    #[test]
    fn echelon_reports_dependency_combination() {
        let mut e = Echelon::new(4);
        assert!(e.insert(&bv("1100")).is_ok());
        assert!(e.insert(&bv("0110")).is_ok());
        let combo = e.insert(&bv("1010")).unwrap_err();
        assert_eq!(combo.iter_ones().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn nullspace_is_orthogonal_and_complete() {
        let rows = vec![bv("11000"), bv("01100"), bv("00011")];
        let ns = nullspace(&rows, 5);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for r in &rows {
                assert!(!r.dot(v));
            }
        }
    }

    #[test]
    fn solve_finds_particular_solution() {
        let rows = vec![bv("100"), bv("011")];
        let x = solve(&rows, &bv("11"), 3).unwrap();
        assert!(rows[0].dot(&x));
        assert!(rows[1].dot(&x));
        assert!(solve(&[bv("110"), bv("110")], &bv("10"), 3).is_none());
    }

    #[test]
    fn iter_ones_crosses_word_boundary() {
        let mut v = BitVec::zeros(130);
        v.set(3, true);
        v.set(64, true);
        v.set(129, true);
        assert_eq!(v.iter_ones().collect::<Vec<_>>(), vec![3, 64, 129]);
    }
}
