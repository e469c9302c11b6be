//! Dense truth tables.
//!
//! Bit `idx` of a table on `n` variables holds `f(x)` where
//! `idx = x_1 + 2·x_2 + … + 2^(n-1)·x_n`, so `x_1` is the least significant
//! bit of the index and toggles fastest.

use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Not};

use crate::error::{Error, Result};

/// Hard ceiling on the arity of any table (2^26 bits = 8 MiB).
pub const MAX_ARITY: usize = 26;

/// Default arity limit applied to user-supplied inputs.
pub const DEFAULT_MAX_N: usize = 20;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n: usize,
    words: Vec<u64>,
}

fn word_count(n: usize) -> usize {
    if n >= 6 {
        1 << (n - 6)
    } else {
        1
    }
}

fn tail_mask(n: usize) -> u64 {
    if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1u32 << n)) - 1
    }
}

impl TruthTable {
    fn check_arity(n: usize) -> Result<()> {
        if n > MAX_ARITY {
            return Err(Error::ArityTooLarge { n, max: MAX_ARITY });
        }
        Ok(())
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::check_arity(n)?;
        Ok(TruthTable {
            n,
            words: vec![0; word_count(n)],
        })
    }

    pub fn ones(n: usize) -> Result<Self> {
        let mut t = Self::zeros(n)?;
        let mask = tail_mask(n);
        t.words.iter_mut().for_each(|w| *w = mask);
        Ok(t)
    }

    pub fn constant(n: usize, value: bool) -> Result<Self> {
        if value {
            Self::ones(n)
        } else {
            Self::zeros(n)
        }
    }

    /// Builds a table by evaluating `f` on every assignment index.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize) -> bool) -> Result<Self> {
        let mut t = Self::zeros(n)?;
        for idx in 0..t.len() {
            if f(idx) {
                t.set(idx, true);
            }
        }
        Ok(t)
    }

    /// Builds a table from a bit slice ordered by assignment index.
    pub fn from_bits(n: usize, bits: &[bool]) -> Result<Self> {
        if bits.len() != 1usize << n.min(MAX_ARITY + 1) {
            return Err(Error::InvalidParameter(format!(
                "expected {} bits for n={}, got {}",
                1usize << n.min(MAX_ARITY + 1),
                n,
                bits.len()
            )));
        }
        Self::from_fn(n, |i| bits[i])
    }

    /// The projection `x_i` (1-based variable index).
    pub fn var(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::InvalidParameter(format!(
                "variable x{i} out of range for n={n}"
            )));
        }
        Self::from_fn(n, |idx| (idx >> (i - 1)) & 1 == 1)
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    /// Number of assignments, `2^n`.
    pub fn len(&self) -> usize {
        1 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn get(&self, idx: usize) -> bool {
        debug_assert!(idx < self.len());
        (self.words[idx >> 6] >> (idx & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, idx: usize, value: bool) {
        debug_assert!(idx < self.len());
        let mask = 1u64 << (idx & 63);
        if value {
            self.words[idx >> 6] |= mask;
        } else {
            self.words[idx >> 6] &= !mask;
        }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub(crate) fn from_words(n: usize, mut words: Vec<u64>) -> Result<Self> {
        Self::check_arity(n)?;
        if words.len() != word_count(n) {
            return Err(Error::InvalidParameter("word count mismatch".into()));
        }
        if let Some(last) = words.last_mut() {
            *last &= tail_mask(n);
        }
        Ok(TruthTable { n, words })
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `Some(b)` when the function is the constant `b`.
    pub fn constant_value(&self) -> Option<bool> {
        let ones = self.count_ones();
        if ones == 0 {
            Some(false)
        } else if ones == self.len() {
            Some(true)
        } else {
            None
        }
    }

    pub fn is_const(&self, value: bool) -> bool {
        self.constant_value() == Some(value)
    }

    /// Pointwise implication `self(x) = 1 ⇒ other(x) = 1`.
    pub fn implies(&self, other: &TruthTable) -> bool {
        self.n == other.n
            && self
                .words
                .iter()
                .zip(&other.words)
                .all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }

    fn zip_with(&self, other: &TruthTable, op: impl Fn(u64, u64) -> u64) -> TruthTable {
        assert_eq!(self.n, other.n, "arity mismatch in table operation");
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(&a, &b)| op(a, b))
            .collect();
        TruthTable { n: self.n, words }
    }

    pub fn and(&self, other: &TruthTable) -> TruthTable {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn or(&self, other: &TruthTable) -> TruthTable {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn xor(&self, other: &TruthTable) -> TruthTable {
        self.zip_with(other, |a, b| a ^ b)
    }

    pub fn complement(&self) -> TruthTable {
        let mask = tail_mask(self.n);
        TruthTable {
            n: self.n,
            words: self.words.iter().map(|w| !w & mask).collect(),
        }
    }

    pub fn check_same_arity(&self, other: &TruthTable) -> Result<()> {
        if self.n != other.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        Ok(())
    }
}

impl BitAnd for &TruthTable {
    type Output = TruthTable;
    fn bitand(self, rhs: &TruthTable) -> TruthTable {
        self.and(rhs)
    }
}

impl BitOr for &TruthTable {
    type Output = TruthTable;
    fn bitor(self, rhs: &TruthTable) -> TruthTable {
        self.or(rhs)
    }
}

impl BitXor for &TruthTable {
    type Output = TruthTable;
    fn bitxor(self, rhs: &TruthTable) -> TruthTable {
        self.xor(rhs)
    }
}

impl Not for &TruthTable {
    type Output = TruthTable;
    fn not(self) -> TruthTable {
        self.complement()
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruthTable(n={}, {})", self.n, self.to_hex())
    }
}

impl fmt::Display for TruthTable {
    /// Bits in index order, e.g. `0110` for XOR2.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// An input point of `{0,1}^n`, stored as its table index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment {
    n: usize,
    idx: usize,
}

impl Assignment {
    pub fn new(n: usize, idx: usize) -> Result<Self> {
        if n > MAX_ARITY || idx >> n != 0 {
            return Err(Error::AssignmentOutOfRange { n, idx });
        }
        Ok(Assignment { n, idx })
    }

    /// From variable values `[x_1, …, x_n]`.
    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        let idx = bits
            .iter()
            .enumerate()
            .fold(0usize, |acc, (i, &b)| acc | (usize::from(b) << i));
        Self::new(bits.len(), idx)
    }

    pub fn zeros(n: usize) -> Self {
        Assignment { n, idx: 0 }
    }

    pub fn ones(n: usize) -> Self {
        Assignment {
            n,
            idx: (1 << n) - 1,
        }
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn index(&self) -> usize {
        self.idx
    }

    /// Value of `x_i` (1-based).
    pub fn bit(&self, i: usize) -> bool {
        (self.idx >> (i - 1)) & 1 == 1
    }

    pub fn bits(&self) -> Vec<bool> {
        (1..=self.n).map(|i| self.bit(i)).collect()
    }

    pub fn weight(&self) -> usize {
        self.idx.count_ones() as usize
    }

    /// Strict bitwise order `self ≺ other`.
    pub fn precedes(&self, other: &Assignment) -> bool {
        self.n == other.n && self.idx != other.idx && self.idx & !other.idx == 0
    }
}

/// Evaluates `f` at `x`.
pub fn eval(f: &TruthTable, x: Assignment) -> Result<bool> {
    if x.arity() != f.arity() {
        return Err(Error::ArityMismatch {
            expected: f.arity(),
            got: x.arity(),
        });
    }
    Ok(f.get(x.index()))
}

/// A strictly increasing sequence of points under the bitwise order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    points: Vec<Assignment>,
}

impl Chain {
    pub fn new(points: Vec<Assignment>) -> Result<Self> {
        for w in points.windows(2) {
            if !w[0].precedes(&w[1]) {
                return Err(Error::InvalidChain(format!(
                    "{:?} does not strictly precede {:?}",
                    w[0], w[1]
                )));
            }
        }
        Ok(Chain { points })
    }

    pub fn points(&self) -> &[Assignment] {
        &self.points
    }

    /// Number of value flips of `f` along the chain.
    pub fn alternation(&self, f: &TruthTable) -> usize {
        self.points
            .windows(2)
            .filter(|w| f.get(w[0].index()) != f.get(w[1].index()))
            .count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_examples() {
        let and2 = TruthTable::from_fn(2, |i| i == 3).unwrap();
        let xor2 = TruthTable::from_fn(2, |i| i == 1 || i == 2).unwrap();
        let x11 = Assignment::from_bits(&[true, true]).unwrap();
        let x10 = Assignment::from_bits(&[true, false]).unwrap();
        assert!(eval(&and2, x11).unwrap());
        assert!(eval(&xor2, x10).unwrap());
        let zero = TruthTable::zeros(3).unwrap();
        for idx in 0..8 {
            assert!(!eval(&zero, Assignment::new(3, idx).unwrap()).unwrap());
        }
        assert!(matches!(
            eval(&and2, Assignment::zeros(3)),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn tail_bits_stay_clear() {
        let t = TruthTable::ones(2).unwrap();
        assert_eq!(t.count_ones(), 4);
        assert_eq!(t.complement().count_ones(), 0);
        let n0 = TruthTable::ones(0).unwrap();
        assert_eq!(n0.len(), 1);
        assert_eq!(n0.constant_value(), Some(true));
    }

    #[test]
    fn large_tables_use_many_words() {
        let t = TruthTable::var(8, 8).unwrap();
        assert_eq!(t.words().len(), 4);
        assert_eq!(t.count_ones(), 128);
        assert!(t.get(255) && !t.get(127));
    }

    #[test]
    fn chain_validation() {
        let p = |i| Assignment::new(2, i).unwrap();
        assert!(Chain::new(vec![p(0), p(1), p(3)]).is_ok());
        assert!(Chain::new(vec![p(1), p(2)]).is_err());
        assert!(Chain::new(vec![p(1), p(1)]).is_err());
        let xor2 = TruthTable::from_fn(2, |i| i == 1 || i == 2).unwrap();
        assert_eq!(
            Chain::new(vec![p(0), p(1), p(3)])
                .unwrap()
                .alternation(&xor2),
            2
        );
    }

    #[test]
    fn assignment_bounds() {
        assert!(Assignment::new(2, 4).is_err());
        assert!(Assignment::new(0, 0).is_ok());
        let x = Assignment::from_bits(&[false, false, true, true]).unwrap();
        assert_eq!(x.index(), 12);
        assert_eq!(x.weight(), 2);
    }
}
