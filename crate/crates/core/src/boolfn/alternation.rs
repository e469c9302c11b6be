//! Alternation of Boolean functions.
//!
//! `a_f(x)` is the largest number of value flips of `f` along a chain that
//! starts at `x`. Any chain is refined by a maximal chain through the same
//! points, and refining never lowers the flip count, so the maximum is
//! reached by walking covering steps only:
//!
//! ```text
//! a[1^n] = 0
//! a[x]   = max over covers y of x of  a[y] + [f(x) ≠ f(y)]
//! ```
//!
//! which is an `O(n·2^n)` sweep in decreasing index order.

use itertools::Itertools;

use super::table::{Assignment, TruthTable};
use crate::error::{Error, Result};

/// Largest arity accepted by [`alternation_bruteforce`].
pub const BRUTEFORCE_MAX_N: usize = 6;

/// Per-point maximum alternation over chains starting at the point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AltProfile {
    n: usize,
    a: Vec<u8>,
}

impl AltProfile {
    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn at(&self, idx: usize) -> usize {
        usize::from(self.a[idx])
    }

    pub fn at_point(&self, x: Assignment) -> usize {
        self.at(x.index())
    }

    pub fn values(&self) -> impl Iterator<Item = usize> + '_ {
        self.a.iter().map(|&v| usize::from(v))
    }

    /// `a[0^n]`, which equals `alt(f)`.
    pub fn alternation(&self) -> usize {
        self.at(0)
    }
}

fn cover_dp(f: &TruthTable, pick: impl Fn(u8, u8) -> u8, init: u8) -> Vec<u8> {
    let n = f.arity();
    let top = f.len() - 1;
    let mut a = vec![0u8; f.len()];
    for x in (0..top).rev() {
        let fx = f.get(x);
        let mut best = init;
        let mut free = !x & top;
        while free != 0 {
            let bit = free & free.wrapping_neg();
            free ^= bit;
            let y = x | bit;
            let cand = a[y] + u8::from(fx != f.get(y));
            best = pick(best, cand);
        }
        a[x] = best;
    }
    debug_assert!(n == 0 || a[top] == 0);
    a
}

pub fn alt_profile(f: &TruthTable) -> AltProfile {
    AltProfile {
        n: f.arity(),
        a: cover_dp(f, u8::max, 0),
    }
}

pub fn alternation(f: &TruthTable) -> usize {
    alt_profile(f).alternation()
}

/// Minimum flip count over maximal chains from `0^n`.
pub fn min_alternation(f: &TruthTable) -> usize {
    if f.arity() == 0 {
        return 0;
    }
    usize::from(cover_dp(f, u8::min, u8::MAX)[0])
}

/// True iff every maximal chain has the same number of flips.
pub fn is_uniform_alternation(f: &TruthTable) -> bool {
    min_alternation(f) == alternation(f)
}

/// Largest number of `1 → 0` steps along any chain.
pub fn decrease(f: &TruthTable) -> usize {
    let top = f.len() - 1;
    let mut d = vec![0u8; f.len()];
    for x in (0..top).rev() {
        let fx = f.get(x);
        let mut best = 0;
        let mut free = !x & top;
        while free != 0 {
            let bit = free & free.wrapping_neg();
            free ^= bit;
            let y = x | bit;
            best = best.max(d[y] + u8::from(fx && !f.get(y)));
        }
        d[x] = best;
    }
    usize::from(d[0])
}

/// `x ≺ y ⇒ f(x) ≤ f(y)`, checked on covering pairs.
pub fn is_monotone(f: &TruthTable) -> bool {
    let n = f.arity();
    // Word-level check for the low 6 variables, then cross-word pairs.
    let words = f.words();
    const LOW: [u64; 6] = [
        0x5555_5555_5555_5555,
        0x3333_3333_3333_3333,
        0x0f0f_0f0f_0f0f_0f0f,
        0x00ff_00ff_00ff_00ff,
        0x0000_ffff_0000_ffff,
        0x0000_0000_ffff_ffff,
    ];
    for (i, &low) in LOW.iter().enumerate().take(n.min(6)) {
        let shift = 1u32 << i;
        for &w in words {
            // bits where x_i = 0 and f = 1, compared with the partner x_i = 1
            let lo = w & low;
            let hi = (w >> shift) & low;
            if lo & !hi != 0 {
                return false;
            }
        }
    }
    for i in 6..n {
        let stride = 1usize << (i - 6);
        for (j, &w) in words.iter().enumerate() {
            if j & stride == 0 && w & !words[j | stride] != 0 {
                return false;
            }
        }
    }
    true
}

/// Brute-force oracle: maximum flips over all `n!` maximal chains.
pub fn alternation_bruteforce(f: &TruthTable) -> Result<usize> {
    let n = f.arity();
    if n > BRUTEFORCE_MAX_N {
        return Err(Error::ArityTooLarge {
            n,
            max: BRUTEFORCE_MAX_N,
        });
    }
    if n == 0 {
        return Ok(0);
    }
    let best = (0..n)
        .permutations(n)
        .map(|order| {
            let mut x = 0usize;
            let mut prev = f.get(0);
            let mut flips = 0;
            for i in order {
                x |= 1 << i;
                let v = f.get(x);
                flips += usize::from(v != prev);
                prev = v;
            }
            flips
        })
        .max()
        .unwrap_or(0);
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::family::{family, Family};
    use proptest::prelude::*;

    fn tt(n: usize, hex: &str) -> TruthTable {
        TruthTable::from_hex(n, hex).unwrap()
    }

    #[test]
    fn profiles_match_chain_enumeration() {
        // frozen from enumerating every chain out of each point
        let xor2 = alt_profile(&tt(2, "6"));
        assert_eq!(xor2.values().collect::<Vec<_>>(), vec![2, 1, 1, 0]);
        let and2 = alt_profile(&tt(2, "8"));
        assert_eq!(and2.values().collect::<Vec<_>>(), vec![1, 1, 1, 0]);
        let c = alt_profile(&TruthTable::ones(3).unwrap());
        assert!(c.values().all(|v| v == 0));
    }

    #[test]
    fn alternation_examples() {
        for n in 0..=6 {
            let p = family(&Family::Parity, n).unwrap();
            assert_eq!(alternation(&p), n);
            assert!(is_uniform_alternation(&p));
        }
        let f4 = family(&Family::Candidate, 4).unwrap();
        assert_eq!(f4.to_string(), "0010001011110010");
        assert_eq!(alternation(&f4), 4);
        assert_eq!(alternation(&family(&Family::Candidate, 6).unwrap()), 6);
        let th2 = family(&Family::Threshold(2), 3).unwrap();
        assert!(is_monotone(&th2));
        assert_eq!(alternation(&th2), 1);
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(alternation_bruteforce(&tt(2, "6")).unwrap(), 2);
        let th2 = family(&Family::Threshold(2), 4).unwrap();
        assert_eq!(alternation_bruteforce(&th2).unwrap(), 1);
        let point = family(&Family::PointIndicator(12), 4).unwrap();
        assert_eq!(alternation_bruteforce(&point).unwrap(), 2);
        assert!(alternation_bruteforce(&TruthTable::zeros(7).unwrap()).is_err());
    }

    #[test]
    fn uniformity() {
        // x_1 ∧ ¬x_2: the chain through 10 flips twice, the one through 01 never
        assert!(!is_uniform_alternation(&tt(2, "2")));
        // every maximal chain of a non-constant monotone function flips once
        assert!(is_uniform_alternation(&tt(2, "8")));
        assert!(is_uniform_alternation(&TruthTable::zeros(3).unwrap()));
        assert!(is_uniform_alternation(&TruthTable::ones(0).unwrap()));
    }

    #[test]
    fn monotonicity() {
        assert!(!is_monotone(&tt(2, "6")));
        assert!(is_monotone(&TruthTable::ones(4).unwrap()));
        for n in 0..10 {
            for k in 0..=n + 1 {
                assert!(is_monotone(&family(&Family::Threshold(k), n).unwrap()));
            }
        }
        // x_7 ∧ ¬x_8 crosses word boundaries
        let f = TruthTable::var(8, 7)
            .unwrap()
            .and(&TruthTable::var(8, 8).unwrap().complement());
        assert!(!is_monotone(&f));
    }

    #[test]
    fn all_functions_up_to_three_vars() {
        for n in 0..=3usize {
            for code in 0..(1u64 << (1 << n)) {
                let f = TruthTable::from_fn(n, |i| (code >> i) & 1 == 1).unwrap();
                let alt = alternation(&f);
                assert_eq!(alt, alternation_bruteforce(&f).unwrap());
                assert_eq!(is_monotone(&f), alt <= 1 && (alt == 0 || !f.get(0)));
            }
        }
    }

    fn arb_table(max_n: usize) -> impl Strategy<Value = TruthTable> {
        (0..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), 1 << n)
                .prop_map(move |bits| TruthTable::from_bits(n, &bits).unwrap())
        })
    }

    proptest! {
        #[test]
        fn dp_agrees_with_bruteforce(f in arb_table(5)) {
            prop_assert_eq!(alternation(&f), alternation_bruteforce(&f).unwrap());
        }

        #[test]
        fn profile_is_antitone(f in arb_table(6)) {
            let p = alt_profile(&f);
            let top = f.len() - 1;
            prop_assert_eq!(p.at(top), 0);
            for x in 0..f.len() {
                for i in 0..f.arity() {
                    let y = x | (1 << i);
                    prop_assert!(p.at(x) >= p.at(y));
                }
            }
        }

        #[test]
        fn complement_and_bounds(f in arb_table(7)) {
            let alt = alternation(&f);
            prop_assert_eq!(alt, alternation(&f.complement()));
            prop_assert!(alt <= f.arity());
            prop_assert_eq!(alt == 0, f.constant_value().is_some());
            // monotone iff alt ≤ 1 with the single flip going upward
            let monotone = is_monotone(&f);
            prop_assert_eq!(monotone, alt == 0 || (alt == 1 && !f.get(0)));
            prop_assert!(decrease(&f) <= alt.div_ceil(2));
        }
    }
}
