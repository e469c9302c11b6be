//! Inverters with few negations.
//!
//! A vector `s` is *sorted* when it reads `0^j 1^(m-j)`. The sorted
//! inverters only promise the complement on sorted inputs.

use std::fmt;

use super::builder::Builder;
use super::ir::{Circuit, GateId};
use crate::error::{Error, Result};

/// Complements a sorted vector of wires using `⌈log2(m+1)⌉` NOT gates.
///
/// With `μ = ⌈m/2⌉` and `c = ¬s_μ`: if `c = 0` every position after `μ`
/// complements to 0 and only `s_1..s_{μ-1}` is unknown; if `c = 1` every
/// position before `μ` complements to 1 and only `s_{μ+1}..s_m` is unknown.
/// The unknown half is selected with the monotone mux
/// `u = (L ∧ s_μ) ∨ (R ∧ c)` and inverted recursively.
pub fn invert_sorted_wires(b: &mut Builder, s: &[GateId]) -> Vec<GateId> {
    let m = s.len();
    if m == 0 {
        return Vec::new();
    }
    let mu = m.div_ceil(2);
    let sel = s[mu - 1];
    let c = b.not(sel);
    let p = m / 2;
    let left = &s[..mu - 1];
    let right = &s[mu..];
    let one = b.constant(true);
    // left has p or p-1 wires; pad the top with 1s to keep it sorted
    let u: Vec<GateId> = (0..p)
        .map(|k| {
            let l = left.get(k).copied().unwrap_or(one);
            let a = b.and([l, sel]);
            let r = b.and([right[k], c]);
            b.or([a, r])
        })
        .collect();
    let v = invert_sorted_wires(b, &u);
    let mut out = Vec::with_capacity(m);
    for &vi in &v[..mu - 1] {
        let a = b.and([vi, sel]);
        out.push(b.or([a, c]));
    }
    out.push(c);
    for &vi in &v[..m - mu] {
        out.push(b.and([vi, c]));
    }
    out
}

/// `⌈log2(m + 1)⌉`.
pub fn log_negations(m: usize) -> usize {
    (usize::BITS - m.leading_zeros()) as usize
}

pub fn invert_sorted_log(m: usize) -> Circuit {
    let mut b = Builder::new(m);
    let s = b.inputs();
    let out = invert_sorted_wires(&mut b, &s);
    b.finish(out)
}

/// Complements arbitrary inputs with `⌈log2(m+1)⌉` NOT gates.
///
/// `TH_m, …, TH_1` of the inputs is sorted, so one sorted inverter yields
/// every `¬TH_k`; then `¬z_i = ⋁_k [wt = k] ∧ TH_k(z ∖ z_i)`.
pub fn fischer_wires(b: &mut Builder, z: &[GateId]) -> Vec<GateId> {
    let m = z.len();
    let th: Vec<GateId> = (0..=m).map(|k| b.th(k, z.iter().copied())).collect();
    let sorted: Vec<GateId> = (1..=m).rev().map(|k| th[k]).collect();
    let inv = invert_sorted_wires(b, &sorted);
    // inv[j] complements TH_{m-j}
    let not_th = |k: usize| inv[m - k];
    let exact: Vec<GateId> = (0..m)
        .map(|k| {
            let nt = not_th(k + 1);
            b.and([th[k], nt])
        })
        .collect();
    (0..m)
        .map(|i| {
            let others: Vec<GateId> = z
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &w)| w)
                .collect();
            let terms: Vec<GateId> = (0..m)
                .map(|k| {
                    let t = b.th(k, others.iter().copied());
                    b.and([exact[k], t])
                })
                .collect();
            b.or(terms)
        })
        .collect()
}

pub fn fischer_inverter(m: usize) -> Circuit {
    let mut b = Builder::new(m);
    let z = b.inputs();
    let out = fischer_wires(&mut b, &z);
    b.finish(out)
}

/// Structure of a block inverter: one entry per blocking level, then the
/// width of the special block inverted with plain NOT gates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockInverterReport {
    /// `(width, block length, block count)` per level, outermost first.
    pub levels: Vec<(usize, usize, usize)>,
    /// Width of the vector inverted gate by gate at the bottom.
    pub base_width: usize,
}

impl BlockInverterReport {
    /// Two NOTs per block per level plus one per base wire.
    pub fn predicted_negations(&self) -> usize {
        self.levels.iter().map(|&(_, _, t)| 2 * t).sum::<usize>() + self.base_width
    }

    pub fn base_cost(&self) -> usize {
        self.base_width
    }

    pub fn levels_used(&self) -> usize {
        self.levels.len()
    }
}

impl fmt::Display for BlockInverterReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &(w, p, t)) in self.levels.iter().enumerate() {
            writeln!(
                f,
                "level {}: width={w} blocks={t} block_len={p} nots={}",
                i + 1,
                2 * t
            )?;
        }
        write!(
            f,
            "base: width={} nots={} total_predicted={}",
            self.base_width,
            self.base_width,
            self.predicted_negations()
        )
    }
}

/// Block inverter on wires; `levels` blocking rounds at most.
///
/// The vector is split into `t` blocks of length `p = ⌈m/t⌉`, zero-padded
/// at the front so the padded vector stays sorted. At most one block
/// `B_i` is mixed; it is flagged by `b_i = ¬B_i[1] ∧ B_i[p]`. The mixed
/// block `B_r = ⋁ b_i ∧ B_i` is inverted by the next level (or gate by
/// gate), and block `i` outputs `(b_i ∧ ¬B_r) ∨ (¬b_i ∧ ¬B_i[1])`.
/// A level that would not shrink the width is skipped in favour of the
/// plain inversion.
pub fn invert_sorted_blocks_wires(
    b: &mut Builder,
    s: &[GateId],
    t: usize,
    levels: usize,
    report: &mut BlockInverterReport,
) -> Vec<GateId> {
    let m = s.len();
    let p = m.div_ceil(t.max(1));
    if levels == 0 || p >= m {
        report.base_width = m;
        return s.iter().map(|&w| b.not(w)).collect();
    }
    let blocks = m.div_ceil(p);
    report.levels.push((m, p, blocks));
    let pad = blocks * p - m;
    let zero = b.constant(false);
    let padded: Vec<GateId> = std::iter::repeat_n(zero, pad)
        .chain(s.iter().copied())
        .collect();

    let mut not_first = Vec::with_capacity(blocks);
    let mut flag = Vec::with_capacity(blocks);
    let mut not_flag = Vec::with_capacity(blocks);
    for blk in padded.chunks(p) {
        let nc = b.not(blk[0]);
        let bi = b.and([nc, blk[p - 1]]);
        let nb = b.not(bi);
        not_first.push(nc);
        flag.push(bi);
        not_flag.push(nb);
    }
    let special: Vec<GateId> = (0..p)
        .map(|j| {
            let terms: Vec<GateId> = padded
                .chunks(p)
                .zip(&flag)
                .map(|(blk, &bi)| b.and([bi, blk[j]]))
                .collect();
            b.or(terms)
        })
        .collect();
    let special_neg = invert_sorted_blocks_wires(b, &special, t, levels - 1, report);

    let mut out = Vec::with_capacity(blocks * p);
    for i in 0..blocks {
        for &sn in special_neg.iter().take(p) {
            let a = b.and([flag[i], sn]);
            let c = b.and([not_flag[i], not_first[i]]);
            out.push(b.or([a, c]));
        }
    }
    out.split_off(pad)
}

pub fn invert_sorted_blocks(
    m: usize,
    t: usize,
    levels: usize,
) -> Result<(Circuit, BlockInverterReport)> {
    if t == 0 {
        return Err(Error::InvalidParameter(
            "block count t must be positive".into(),
        ));
    }
    if levels == 0 {
        return Err(Error::InvalidParameter("levels must be at least 1".into()));
    }
    let mut b = Builder::new(m);
    let s = b.inputs();
    let mut report = BlockInverterReport {
        levels: Vec::new(),
        base_width: 0,
    };
    let out = invert_sorted_blocks_wires(&mut b, &s, t, levels, &mut report);
    Ok((b.finish(out), report))
}

/// Checks a sorted inverter on all `m + 1` sorted inputs.
pub fn check_sorted_inverter(c: &Circuit) -> bool {
    let m = c.n_inputs();
    (0..=m).all(|j| {
        let s: Vec<bool> = (0..m).map(|i| i >= j).collect();
        match c.eval_bits(&s) {
            Ok(out) => out.len() == m && out.iter().zip(&s).all(|(o, v)| *o != *v),
            Err(_) => false,
        }
    })
}

/// Checks a general inverter on all `2^m` inputs.
pub fn check_inverter(c: &Circuit) -> bool {
    let m = c.n_inputs();
    if m > 20 {
        return false;
    }
    match c.output_tables() {
        Ok(tabs) => {
            tabs.len() == m
                && tabs
                    .iter()
                    .enumerate()
                    .all(|(i, t)| (0..t.len()).all(|x| t.get(x) == ((x >> i) & 1 == 0)))
        }
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorted_log_examples() {
        let c = invert_sorted_log(4);
        assert_eq!(
            c.eval_bits(&[false, false, true, true]).unwrap(),
            vec![true, true, false, false]
        );
        assert_eq!(c.negation_count(), 3);
        let c7 = invert_sorted_log(7);
        assert_eq!(c7.negation_count(), 3);
        assert!(check_sorted_inverter(&c7));
        assert_eq!(invert_sorted_log(0).negation_count(), 0);
        assert_eq!(invert_sorted_log(1).negation_count(), 1);
    }

    #[test]
    fn sorted_log_sweep() {
        for m in 0..=64 {
            let c = invert_sorted_log(m);
            assert!(check_sorted_inverter(&c), "m={m}");
            assert_eq!(c.negation_count(), log_negations(m), "m={m}");
            assert!(c
                .gates()
                .iter()
                .all(|g| !matches!(g, super::super::Gate::Th(..))));
        }
    }

    #[test]
    fn fischer_examples() {
        let c = fischer_inverter(3);
        assert_eq!(
            c.eval_bits(&[true, false, true]).unwrap(),
            vec![false, true, false]
        );
        assert_eq!(c.negation_count(), 2);
        for m in 0..=8 {
            let c = fischer_inverter(m);
            assert!(check_inverter(&c), "m={m}");
            assert_eq!(c.negation_count(), log_negations(m), "m={m}");
        }
    }

    #[test]
    fn block_examples() {
        let (c, r) = invert_sorted_blocks(16, 4, 1).unwrap();
        assert!(check_sorted_inverter(&c));
        assert_eq!(r.base_cost(), 4);
        assert_eq!(c.negation_count(), 12);
        let (c2, r2) = invert_sorted_blocks(16, 4, 2).unwrap();
        assert!(check_sorted_inverter(&c2));
        assert!(r2.base_cost() < r.base_cost());
        let (c, _) = invert_sorted_blocks(64, 4, 1).unwrap();
        let (c2, _) = invert_sorted_blocks(64, 4, 2).unwrap();
        assert!(c2.negation_count() < c.negation_count());

        let (one, r) = invert_sorted_blocks(1, 1, 1).unwrap();
        assert_eq!(one.negation_count(), 1);
        assert!(r.levels.is_empty());
        assert!(invert_sorted_blocks(4, 0, 1).is_err());
        assert!(invert_sorted_blocks(4, 2, 0).is_err());
    }

    #[test]
    fn block_grid_and_uneven_widths() {
        for m in [8, 16, 64] {
            for t in [2, 4, 8] {
                for levels in 1..=3 {
                    let (c, r) = invert_sorted_blocks(m, t, levels).unwrap();
                    assert!(check_sorted_inverter(&c), "m={m} t={t} levels={levels}");
                    assert!(c.negation_count() <= r.predicted_negations());
                }
            }
        }
        for m in 1..=20 {
            for t in 1..=5 {
                let (c, _) = invert_sorted_blocks(m, t, 3).unwrap();
                assert!(check_sorted_inverter(&c), "m={m} t={t}");
            }
        }
    }
}
