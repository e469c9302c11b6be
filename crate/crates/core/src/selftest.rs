//! The acceptance suite: fourteen exhaustive or corpus-based checks, each
//! reported as pass or fail with a one-line summary.
//!
//! `Level::Full` sweeps every function on up to 4 variables and inverters
//! up to width 256; `Level::Quick` stops at 3 variables and smaller
//! widths. Sweeps run on the current rayon pool and report the first
//! counterexample in enumeration order, so results do not depend on the
//! thread count.

use std::fmt;
use std::time::{Duration, Instant};

use rand::Rng;
use rayon::prelude::*;

use crate::boolfn::Assignment;
use crate::boolfn::{alternation, ceil_log2_plus1, decrease, is_uniform_alternation, TruthTable};
use crate::circuits::{
    check_inverter, check_sorted_inverter, fischer_inverter, invert_sorted_blocks,
    invert_sorted_log, log_negations, markov_circuit, mdt_from_circuit, negation_lower_bound,
    Circuit,
};
use crate::decomp::{
    alternation_decomposition, threshold_interleaved_decomposition, uniform_chain_decomposition,
    verify_decomposition,
};
use crate::gen::{instance_rng, random_circuit, random_mdl, random_rmdt, random_wrmdt};
use crate::models::{
    adaptive_certificate, mdl_from_mdt, mdt_build, mdt_from_mdl, namdt_build,
    nonadaptive_certificate, verify_certificate, MdtNode, MonotoneDecisionList,
    MonotoneDecisionTree, Query,
};
use crate::stochastic::{
    m1_to_m2, m2_to_m1, nmdt_build, rmdt_derandomize, rmdt_normalize, wrmdt_to_rmdt, M1Node,
    RandomizedMdt,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    pub level: Level,
    pub seed: u64,
}

impl Config {
    fn max_n(&self) -> usize {
        match self.level {
            Level::Quick => 3,
            Level::Full => 4,
        }
    }

    fn corpus(&self, full: u64, quick: u64) -> u64 {
        match self.level {
            Level::Quick => quick,
            Level::Full => full,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] C{} {}: {}", self.id, self.title, self.detail)
    }
}

pub const TITLES: [&str; 14] = [
    "adaptive tree height is ceil(log2(alt+1))",
    "non-adaptive tree height is alt",
    "alternation decomposition",
    "threshold-interleaved decomposition",
    "uniqueness under uniform alternation",
    "list/tree conversions",
    "certificates",
    "nondeterministic trees",
    "randomized tree probabilities and derandomization",
    "query-set randomized trees",
    "inverters",
    "Markov-bound circuits",
    "depth/negation lower bound",
    "alternation at most 2^height",
];

type Check = std::result::Result<String, String>;

pub fn run_criterion(id: usize, cfg: &Config) -> CriterionReport {
    let start = Instant::now();
    let outcome = match id {
        1 => c1_adaptive_height(cfg),
        2 => c2_nonadaptive(cfg),
        3 => c3_decomposition(cfg),
        4 => c4_threshold(cfg),
        5 => c5_uniqueness(cfg),
        6 => c6_list_tree(cfg),
        7 => c7_certificates(cfg),
        8 => c8_nondeterministic(cfg),
        9 => c9_randomized(cfg),
        10 => c10_query_sets(cfg),
        11 => c11_inverters(cfg),
        12 => c12_markov(cfg),
        13 => c13_lower_bound(cfg),
        14 => c14_height_constraint(cfg),
        _ => Err(format!("no criterion {id}")),
    };
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CriterionReport {
        id,
        title: TITLES.get(id.wrapping_sub(1)).copied().unwrap_or("unknown"),
        passed,
        detail,
        elapsed: start.elapsed(),
    }
}

pub fn run_all(cfg: &Config) -> Vec<CriterionReport> {
    (1..=TITLES.len())
        .map(|id| run_criterion(id, cfg))
        .collect()
}

fn function(n: usize, code: u64) -> TruthTable {
    TruthTable::from_fn(n, |i| (code >> i) & 1 == 1).expect("small arity")
}

/// Runs `check` on every function of arity `0..=max_n`; returns the count
/// or the first failure.
fn sweep<F>(max_n: usize, check: F) -> std::result::Result<u64, String>
where
    F: Fn(&TruthTable) -> std::result::Result<(), String> + Sync,
{
    let mut total = 0;
    for n in 0..=max_n {
        let count = 1u64 << (1u64 << n);
        let bad = (0..count).into_par_iter().find_map_first(|code| {
            let f = function(n, code);
            check(&f)
                .err()
                .map(|e| format!("n={n} f={}: {e}", f.to_hex()))
        });
        if let Some(e) = bad {
            return Err(e);
        }
        total += count;
    }
    Ok(total)
}

fn expect(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn table_of(t: crate::Result<TruthTable>) -> std::result::Result<TruthTable, String> {
    t.map_err(|e| e.to_string())
}

fn c1_adaptive_height(cfg: &Config) -> Check {
    let n = cfg.max_n();
    let total = sweep(n, |f| {
        let t = mdt_build(f);
        let want = ceil_log2_plus1(alternation(f));
        expect(t.height() == want, || {
            format!("height {} != {want}", t.height())
        })?;
        expect(table_of(t.to_table())? == *f, || {
            "tree differs from f".into()
        })
    })?;
    Ok(format!(
        "{total} functions with n <= {n}, heights exact, all equivalent"
    ))
}

fn c2_nonadaptive(cfg: &Config) -> Check {
    let n = cfg.max_n();
    let total = sweep(n, |f| {
        let t = namdt_build(f);
        let alt = alternation(f);
        expect(t.height() == alt, || {
            format!("height {} != alt {alt}", t.height())
        })?;
        expect(table_of(t.to_table())? == *f, || {
            "tree differs from f".into()
        })
    })?;
    Ok(format!(
        "{total} functions with n <= {n}, height = alt, all equivalent"
    ))
}

fn c3_decomposition(cfg: &Config) -> Check {
    let n = cfg.max_n();
    let total = sweep(n, |f| {
        let d = alternation_decomposition(f);
        let want = alternation(f) + usize::from(f.get(0));
        expect(d.len() == want, || format!("length {} != {want}", d.len()))?;
        let r = verify_decomposition(f, &d).map_err(|e| e.to_string())?;
        expect(
            r.xor_equals_target && r.all_monotone && r.implication_holds,
            || format!("verification failed: {r}"),
        )
    })?;
    Ok(format!(
        "{total} functions with n <= {n}: length alt + f(0), XOR, monotone, implication"
    ))
}

fn c4_threshold(cfg: &Config) -> Check {
    let n = cfg.max_n();
    let total = sweep(n, |f| {
        let d = threshold_interleaved_decomposition(f);
        let want = 2 * f.arity() + 1;
        expect(d.len() == want, || {
            format!("{} components != {want}", d.len())
        })?;
        let r = verify_decomposition(f, &d).map_err(|e| e.to_string())?;
        expect(r.xor_equals_target && r.implication_holds, || {
            format!("verification failed: {r}")
        })
    })?;
    Ok(format!(
        "{total} functions with n <= {n}: 2n+1 components, XOR, implication"
    ))
}

fn c5_uniqueness(cfg: &Config) -> Check {
    let n = cfg.max_n();
    let uniform = std::sync::atomic::AtomicU64::new(0);
    let total = sweep(n, |f| {
        if !is_uniform_alternation(f) {
            return Ok(());
        }
        uniform.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        let u = uniform_chain_decomposition(f).map_err(|e| e.to_string())?;
        let a = alternation_decomposition(f);
        expect(u.components() == a.components(), || {
            "uniform-chain and alternation decompositions differ".into()
        })
    })?;
    Ok(format!(
        "{} uniform functions among {total} with n <= {n}, decompositions identical",
        uniform.into_inner()
    ))
}

fn mdl_corpus(cfg: &Config) -> Vec<MonotoneDecisionList> {
    (0..cfg.corpus(500, 100))
        .into_par_iter()
        .map(|i| {
            let mut rng = instance_rng(cfg.seed ^ 0x6d64_6c00, i);
            let n = rng.gen_range(1..=5);
            random_mdl(&mut rng, n)
        })
        .collect()
}

fn chain_query(n: usize, i: usize) -> Query {
    Query::table(TruthTable::from_fn(n, move |x| x >= (1 << n) - i).expect("small arity"))
}

fn shape(n: &MdtNode, names: &dyn Fn(&Query) -> String) -> String {
    match n {
        MdtNode::Leaf(b) => u8::from(*b).to_string(),
        MdtNode::Query { query, zero, one } => {
            format!(
                "{}[{} {}]",
                names(query),
                shape(zero, names),
                shape(one, names)
            )
        }
    }
}

/// An 8-node forward-firing list becomes the balanced tree rooted at
/// `f_4`, and the leaf reached when node `i` fires first carries `c_i`.
fn list_to_tree_example() -> std::result::Result<(), String> {
    let qs: Vec<Query> = (1..=7).map(|i| chain_query(3, i)).collect();
    let name = |q: &Query| match qs.iter().position(|p| p == q) {
        Some(i) => format!("f{}", i + 1),
        None => "1".into(),
    };
    let list = |hot: Option<usize>| {
        let mut nodes: Vec<(Query, bool)> = qs
            .iter()
            .enumerate()
            .map(|(j, q)| (q.clone(), Some(j + 1) == hot))
            .collect();
        nodes.push((Query::one(), Some(8) == hot));
        MonotoneDecisionList::new(3, nodes).expect("arity 3")
    };
    let t = mdt_from_mdl(&list(None)).map_err(|e| e.to_string())?;
    let got = shape(t.root(), &name);
    let want = "f4[f6[f7[0 0] f5[0 0]] f2[f3[0 0] f1[0 0]]]";
    expect(got == want, || format!("list-to-tree shape {got}"))?;
    for i in 1..=8 {
        let ti = mdt_from_mdl(&list(Some(i))).map_err(|e| e.to_string())?;
        let mut node = ti.root();
        while let MdtNode::Query { query, zero, one } = node {
            let j = qs.iter().position(|p| p == query).map_or(8, |j| j + 1);
            node = if j >= i { one } else { zero };
        }
        expect(node == &MdtNode::Leaf(true), || {
            format!("leaf for c{i} misplaced")
        })?;
    }
    Ok(())
}

/// A complete height-3 tree over `f_1..f_7` becomes the list of path
/// conjunctions, 1-children first.
fn tree_to_list_example() -> std::result::Result<(), String> {
    let f: Vec<Query> = (0..=7).map(|i| chain_query(4, i)).collect();
    let leaf = |i: usize| MdtNode::Leaf(i.is_multiple_of(2));
    let node = |q: usize, a: MdtNode, b: MdtNode| MdtNode::query(f[q].clone(), a, b);
    let root = node(
        1,
        node(2, node(4, leaf(1), leaf(2)), node(5, leaf(3), leaf(4))),
        node(3, node(6, leaf(5), leaf(6)), node(7, leaf(7), leaf(8))),
    );
    let t = MonotoneDecisionTree::new(4, root).map_err(|e| e.to_string())?;
    let l = mdl_from_mdt(&t);
    let and = |ix: &[usize]| Query::and(ix.iter().map(|&i| f[i].clone()).collect());
    let want = [
        and(&[1, 3, 7]),
        and(&[1, 3]),
        and(&[1, 6]),
        and(&[1]),
        and(&[2, 5]),
        and(&[2]),
        and(&[4]),
        Query::one(),
    ];
    let got: Vec<Query> = l.nodes().iter().map(|(q, _)| q.clone()).collect();
    expect(got == want, || "tree-to-list queries differ".into())?;
    let labels: Vec<bool> = l.constants().collect();
    let want_labels: Vec<bool> = (1..=8).rev().map(|i| i % 2 == 0).collect();
    expect(labels == want_labels, || {
        "tree-to-list constants differ".into()
    })?;
    expect(table_of(l.to_table())? == table_of(t.to_table())?, || {
        "tree-to-list semantics differ".into()
    })
}

fn c6_list_tree(cfg: &Config) -> Check {
    let corpus = mdl_corpus(cfg);
    let bad = corpus.par_iter().enumerate().find_map_first(|(i, l)| {
        let check = || -> std::result::Result<(), String> {
            let f = table_of(l.to_table())?;
            let t = mdt_from_mdl(l).map_err(|e| e.to_string())?;
            expect(table_of(t.to_table())? == f, || "tree differs".into())?;
            let bound = (l.len() as f64).log2().ceil() as usize;
            expect(t.height() <= bound, || {
                format!("height {} above ceil(log2 {})", t.height(), l.len())
            })?;
            let back = mdl_from_mdt(&t);
            back.validate().map_err(|e| e.to_string())?;
            expect(table_of(back.to_table())? == f, || "list differs".into())
        };
        check().err().map(|e| format!("list #{i}: {e}"))
    });
    if let Some(e) = bad {
        return Err(e);
    }
    list_to_tree_example()?;
    tree_to_list_example()?;
    Ok(format!(
        "{} generated lists round-trip exactly; both worked examples reproduced exactly",
        corpus.len()
    ))
}

fn c7_certificates(cfg: &Config) -> Check {
    let n = cfg.max_n();
    let total = sweep(n, |f| {
        let g = nonadaptive_certificate(f);
        let alt = alternation(f);
        expect(g.len() == alt, || {
            format!("global set size {} != alt {alt}", g.len())
        })?;
        expect(
            verify_certificate(f, &g).map_err(|e| e.to_string())?,
            || "global set does not determine f".into(),
        )?;
        for x in 0..f.len() {
            let a = Assignment::new(f.arity(), x).map_err(|e| e.to_string())?;
            let c = adaptive_certificate(f, a).map_err(|e| e.to_string())?;
            expect(c.len() <= 2, || {
                format!("certificate at {x} has {} functions", c.len())
            })?;
            expect(
                verify_certificate(f, &c).map_err(|e| e.to_string())?,
                || format!("certificate at {x} invalid"),
            )?;
        }
        Ok(())
    })?;
    Ok(format!(
        "{total} functions with n <= {n}: anchored size <= 2 at every input, global size = alt"
    ))
}

fn c8_nondeterministic(cfg: &Config) -> Check {
    let n = cfg.max_n();
    let total = sweep(n, |f| {
        let t = nmdt_build(f);
        let alt = alternation(f);
        let branches = match t.root() {
            M1Node::Branch(e) => e.len(),
            M1Node::Leaf(_) => 0,
        };
        expect(t.height() == 2, || format!("height {}", t.height()))?;
        expect(
            alt.div_ceil(2) <= branches && branches <= (alt + 1).div_ceil(2),
            || format!("{branches} branches for alt {alt}"),
        )?;
        expect(table_of(t.to_table())? == *f, || {
            "model 1 tree differs".into()
        })?;
        let m2 = m1_to_m2(&t);
        expect(m2.height() == 2 * t.height(), || {
            format!("model 2 height {}", m2.height())
        })?;
        expect(table_of(m2.to_table())? == *f, || {
            "model 2 tree differs".into()
        })?;
        let back = m2_to_m1(&m2);
        expect(back.height() == m2.height(), || {
            "model 1 height changed".into()
        })?;
        expect(table_of(back.to_table())? == *f, || {
            "round trip differs".into()
        })
    })?;
    Ok(format!(
        "{total} functions with n <= {n}: height 2, branch counts in range, conversions exact"
    ))
}

fn rmdt_corpus(cfg: &Config) -> Vec<RandomizedMdt> {
    (0..cfg.corpus(1000, 100))
        .into_par_iter()
        .map(|i| {
            let mut rng = instance_rng(cfg.seed ^ 0x726d_6474, i);
            let n = rng.gen_range(1..=6);
            let h = rng.gen_range(1..=5);
            random_rmdt(&mut rng, n, h)
        })
        .collect()
}

fn c9_randomized(cfg: &Config) -> Check {
    let corpus = rmdt_corpus(cfg);
    let bad = corpus.par_iter().enumerate().find_map_first(|(i, t)| {
        let check = || -> std::result::Result<(), String> {
            let normal = rmdt_normalize(t);
            for x in 0..1usize << t.arity() {
                let closed = t.accept_prob_index(x);
                let coins = t.accept_prob_by_coins(x);
                expect(closed == coins, || {
                    format!("x={x}: leaf sum {closed} vs coins {coins}")
                })?;
                let p = normal.accept_prob_index(x);
                expect(p == closed, || {
                    format!("x={x}: normal form gives {p}, not {closed}")
                })?;
            }
            let f = table_of(t.half_threshold_table())?;
            let d = rmdt_derandomize(t).map_err(|e| e.to_string())?;
            expect(d.height() <= t.height(), || {
                format!("derandomized height {} > {}", d.height(), t.height())
            })?;
            expect(table_of(d.to_table())? == f, || {
                "derandomized tree differs".into()
            })?;
            let optimal = ceil_log2_plus1(alternation(&f));
            expect(optimal <= d.height(), || {
                "tree beats the optimal height".into()
            })
        };
        check().err().map(|e| format!("tree #{i}: {e}"))
    });
    match bad {
        Some(e) => Err(e),
        None => Ok(format!(
            "{} trees (n <= 6, h <= 5): leaf sums equal coin enumeration exactly, normal forms \
             preserve probabilities, derandomized heights <= h and equivalent",
            corpus.len()
        )),
    }
}

fn c10_query_sets(cfg: &Config) -> Check {
    let per_w = cfg.corpus(200, 20);
    let mut checked = 0;
    for k in 1..=3usize {
        let w = 1 << k;
        let bad = (0..per_w).into_par_iter().find_map_first(|i| {
            let mut rng = instance_rng(cfg.seed ^ 0x7772_0000 ^ w as u64, i);
            let n = rng.gen_range(1..=4);
            let h = rng.gen_range(1..=3);
            let t = random_wrmdt(&mut rng, n, w, h);
            let check = || -> std::result::Result<(), String> {
                let r = wrmdt_to_rmdt(&t).map_err(|e| e.to_string())?;
                expect(r.height() == (1 + k) * t.height(), || {
                    format!("height {} from {}", r.height(), t.height())
                })?;
                for x in 0..1usize << n {
                    let p = t.accept_prob_index(x).map_err(|e| e.to_string())?;
                    expect(p == r.accept_prob_index(x), || {
                        format!("x={x}: leaf sum differs")
                    })?;
                    expect(p == r.accept_prob_by_coins(x), || {
                        format!("x={x}: coins differ")
                    })?;
                }
                Ok(())
            };
            check().err().map(|e| format!("w={w} tree #{i}: {e}"))
        });
        if let Some(e) = bad {
            return Err(e);
        }
        checked += per_w;
    }
    Ok(format!(
        "{checked} trees over w in {{2,4,8}}: height factor exactly 1+k, probabilities identical"
    ))
}

/// A synthesized circuit with the flip counts the lower bound is applied
/// to.
struct Synthesized {
    label: String,
    circuit: Circuit,
    k_alt: usize,
    k_decrease: usize,
}

fn inverter_widths(cfg: &Config) -> (usize, usize) {
    match cfg.level {
        Level::Quick => (32, 8),
        Level::Full => (256, 12),
    }
}

fn block_grid(cfg: &Config) -> Vec<(usize, usize, usize)> {
    let ms: &[usize] = match cfg.level {
        Level::Quick => &[4, 8, 16, 20],
        Level::Full => &[4, 8, 16, 20, 32, 64, 100, 128, 256],
    };
    let mut grid = Vec::new();
    for &m in ms {
        for t in [2, 3, 4, 8] {
            for levels in 1..=3 {
                grid.push((m, t, levels));
            }
        }
    }
    grid
}

fn c11_inverters(cfg: &Config) -> Check {
    let (max_sorted, max_fischer) = inverter_widths(cfg);
    let bad = (0..=max_sorted).into_par_iter().find_map_first(|m| {
        let c = invert_sorted_log(m);
        if !check_sorted_inverter(&c) {
            Some(format!("sorted inverter m={m} incorrect"))
        } else if c.negation_count() != log_negations(m) {
            Some(format!(
                "sorted inverter m={m} uses {} NOTs",
                c.negation_count()
            ))
        } else {
            None
        }
    });
    if let Some(e) = bad {
        return Err(e);
    }
    let bad = (0..=max_fischer).into_par_iter().find_map_first(|m| {
        let c = fischer_inverter(m);
        if !check_inverter(&c) {
            Some(format!("Fischer inverter m={m} incorrect"))
        } else if c.negation_count() != log_negations(m) {
            Some(format!(
                "Fischer inverter m={m} uses {} NOTs",
                c.negation_count()
            ))
        } else {
            None
        }
    });
    if let Some(e) = bad {
        return Err(e);
    }
    let grid = block_grid(cfg);
    let bad = grid.par_iter().find_map_first(|&(m, t, levels)| {
        let (c, r) = match invert_sorted_blocks(m, t, levels) {
            Ok(x) => x,
            Err(e) => return Some(format!("block inverter m={m} t={t} levels={levels}: {e}")),
        };
        if !check_sorted_inverter(&c) {
            Some(format!(
                "block inverter m={m} t={t} levels={levels} incorrect"
            ))
        } else if c.negation_count() > r.predicted_negations() {
            Some(format!(
                "block inverter m={m} t={t} levels={levels}: {} NOTs > predicted {}",
                c.negation_count(),
                r.predicted_negations()
            ))
        } else {
            None
        }
    });
    if let Some(e) = bad {
        return Err(e);
    }
    let base = |m, levels| invert_sorted_blocks(m, 4, levels).map_err(|e| e.to_string());
    let (_, r1) = base(16, 1)?;
    let (_, r2) = base(16, 2)?;
    expect(r2.base_cost() < r1.base_cost(), || {
        format!(
            "m=16 t=4: base cost {} not below {}",
            r2.base_cost(),
            r1.base_cost()
        )
    })?;
    let (c1, _) = base(64, 1)?;
    let (c2, _) = base(64, 2)?;
    expect(c2.negation_count() < c1.negation_count(), || {
        format!(
            "m=64 t=4: two levels use {} NOTs, one level {}",
            c2.negation_count(),
            c1.negation_count()
        )
    })?;
    Ok(format!(
        "sorted m <= {max_sorted} and Fischer m <= {max_fischer} correct with ceil(log2(m+1)) \
         NOTs; {} block configurations correct; m=16 t=4 base cost {} -> {}; m=64 t=4 NOTs {} -> {}",
        grid.len(),
        r1.base_cost(),
        r2.base_cost(),
        c1.negation_count(),
        c2.negation_count()
    ))
}

fn c12_markov(cfg: &Config) -> Check {
    let n = cfg.max_n();
    let total = sweep(n, |f| {
        let (c, r) = markov_circuit(f);
        expect(r.within_budget(), || {
            format!("{} NOTs > bound {}", r.negations_used, r.bound)
        })?;
        expect(r.bound == ceil_log2_plus1(alternation(f)), || {
            format!("bound {} is not ceil(log2(alt+1))", r.bound)
        })?;
        expect(table_of(c.truth_table_of(0))? == *f, || {
            "circuit differs".into()
        })
    })?;
    Ok(format!(
        "{total} functions with n <= {n}: NOTs <= ceil(log2(alt+1)), equivalent"
    ))
}

fn synthesized_suite(cfg: &Config) -> Vec<Synthesized> {
    let (max_sorted, max_fischer) = inverter_widths(cfg);
    let mut out: Vec<Synthesized> = (0..=max_sorted)
        .into_par_iter()
        .map(|m| Synthesized {
            label: format!("sorted inverter m={m}"),
            circuit: invert_sorted_log(m),
            k_alt: m,
            k_decrease: m,
        })
        .collect();
    out.extend((0..=max_fischer).map(|m| Synthesized {
        label: format!("Fischer inverter m={m}"),
        circuit: fischer_inverter(m),
        k_alt: m,
        k_decrease: m,
    }));
    out.extend(
        block_grid(cfg)
            .into_par_iter()
            .map(|(m, t, levels)| Synthesized {
                label: format!("block inverter m={m} t={t} levels={levels}"),
                circuit: invert_sorted_blocks(m, t, levels)
                    .expect("grid parameters")
                    .0,
                k_alt: m,
                k_decrease: m,
            })
            .collect::<Vec<_>>(),
    );
    for n in 0..=cfg.max_n() {
        let count = 1u64 << (1u64 << n);
        out.extend(
            (0..count)
                .into_par_iter()
                .map(|code| {
                    let f = function(n, code);
                    Synthesized {
                        label: format!("Markov circuit n={n} f={}", f.to_hex()),
                        circuit: markov_circuit(&f).0,
                        k_alt: alternation(&f),
                        k_decrease: decrease(&f),
                    }
                })
                .collect::<Vec<_>>(),
        );
    }
    out
}

/// `neg ≥ d(k+1)^(1/d) − d`, compared as `(neg+d)^d ≥ (k+1)·d^d` in
/// integers when that fits and in logarithms otherwise.
pub fn meets_lower_bound(neg: usize, k: usize, depth: usize) -> bool {
    if depth == 0 {
        return true;
    }
    let d = depth as u32;
    let lhs = ((neg + depth) as u128).checked_pow(d);
    let rhs = (depth as u128)
        .checked_pow(d)
        .and_then(|p| p.checked_mul((k + 1) as u128));
    match (lhs, rhs) {
        (Some(l), Some(r)) => l >= r,
        _ => neg as f64 >= negation_lower_bound(k, depth) - 1e-9,
    }
}

fn c13_lower_bound(cfg: &Config) -> Check {
    let suite = synthesized_suite(cfg);
    let violations = |by_decrease: bool| -> Vec<&Synthesized> {
        suite
            .iter()
            .filter(|s| {
                let k = if by_decrease { s.k_decrease } else { s.k_alt };
                !meets_lower_bound(s.circuit.negation_count(), k, s.circuit.depth())
            })
            .collect()
    };
    let by_alt = violations(false);
    let by_dec = violations(true);
    let describe = |s: &Synthesized, k: usize| {
        let d = s.circuit.depth();
        format!(
            "{}: {} NOTs at depth {d} < {:.4} (k={k})",
            s.label,
            s.circuit.negation_count(),
            negation_lower_bound(k, d)
        )
    };
    let diag = match by_dec.first() {
        None => "with k = decrease every circuit satisfies it".to_string(),
        Some(s) => format!(
            "with k = decrease {} violate, first {}",
            by_dec.len(),
            describe(s, s.k_decrease)
        ),
    };
    match by_alt.first() {
        None => Ok(format!(
            "{} circuits satisfy NOTs >= d(alt+1)^(1/d) - d; {diag}",
            suite.len()
        )),
        Some(s) => Err(format!(
            "{} of {} circuits violate NOTs >= d(alt+1)^(1/d) - d, first {}; {diag}",
            by_alt.len(),
            suite.len(),
            describe(s, s.k_alt)
        )),
    }
}

fn height_ok(t: &MonotoneDecisionTree) -> std::result::Result<(), String> {
    let f = table_of(t.to_table())?;
    let alt = alternation(&f);
    let h = t.height();
    expect(h >= usize::BITS as usize - 1 || alt <= 1 << h, || {
        format!("alt {alt} > 2^{h}")
    })
}

fn c14_height_constraint(cfg: &Config) -> Check {
    let n = cfg.max_n();
    let built = sweep(n, |f| height_ok(&mdt_build(f)))?;
    let lists = mdl_corpus(cfg);
    let bad = lists.par_iter().enumerate().find_map_first(|(i, l)| {
        let r = mdt_from_mdl(l)
            .map_err(|e| e.to_string())
            .and_then(|t| height_ok(&t));
        r.err().map(|e| format!("tree from list #{i}: {e}"))
    });
    if let Some(e) = bad {
        return Err(e);
    }
    let rmdts = rmdt_corpus(cfg);
    let bad = rmdts.par_iter().enumerate().find_map_first(|(i, t)| {
        let r = rmdt_derandomize(t)
            .map_err(|e| e.to_string())
            .and_then(|d| height_ok(&d));
        r.err().map(|e| format!("derandomized tree #{i}: {e}"))
    });
    if let Some(e) = bad {
        return Err(e);
    }
    let circuits = cfg.corpus(500, 50);
    let bad = (0..circuits).into_par_iter().find_map_first(|i| {
        let mut rng = instance_rng(cfg.seed ^ 0x6369_7263, i);
        let n = rng.gen_range(1..=8);
        let nots = rng.gen_range(0..=6);
        let c = random_circuit(&mut rng, n, nots);
        let r = mdt_from_circuit(&c)
            .map_err(|e| e.to_string())
            .and_then(|t| height_ok(&t));
        r.err().map(|e| format!("tree from circuit #{i}: {e}"))
    });
    if let Some(e) = bad {
        return Err(e);
    }
    Ok(format!(
        "{} trees checked ({built} built from tables, {} from lists, {} derandomized, \
         {circuits} from circuits)",
        built + lists.len() as u64 + rmdts.len() as u64 + circuits,
        lists.len(),
        rmdts.len()
    ))
}
