//! Seeded random instances for corpus tests.
//!
//! Instance `i` of a corpus is drawn from its own ChaCha stream, so a
//! corpus is reproducible from `(seed, i)` and can be generated in
//! parallel without changing its contents.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::boolfn::TruthTable;
use crate::circuits::{Circuit, Gate};
use crate::models::{MdtNode, MonotoneDecisionList, MonotoneDecisionTree, Query};
use crate::stochastic::{QuerySetRmdt, RNode, RandomizedMdt, WNode};

pub const DEFAULT_SEED: u64 = 0x5eed_a17e;

/// The generator for instance `index` of the corpus seeded with `seed`.
pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn random_function(rng: &mut ChaCha8Rng, n: usize) -> TruthTable {
    TruthTable::from_fn(n, |_| rng.gen()).expect("generator arity in range")
}

/// Upward closure of a few random points; constants now and then.
pub fn random_monotone(rng: &mut ChaCha8Rng, n: usize) -> TruthTable {
    match rng.gen_range(0..12) {
        0 => return TruthTable::zeros(n).expect("arity"),
        1 => return TruthTable::ones(n).expect("arity"),
        _ => {}
    }
    let gens: Vec<usize> = (0..rng.gen_range(1..=4))
        .map(|_| rng.gen_range(0..1usize << n))
        .collect();
    TruthTable::from_fn(n, |x| gens.iter().any(|&g| g & !x == 0)).expect("arity")
}

pub fn random_query(rng: &mut ChaCha8Rng, n: usize) -> Query {
    let t = random_monotone(rng, n);
    match t.constant_value() {
        Some(b) => Query::constant(b),
        None => Query::table(t),
    }
}

/// AND/OR/TH/NOT gates over earlier gates, with exactly `nots` NOT gates
/// placed at random positions; the output is the last gate.
pub fn random_circuit(rng: &mut ChaCha8Rng, n: usize, nots: usize) -> Circuit {
    let size = rng.gen_range(nots.max(2)..=nots + 8);
    let mut kinds: Vec<bool> = (0..size).map(|i| i < nots).collect();
    kinds.shuffle(rng);
    let mut gates: Vec<Gate> = (0..n).map(Gate::Input).collect();
    for is_not in kinds {
        let avail = gates.len();
        let pick = |rng: &mut ChaCha8Rng| {
            // favour recent gates so the output depends on most of them
            let lo = avail.saturating_sub(6);
            if rng.gen_bool(0.6) {
                rng.gen_range(lo..avail)
            } else {
                rng.gen_range(0..avail)
            }
        };
        if is_not {
            let a = pick(rng);
            gates.push(Gate::Not(a));
            continue;
        }
        let k = rng.gen_range(2..=3);
        let mut fanins: Vec<usize> = (0..k).map(|_| pick(rng)).collect();
        fanins.sort_unstable();
        fanins.dedup();
        gates.push(match rng.gen_range(0..5) {
            0 | 1 => Gate::And(fanins),
            2 | 3 => Gate::Or(fanins),
            _ => {
                let t = rng.gen_range(1..=fanins.len());
                Gate::Th(t, fanins)
            }
        });
    }
    let out = gates.len() - 1;
    Circuit::new(n, gates, vec![out]).expect("gates reference earlier gates")
}

/// A list of 1 to 8 random monotone queries with random constants,
/// closed by a constant-1 query.
pub fn random_mdl(rng: &mut ChaCha8Rng, n: usize) -> MonotoneDecisionList {
    let len = rng.gen_range(0..8);
    let mut nodes: Vec<(Query, bool)> = (0..len)
        .map(|_| (random_query(rng, n), rng.gen()))
        .collect();
    nodes.push((Query::one(), rng.gen()));
    MonotoneDecisionList::new(n, nodes).expect("queries share the arity")
}

pub fn random_mdt(rng: &mut ChaCha8Rng, n: usize, max_height: usize) -> MonotoneDecisionTree {
    fn go(rng: &mut ChaCha8Rng, n: usize, h: usize) -> MdtNode {
        if h == 0 || rng.gen_bool(0.2) {
            return MdtNode::Leaf(rng.gen());
        }
        let q = random_query(rng, n);
        MdtNode::query(q, go(rng, n, h - 1), go(rng, n, h - 1))
    }
    MonotoneDecisionTree::new(n, go(rng, n, max_height)).expect("queries share the arity")
}

/// Internal nodes are coins with probability 1/3, queries otherwise.
pub fn random_rmdt(rng: &mut ChaCha8Rng, n: usize, max_height: usize) -> RandomizedMdt {
    fn go(rng: &mut ChaCha8Rng, n: usize, h: usize, top: bool) -> RNode {
        if h == 0 || (!top && rng.gen_bool(0.15)) {
            return RNode::Leaf(rng.gen());
        }
        let zero = go(rng, n, h - 1, false);
        let one = go(rng, n, h - 1, false);
        if rng.gen_bool(1.0 / 3.0) {
            RNode::coin(zero, one)
        } else {
            RNode::query(random_query(rng, n), zero, one)
        }
    }
    RandomizedMdt::new(n, go(rng, n, max_height, true)).expect("queries share the arity")
}

pub fn random_wrmdt(rng: &mut ChaCha8Rng, n: usize, w: usize, max_height: usize) -> QuerySetRmdt {
    fn go(rng: &mut ChaCha8Rng, n: usize, w: usize, h: usize, top: bool) -> WNode {
        if h == 0 || (!top && rng.gen_bool(0.2)) {
            return WNode::Leaf(rng.gen());
        }
        let qs = (0..w).map(|_| random_query(rng, n)).collect();
        WNode::set(qs, go(rng, n, w, h - 1, false), go(rng, n, w, h - 1, false))
    }
    QuerySetRmdt::new(n, w, go(rng, n, w, max_height, true)).expect("sets have size w")
}
