//! Randomized monotone decision trees: coin nodes alongside queries.

use crate::boolfn::{Assignment, TruthTable};
use crate::circuits::{fischer_wires, mdt_from_circuit, Builder};
use crate::error::{Error, Result};
use crate::models::{MdtNode, MonotoneDecisionTree, Query};

use super::dyadic::Dyadic;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RNode {
    Leaf(bool),
    Query {
        query: Query,
        zero: Box<RNode>,
        one: Box<RNode>,
    },
    Coin {
        zero: Box<RNode>,
        one: Box<RNode>,
    },
}

impl RNode {
    pub fn query(query: Query, zero: RNode, one: RNode) -> Self {
        RNode::Query {
            query,
            zero: Box::new(zero),
            one: Box::new(one),
        }
    }

    pub fn coin(zero: RNode, one: RNode) -> Self {
        RNode::Coin {
            zero: Box::new(zero),
            one: Box::new(one),
        }
    }

    pub fn height(&self) -> usize {
        match self {
            RNode::Leaf(_) => 0,
            RNode::Query { zero, one, .. } | RNode::Coin { zero, one } => {
                1 + zero.height().max(one.height())
            }
        }
    }

    /// Largest number of coins on a root-to-leaf path.
    pub fn max_coins(&self) -> usize {
        match self {
            RNode::Leaf(_) => 0,
            RNode::Query { zero, one, .. } => zero.max_coins().max(one.max_coins()),
            RNode::Coin { zero, one } => 1 + zero.max_coins().max(one.max_coins()),
        }
    }

    fn queries<'a>(&'a self, out: &mut Vec<&'a Query>) {
        match self {
            RNode::Leaf(_) => {}
            RNode::Query { query, zero, one } => {
                out.push(query);
                zero.queries(out);
                one.queries(out);
            }
            RNode::Coin { zero, one } => {
                zero.queries(out);
                one.queries(out);
            }
        }
    }

    fn flip(&self) -> RNode {
        match self {
            RNode::Leaf(b) => RNode::Leaf(!b),
            RNode::Query { query, zero, one } => {
                RNode::query(query.clone(), zero.flip(), one.flip())
            }
            RNode::Coin { zero, one } => RNode::coin(zero.flip(), one.flip()),
        }
    }

    fn leaves(&self, counts: &mut [usize; 2]) {
        match self {
            RNode::Leaf(b) => counts[usize::from(*b)] += 1,
            RNode::Query { zero, one, .. } | RNode::Coin { zero, one } => {
                zero.leaves(counts);
                one.leaves(counts);
            }
        }
    }

    /// The leaf reached by always taking the 1-child.
    fn rightmost(&self) -> bool {
        match self {
            RNode::Leaf(b) => *b,
            RNode::Query { one, .. } | RNode::Coin { one, .. } => one.rightmost(),
        }
    }

    pub fn from_mdt_node(n: &MdtNode) -> RNode {
        match n {
            MdtNode::Leaf(b) => RNode::Leaf(*b),
            MdtNode::Query { query, zero, one } => RNode::query(
                query.clone(),
                RNode::from_mdt_node(zero),
                RNode::from_mdt_node(one),
            ),
        }
    }
}

/// Path data of one leaf: its label, the coins above it, and the queries
/// answered 1 and 0 along the way.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeafPath {
    pub label: bool,
    pub coins: usize,
    pub passed: Vec<Query>,
    pub failed: Vec<Query>,
}

impl LeafPath {
    /// `c_i(x)`: every passed query is 1 and every failed one is 0.
    pub fn characteristic(&self, x: usize) -> bool {
        self.passed.iter().all(|q| q.eval_index(x)) && !self.failed.iter().any(|q| q.eval_index(x))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Threshold {
    /// `f(x) = 1` iff the accept probability is at least 1/2.
    Half,
    /// The correct label is reached with probability at least 2/3.
    TwoThirds,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomizedMdt {
    n: usize,
    root: RNode,
}

impl RandomizedMdt {
    pub fn new(n: usize, root: RNode) -> Result<Self> {
        let mut qs = Vec::new();
        root.queries(&mut qs);
        for q in qs {
            q.check_arity(n)?;
        }
        Ok(RandomizedMdt { n, root })
    }

    pub fn from_mdt(t: &MonotoneDecisionTree) -> Self {
        RandomizedMdt {
            n: t.arity(),
            root: RNode::from_mdt_node(t.root()),
        }
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn root(&self) -> &RNode {
        &self.root
    }

    pub fn height(&self) -> usize {
        self.root.height()
    }

    pub fn max_coins(&self) -> usize {
        self.root.max_coins()
    }

    /// Counts of 0-leaves and 1-leaves.
    pub fn leaf_counts(&self) -> [usize; 2] {
        let mut c = [0, 0];
        self.root.leaves(&mut c);
        c
    }

    pub fn flip_leaves(&self) -> Self {
        RandomizedMdt {
            n: self.n,
            root: self.root.flip(),
        }
    }

    /// Path data for every leaf, left to right.
    pub fn leaf_paths(&self) -> Vec<LeafPath> {
        fn go(n: &RNode, cur: &mut LeafPath, out: &mut Vec<LeafPath>) {
            match n {
                RNode::Leaf(b) => out.push(LeafPath {
                    label: *b,
                    ..cur.clone()
                }),
                RNode::Coin { zero, one } => {
                    cur.coins += 1;
                    go(zero, cur, out);
                    go(one, cur, out);
                    cur.coins -= 1;
                }
                RNode::Query { query, zero, one } => {
                    cur.failed.push(query.clone());
                    go(zero, cur, out);
                    cur.failed.pop();
                    cur.passed.push(query.clone());
                    go(one, cur, out);
                    cur.passed.pop();
                }
            }
        }
        let mut out = Vec::new();
        let mut cur = LeafPath {
            label: false,
            coins: 0,
            passed: Vec::new(),
            failed: Vec::new(),
        };
        go(&self.root, &mut cur, &mut out);
        out
    }

    /// `Σ 2^(−r_i)·c_i(x)` over the 1-leaves.
    pub fn accept_prob_index(&self, x: usize) -> Dyadic {
        self.leaf_paths()
            .iter()
            .filter(|p| p.label && p.characteristic(x))
            .map(|p| Dyadic::ONE.halve(p.coins as u32))
            .sum()
    }

    pub fn accept_prob(&self, x: Assignment) -> Result<Dyadic> {
        self.check(x)?;
        Ok(self.accept_prob_index(x.index()))
    }

    /// Fraction of coin strings of length `max_coins` that lead to a
    /// 1-leaf; the `j`-th coin met on a path reads bit `j`.
    pub fn accept_prob_by_coins(&self, x: usize) -> Dyadic {
        let r = self.max_coins();
        let hits = (0u64..1 << r)
            .filter(|&s| {
                let mut node = &self.root;
                let mut j = 0;
                loop {
                    match node {
                        RNode::Leaf(b) => return *b,
                        RNode::Query { query, zero, one } => {
                            node = if query.eval_index(x) { one } else { zero };
                        }
                        RNode::Coin { zero, one } => {
                            node = if (s >> j) & 1 == 1 { one } else { zero };
                            j += 1;
                        }
                    }
                }
            })
            .count();
        Dyadic::new(hits as u128, r as u32)
    }

    /// The function this tree computes under the 1/2 threshold.
    pub fn half_threshold_table(&self) -> Result<TruthTable> {
        let paths = self.leaf_paths();
        TruthTable::from_fn(self.n, |x| {
            paths
                .iter()
                .filter(|p| p.label && p.characteristic(x))
                .map(|p| Dyadic::ONE.halve(p.coins as u32))
                .sum::<Dyadic>()
                >= Dyadic::HALF
        })
    }

    pub fn computes(&self, f: &TruthTable, theta: Threshold) -> Result<bool> {
        if f.arity() != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                got: f.arity(),
            });
        }
        let paths = self.leaf_paths();
        Ok((0..f.len()).all(|x| {
            let p: Dyadic = paths
                .iter()
                .filter(|l| l.label && l.characteristic(x))
                .map(|l| Dyadic::ONE.halve(l.coins as u32))
                .sum();
            match (theta, f.get(x)) {
                (Threshold::Half, v) => (p >= Dyadic::HALF) == v,
                (Threshold::TwoThirds, true) => p.ge_ratio(2, 3),
                (Threshold::TwoThirds, false) => p.le_ratio(1, 3),
            }
        }))
    }

    fn check(&self, x: Assignment) -> Result<()> {
        if x.arity() != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                got: x.arity(),
            });
        }
        Ok(())
    }
}

/// Equalizes coin counts, completes the tree, then lifts every coin to
/// the top: `r` coin levels above the deterministic trees `T_s`, one per
/// coin string `s`.
pub fn rmdt_normalize(t: &RandomizedMdt) -> RandomizedMdt {
    let (r, subtrees) = normal_parts(t);
    fn top(j: usize, s: usize, r: usize, subtrees: &[MdtNode]) -> RNode {
        if j == r {
            return RNode::from_mdt_node(&subtrees[s]);
        }
        RNode::coin(
            top(j + 1, s, r, subtrees),
            top(j + 1, s | 1 << j, r, subtrees),
        )
    }
    RandomizedMdt {
        n: t.n,
        root: top(0, 0, r, &subtrees),
    }
}

/// `r` and the `2^r` deterministic subtrees of the normal form; subtree
/// `s` answers the `j`-th coin on each path with bit `j` of `s`.
fn normal_parts(t: &RandomizedMdt) -> (usize, Vec<MdtNode>) {
    let r = t.max_coins();
    fn equalize(n: &RNode, coins: usize, r: usize) -> RNode {
        match n {
            RNode::Leaf(_) => (coins..r).fold(n.clone(), |acc, _| RNode::coin(acc.clone(), acc)),
            RNode::Query { query, zero, one } => RNode::query(
                query.clone(),
                equalize(zero, coins, r),
                equalize(one, coins, r),
            ),
            RNode::Coin { zero, one } => {
                RNode::coin(equalize(zero, coins + 1, r), equalize(one, coins + 1, r))
            }
        }
    }
    fn complete(n: &RNode, depth: usize, h: usize) -> RNode {
        match n {
            RNode::Leaf(_) => (depth..h).fold(n.clone(), |acc, _| {
                RNode::query(Query::one(), acc.clone(), acc)
            }),
            RNode::Query { query, zero, one } => RNode::query(
                query.clone(),
                complete(zero, depth + 1, h),
                complete(one, depth + 1, h),
            ),
            RNode::Coin { zero, one } => {
                RNode::coin(complete(zero, depth + 1, h), complete(one, depth + 1, h))
            }
        }
    }
    fn fix(n: &RNode, s: usize, j: usize) -> MdtNode {
        match n {
            RNode::Leaf(b) => MdtNode::Leaf(*b),
            RNode::Query { query, zero, one } => {
                MdtNode::query(query.clone(), fix(zero, s, j), fix(one, s, j))
            }
            RNode::Coin { zero, one } => {
                if (s >> j) & 1 == 1 {
                    fix(one, s, j + 1)
                } else {
                    fix(zero, s, j + 1)
                }
            }
        }
    }
    let eq = equalize(&t.root, 0, r);
    let full = complete(&eq, 0, eq.height());
    (r, (0..1usize << r).map(|s| fix(&full, s, 0)).collect())
}

/// Rewrites the 1/2-threshold semantics as the circuit
/// `[Σ 2^(h−r_i)·c_i ≥ 2^(h−1)]` over the 1-leaves, with the complements
/// `¬⋁(failed queries)` supplied by one Fischer inverter, and peels it
/// into a deterministic tree. When 1-leaves outnumber 0-leaves, or tie
/// with a 0-labeled right-most leaf, the leaf-flipped tree is handled
/// instead (with a strict threshold) and the result flipped back.
pub fn rmdt_derandomize(t: &RandomizedMdt) -> Result<MonotoneDecisionTree> {
    let h = t.height();
    if h == 0 {
        let RNode::Leaf(b) = t.root else {
            unreachable!("height 0 means a leaf")
        };
        return Ok(MonotoneDecisionTree::leaf(t.n, b));
    }
    let [zeros, ones] = t.leaf_counts();
    let flip = ones > zeros || (ones == zeros && !t.root.rightmost());
    let work = if flip { t.flip_leaves() } else { t.clone() };
    let accepting: Vec<LeafPath> = work.leaf_paths().into_iter().filter(|p| p.label).collect();

    let mut b = Builder::new(t.n);
    let mut z_wires = Vec::new();
    let mut z_owner = Vec::new();
    for (i, p) in accepting.iter().enumerate() {
        if !p.failed.is_empty() {
            z_wires.push(Query::or(p.failed.clone()).build_into(&mut b)?);
            z_owner.push(i);
        }
    }
    let inv = fischer_wires(&mut b, &z_wires);
    let mut neg = vec![None; accepting.len()];
    for (&i, &w) in z_owner.iter().zip(&inv) {
        neg[i] = Some(w);
    }
    let mut weighted = Vec::new();
    for (p, nz) in accepting.iter().zip(neg) {
        let mut ins = p
            .passed
            .iter()
            .map(|q| q.build_into(&mut b))
            .collect::<Result<Vec<_>>>()?;
        ins.extend(nz);
        let c = b.and(ins);
        weighted.extend(std::iter::repeat_n(c, 1 << (h - p.coins)));
    }
    let k = (1 << (h - 1)) + usize::from(flip);
    let out = b.th(k, weighted);
    let circuit = b.finish(vec![out]);
    let tree = mdt_from_circuit(&circuit)?;
    Ok(if flip { tree.flip_leaves() } else { tree })
}

/// The deterministic subtrees below the coin levels of the normal form.
/// Requires the tree to compute its 1/2-threshold function at 2/3.
pub fn rmdt_to_majority_form(t: &RandomizedMdt) -> Result<Vec<MonotoneDecisionTree>> {
    let f = t.half_threshold_table()?;
    if !t.computes(&f, Threshold::TwoThirds)? {
        return Err(Error::Precondition(
            "tree does not reach the correct label with probability 2/3 on every input".into(),
        ));
    }
    let (_, subtrees) = normal_parts(t);
    subtrees
        .into_iter()
        .map(|s| MonotoneDecisionTree::new(t.n, s))
        .collect()
}

/// Strict majority over the trees' outputs.
pub fn majority_eval(trees: &[MonotoneDecisionTree], x: usize) -> bool {
    2 * trees.iter().filter(|t| t.eval_index(x)).count() > trees.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::mdt_build;

    fn tt(n: usize, hex: &str) -> TruthTable {
        TruthTable::from_hex(n, hex).unwrap()
    }

    fn q(n: usize, hex: &str) -> Query {
        Query::table(tt(n, hex))
    }

    fn leaf(b: bool) -> RNode {
        RNode::Leaf(b)
    }

    fn assert_probs_agree(t: &RandomizedMdt) {
        for x in 0..1usize << t.arity() {
            assert_eq!(t.accept_prob_index(x), t.accept_prob_by_coins(x), "x={x}");
        }
    }

    #[test]
    fn probability_examples() {
        let c = RandomizedMdt::new(2, RNode::coin(leaf(false), leaf(true))).unwrap();
        for x in 0..4 {
            assert_eq!(c.accept_prob_index(x), Dyadic::HALF);
        }
        let t = RandomizedMdt::new(
            2,
            RNode::query(q(2, "8"), RNode::coin(leaf(false), leaf(true)), leaf(true)),
        )
        .unwrap();
        assert_eq!(t.accept_prob(Assignment::ones(2)).unwrap(), Dyadic::ONE);
        assert_eq!(t.accept_prob(Assignment::zeros(2)).unwrap(), Dyadic::HALF);
        assert_probs_agree(&t);

        let d = RandomizedMdt::from_mdt(&mdt_build(&tt(3, "96")));
        for x in 0..8 {
            let p = d.accept_prob_index(x);
            assert!(p == Dyadic::ZERO || p == Dyadic::ONE);
        }
        assert_probs_agree(&d);
    }

    #[test]
    fn computes_examples() {
        let xor2 = tt(2, "6");
        let d = RandomizedMdt::from_mdt(&mdt_build(&xor2));
        assert!(d.computes(&xor2, Threshold::Half).unwrap());
        assert!(d.computes(&xor2, Threshold::TwoThirds).unwrap());

        let c = RandomizedMdt::new(2, RNode::coin(leaf(false), leaf(true))).unwrap();
        assert!(!c.computes(&xor2, Threshold::TwoThirds).unwrap());

        let or2 = q(2, "e");
        let vote = || RNode::query(or2.clone(), leaf(false), leaf(true));
        let m = RandomizedMdt::new(
            2,
            RNode::coin(vote(), RNode::coin(vote(), RNode::coin(vote(), vote()))),
        )
        .unwrap();
        assert!(m.computes(&tt(2, "e"), Threshold::TwoThirds).unwrap());
        for x in 0..4 {
            let p = m.accept_prob_by_coins(x);
            assert!(p == Dyadic::ZERO || p == Dyadic::ONE);
        }
    }

    #[test]
    fn normalize_preserves_probabilities() {
        let t = RandomizedMdt::new(
            2,
            RNode::query(
                q(2, "8"),
                RNode::query(q(2, "e"), leaf(false), RNode::coin(leaf(true), leaf(false))),
                leaf(true),
            ),
        )
        .unwrap();
        let nf = rmdt_normalize(&t);
        assert_eq!(nf.max_coins(), 1);
        let RNode::Coin { zero, one } = nf.root() else {
            panic!("coin on top")
        };
        assert_eq!(zero.max_coins() + one.max_coins(), 0);
        for x in 0..4 {
            assert_eq!(nf.accept_prob_index(x), t.accept_prob_index(x));
        }

        let det = RandomizedMdt::from_mdt(&mdt_build(&tt(2, "6")));
        let nd = rmdt_normalize(&det);
        assert_eq!(nd.max_coins(), 0);
        assert_eq!(nd.half_threshold_table().unwrap(), tt(2, "6"));
    }

    #[test]
    fn derandomize_examples() {
        let xor2 = tt(2, "6");
        let det = mdt_build(&xor2);
        let d = rmdt_derandomize(&RandomizedMdt::from_mdt(&det)).unwrap();
        assert!(d.height() <= det.height());
        assert_eq!(d.to_table().unwrap(), xor2);

        // height 3: a coin chooses between two trees that both compute XOR2
        let sub = || RNode::from_mdt_node(det.root());
        let r = RandomizedMdt::new(2, RNode::coin(sub(), sub())).unwrap();
        assert_eq!(r.height(), 3);
        let d = rmdt_derandomize(&r).unwrap();
        assert!(d.height() <= 3);
        assert_eq!(d.to_table().unwrap(), xor2);
        assert!(d.all_queries_monotone().unwrap());
        assert_eq!(mdt_build(&xor2).height(), 2);

        // a coin-only tree accepts with probability 1/2, hence everywhere
        let c = RandomizedMdt::new(2, RNode::coin(leaf(false), leaf(true))).unwrap();
        assert!(rmdt_derandomize(&c)
            .unwrap()
            .to_table()
            .unwrap()
            .is_const(true));
        let l = RandomizedMdt::new(2, leaf(true)).unwrap();
        assert_eq!(rmdt_derandomize(&l).unwrap().height(), 0);
    }

    #[test]
    fn derandomize_mixed_tree() {
        let t = RandomizedMdt::new(
            3,
            RNode::query(
                q(3, "e8"),
                RNode::coin(
                    RNode::query(q(3, "80"), leaf(false), leaf(true)),
                    leaf(false),
                ),
                RNode::coin(
                    leaf(true),
                    RNode::query(q(3, "fe"), leaf(false), leaf(true)),
                ),
            ),
        )
        .unwrap();
        let f = t.half_threshold_table().unwrap();
        let d = rmdt_derandomize(&t).unwrap();
        assert!(d.height() <= t.height());
        assert_eq!(d.to_table().unwrap(), f);
    }

    #[test]
    fn majority_form() {
        let xor2 = tt(2, "6");
        let det = mdt_build(&xor2);
        let single = rmdt_to_majority_form(&RandomizedMdt::from_mdt(&det)).unwrap();
        assert_eq!(single.len(), 1);

        let sub = || RNode::from_mdt_node(det.root());
        let two = RandomizedMdt::new(2, RNode::coin(sub(), sub())).unwrap();
        let list = rmdt_to_majority_form(&two).unwrap();
        assert_eq!(list.len(), 2);
        for t in &list {
            assert_eq!(t.to_table().unwrap(), xor2);
        }
        for x in 0..4 {
            assert_eq!(majority_eval(&list, x), xor2.get(x));
        }

        let c = RandomizedMdt::new(2, RNode::coin(leaf(false), leaf(true))).unwrap();
        assert!(matches!(
            rmdt_to_majority_form(&c),
            Err(Error::Precondition(_))
        ));
    }
}
