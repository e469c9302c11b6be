use crate::boolfn::{Assignment, TruthTable};
use crate::decomp::alternation_decomposition;
use crate::error::{Error, Result};

use super::mdl::{mdl_from_decomposition, MonotoneDecisionList};
use super::query::Query;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MdtNode {
    Leaf(bool),
    Query {
        query: Query,
        zero: Box<MdtNode>,
        one: Box<MdtNode>,
    },
}

impl MdtNode {
    pub fn query(query: Query, zero: MdtNode, one: MdtNode) -> Self {
        MdtNode::Query {
            query,
            zero: Box::new(zero),
            one: Box::new(one),
        }
    }

    pub fn height(&self) -> usize {
        match self {
            MdtNode::Leaf(_) => 0,
            MdtNode::Query { zero, one, .. } => 1 + zero.height().max(one.height()),
        }
    }

    pub fn eval_index(&self, x: usize) -> bool {
        let mut node = self;
        loop {
            match node {
                MdtNode::Leaf(b) => return *b,
                MdtNode::Query { query, zero, one } => {
                    node = if query.eval_index(x) { one } else { zero };
                }
            }
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            MdtNode::Leaf(_) => 1,
            MdtNode::Query { zero, one, .. } => zero.leaf_count() + one.leaf_count(),
        }
    }

    pub fn queries(&self) -> Vec<&Query> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(n) = stack.pop() {
            if let MdtNode::Query { query, zero, one } = n {
                out.push(query);
                stack.push(one);
                stack.push(zero);
            }
        }
        out
    }

    /// Leaves with the 1-child visited first, each paired with the passed
    /// queries on its path.
    fn leaves_right_to_left<'a>(
        &'a self,
        passed: &mut Vec<&'a Query>,
        out: &mut Vec<(Query, bool)>,
    ) {
        match self {
            MdtNode::Leaf(b) => {
                out.push((Query::and(passed.iter().map(|&q| q.clone()).collect()), *b))
            }
            MdtNode::Query { query, zero, one } => {
                passed.push(query);
                one.leaves_right_to_left(passed, out);
                passed.pop();
                zero.leaves_right_to_left(passed, out);
            }
        }
    }

    fn flipped(&self) -> MdtNode {
        match self {
            MdtNode::Leaf(b) => MdtNode::Leaf(!b),
            MdtNode::Query { query, zero, one } => {
                MdtNode::query(query.clone(), zero.flipped(), one.flipped())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneDecisionTree {
    n: usize,
    root: MdtNode,
}

impl MonotoneDecisionTree {
    pub fn new(n: usize, root: MdtNode) -> Result<Self> {
        for q in root.queries() {
            q.check_arity(n)?;
        }
        Ok(MonotoneDecisionTree { n, root })
    }

    pub fn leaf(n: usize, b: bool) -> Self {
        MonotoneDecisionTree {
            n,
            root: MdtNode::Leaf(b),
        }
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn root(&self) -> &MdtNode {
        &self.root
    }

    pub fn into_root(self) -> MdtNode {
        self.root
    }

    pub fn height(&self) -> usize {
        self.root.height()
    }

    pub fn eval_index(&self, x: usize) -> bool {
        self.root.eval_index(x)
    }

    pub fn eval(&self, x: Assignment) -> Result<bool> {
        if x.arity() != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                got: x.arity(),
            });
        }
        Ok(self.eval_index(x.index()))
    }

    pub fn to_table(&self) -> Result<TruthTable> {
        TruthTable::from_fn(self.n, |x| self.eval_index(x))
    }

    /// Every query materializes to a monotone table.
    pub fn all_queries_monotone(&self) -> Result<bool> {
        for q in self.root.queries() {
            if !q.is_monotone(self.n)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn flip_leaves(&self) -> Self {
        MonotoneDecisionTree {
            n: self.n,
            root: self.root.flipped(),
        }
    }
}

/// Binary search over a forward-firing list: the root queries node
/// `⌈k/2⌉`, the 1-branch continues on the left half (including the root
/// node) and the 0-branch on the right half. Lists that are not forward
/// firing are normalized first.
pub fn mdt_from_mdl(l: &MonotoneDecisionList) -> Result<MonotoneDecisionTree> {
    if l.is_empty() {
        return Err(Error::MalformedList("empty list".into()));
    }
    let l = if l.is_forward_firing()? {
        l.clone()
    } else {
        l.normalize_forward_firing()
    };
    fn build(nodes: &[(Query, bool)]) -> MdtNode {
        if nodes.len() == 1 {
            return MdtNode::Leaf(nodes[0].1);
        }
        let mid = nodes.len().div_ceil(2);
        MdtNode::query(
            nodes[mid - 1].0.clone(),
            build(&nodes[mid..]),
            build(&nodes[..mid]),
        )
    }
    MonotoneDecisionTree::new(l.arity(), build(l.nodes()))
}

/// One node per leaf, leaves taken right to left; the query of a node is
/// the conjunction of the queries passed on the way to its leaf.
pub fn mdl_from_mdt(t: &MonotoneDecisionTree) -> MonotoneDecisionList {
    let mut nodes = Vec::with_capacity(t.root.leaf_count());
    t.root.leaves_right_to_left(&mut Vec::new(), &mut nodes);
    MonotoneDecisionList::new(t.n, nodes).expect("queries already checked against the tree arity")
}

/// Height `⌈log2(alt(f) + 1)⌉` via decomposition, list and binary search.
pub fn mdt_build(f: &TruthTable) -> MonotoneDecisionTree {
    let d = alternation_decomposition(f);
    let l = mdl_from_decomposition(&d).expect("alternation decompositions are valid");
    mdt_from_mdl(&l).expect("lists from decompositions are non-empty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::{alternation, ceil_log2_plus1, family, Family};

    fn tt(n: usize, hex: &str) -> TruthTable {
        TruthTable::from_hex(n, hex).unwrap()
    }

    /// Distinct monotone queries on 4 variables, `f_i = [x ≥ 16 − i]` read
    /// as an integer.
    fn symbolic(i: usize) -> Query {
        Query::table(TruthTable::from_fn(4, move |x| x >= 16 - i).unwrap())
    }

    fn shape(n: &MdtNode, names: &dyn Fn(&Query) -> String) -> String {
        match n {
            MdtNode::Leaf(b) => format!("{}", u8::from(*b)),
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

    #[test]
    fn reproduces_list_to_tree_example() {
        // forward-firing chain f_1 ⇒ … ⇒ f_7 ⇒ 1 with distinct constants
        let qs: Vec<Query> = (1..=7)
            .map(|i| Query::table(TruthTable::from_fn(3, move |x| x >= 8 - i).unwrap()))
            .collect();
        let mut nodes: Vec<(Query, bool)> = qs.iter().map(|q| (q.clone(), false)).collect();
        nodes.push((Query::one(), false));
        let l = MonotoneDecisionList::new(3, nodes).unwrap();
        let t = mdt_from_mdl(&l).unwrap();
        let name = |q: &Query| match qs.iter().position(|p| p == q) {
            Some(i) => format!("f{}", i + 1),
            None => "1".into(),
        };
        assert_eq!(
            shape(t.root(), &name),
            "f4[f6[f7[0 0] f5[0 0]] f2[f3[0 0] f1[0 0]]]"
        );
        // leaf order: when node i is the first to fire, f_j passes iff j ≥ i,
        // and the leaf reached must carry c_i
        for i in 1..=8 {
            let nodes: Vec<(Query, bool)> = l
                .nodes()
                .iter()
                .enumerate()
                .map(|(j, (q, _))| (q.clone(), j + 1 == i))
                .collect();
            let ti = mdt_from_mdl(&MonotoneDecisionList::new(3, nodes).unwrap()).unwrap();
            let mut node = ti.root();
            while let MdtNode::Query { query, zero, one } = node {
                let j = qs.iter().position(|p| p == query).unwrap() + 1;
                node = if j >= i { one } else { zero };
            }
            assert_eq!(node, &MdtNode::Leaf(true), "c{i}");
        }
        assert_eq!(t.height(), 3);
    }

    #[test]
    fn reproduces_tree_to_list_example() {
        let f: Vec<Query> = (0..=7).map(symbolic).collect();
        let leaf = |i: usize| MdtNode::Leaf(i.is_multiple_of(2));
        let root = MdtNode::query(
            f[1].clone(),
            MdtNode::query(
                f[2].clone(),
                MdtNode::query(f[4].clone(), leaf(1), leaf(2)),
                MdtNode::query(f[5].clone(), leaf(3), leaf(4)),
            ),
            MdtNode::query(
                f[3].clone(),
                MdtNode::query(f[6].clone(), leaf(5), leaf(6)),
                MdtNode::query(f[7].clone(), leaf(7), leaf(8)),
            ),
        );
        let t = MonotoneDecisionTree::new(4, root).unwrap();
        let l = mdl_from_mdt(&t);
        let expect = [
            Query::and(vec![f[1].clone(), f[3].clone(), f[7].clone()]),
            Query::and(vec![f[1].clone(), f[3].clone()]),
            Query::and(vec![f[1].clone(), f[6].clone()]),
            f[1].clone(),
            Query::and(vec![f[2].clone(), f[5].clone()]),
            f[2].clone(),
            f[4].clone(),
            Query::one(),
        ];
        let got: Vec<Query> = l.nodes().iter().map(|(q, _)| q.clone()).collect();
        assert_eq!(got, expect);
        let labels: Vec<bool> = l.constants().collect();
        assert_eq!(
            labels,
            (1..=8).rev().map(|i| i % 2 == 0).collect::<Vec<_>>()
        );
        assert_eq!(l.to_table().unwrap(), t.to_table().unwrap());
    }

    #[test]
    fn small_cases() {
        let xor2 = tt(2, "6");
        let t = mdt_build(&xor2);
        assert_eq!(t.height(), 2);
        assert_eq!(t.to_table().unwrap(), xor2);
        let single = MonotoneDecisionList::new(2, vec![(Query::one(), true)]).unwrap();
        let t = mdt_from_mdl(&single).unwrap();
        assert_eq!(t.height(), 0);
        assert_eq!(mdl_from_mdt(&t).nodes(), &[(Query::one(), true)]);
        assert!(mdt_from_mdl(&MonotoneDecisionList::new(2, vec![]).unwrap()).is_err());

        let point = family(&Family::PointIndicator(12), 4).unwrap();
        assert_eq!(mdt_build(&point).height(), 2);
        assert_eq!(mdt_build(&TruthTable::ones(3).unwrap()).height(), 0);
        let f6 = family(&Family::Candidate, 6).unwrap();
        let t = mdt_build(&f6);
        assert_eq!(t.height(), 3);
        assert_eq!(t.to_table().unwrap(), f6);
    }

    #[test]
    fn all_ones_path() {
        let t = mdt_build(&tt(2, "6"));
        // x = 11 passes every query on its path
        let mut node = t.root();
        while let MdtNode::Query { query, one, .. } = node {
            assert!(query.eval_index(3));
            node = one;
        }
    }

    #[test]
    fn exhaustive_n3_heights_and_round_trips() {
        for code in 0u32..256 {
            let f = TruthTable::from_fn(3, |i| (code >> i) & 1 == 1).unwrap();
            let t = mdt_build(&f);
            let alt = alternation(&f);
            assert_eq!(t.height(), ceil_log2_plus1(alt));
            assert_eq!(t.to_table().unwrap(), f);
            assert!(t.all_queries_monotone().unwrap());
            let l = mdl_from_mdt(&t);
            assert_eq!(l.to_table().unwrap(), f);
            let back = mdt_from_mdl(&l).unwrap();
            assert_eq!(back.to_table().unwrap(), f);
        }
    }
}
