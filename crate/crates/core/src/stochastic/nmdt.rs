//! Nondeterministic monotone decision trees.
//!
//! Both models accept `x` iff some root-to-leaf path ending in a 1-leaf
//! has every edge active. Heights count edges on the longest path.

use crate::boolfn::{Assignment, TruthTable};
use crate::decomp::alternation_decomposition;
use crate::error::{Error, Result};
use crate::models::Query;

/// Edges carry `(query, polarity)`; a positive edge is active when the
/// query is 1 and a negated edge when it is 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum M1Node {
    Leaf(bool),
    Branch(Vec<M1Edge>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct M1Edge {
    pub query: Query,
    pub positive: bool,
    pub child: M1Node,
}

/// Internal nodes carry a query; an edge labeled `b` is active when the
/// node's query evaluates to `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum M2Node {
    Leaf(bool),
    Node {
        query: Query,
        edges: Vec<(bool, M2Node)>,
    },
}

impl M1Node {
    fn accepts(&self, x: usize) -> bool {
        match self {
            M1Node::Leaf(b) => *b,
            M1Node::Branch(edges) => edges
                .iter()
                .any(|e| e.query.eval_index(x) == e.positive && e.child.accepts(x)),
        }
    }

    fn height(&self) -> usize {
        match self {
            M1Node::Leaf(_) => 0,
            M1Node::Branch(edges) => edges
                .iter()
                .map(|e| 1 + e.child.height())
                .max()
                .unwrap_or(0),
        }
    }

    fn queries<'a>(&'a self, out: &mut Vec<&'a Query>) {
        if let M1Node::Branch(edges) = self {
            for e in edges {
                out.push(&e.query);
                e.child.queries(out);
            }
        }
    }

    fn to_m2(&self) -> M2Node {
        match self {
            M1Node::Leaf(b) => M2Node::Leaf(*b),
            M1Node::Branch(edges) => M2Node::Node {
                query: Query::one(),
                edges: edges
                    .iter()
                    .map(|e| {
                        let k = M2Node::Node {
                            query: e.query.clone(),
                            edges: vec![(e.positive, e.child.to_m2())],
                        };
                        (true, k)
                    })
                    .collect(),
            },
        }
    }

    pub fn branch_count(&self) -> usize {
        match self {
            M1Node::Leaf(_) => 0,
            M1Node::Branch(e) => e.len(),
        }
    }
}

impl M2Node {
    fn accepts(&self, x: usize) -> bool {
        match self {
            M2Node::Leaf(b) => *b,
            M2Node::Node { query, edges } => {
                let v = query.eval_index(x);
                edges.iter().any(|(l, c)| *l == v && c.accepts(x))
            }
        }
    }

    fn height(&self) -> usize {
        match self {
            M2Node::Leaf(_) => 0,
            M2Node::Node { edges, .. } => {
                edges.iter().map(|(_, c)| 1 + c.height()).max().unwrap_or(0)
            }
        }
    }

    fn queries<'a>(&'a self, out: &mut Vec<&'a Query>) {
        if let M2Node::Node { query, edges } = self {
            out.push(query);
            for (_, c) in edges {
                c.queries(out);
            }
        }
    }

    fn to_m1(&self) -> M1Node {
        match self {
            M2Node::Leaf(b) => M1Node::Leaf(*b),
            M2Node::Node { query, edges } => M1Node::Branch(
                edges
                    .iter()
                    .map(|(l, c)| M1Edge {
                        query: query.clone(),
                        positive: *l,
                        child: c.to_m1(),
                    })
                    .collect(),
            ),
        }
    }
}

macro_rules! nmdt_common {
    ($ty:ident, $node:ident) => {
        #[derive(Debug, Clone, PartialEq, Eq)]
        pub struct $ty {
            n: usize,
            root: $node,
        }

        impl $ty {
            pub fn new(n: usize, root: $node) -> Result<Self> {
                let mut qs = Vec::new();
                root.queries(&mut qs);
                for q in qs {
                    q.check_arity(n)?;
                }
                Ok($ty { n, root })
            }

            pub fn arity(&self) -> usize {
                self.n
            }

            pub fn root(&self) -> &$node {
                &self.root
            }

            pub fn height(&self) -> usize {
                self.root.height()
            }

            pub fn eval_index(&self, x: usize) -> bool {
                self.root.accepts(x)
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
        }
    };
}

nmdt_common!(NondetMdtM1, M1Node);
nmdt_common!(NondetMdtM2, M2Node);

/// Height-2 tree over the even-padded decomposition
/// `f = ¬f_1f_2 ∨ ¬f_3f_4 ∨ …`: one root edge `¬f_{2i-1}` per pair,
/// followed by `f_{2i}` into a 1-leaf.
pub fn nmdt_build(f: &TruthTable) -> NondetMdtM1 {
    let n = f.arity();
    let mut comps = alternation_decomposition(f).padded_even();
    if comps.is_empty() {
        let z = TruthTable::zeros(n).expect("arity of f");
        comps = vec![z.clone(), z];
    }
    let as_query = |t: &TruthTable| match t.constant_value() {
        Some(b) => Query::constant(b),
        None => Query::table(t.clone()),
    };
    let edges = comps
        .chunks(2)
        .map(|p| M1Edge {
            query: as_query(&p[0]),
            positive: false,
            child: M1Node::Branch(vec![M1Edge {
                query: as_query(&p[1]),
                positive: true,
                child: M1Node::Leaf(true),
            }]),
        })
        .collect();
    NondetMdtM1 {
        n,
        root: M1Node::Branch(edges),
    }
}

/// Each edge `(f, pol)` becomes a constant-1 node's 1-edge into a new
/// node labeled `f`, whose `pol` edge leads on; height doubles.
pub fn m1_to_m2(t: &NondetMdtM1) -> NondetMdtM2 {
    NondetMdtM2 {
        n: t.n,
        root: t.root.to_m2(),
    }
}

/// An edge labeled `b` under a node querying `f` becomes `(f, b)`.
pub fn m2_to_m1(t: &NondetMdtM2) -> NondetMdtM1 {
    NondetMdtM1 {
        n: t.n,
        root: t.root.to_m1(),
    }
}
