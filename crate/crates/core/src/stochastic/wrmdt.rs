use crate::boolfn::TruthTable;
use crate::error::{Error, Result};
use crate::models::Query;

use super::dyadic::Dyadic;
use super::rmdt::{RNode, RandomizedMdt};

/// Internal nodes hold a multiset of `w` queries; on input `x` the 1-child
/// is taken with probability `|{q : q(x) = 1}| / w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WNode {
    Leaf(bool),
    QuerySet {
        queries: Vec<Query>,
        zero: Box<WNode>,
        one: Box<WNode>,
    },
}

impl WNode {
    pub fn set(queries: Vec<Query>, zero: WNode, one: WNode) -> Self {
        WNode::QuerySet {
            queries,
            zero: Box::new(zero),
            one: Box::new(one),
        }
    }

    fn height(&self) -> usize {
        match self {
            WNode::Leaf(_) => 0,
            WNode::QuerySet { zero, one, .. } => 1 + zero.height().max(one.height()),
        }
    }

    fn check(&self, n: usize, w: usize) -> Result<()> {
        match self {
            WNode::Leaf(_) => Ok(()),
            WNode::QuerySet { queries, zero, one } => {
                if queries.len() != w {
                    return Err(Error::Format(format!(
                        "query set of size {} in a tree with w={w}",
                        queries.len()
                    )));
                }
                queries.iter().try_for_each(|q| q.check_arity(n))?;
                zero.check(n, w)?;
                one.check(n, w)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuerySetRmdt {
    n: usize,
    w: usize,
    root: WNode,
}

impl QuerySetRmdt {
    pub fn new(n: usize, w: usize, root: WNode) -> Result<Self> {
        if w == 0 {
            return Err(Error::InvalidParameter(
                "query sets must be non-empty".into(),
            ));
        }
        root.check(n, w)?;
        Ok(QuerySetRmdt { n, w, root })
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn set_size(&self) -> usize {
        self.w
    }

    pub fn root(&self) -> &WNode {
        &self.root
    }

    pub fn height(&self) -> usize {
        self.root.height()
    }

    fn log_w(&self) -> Result<u32> {
        if self.w.is_power_of_two() {
            Ok(self.w.trailing_zeros())
        } else {
            Err(Error::NotPowerOfTwo(self.w))
        }
    }

    /// Exact when `w` is a power of two.
    pub fn accept_prob_index(&self, x: usize) -> Result<Dyadic> {
        let k = self.log_w()?;
        fn go(n: &WNode, x: usize, k: u32) -> Dyadic {
            match n {
                WNode::Leaf(b) => {
                    if *b {
                        Dyadic::ONE
                    } else {
                        Dyadic::ZERO
                    }
                }
                WNode::QuerySet { queries, zero, one } => {
                    let hits = queries.iter().filter(|q| q.eval_index(x)).count() as u128;
                    let p0 = go(zero, x, k);
                    let p1 = go(one, x, k);
                    let w = 1u128 << k;
                    // (hits·p1 + (w−hits)·p0) / w
                    let scale = |p: Dyadic, c: u128| Dyadic::new(p.numerator() * c, p.exponent());
                    (scale(p1, hits) + scale(p0, w - hits)).halve(k)
                }
            }
        }
        Ok(go(&self.root, x, k))
    }

    pub fn half_threshold_table(&self) -> Result<TruthTable> {
        self.log_w()?;
        TruthTable::from_fn(self.n, |x| {
            self.accept_prob_index(x).expect("w checked") >= Dyadic::HALF
        })
    }
}

/// Each query-set node becomes a complete coin tree of depth `k = log2 w`
/// whose `j`-th leaf queries the `j`-th set member; heights grow by the
/// factor `1 + k`.
pub fn wrmdt_to_rmdt(t: &QuerySetRmdt) -> Result<RandomizedMdt> {
    let k = t.log_w()? as usize;
    fn conv(n: &WNode, k: usize) -> RNode {
        match n {
            WNode::Leaf(b) => RNode::Leaf(*b),
            WNode::QuerySet { queries, zero, one } => {
                let z = conv(zero, k);
                let o = conv(one, k);
                fn coins(lo: usize, width: usize, qs: &[Query], z: &RNode, o: &RNode) -> RNode {
                    if width == 1 {
                        return RNode::query(qs[lo].clone(), z.clone(), o.clone());
                    }
                    let half = width / 2;
                    RNode::coin(coins(lo, half, qs, z, o), coins(lo + half, half, qs, z, o))
                }
                coins(0, 1 << k, queries, &z, &o)
            }
        }
    }
    RandomizedMdt::new(t.n, conv(&t.root, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn leaf(b: bool) -> WNode {
        WNode::Leaf(b)
    }

    fn var(i: usize) -> Query {
        Query::var(2, i).unwrap()
    }

    fn same_probs(w: &QuerySetRmdt, r: &RandomizedMdt) {
        for x in 0..1usize << w.arity() {
            let p = w.accept_prob_index(x).unwrap();
            assert_eq!(p, r.accept_prob_index(x), "x={x}");
            assert_eq!(p, r.accept_prob_by_coins(x), "x={x}");
        }
    }

    #[test]
    fn pair_of_identical_queries() {
        let t = QuerySetRmdt::new(
            2,
            2,
            WNode::set(vec![var(1), var(1)], leaf(false), leaf(true)),
        )
        .unwrap();
        let r = wrmdt_to_rmdt(&t).unwrap();
        let RNode::Coin { zero, one } = r.root() else {
            panic!("coin root")
        };
        assert_eq!(zero, one);
        assert_eq!(r.height(), 2 * t.height());
        same_probs(&t, &r);
    }

    #[test]
    fn constant_quadruple() {
        let qs = vec![Query::zero(), Query::zero(), Query::one(), Query::one()];
        let t = QuerySetRmdt::new(2, 4, WNode::set(qs, leaf(false), leaf(true))).unwrap();
        for x in 0..4 {
            assert_eq!(t.accept_prob_index(x).unwrap(), Dyadic::HALF);
        }
        let r = wrmdt_to_rmdt(&t).unwrap();
        assert_eq!(r.height(), 3);
        same_probs(&t, &r);
    }

    #[test]
    fn singleton_sets_and_nesting() {
        let inner = WNode::set(vec![var(2)], leaf(false), leaf(true));
        let t = QuerySetRmdt::new(2, 1, WNode::set(vec![var(1)], inner, leaf(true))).unwrap();
        let r = wrmdt_to_rmdt(&t).unwrap();
        assert_eq!(r.height(), t.height());
        assert_eq!(r.max_coins(), 0);
        same_probs(&t, &r);

        let deep = QuerySetRmdt::new(
            2,
            8,
            WNode::set(
                vec![
                    var(1),
                    var(2),
                    var(1),
                    Query::one(),
                    Query::zero(),
                    var(2),
                    var(1),
                    var(1),
                ],
                WNode::set(vec![var(2); 8], leaf(false), leaf(true)),
                leaf(true),
            ),
        )
        .unwrap();
        let r = wrmdt_to_rmdt(&deep).unwrap();
        assert_eq!(r.height(), 4 * deep.height());
        same_probs(&deep, &r);
    }

    #[test]
    fn rejects_bad_sizes() {
        let t =
            QuerySetRmdt::new(2, 3, WNode::set(vec![var(1); 3], leaf(false), leaf(true))).unwrap();
        assert_eq!(wrmdt_to_rmdt(&t), Err(Error::NotPowerOfTwo(3)));
        assert!(
            QuerySetRmdt::new(2, 2, WNode::set(vec![var(1)], leaf(false), leaf(true))).is_err()
        );
    }
}
