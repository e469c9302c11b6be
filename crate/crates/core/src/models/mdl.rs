use crate::boolfn::{Assignment, TruthTable};
use crate::decomp::MonotoneDecomposition;
use crate::error::{Error, Result};

use super::query::Query;

/// `(f_1, c_1)(f_2, c_2)…(f_k, c_k)`: the output is `c_i` for the first
/// `i` with `f_i(x) = 1`. Well-formed lists end in a query that is
/// constant-1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneDecisionList {
    n: usize,
    nodes: Vec<(Query, bool)>,
}

impl MonotoneDecisionList {
    /// Checks arities; the constant-1 tail is checked by [`Self::validate`].
    pub fn new(n: usize, nodes: Vec<(Query, bool)>) -> Result<Self> {
        for (q, _) in &nodes {
            q.check_arity(n)?;
        }
        Ok(MonotoneDecisionList { n, nodes })
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> &[(Query, bool)] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn constants(&self) -> impl Iterator<Item = bool> + '_ {
        self.nodes.iter().map(|&(_, c)| c)
    }

    pub fn query_tables(&self) -> Result<Vec<TruthTable>> {
        self.nodes
            .iter()
            .map(|(q, _)| q.materialize(self.n))
            .collect()
    }

    /// Last query semantically constant-1 and every query monotone.
    pub fn validate(&self) -> Result<()> {
        let tabs = self.query_tables()?;
        match tabs.last() {
            Some(t) if t.is_const(true) => {}
            _ => return Err(Error::MalformedList("last query is not constant-1".into())),
        }
        if let Some(i) = tabs.iter().position(|t| !crate::boolfn::is_monotone(t)) {
            return Err(Error::MalformedList(format!(
                "query {} is not monotone",
                i + 1
            )));
        }
        Ok(())
    }

    pub fn eval_index(&self, x: usize) -> Result<bool> {
        self.nodes
            .iter()
            .find(|(q, _)| q.eval_index(x))
            .map(|&(_, c)| c)
            .ok_or_else(|| Error::MalformedList(format!("no query fires on input {x}")))
    }

    pub fn eval(&self, x: Assignment) -> Result<bool> {
        if x.arity() != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                got: x.arity(),
            });
        }
        self.eval_index(x.index())
    }

    /// The computed function, evaluated table-wise.
    pub fn to_table(&self) -> Result<TruthTable> {
        let tabs = self.query_tables()?;
        let mut out = TruthTable::zeros(self.n)?;
        let mut undecided = TruthTable::ones(self.n)?;
        for (t, &(_, c)) in tabs.iter().zip(&self.nodes) {
            let fire = undecided.and(t);
            if c {
                out = out.or(&fire);
            }
            undecided = undecided.and(&t.complement());
        }
        if !undecided.is_const(false) {
            return Err(Error::MalformedList("some input activates no node".into()));
        }
        Ok(out)
    }

    /// Merges maximal runs of equal constants into one node whose query is
    /// the disjunction of the run.
    pub fn normalize_alternating(&self) -> Self {
        let mut nodes: Vec<(Query, bool)> = Vec::new();
        for (q, c) in &self.nodes {
            match nodes.last_mut() {
                Some((lq, lc)) if lc == c => {
                    *lq = Query::or(vec![lq.clone(), q.clone()]);
                }
                _ => nodes.push((q.clone(), *c)),
            }
        }
        MonotoneDecisionList { n: self.n, nodes }
    }

    /// Replaces query `i` by `f_1 ∨ … ∨ f_i`.
    pub fn normalize_forward_firing(&self) -> Self {
        let mut prefix: Vec<Query> = Vec::new();
        let nodes = self
            .nodes
            .iter()
            .map(|(q, c)| {
                prefix.push(q.clone());
                (Query::or(prefix.clone()), *c)
            })
            .collect();
        MonotoneDecisionList { n: self.n, nodes }
    }

    /// Both normal forms, alternating first.
    pub fn normalize(&self) -> Self {
        self.normalize_alternating().normalize_forward_firing()
    }

    /// True when `f_i ⇒ f_{i+1}` holds pointwise for every adjacent pair.
    pub fn is_forward_firing(&self) -> Result<bool> {
        let tabs = self.query_tables()?;
        Ok(tabs.windows(2).all(|w| w[0].implies(&w[1])))
    }

    pub fn is_alternating(&self) -> bool {
        self.nodes.windows(2).all(|w| w[0].1 != w[1].1)
    }
}

/// `(f_1, c_1)…(f_m, c_m)(1, 0)` with `c_i = (m − i + 1) mod 2`; when the
/// last component is constant-1 it already serves as the tail.
pub fn mdl_from_decomposition(d: &MonotoneDecomposition) -> Result<MonotoneDecisionList> {
    if let Some((i, j)) = d.implication_violation() {
        return Err(Error::InvalidDecomposition(format!(
            "component {} does not imply component {}",
            i + 1,
            j + 1
        )));
    }
    if d.xor() != *d.target() {
        return Err(Error::InvalidDecomposition(
            "components do not XOR to the target".into(),
        ));
    }
    let n = d.arity();
    let m = d.len();
    let mut nodes: Vec<(Query, bool)> = d
        .components()
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let q = if t.is_const(true) {
                Query::one()
            } else {
                Query::table(t.clone())
            };
            (q, (m - i) % 2 == 1)
        })
        .collect();
    let has_tail = d.components().last().is_some_and(|t| t.is_const(true));
    if !has_tail {
        nodes.push((Query::one(), false));
    }
    MonotoneDecisionList::new(n, nodes)
}
