use std::sync::Arc;

use crate::boolfn::{is_monotone, Assignment, TruthTable};
use crate::circuits::{Builder, Circuit, GateId};
use crate::error::{Error, Result};

/// A reference to a monotone function used as a query.
///
/// Conjunctions and disjunctions stay symbolic; `And([])` is constant-1
/// and `Or([])` is constant-0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Query {
    Table(Arc<TruthTable>),
    And(Vec<Query>),
    Or(Vec<Query>),
    Circuit {
        circuit: Arc<Circuit>,
        output: usize,
    },
}

impl Query {
    pub fn table(t: TruthTable) -> Self {
        Query::Table(Arc::new(t))
    }

    pub fn circuit(c: Circuit, output: usize) -> Self {
        Query::Circuit {
            circuit: Arc::new(c),
            output,
        }
    }

    pub fn one() -> Self {
        Query::And(Vec::new())
    }

    pub fn zero() -> Self {
        Query::Or(Vec::new())
    }

    pub fn constant(b: bool) -> Self {
        if b {
            Self::one()
        } else {
            Self::zero()
        }
    }

    /// The projection `x_i` (1-based).
    pub fn var(n: usize, i: usize) -> Result<Self> {
        Ok(Self::table(TruthTable::var(n, i)?))
    }

    /// Syntactic constant value, if the query is a bare constant.
    pub fn as_const(&self) -> Option<bool> {
        match self {
            Query::And(v) if v.is_empty() => Some(true),
            Query::Or(v) if v.is_empty() => Some(false),
            _ => None,
        }
    }

    fn combine(qs: Vec<Query>, conj: bool) -> Query {
        let mut out: Vec<Query> = Vec::new();
        let push = |q: Query, out: &mut Vec<Query>| {
            if !out.contains(&q) {
                out.push(q);
            }
        };
        for q in qs {
            match q.as_const() {
                Some(b) if b == conj => continue,
                Some(_) => return Query::constant(!conj),
                None => {}
            }
            match q {
                Query::And(v) if conj => v.into_iter().for_each(|c| push(c, &mut out)),
                Query::Or(v) if !conj => v.into_iter().for_each(|c| push(c, &mut out)),
                other => push(other, &mut out),
            }
        }
        if out.len() == 1 {
            return out.pop().expect("one element");
        }
        if conj {
            Query::And(out)
        } else {
            Query::Or(out)
        }
    }

    /// Flattening, deduplicating conjunction.
    pub fn and(qs: Vec<Query>) -> Query {
        Self::combine(qs, true)
    }

    /// Flattening, deduplicating disjunction.
    pub fn or(qs: Vec<Query>) -> Query {
        Self::combine(qs, false)
    }

    /// Arity fixed by the query's leaves, if any.
    pub fn arity(&self) -> Option<usize> {
        match self {
            Query::Table(t) => Some(t.arity()),
            Query::Circuit { circuit, .. } => Some(circuit.n_inputs()),
            Query::And(v) | Query::Or(v) => v.iter().find_map(Query::arity),
        }
    }

    pub fn eval_index(&self, x: usize) -> bool {
        match self {
            Query::Table(t) => t.get(x),
            Query::And(v) => v.iter().all(|q| q.eval_index(x)),
            Query::Or(v) => v.iter().any(|q| q.eval_index(x)),
            Query::Circuit { circuit, output } => circuit.eval_index(x)[*output],
        }
    }

    pub fn eval(&self, x: Assignment) -> Result<bool> {
        self.check_arity(x.arity())?;
        Ok(self.eval_index(x.index()))
    }

    pub fn check_arity(&self, n: usize) -> Result<()> {
        match self {
            Query::Table(_) | Query::Circuit { .. } => {
                let a = self.arity().expect("leaf query has an arity");
                if a != n {
                    return Err(Error::ArityMismatch {
                        expected: n,
                        got: a,
                    });
                }
                if let Query::Circuit { circuit, output } = self {
                    if *output >= circuit.outputs().len() {
                        return Err(Error::InvalidParameter(format!(
                            "circuit has no output {output}"
                        )));
                    }
                }
                Ok(())
            }
            Query::And(v) | Query::Or(v) => v.iter().try_for_each(|q| q.check_arity(n)),
        }
    }

    pub fn materialize(&self, n: usize) -> Result<TruthTable> {
        self.check_arity(n)?;
        self.materialize_unchecked(n)
    }

    fn materialize_unchecked(&self, n: usize) -> Result<TruthTable> {
        match self {
            Query::Table(t) => Ok((**t).clone()),
            Query::And(v) => v.iter().try_fold(TruthTable::ones(n)?, |acc, q| {
                Ok(acc.and(&q.materialize_unchecked(n)?))
            }),
            Query::Or(v) => v.iter().try_fold(TruthTable::zeros(n)?, |acc, q| {
                Ok(acc.or(&q.materialize_unchecked(n)?))
            }),
            Query::Circuit { circuit, output } => circuit.truth_table_of(*output),
        }
    }

    pub fn is_monotone(&self, n: usize) -> Result<bool> {
        Ok(is_monotone(&self.materialize(n)?))
    }

    /// Wires the query into a circuit. Tables become an OR over their
    /// minimal true points of the AND of each point's 1-variables.
    pub fn build_into(&self, b: &mut Builder) -> Result<GateId> {
        match self {
            Query::Table(t) => {
                if t.arity() != b.n_inputs() {
                    return Err(Error::ArityMismatch {
                        expected: b.n_inputs(),
                        got: t.arity(),
                    });
                }
                Ok(monotone_table_circuit(b, t))
            }
            Query::And(v) => {
                let w = v
                    .iter()
                    .map(|q| q.build_into(b))
                    .collect::<Result<Vec<_>>>()?;
                Ok(b.and(w))
            }
            Query::Or(v) => {
                let w = v
                    .iter()
                    .map(|q| q.build_into(b))
                    .collect::<Result<Vec<_>>>()?;
                Ok(b.or(w))
            }
            Query::Circuit { circuit, output } => {
                let inputs = b.inputs();
                let outs = b.embed(circuit, &inputs)?;
                outs.get(*output).copied().ok_or_else(|| {
                    Error::InvalidParameter(format!("circuit has no output {output}"))
                })
            }
        }
    }
}

/// Minimal true points of `t`: true points none of whose lower covers is
/// true.
pub fn minimal_true_points(t: &TruthTable) -> Vec<usize> {
    (0..t.len())
        .filter(|&x| {
            t.get(x) && {
                let mut bits = x;
                let mut minimal = true;
                while bits != 0 {
                    let low = bits & bits.wrapping_neg();
                    bits ^= low;
                    if t.get(x ^ low) {
                        minimal = false;
                        break;
                    }
                }
                minimal
            }
        })
        .collect()
}

/// Monotone two-level realization; equals `t` whenever `t` is monotone.
pub fn monotone_table_circuit(b: &mut Builder, t: &TruthTable) -> GateId {
    let terms: Vec<GateId> = minimal_true_points(t)
        .into_iter()
        .map(|x| {
            let vars: Vec<GateId> = (0..t.arity())
                .filter(|i| (x >> i) & 1 == 1)
                .map(|i| b.input(i))
                .collect();
            b.and(vars)
        })
        .collect();
    b.or(terms)
}
