use std::collections::HashMap;

use crate::boolfn::{Assignment, TruthTable};
use crate::decomp::alternation_decomposition;
use crate::error::{Error, Result};

use super::query::Query;

/// Queries `f_1..f_h` asked regardless of earlier answers; the output is
/// `labels[r]` where bit `i-1` of `r` is `f_i(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonAdaptiveMdt {
    n: usize,
    queries: Vec<Query>,
    labels: Vec<bool>,
}

impl NonAdaptiveMdt {
    pub fn new(n: usize, queries: Vec<Query>, labels: Vec<bool>) -> Result<Self> {
        for q in &queries {
            q.check_arity(n)?;
        }
        if queries.len() >= usize::BITS as usize || labels.len() != 1 << queries.len() {
            return Err(Error::Format(format!(
                "{} queries need {} leaf labels, got {}",
                queries.len(),
                1u128 << queries.len().min(127),
                labels.len()
            )));
        }
        Ok(NonAdaptiveMdt { n, queries, labels })
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn queries(&self) -> &[Query] {
        &self.queries
    }

    pub fn labels(&self) -> &[bool] {
        &self.labels
    }

    pub fn height(&self) -> usize {
        self.queries.len()
    }

    pub fn result_index(&self, x: usize) -> usize {
        self.queries
            .iter()
            .enumerate()
            .fold(0, |r, (i, q)| r | (usize::from(q.eval_index(x)) << i))
    }

    pub fn eval_index(&self, x: usize) -> bool {
        self.labels[self.result_index(x)]
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
        let tabs: Vec<TruthTable> = self
            .queries
            .iter()
            .map(|q| q.materialize(self.n))
            .collect::<Result<_>>()?;
        TruthTable::from_fn(self.n, |x| {
            let r = tabs
                .iter()
                .enumerate()
                .fold(0, |r, (i, t)| r | (usize::from(t.get(x)) << i));
            self.labels[r]
        })
    }
}

/// Queries are the alternation components below any constant-1 tail;
/// each leaf is labeled by the parity of its results, complemented when
/// `f(0^n) = 1`.
pub fn namdt_build(f: &TruthTable) -> NonAdaptiveMdt {
    let mut comps = alternation_decomposition(f).into_components();
    let base = f.get(0);
    if base {
        comps.pop();
    }
    let h = comps.len();
    let labels = (0..1usize << h)
        .map(|r| (r.count_ones() % 2 == 1) != base)
        .collect();
    let queries = comps.into_iter().map(Query::table).collect();
    NonAdaptiveMdt::new(f.arity(), queries, labels).expect("components share the arity of f")
}

/// Monotone functions whose joint values pin down `f`, either around an
/// anchor point or globally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateSet {
    pub functions: Vec<Query>,
    pub anchor: Option<Assignment>,
}

impl CertificateSet {
    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }
}

/// `{⋀ of the variables set in x, ⋁ of the variables clear in x}`.
pub fn adaptive_certificate(f: &TruthTable, x: Assignment) -> Result<CertificateSet> {
    let n = f.arity();
    if x.arity() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            got: x.arity(),
        });
    }
    let ones = (1..=n)
        .filter(|&i| x.bit(i))
        .map(|i| Query::var(n, i))
        .collect::<Result<Vec<_>>>()?;
    let zeros = (1..=n)
        .filter(|&i| !x.bit(i))
        .map(|i| Query::var(n, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(CertificateSet {
        functions: vec![Query::and(ones), Query::or(zeros)],
        anchor: Some(x),
    })
}

pub fn nonadaptive_certificate(f: &TruthTable) -> CertificateSet {
    CertificateSet {
        functions: namdt_build(f).queries,
        anchor: None,
    }
}

/// Anchored: every `y` that agrees with the anchor on all functions has
/// `f(y) = f(anchor)`. Global: inputs agreeing on all functions agree on
/// `f`, checked by grouping inputs by their result vector.
pub fn verify_certificate(f: &TruthTable, s: &CertificateSet) -> Result<bool> {
    let n = f.arity();
    let tabs: Vec<TruthTable> = s
        .functions
        .iter()
        .map(|q| q.materialize(n))
        .collect::<Result<_>>()?;
    let signature = |x: usize| -> Vec<bool> { tabs.iter().map(|t| t.get(x)).collect() };
    match s.anchor {
        Some(a) => {
            if a.arity() != n {
                return Err(Error::ArityMismatch {
                    expected: n,
                    got: a.arity(),
                });
            }
            let sa = signature(a.index());
            let fa = f.get(a.index());
            Ok((0..f.len()).all(|y| f.get(y) == fa || signature(y) != sa))
        }
        None => {
            let mut seen: HashMap<Vec<bool>, bool> = HashMap::new();
            for x in 0..f.len() {
                let v = f.get(x);
                if *seen.entry(signature(x)).or_insert(v) != v {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::{alternation, family, Family};

    fn tt(n: usize, hex: &str) -> TruthTable {
        TruthTable::from_hex(n, hex).unwrap()
    }

    #[test]
    fn namdt_examples() {
        let xor2 = tt(2, "6");
        let t = namdt_build(&xor2);
        assert_eq!(
            t.queries(),
            &[Query::table(tt(2, "8")), Query::table(tt(2, "e"))]
        );
        assert_eq!(t.labels(), &[false, true, true, false]);
        assert_eq!(t.to_table().unwrap(), xor2);

        let th = family(&Family::Threshold(1), 3).unwrap();
        let t = namdt_build(&th);
        assert_eq!(t.height(), 1);
        assert_eq!(t.labels(), &[false, true]);

        let one = TruthTable::ones(2).unwrap();
        let t = namdt_build(&one);
        assert_eq!(t.height(), 0);
        assert_eq!(t.to_table().unwrap(), one);
    }

    #[test]
    fn namdt_exhaustive_n3() {
        for code in 0u32..256 {
            let f = TruthTable::from_fn(3, |i| (code >> i) & 1 == 1).unwrap();
            let t = namdt_build(&f);
            assert_eq!(t.height(), alternation(&f));
            assert_eq!(t.to_table().unwrap(), f);
            for x in 0..8 {
                assert_eq!(t.eval_index(x), f.get(x));
            }
        }
    }

    #[test]
    fn certificate_examples() {
        let xor2 = tt(2, "6");
        let x = Assignment::from_bits(&[false, true]).unwrap();
        let c = adaptive_certificate(&xor2, x).unwrap();
        assert_eq!(
            c.functions,
            vec![Query::var(2, 2).unwrap(), Query::var(2, 1).unwrap()]
        );
        assert!(verify_certificate(&xor2, &c).unwrap());

        let top = adaptive_certificate(&xor2, Assignment::ones(2)).unwrap();
        assert_eq!(top.functions[1], Query::zero());
        let bottom = adaptive_certificate(&xor2, Assignment::zeros(2)).unwrap();
        assert_eq!(bottom.functions[0], Query::one());

        let g = nonadaptive_certificate(&xor2);
        assert_eq!(g.len(), 2);
        assert!(verify_certificate(&xor2, &g).unwrap());
        let weak = CertificateSet {
            functions: vec![Query::table(tt(2, "e"))],
            anchor: None,
        };
        assert!(!verify_certificate(&xor2, &weak).unwrap());

        let th = family(&Family::Threshold(2), 3).unwrap();
        assert_eq!(nonadaptive_certificate(&th).len(), 1);
        assert!(nonadaptive_certificate(&TruthTable::zeros(3).unwrap()).is_empty());
    }

    #[test]
    fn certificates_exhaustive_n3() {
        for code in 0u32..256 {
            let f = TruthTable::from_fn(3, |i| (code >> i) & 1 == 1).unwrap();
            let g = nonadaptive_certificate(&f);
            assert_eq!(g.len(), alternation(&f));
            assert!(verify_certificate(&f, &g).unwrap());
            for x in 0..8 {
                let c = adaptive_certificate(&f, Assignment::new(3, x).unwrap()).unwrap();
                assert!(c.len() <= 2);
                assert!(verify_certificate(&f, &c).unwrap());
            }
        }
    }
}
