use std::collections::HashMap;

use super::ir::{Circuit, Gate, GateId};
use crate::error::{Error, Result};

/// Incremental circuit construction with constant folding and structural
/// hashing. Input gates `0..n` are created up front, so `input(i) == i`.
///
/// Folding rules: AND drops constant-1 fanins and collapses on constant-0,
/// OR dually, `NOT(const)` and `NOT(NOT(a))` fold, a threshold absorbs
/// constant fanins into `k`, and single-fanin AND/OR are the fanin itself.
#[derive(Debug, Clone)]
pub struct Builder {
    n: usize,
    gates: Vec<Gate>,
    index: HashMap<Gate, GateId>,
}

impl Builder {
    pub fn new(n: usize) -> Self {
        let mut b = Builder {
            n,
            gates: Vec::new(),
            index: HashMap::new(),
        };
        for i in 0..n {
            b.intern(Gate::Input(i));
        }
        b
    }

    pub fn n_inputs(&self) -> usize {
        self.n
    }

    pub fn input(&self, i: usize) -> GateId {
        assert!(i < self.n, "input {i} out of range");
        i
    }

    pub fn inputs(&self) -> Vec<GateId> {
        (0..self.n).collect()
    }

    fn intern(&mut self, g: Gate) -> GateId {
        if let Some(&id) = self.index.get(&g) {
            return id;
        }
        let id = self.gates.len();
        self.gates.push(g.clone());
        self.index.insert(g, id);
        id
    }

    pub fn constant(&mut self, b: bool) -> GateId {
        self.intern(Gate::Const(b))
    }

    pub fn const_value(&self, w: GateId) -> Option<bool> {
        match self.gates[w] {
            Gate::Const(b) => Some(b),
            _ => None,
        }
    }

    pub fn and(&mut self, ins: impl IntoIterator<Item = GateId>) -> GateId {
        let mut v = Vec::new();
        for w in ins {
            match self.const_value(w) {
                Some(false) => return self.constant(false),
                Some(true) => {}
                None => v.push(w),
            }
        }
        v.sort_unstable();
        v.dedup();
        match v.len() {
            0 => self.constant(true),
            1 => v[0],
            _ => self.intern(Gate::And(v)),
        }
    }

    pub fn or(&mut self, ins: impl IntoIterator<Item = GateId>) -> GateId {
        let mut v = Vec::new();
        for w in ins {
            match self.const_value(w) {
                Some(true) => return self.constant(true),
                Some(false) => {}
                None => v.push(w),
            }
        }
        v.sort_unstable();
        v.dedup();
        match v.len() {
            0 => self.constant(false),
            1 => v[0],
            _ => self.intern(Gate::Or(v)),
        }
    }

    pub fn not(&mut self, a: GateId) -> GateId {
        match self.gates[a] {
            Gate::Const(b) => self.constant(!b),
            Gate::Not(inner) => inner,
            _ => self.intern(Gate::Not(a)),
        }
    }

    /// `[Σ ins ≥ k]`; repeated fanins count with multiplicity.
    pub fn th(&mut self, k: usize, ins: impl IntoIterator<Item = GateId>) -> GateId {
        let mut ones = 0usize;
        let mut v = Vec::new();
        for w in ins {
            match self.const_value(w) {
                Some(true) => ones += 1,
                Some(false) => {}
                None => v.push(w),
            }
        }
        let k = k.saturating_sub(ones);
        if k == 0 {
            return self.constant(true);
        }
        if k > v.len() {
            return self.constant(false);
        }
        v.sort_unstable();
        let distinct = {
            let mut d = v.clone();
            d.dedup();
            d.len() == v.len()
        };
        if k == 1 {
            return self.or(v);
        }
        if k == v.len() && distinct {
            return self.and(v);
        }
        self.intern(Gate::Th(k, v))
    }

    /// Copies `c` with its inputs wired to `inputs`, returning its outputs.
    pub fn embed(&mut self, c: &Circuit, inputs: &[GateId]) -> Result<Vec<GateId>> {
        if inputs.len() != c.n_inputs() {
            return Err(Error::ArityMismatch {
                expected: c.n_inputs(),
                got: inputs.len(),
            });
        }
        let map = self.embed_with(c, inputs, |_, _| None);
        Ok(c.outputs().iter().map(|&o| map[o]).collect())
    }

    /// Embeds gate by gate; `hook(id, builder)` may supply a replacement.
    pub(crate) fn embed_with(
        &mut self,
        c: &Circuit,
        inputs: &[GateId],
        mut hook: impl FnMut(GateId, &mut Builder) -> Option<GateId>,
    ) -> Vec<GateId> {
        let mut map = Vec::with_capacity(c.gates().len());
        for (id, g) in c.gates().iter().enumerate() {
            if let Some(w) = hook(id, self) {
                map.push(w);
                continue;
            }
            let m = |v: &Vec<GateId>| v.iter().map(|&f| map[f]).collect::<Vec<_>>();
            let w = match g {
                Gate::Input(i) => inputs[*i],
                Gate::Const(b) => self.constant(*b),
                Gate::And(v) => {
                    let v = m(v);
                    self.and(v)
                }
                Gate::Or(v) => {
                    let v = m(v);
                    self.or(v)
                }
                Gate::Not(a) => self.not(map[*a]),
                Gate::Th(k, v) => {
                    let v = m(v);
                    self.th(*k, v)
                }
            };
            map.push(w);
        }
        map
    }

    pub fn negation_count(&self) -> usize {
        self.gates
            .iter()
            .filter(|g| matches!(g, Gate::Not(_)))
            .count()
    }

    /// Finalizes with the given outputs and drops unused gates.
    pub fn finish(self, outputs: Vec<GateId>) -> Circuit {
        Circuit::new(self.n, self.gates, outputs)
            .expect("builder emits gates in topological order")
            .pruned()
    }
}

/// Replaces NOT gate `gate` by constant `b` and simplifies.
pub fn substitute_not(c: &Circuit, gate: GateId, b: bool) -> Result<Circuit> {
    if !matches!(c.gates().get(gate), Some(Gate::Not(_))) {
        return Err(Error::NotANot(gate));
    }
    let mut bld = Builder::new(c.n_inputs());
    let inputs = bld.inputs();
    let map = bld.embed_with(c, &inputs, |id, bl| (id == gate).then(|| bl.constant(b)));
    let outs = c.outputs().iter().map(|&o| map[o]).collect();
    Ok(bld.finish(outs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn folding() {
        let mut b = Builder::new(2);
        let x1 = b.input(0);
        let x2 = b.input(1);
        let one = b.constant(true);
        let zero = b.constant(false);
        assert_eq!(b.and([x1, one]), x1);
        assert_eq!(b.and([x1, zero]), zero);
        assert_eq!(b.or([x2, one]), one);
        assert_eq!(b.and(Vec::new()), one);
        assert_eq!(b.or(Vec::new()), zero);
        assert_eq!(b.not(one), zero);
        let n1 = b.not(x1);
        assert_eq!(b.not(n1), x1);
        assert_eq!(b.th(0, [x1]), one);
        assert_eq!(b.th(3, [x1, x2]), zero);
        assert_eq!(b.th(2, [x1, one, x2]), b.or([x1, x2]));
        assert_eq!(b.th(2, [x1, x2]), b.and([x1, x2]));
        let a = b.and([x1, x2]);
        assert_eq!(b.and([x2, x1, x2]), a);
        // weighted threshold keeps its repeated fanins
        let w = b.th(2, [x1, x1, x2]);
        assert!(matches!(b.gates[w], Gate::Th(2, _)));
    }

    #[test]
    fn substitute_not_simplifies() {
        let c = Circuit::new(
            2,
            vec![
                Gate::Input(0),
                Gate::Input(1),
                Gate::Not(0),
                Gate::And(vec![2, 1]),
            ],
            vec![3],
        )
        .unwrap();
        let c1 = substitute_not(&c, 2, true).unwrap();
        assert_eq!(c1.truth_table_of(0).unwrap().to_string(), "0011");
        assert_eq!(c1.negation_count(), 0);
        assert_eq!(c1.size(), 0);
        let c0 = substitute_not(&c, 2, false).unwrap();
        assert!(c0.truth_table_of(0).unwrap().is_const(false));
        assert_eq!(substitute_not(&c, 3, true), Err(Error::NotANot(3)));
    }

    #[test]
    fn embed_composes() {
        let mut inner = Builder::new(2);
        let (a, bb) = (inner.input(0), inner.input(1));
        let na = inner.not(a);
        let g = inner.and([na, bb]);
        let inner = inner.finish(vec![g]);

        let mut outer = Builder::new(3);
        let x3 = outer.input(2);
        let x1 = outer.input(0);
        let o = outer.embed(&inner, &[x3, x1]).unwrap();
        let c = outer.finish(o);
        // ¬x3 ∧ x1
        let t = c.truth_table_of(0).unwrap();
        for x in 0..8 {
            assert_eq!(t.get(x), x & 4 == 0 && x & 1 == 1);
        }
        assert!(Builder::new(1).embed(&inner, &[0]).is_err());
    }
}
