use std::fmt;

use crate::boolfn::{Assignment, TruthTable};
use crate::error::{Error, Result};

pub type GateId = usize;

/// Gate kinds. Fanins refer to strictly earlier gates; `Input(i)` is the
/// 0-based variable `x_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Gate {
    Input(usize),
    Const(bool),
    And(Vec<GateId>),
    Or(Vec<GateId>),
    Not(GateId),
    /// `[Σ fanins ≥ k]`; fanins may repeat to express integer weights.
    Th(usize, Vec<GateId>),
}

impl Gate {
    pub fn fanins(&self) -> &[GateId] {
        match self {
            Gate::Input(_) | Gate::Const(_) => &[],
            Gate::And(v) | Gate::Or(v) | Gate::Th(_, v) => v,
            Gate::Not(a) => std::slice::from_ref(a),
        }
    }

    /// Input and constant gates are free; every other gate is a level.
    pub fn is_logic(&self) -> bool {
        !matches!(self, Gate::Input(_) | Gate::Const(_))
    }

    fn eval(&self, v: &[bool], input: impl Fn(usize) -> bool) -> bool {
        match self {
            Gate::Input(i) => input(*i),
            Gate::Const(b) => *b,
            Gate::And(f) => f.iter().all(|&g| v[g]),
            Gate::Or(f) => f.iter().any(|&g| v[g]),
            Gate::Not(a) => !v[*a],
            Gate::Th(k, f) => f.iter().filter(|&&g| v[g]).count() >= *k,
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Circuit {
    n_inputs: usize,
    gates: Vec<Gate>,
    outputs: Vec<GateId>,
}

impl Circuit {
    /// Checks topological order, input ranges and output ids.
    pub fn new(n_inputs: usize, gates: Vec<Gate>, outputs: Vec<GateId>) -> Result<Self> {
        for (id, g) in gates.iter().enumerate() {
            if let Some(&bad) = g.fanins().iter().find(|&&f| f >= id) {
                return Err(Error::Format(format!(
                    "gate {id} uses gate {bad}, which is not defined before it"
                )));
            }
            match g {
                Gate::Input(i) if *i >= n_inputs => {
                    return Err(Error::Format(format!(
                        "gate {id} reads input {} of {n_inputs}",
                        i + 1
                    )))
                }
                Gate::Th(k, f) if *k > f.len() + 1 => {
                    return Err(Error::Format(format!(
                        "gate {id}: threshold {k} exceeds fanin count {} + 1",
                        f.len()
                    )))
                }
                Gate::Not(_)
                | Gate::And(_)
                | Gate::Or(_)
                | Gate::Th(..)
                | Gate::Input(_)
                | Gate::Const(_) => {}
            }
        }
        if let Some(&bad) = outputs.iter().find(|&&o| o >= gates.len()) {
            return Err(Error::Format(format!(
                "output refers to unknown gate {bad}"
            )));
        }
        Ok(Circuit {
            n_inputs,
            gates,
            outputs,
        })
    }

    pub fn n_inputs(&self) -> usize {
        self.n_inputs
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn gate(&self, id: GateId) -> &Gate {
        &self.gates[id]
    }

    pub fn outputs(&self) -> &[GateId] {
        &self.outputs
    }

    pub fn size(&self) -> usize {
        self.gates.iter().filter(|g| g.is_logic()).count()
    }

    pub fn negation_count(&self) -> usize {
        self.gates
            .iter()
            .filter(|g| matches!(g, Gate::Not(_)))
            .count()
    }

    pub fn not_gates(&self) -> impl Iterator<Item = GateId> + '_ {
        self.gates
            .iter()
            .enumerate()
            .filter(|(_, g)| matches!(g, Gate::Not(_)))
            .map(|(i, _)| i)
    }

    pub fn is_syntactically_monotone(&self) -> bool {
        self.negation_count() == 0
    }

    /// Longest path to any output, counting logic gates.
    pub fn depth(&self) -> usize {
        let mut d = vec![0usize; self.gates.len()];
        for (id, g) in self.gates.iter().enumerate() {
            let below = g.fanins().iter().map(|&f| d[f]).max().unwrap_or(0);
            d[id] = below + usize::from(g.is_logic());
        }
        self.outputs.iter().map(|&o| d[o]).max().unwrap_or(0)
    }

    fn eval_with(&self, input: impl Fn(usize) -> bool + Copy) -> Vec<bool> {
        let mut v = vec![false; self.gates.len()];
        for (id, g) in self.gates.iter().enumerate() {
            v[id] = g.eval(&v, input);
        }
        self.outputs.iter().map(|&o| v[o]).collect()
    }

    pub fn eval_index(&self, x: usize) -> Vec<bool> {
        self.eval_with(|i| (x >> i) & 1 == 1)
    }

    pub fn eval(&self, x: Assignment) -> Result<Vec<bool>> {
        if x.arity() != self.n_inputs {
            return Err(Error::ArityMismatch {
                expected: self.n_inputs,
                got: x.arity(),
            });
        }
        Ok(self.eval_index(x.index()))
    }

    /// Evaluates on an explicit bit vector `x_1..x_m`; any width.
    pub fn eval_bits(&self, bits: &[bool]) -> Result<Vec<bool>> {
        if bits.len() != self.n_inputs {
            return Err(Error::ArityMismatch {
                expected: self.n_inputs,
                got: bits.len(),
            });
        }
        Ok(self.eval_with(|i| bits[i]))
    }

    /// Truth tables of every gate, computed 64 assignments per word.
    pub fn gate_tables(&self) -> Result<Vec<TruthTable>> {
        let n = self.n_inputs;
        let zero = TruthTable::zeros(n)?;
        let words = zero.words().len();
        let mut tabs: Vec<Vec<u64>> = Vec::with_capacity(self.gates.len());
        let ones = TruthTable::ones(n)?.words().to_vec();
        for g in &self.gates {
            let w: Vec<u64> = match g {
                Gate::Input(i) => TruthTable::var(n, i + 1)?.words().to_vec(),
                Gate::Const(b) => {
                    if *b {
                        ones.clone()
                    } else {
                        vec![0; words]
                    }
                }
                Gate::And(f) => (0..words)
                    .map(|j| f.iter().fold(ones[j], |acc, &a| acc & tabs[a][j]))
                    .collect(),
                Gate::Or(f) => (0..words)
                    .map(|j| f.iter().fold(0, |acc, &a| acc | tabs[a][j]))
                    .collect(),
                Gate::Not(a) => (0..words).map(|j| !tabs[*a][j] & ones[j]).collect(),
                Gate::Th(k, f) => (0..words)
                    .map(|j| threshold_word(*k, f.iter().map(|&a| tabs[a][j])) & ones[j])
                    .collect(),
            };
            tabs.push(w);
        }
        tabs.into_iter()
            .map(|w| TruthTable::from_words(n, w))
            .collect()
    }

    pub fn truth_table_of(&self, output: usize) -> Result<TruthTable> {
        let &gid = self
            .outputs
            .get(output)
            .ok_or_else(|| Error::InvalidParameter(format!("no output {output}")))?;
        Ok(self.gate_tables()?.swap_remove(gid))
    }

    pub fn output_tables(&self) -> Result<Vec<TruthTable>> {
        let tabs = self.gate_tables()?;
        Ok(self.outputs.iter().map(|&o| tabs[o].clone()).collect())
    }

    /// The single-output subcircuit computing gate `id`.
    pub fn cone(&self, id: GateId) -> Circuit {
        let mut c = self.clone();
        c.outputs = vec![id];
        c.pruned()
    }

    pub fn with_outputs(&self, outputs: Vec<GateId>) -> Result<Circuit> {
        Circuit::new(self.n_inputs, self.gates.clone(), outputs)
    }

    /// Drops gates unreachable from the outputs, renumbering the rest.
    pub fn pruned(&self) -> Circuit {
        let mut live = vec![false; self.gates.len()];
        for &o in &self.outputs {
            live[o] = true;
        }
        for id in (0..self.gates.len()).rev() {
            if live[id] {
                for &f in self.gates[id].fanins() {
                    live[f] = true;
                }
            }
        }
        let mut remap = vec![usize::MAX; self.gates.len()];
        let mut gates = Vec::new();
        for (id, g) in self.gates.iter().enumerate() {
            if !live[id] {
                continue;
            }
            let m = |v: &Vec<GateId>| v.iter().map(|&f| remap[f]).collect::<Vec<_>>();
            let ng = match g {
                Gate::Input(i) => Gate::Input(*i),
                Gate::Const(b) => Gate::Const(*b),
                Gate::And(v) => Gate::And(m(v)),
                Gate::Or(v) => Gate::Or(m(v)),
                Gate::Not(a) => Gate::Not(remap[*a]),
                Gate::Th(k, v) => Gate::Th(*k, m(v)),
            };
            remap[id] = gates.len();
            gates.push(ng);
        }
        Circuit {
            n_inputs: self.n_inputs,
            gates,
            outputs: self.outputs.iter().map(|&o| remap[o]).collect(),
        }
    }
}

/// Bit-sliced `[popcount ≥ k]` across 64 lanes.
fn threshold_word(k: usize, inputs: impl Iterator<Item = u64>) -> u64 {
    if k == 0 {
        return u64::MAX;
    }
    let mut planes: Vec<u64> = Vec::new();
    for w in inputs {
        let mut carry = w;
        for p in planes.iter_mut() {
            if carry == 0 {
                break;
            }
            let sum = *p ^ carry;
            carry &= *p;
            *p = sum;
        }
        if carry != 0 {
            planes.push(carry);
        }
    }
    let bits = usize::BITS - k.leading_zeros();
    if bits as usize > planes.len() {
        return 0;
    }
    // compare the per-lane count with k from the top plane down
    let mut gt = 0u64;
    let mut eq = u64::MAX;
    for j in (0..planes.len()).rev() {
        if (k >> j) & 1 == 1 {
            eq &= planes[j];
        } else {
            gt |= eq & planes[j];
            eq &= !planes[j];
        }
    }
    gt | eq
}

impl fmt::Debug for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_netlist())
    }
}
