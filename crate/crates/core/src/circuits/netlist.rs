//! Line-based netlist text.
//!
//! ```text
//! INPUTS 2
//! g1=NOT(x1)
//! g2=AND(g1,x2)
//! OUTPUTS g2
//! ```
//!
//! Statements are separated by newlines or `;`, whitespace is ignored and
//! `#` starts a comment. Gate kinds are `AND`, `OR`, `NOT`, `TH<k>`,
//! `CONST0` and `CONST1`. Operands must be defined before use. `INPUTS`
//! defaults to the largest input referenced and `OUTPUTS` to the last gate.
//! The emitter numbers gates `g1, g2, …` in order, which parses back to the
//! same circuit.

use std::collections::HashMap;

use super::ir::{Circuit, Gate, GateId};
use crate::error::{Error, Result};

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::parse(line, msg)
}

struct Parser {
    gates: Vec<Gate>,
    inputs: HashMap<usize, GateId>,
    named: HashMap<u64, GateId>,
    max_input: usize,
}

impl Parser {
    fn operand(&mut self, tok: &str, line: usize) -> Result<GateId> {
        if let Some(i) = tok.strip_prefix('x') {
            let i: usize = i
                .parse()
                .map_err(|_| err(line, format!("bad input name {tok:?}")))?;
            if i == 0 {
                return Err(err(line, "inputs are numbered from x1"));
            }
            self.max_input = self.max_input.max(i);
            let next = self.gates.len();
            let id = *self.inputs.entry(i).or_insert(next);
            if id == next {
                self.gates.push(Gate::Input(i - 1));
            }
            Ok(id)
        } else if let Some(g) = tok.strip_prefix('g') {
            let g: u64 = g
                .parse()
                .map_err(|_| err(line, format!("bad gate name {tok:?}")))?;
            self.named
                .get(&g)
                .copied()
                .ok_or_else(|| err(line, format!("gate {tok} used before definition")))
        } else {
            Err(err(line, format!("unknown operand {tok:?}")))
        }
    }

    fn operands(&mut self, args: &str, line: usize) -> Result<Vec<GateId>> {
        if args.is_empty() {
            return Ok(Vec::new());
        }
        args.split(',').map(|t| self.operand(t, line)).collect()
    }
}

pub fn parse_netlist(text: &str) -> Result<Circuit> {
    let mut p = Parser {
        gates: Vec::new(),
        inputs: HashMap::new(),
        named: HashMap::new(),
        max_input: 0,
    };
    let mut declared_inputs = None;
    let mut outputs_spec: Option<(usize, String)> = None;
    let mut last_gate = None;

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("");
        for stmt in content.split(';') {
            let s: String = stmt.chars().filter(|c| !c.is_whitespace()).collect();
            if s.is_empty() {
                continue;
            }
            if let Some(n) = s.strip_prefix("INPUTS") {
                let n: usize = n
                    .parse()
                    .map_err(|_| err(line, format!("bad input count {n:?}")))?;
                declared_inputs = Some(n);
                continue;
            }
            if let Some(o) = s.strip_prefix("OUTPUTS") {
                outputs_spec = Some((line, o.to_string()));
                continue;
            }
            let (lhs, rhs) = s
                .split_once('=')
                .ok_or_else(|| err(line, format!("expected g<id>=..., got {s:?}")))?;
            let id: u64 = lhs
                .strip_prefix('g')
                .and_then(|v| v.parse().ok())
                .filter(|&v| v > 0)
                .ok_or_else(|| err(line, format!("bad gate id {lhs:?}")))?;
            if p.named.contains_key(&id) {
                return Err(err(line, format!("gate g{id} redefined")));
            }
            let gate = if rhs == "CONST0" || rhs == "CONST0()" {
                Gate::Const(false)
            } else if rhs == "CONST1" || rhs == "CONST1()" {
                Gate::Const(true)
            } else {
                let (kind, rest) = rhs
                    .split_once('(')
                    .ok_or_else(|| err(line, format!("expected KIND(...), got {rhs:?}")))?;
                let args = rest
                    .strip_suffix(')')
                    .ok_or_else(|| err(line, "missing closing parenthesis"))?;
                let ops = p.operands(args, line)?;
                match kind {
                    "AND" => Gate::And(ops),
                    "OR" => Gate::Or(ops),
                    "NOT" => match ops[..] {
                        [a] => Gate::Not(a),
                        _ => return Err(err(line, "NOT takes exactly one operand")),
                    },
                    k if k.starts_with("TH") => {
                        let k: usize = k[2..]
                            .parse()
                            .map_err(|_| err(line, format!("bad threshold {kind:?}")))?;
                        if k > ops.len() + 1 {
                            return Err(err(
                                line,
                                format!("TH{k} over {} operands is out of range", ops.len()),
                            ));
                        }
                        Gate::Th(k, ops)
                    }
                    other => return Err(err(line, format!("unknown gate kind {other:?}"))),
                }
            };
            let gid = p.gates.len();
            p.gates.push(gate);
            p.named.insert(id, gid);
            last_gate = Some(gid);
        }
    }

    let n = match declared_inputs {
        Some(n) if n < p.max_input => {
            return Err(err(1, format!("x{} used but INPUTS is {n}", p.max_input)))
        }
        Some(n) => n,
        None => p.max_input,
    };
    let outputs = match outputs_spec {
        Some((line, spec)) => p.operands(&spec, line)?,
        None => vec![last_gate.ok_or_else(|| err(1, "no gates and no OUTPUTS"))?],
    };
    let (gates, outputs) = inputs_first(p.gates, outputs);
    Circuit::new(n, gates, outputs)
}

/// Moves the input gates to the front in index order, so a circuit built
/// with its inputs first parses back to the same gate list.
fn inputs_first(gates: Vec<Gate>, outputs: Vec<GateId>) -> (Vec<Gate>, Vec<GateId>) {
    let mut order: Vec<GateId> = (0..gates.len()).collect();
    order.sort_by_key(|&id| match gates[id] {
        Gate::Input(i) => (0, i),
        _ => (1, id),
    });
    let mut new_id = vec![0; gates.len()];
    for (pos, &id) in order.iter().enumerate() {
        new_id[id] = pos;
    }
    let remap = |v: &[GateId]| v.iter().map(|&f| new_id[f]).collect::<Vec<_>>();
    let gates = order
        .iter()
        .map(|&id| match &gates[id] {
            Gate::And(v) => Gate::And(remap(v)),
            Gate::Or(v) => Gate::Or(remap(v)),
            Gate::Th(k, v) => Gate::Th(*k, remap(v)),
            Gate::Not(a) => Gate::Not(new_id[*a]),
            g => g.clone(),
        })
        .collect();
    (gates, remap(&outputs))
}

impl Circuit {
    pub fn to_netlist(&self) -> String {
        let mut names = vec![String::new(); self.gates().len()];
        let mut out = format!("INPUTS {}\n", self.n_inputs());
        let mut next = 1;
        for (id, g) in self.gates().iter().enumerate() {
            if let Gate::Input(i) = g {
                names[id] = format!("x{}", i + 1);
                continue;
            }
            let list = |v: &[GateId]| {
                v.iter()
                    .map(|&f| names[f].as_str())
                    .collect::<Vec<_>>()
                    .join(",")
            };
            let body = match g {
                Gate::Input(_) => unreachable!(),
                Gate::Const(false) => "CONST0".to_string(),
                Gate::Const(true) => "CONST1".to_string(),
                Gate::And(v) => format!("AND({})", list(v)),
                Gate::Or(v) => format!("OR({})", list(v)),
                Gate::Not(a) => format!("NOT({})", names[*a]),
                Gate::Th(k, v) => format!("TH{k}({})", list(v)),
            };
            names[id] = format!("g{next}");
            next += 1;
            out.push_str(&format!("{}={}\n", names[id], body));
        }
        let outs: Vec<&str> = self.outputs().iter().map(|&o| names[o].as_str()).collect();
        out.push_str(&format!("OUTPUTS {}\n", outs.join(",")));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inputs_come_first() {
        let c = parse_netlist("g1=NOT(x3); g2=AND(g1,x1)").unwrap();
        assert_eq!(
            c.gates(),
            &[
                Gate::Input(0),
                Gate::Input(2),
                Gate::Not(1),
                Gate::And(vec![2, 0])
            ]
        );
        assert_eq!(c.outputs(), &[3]);
        assert_eq!(parse_netlist(&c.to_netlist()).unwrap(), c);
    }

    #[test]
    fn parses_examples() {
        let c = parse_netlist("g1=AND(x1,x2)").unwrap();
        assert_eq!(c.n_inputs(), 2);
        assert_eq!(c.size(), 1);
        assert_eq!(c.truth_table_of(0).unwrap().to_string(), "0001");

        let c = parse_netlist("g1=NOT(x1); g2=AND(g1,x2)").unwrap();
        assert_eq!(c.truth_table_of(0).unwrap().to_string(), "0010");
        assert_eq!(c.negation_count(), 1);

        let c = parse_netlist("INPUTS 3\n g7 = TH2( x1 , x2, x3 ) # majority\nOUTPUTS g7, x3\n")
            .unwrap();
        assert_eq!(c.outputs().len(), 2);
        assert_eq!(c.eval_bits(&[true, false, true]).unwrap(), vec![true, true]);
    }

    #[test]
    fn rejects_bad_netlists() {
        assert!(parse_netlist("g1=AND(g2)").is_err());
        assert!(parse_netlist("g1=AND(x1); g1=OR(x1)").is_err());
        assert!(parse_netlist("g1=TH4(x1,x2)").is_err());
        assert!(parse_netlist("g1=NOT(x1,x2)").is_err());
        assert!(parse_netlist("g1=XOR(x1,x2)").is_err());
        assert!(parse_netlist("INPUTS 1\ng1=AND(x1,x2)").is_err());
        assert!(parse_netlist("g0=AND(x1)").is_err());
        assert!(parse_netlist("").is_err());
    }

    #[test]
    fn round_trips() {
        let text =
            "INPUTS 3\ng1=NOT(x2)\ng2=TH2(x1,g1,x3)\ng3=CONST1\ng4=OR(g2,g3)\nOUTPUTS g2,g4,x1\n";
        let c = parse_netlist(text).unwrap();
        assert_eq!(c.to_netlist(), text);
        let again = parse_netlist(&c.to_netlist()).unwrap();
        assert_eq!(again.output_tables().unwrap(), c.output_tables().unwrap());
    }
}
