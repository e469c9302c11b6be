use std::fmt;

use super::builder::{substitute_not, Builder};
use super::inverters::{invert_sorted_blocks_wires, invert_sorted_wires, BlockInverterReport};
use super::ir::{Circuit, Gate};
use crate::boolfn::{ceil_log2_plus1, TruthTable};
use crate::decomp::alternation_decomposition;
use crate::error::{Error, Result};
use crate::models::{
    monotone_table_circuit, MdtNode, MonotoneDecisionList, MonotoneDecisionTree, Query,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegationBudgetReport {
    pub negations_used: usize,
    pub bound: usize,
    pub bound_formula: String,
    pub depth: usize,
    pub blocks: Option<BlockInverterReport>,
}

impl NegationBudgetReport {
    pub fn within_budget(&self) -> bool {
        self.negations_used <= self.bound
    }
}

impl fmt::Display for NegationBudgetReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "negations={} bound={} ({}) depth={}",
            self.negations_used, self.bound, self.bound_formula, self.depth
        )?;
        if let Some(b) = &self.blocks {
            write!(f, "\n{b}")?;
        }
        Ok(())
    }
}

/// `d·(k+1)^(1/d) − d`, the fewest negations a depth-`d` circuit can use
/// when `k` is the relevant flip count; 0 for `d = 0`.
pub fn negation_lower_bound(k: usize, depth: usize) -> f64 {
    if depth == 0 {
        return 0.0;
    }
    let d = depth as f64;
    d * ((k + 1) as f64).powf(1.0 / d) - d
}

/// Builds the tree by peeling NOT gates bottom-up: the first NOT in
/// topological order reads a NOT-free cone, which becomes the query; the
/// 0-branch continues with that NOT fixed to 1 and the 1-branch with it
/// fixed to 0. A NOT-free residual circuit is queried once more, unless
/// it has folded to a constant.
pub fn mdt_from_circuit(c: &Circuit) -> Result<MonotoneDecisionTree> {
    if c.outputs().len() != 1 {
        return Err(Error::MultiOutput(c.outputs().len()));
    }
    fn go(c: &Circuit) -> Result<MdtNode> {
        let out = c.outputs()[0];
        if let Gate::Const(b) = c.gate(out) {
            return Ok(MdtNode::Leaf(*b));
        }
        match c.not_gates().next() {
            Some(g) => {
                let Gate::Not(a) = c.gate(g) else {
                    unreachable!("not_gates yields NOT gates")
                };
                let query = Query::circuit(c.cone(*a), 0);
                let zero = go(&substitute_not(c, g, true)?)?;
                let one = go(&substitute_not(c, g, false)?)?;
                Ok(MdtNode::query(query, zero, one))
            }
            None => Ok(MdtNode::query(
                Query::circuit(c.pruned(), 0),
                MdtNode::Leaf(false),
                MdtNode::Leaf(true),
            )),
        }
    }
    let simplified = {
        let mut b = Builder::new(c.n_inputs());
        let inputs = b.inputs();
        let outs = b.embed(c, &inputs)?;
        b.finish(outs)
    };
    MonotoneDecisionTree::new(c.n_inputs(), go(&simplified)?)
}

/// `f = ¬g_1g_2 ∨ ¬g_3g_4 ∨ …` over the even-padded alternation
/// decomposition. The odd components are sorted on every input, so one
/// sorted inverter of width `k/2` supplies all their complements.
pub fn markov_circuit(f: &TruthTable) -> (Circuit, NegationBudgetReport) {
    let d = alternation_decomposition(f);
    let alt = d.len() - usize::from(f.get(0));
    let comps = d.padded_even();
    let mut b = Builder::new(f.arity());
    let wires: Vec<_> = comps
        .iter()
        .map(|g| monotone_table_circuit(&mut b, g))
        .collect();
    let odd: Vec<_> = wires.iter().step_by(2).copied().collect();
    let inv = invert_sorted_wires(&mut b, &odd);
    let terms: Vec<_> = inv
        .iter()
        .zip(wires.iter().skip(1).step_by(2))
        .map(|(&ng, &g)| b.and([ng, g]))
        .collect();
    let out = b.or(terms);
    let c = b.finish(vec![out]);
    let report = NegationBudgetReport {
        negations_used: c.negation_count(),
        bound: ceil_log2_plus1(alt),
        bound_formula: "ceil(log2(alt+1))".into(),
        depth: c.depth(),
        blocks: None,
    };
    (c, report)
}

/// The pair form of a normalized list `(q_1,0)(q_2,1)…(q_k,1)(1,0)`,
/// with the odd-query complements taken from a block inverter.
pub fn circuit_from_mdl(
    l: &MonotoneDecisionList,
    t: usize,
    levels: usize,
) -> Result<(Circuit, NegationBudgetReport)> {
    if t == 0 || levels == 0 {
        return Err(Error::InvalidParameter(
            "block count and levels must be positive".into(),
        ));
    }
    l.validate()?;
    let norm = l.normalize();
    let mut nodes: Vec<(Query, bool)> = norm.nodes().to_vec();
    if nodes.first().is_some_and(|&(_, c)| c) {
        nodes.insert(0, (Query::zero(), false));
    }
    if nodes.last().is_some_and(|&(_, c)| !c) {
        nodes.pop();
    }
    debug_assert!(nodes.len().is_multiple_of(2));
    let mut b = Builder::new(l.arity());
    let wires: Vec<_> = nodes
        .iter()
        .map(|(q, _)| q.build_into(&mut b))
        .collect::<Result<_>>()?;
    let odd: Vec<_> = wires.iter().step_by(2).copied().collect();
    let mut blocks = BlockInverterReport {
        levels: Vec::new(),
        base_width: 0,
    };
    let before = b.negation_count();
    let inv = invert_sorted_blocks_wires(&mut b, &odd, t, levels, &mut blocks);
    let inverter_nots = b.negation_count() - before;
    let terms: Vec<_> = inv
        .iter()
        .zip(wires.iter().skip(1).step_by(2))
        .map(|(&ng, &g)| b.and([ng, g]))
        .collect();
    let out = b.or(terms);
    let c = b.finish(vec![out]);
    let query_nots = before;
    let report = NegationBudgetReport {
        negations_used: c.negation_count(),
        bound: blocks.predicted_negations() + query_nots,
        bound_formula: format!(
            "block inverter t={t} levels={levels} ({} inverter NOTs built)",
            inverter_nots
        ),
        depth: c.depth(),
        blocks: Some(blocks),
    };
    Ok((c, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::{alternation, family, Family};
    use crate::circuits::parse_netlist;
    use crate::models::mdt_build;

    fn tt(n: usize, hex: &str) -> TruthTable {
        TruthTable::from_hex(n, hex).unwrap()
    }

    #[test]
    fn mdt_from_circuit_examples() {
        let mono = parse_netlist("g1=AND(x1,x2); g2=OR(g1,x3)").unwrap();
        let t = mdt_from_circuit(&mono).unwrap();
        assert_eq!(t.height(), 1);
        assert_eq!(t.to_table().unwrap(), mono.truth_table_of(0).unwrap());

        let c = parse_netlist("g1=NOT(x1); g2=AND(g1,x2)").unwrap();
        let t = mdt_from_circuit(&c).unwrap();
        assert!(t.height() <= 2);
        assert_eq!(t.to_table().unwrap().to_string(), "0010");
        assert!(t.all_queries_monotone().unwrap());

        let two = parse_netlist("g1=AND(x1,x2); OUTPUTS g1, x1").unwrap();
        assert_eq!(mdt_from_circuit(&two), Err(Error::MultiOutput(2)));

        let k = parse_netlist("g1=CONST1").unwrap();
        assert_eq!(mdt_from_circuit(&k).unwrap().height(), 0);
    }

    #[test]
    fn nested_negations() {
        // x1 ⊕ x2 ⊕ x3 with several NOTs stacked
        let text = "g1=NOT(x1); g2=NOT(x2); g3=AND(x1,g2); g4=AND(g1,x2); g5=OR(g3,g4);\
                    g6=NOT(g5); g7=NOT(x3); g8=AND(g5,g7); g9=AND(g6,x3); g10=OR(g8,g9)";
        let c = parse_netlist(text).unwrap();
        let t = mdt_from_circuit(&c).unwrap();
        assert!(t.height() <= c.negation_count() + 1);
        assert_eq!(t.to_table().unwrap(), family(&Family::Parity, 3).unwrap());
        assert!(t.all_queries_monotone().unwrap());
    }

    #[test]
    fn markov_examples() {
        let th = family(&Family::Threshold(2), 3).unwrap();
        let (c, r) = markov_circuit(&th);
        assert_eq!(r.negations_used, 0);
        assert_eq!(c.truth_table_of(0).unwrap(), th);

        let xor2 = tt(2, "6");
        let (c, r) = markov_circuit(&xor2);
        assert!(r.within_budget() && r.bound == 2);
        assert_eq!(c.truth_table_of(0).unwrap(), xor2);

        let f4 = family(&Family::Candidate, 4).unwrap();
        let (c, r) = markov_circuit(&f4);
        assert!(r.negations_used <= 3);
        assert_eq!(c.truth_table_of(0).unwrap(), f4);
    }

    #[test]
    fn markov_exhaustive_n3() {
        for code in 0u32..256 {
            let f = TruthTable::from_fn(3, |i| (code >> i) & 1 == 1).unwrap();
            let (c, r) = markov_circuit(&f);
            assert_eq!(c.truth_table_of(0).unwrap(), f);
            assert!(r.within_budget());
            assert_eq!(r.bound, ceil_log2_plus1(alternation(&f)));
        }
    }

    #[test]
    fn circuit_from_mdl_examples() {
        let xor2 = tt(2, "6");
        let l = crate::models::mdl_from_mdt(&mdt_build(&xor2));
        let (c, r) = circuit_from_mdl(&l, 2, 1).unwrap();
        assert_eq!(c.truth_table_of(0).unwrap(), xor2);
        assert!(r.within_budget());

        for b in [false, true] {
            let l = MonotoneDecisionList::new(2, vec![(Query::one(), b)]).unwrap();
            let (c, r) = circuit_from_mdl(&l, 2, 1).unwrap();
            assert!(c.truth_table_of(0).unwrap().is_const(b));
            assert_eq!(r.negations_used, 0);
        }
        assert!(circuit_from_mdl(&l, 0, 1).is_err());
    }

    #[test]
    fn circuit_from_synthetic_list() {
        // eight forward-firing thresholds on 4 variables, alternating constants
        let n = 4;
        let mut nodes: Vec<(Query, bool)> = (0..7)
            .map(|i| {
                let t = TruthTable::from_fn(n, |x| x >= 15 - 2 * i).unwrap();
                (Query::table(t), i % 2 == 1)
            })
            .collect();
        nodes.push((Query::one(), true));
        let l = MonotoneDecisionList::new(n, nodes).unwrap();
        let want = l.to_table().unwrap();
        for (t, levels) in [(2, 1), (2, 2), (4, 1)] {
            let (c, r) = circuit_from_mdl(&l, t, levels).unwrap();
            assert_eq!(c.truth_table_of(0).unwrap(), want);
            assert!(r.within_budget(), "{r}");
        }
    }

    #[test]
    fn lower_bound_formula() {
        assert_eq!(negation_lower_bound(5, 0), 0.0);
        assert!((negation_lower_bound(3, 1) - 3.0).abs() < 1e-12);
        assert!((negation_lower_bound(3, 2) - 2.0).abs() < 1e-12);
    }
}
