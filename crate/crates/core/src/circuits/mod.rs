//! Circuit IR over AND/OR/NOT/threshold gates, inverters with few
//! negations, and synthesis passes between circuits and monotone trees.

mod builder;
mod inverters;
mod ir;
mod netlist;
mod synth;

pub use builder::{substitute_not, Builder};
pub use inverters::{
    check_inverter, check_sorted_inverter, fischer_inverter, fischer_wires, invert_sorted_blocks,
    invert_sorted_blocks_wires, invert_sorted_log, invert_sorted_wires, log_negations,
    BlockInverterReport,
};
pub use ir::{Circuit, Gate, GateId};
pub use netlist::parse_netlist;
pub use synth::{
    circuit_from_mdl, markov_circuit, mdt_from_circuit, negation_lower_bound, NegationBudgetReport,
};
