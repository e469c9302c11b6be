//! Alternation of Boolean functions and the models it governs: monotone
//! decompositions, monotone decision lists and trees (deterministic,
//! non-adaptive, nondeterministic, randomized) and circuits with few
//! negations.

pub mod boolfn;
pub mod circuits;
pub mod decomp;
pub mod error;
pub mod gen;
pub mod models;
pub mod selftest;
pub mod serial;
pub mod stochastic;

pub use error::{Error, Result};
