//! Nondeterministic and randomized monotone decision trees.

pub mod dyadic;
pub mod nmdt;
pub mod rmdt;
pub mod wrmdt;

pub use dyadic::Dyadic;
pub use nmdt::{m1_to_m2, m2_to_m1, nmdt_build, M1Edge, M1Node, M2Node, NondetMdtM1, NondetMdtM2};
pub use rmdt::{
    majority_eval, rmdt_derandomize, rmdt_normalize, rmdt_to_majority_form, LeafPath, RNode,
    RandomizedMdt, Threshold,
};
pub use wrmdt::{wrmdt_to_rmdt, QuerySetRmdt, WNode};
