//! Monotone decision lists and trees, non-adaptive trees and monotone
//! certificates.

mod mdl;
mod mdt;
mod nonadaptive;
mod query;

pub use mdl::{mdl_from_decomposition, MonotoneDecisionList};
pub use mdt::{mdl_from_mdt, mdt_build, mdt_from_mdl, MdtNode, MonotoneDecisionTree};
pub use nonadaptive::{
    adaptive_certificate, namdt_build, nonadaptive_certificate, verify_certificate, CertificateSet,
    NonAdaptiveMdt,
};
pub use query::{minimal_true_points, monotone_table_circuit, Query};
