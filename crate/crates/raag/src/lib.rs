//! Exact decision procedures and checkable certificates for embeddability
//! questions between graph-defined groups in the complement convention.

pub mod certificates;
pub mod certio;
pub mod classify;
pub mod constructions;
pub mod decision;
pub mod graph;
pub mod textio;

pub use certificates::{Certificate, Convention, NonEmbedReport, Step, ValidationReport};
pub use decision::{decide, Budgets, Decision, Evidence, Obstruction, Verdict};
pub use graph::{Graph, GraphError};
