//! The evidence language: certificate chains witnessing group embeddings,
//! and the validator that checks every step mechanically.
//!
//! A chain is checked in the A(.) convention. A G-convention claim is first
//! rewritten by complementing both sides. Two step kinds exist:
//!
//! * `Full`: the current graph is a full subgraph of the step's target.
//! * `DoubleCollapse`: the current graph is isomorphic to the double of the
//!   step's target along the named vertex, which witnesses the collapse of
//!   the double onto its base.
//!
//! Group-level soundness of a validated chain is inherited from the two
//! underlying embedding theorems; the validator checks exactly their
//! graph-level hypotheses.

use crate::constructions::double;
use crate::graph::{EmbeddingWitness, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    A,
    G,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    /// Full embedding of the current chain graph into `target` via `map`.
    Full { target: Graph, map: Vec<usize> },
    /// The current chain graph is identified with the double of `target`
    /// along `v` by the bijection `iso_map`; the chain continues at `target`.
    DoubleCollapse {
        v: usize,
        target: Graph,
        iso_map: Vec<usize>,
    },
}

impl Step {
    pub fn target(&self) -> &Graph {
        match self {
            Step::Full { target, .. } => target,
            Step::DoubleCollapse { target, .. } => target,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub convention: Convention,
    pub lhs: Graph,
    pub rhs: Graph,
    pub steps: Vec<Step>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationReport {
    Ok,
    /// `step` is 1-based; step 0 marks a failure of the claim endpoints.
    Failed {
        step: usize,
        reason: String,
    },
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        matches!(self, ValidationReport::Ok)
    }
}

impl Certificate {
    /// Identity certificate for the claim lhs = rhs.
    pub fn identity(convention: Convention, g: &Graph) -> Certificate {
        let chain_graph = match convention {
            Convention::A => g.clone(),
            Convention::G => g.complement(),
        };
        Certificate {
            convention,
            lhs: g.clone(),
            rhs: g.clone(),
            steps: vec![Step::Full {
                target: chain_graph.clone(),
                map: (0..chain_graph.order()).collect(),
            }],
        }
    }

    /// Check every step and the chain composition. Deterministic and pure;
    /// a failing report names the earliest bad step.
    pub fn validate(&self) -> ValidationReport {
        let (start, end) = match self.convention {
            Convention::A => (self.lhs.clone(), self.rhs.clone()),
            Convention::G => (self.lhs.complement(), self.rhs.complement()),
        };
        if self.steps.is_empty() {
            if start == end {
                return ValidationReport::Ok;
            }
            return ValidationReport::Failed {
                step: 0,
                reason: "empty chain with distinct endpoints".into(),
            };
        }
        let mut current = start;
        for (i, step) in self.steps.iter().enumerate() {
            let step_no = i + 1;
            match step {
                Step::Full { target, map } => {
                    let w = EmbeddingWitness {
                        source: current,
                        target: target.clone(),
                        map: map.clone(),
                    };
                    if let Err(e) = w.validate() {
                        return ValidationReport::Failed {
                            step: step_no,
                            reason: format!("full step witness invalid: {e}"),
                        };
                    }
                    current = target.clone();
                }
                Step::DoubleCollapse { v, target, iso_map } => {
                    let dbl = match double(target, *v) {
                        Ok(d) => d,
                        Err(e) => {
                            return ValidationReport::Failed {
                                step: step_no,
                                reason: format!("collapse vertex invalid: {e}"),
                            }
                        }
                    };
                    if current.order() != dbl.graph.order() {
                        return ValidationReport::Failed {
                            step: step_no,
                            reason: format!(
                                "iso is not a full embedding onto the reconstructed double: \
                                 order {} vs {}",
                                current.order(),
                                dbl.graph.order()
                            ),
                        };
                    }
                    let w = EmbeddingWitness {
                        source: current,
                        target: dbl.graph,
                        map: iso_map.clone(),
                    };
                    if let Err(e) = w.validate() {
                        return ValidationReport::Failed {
                            step: step_no,
                            reason: format!(
                                "iso is not a full embedding onto the reconstructed double: {e}"
                            ),
                        };
                    }
                    current = target.clone();
                }
            }
        }
        if current != end {
            return ValidationReport::Failed {
                step: self.steps.len(),
                reason: "final chain graph does not equal the claimed target".into(),
            };
        }
        ValidationReport::Ok
    }
}

/// Exhaustive-search record that `pattern` has no full embedding in `host`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonEmbedReport {
    pub pattern: Graph,
    pub host: Graph,
    pub search_nodes: u64,
    /// True when the budgeted search covered the whole tree, so the report
    /// is a proof of non-embeddability.
    pub exhaustive: bool,
}
