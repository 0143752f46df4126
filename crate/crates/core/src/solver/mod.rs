//! Exact and heuristic twin-width, automorphism groups and small-graph
//! enumeration.

mod automorphism;
pub(crate) mod canon;
mod enumerate;
mod search;

use std::time::Duration;

use thiserror::Error;

use crate::permutation::{Permutation, PermutationError};
use crate::trigraph::{ContractionSequence, Partition, TrigraphError};

pub use automorphism::{automorphism_search, is_isomorphic, quotient_by_group};
pub use enumerate::{enumerate_graphs, GraphClass, MAX_CUBIC_ORDER, MAX_LABELED_ORDER};
pub use search::{stww, tww_exact, tww_greedy, MAX_EXACT_ORDER};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("exact search supports at most {max} vertices, got {n}")]
    TooLarge { n: usize, max: usize },
    #[error("{what} enumeration is capped at {max} vertices (got {n}); ingest larger corpora as graph6")]
    EnumerationCap { what: &'static str, n: usize, max: usize },
    #[error("generator {index} is not an automorphism: {source}")]
    NotAutomorphism { index: usize, source: PermutationError },
    #[error(transparent)]
    Trigraph(#[from] TrigraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum SolveStatus {
    /// The value is the optimum.
    Exact,
    /// The value is the width of the witness, with no optimality claim.
    UpperBoundOnly,
    /// The budget ran out; the value is the best witness found so far.
    Timeout,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub value: usize,
    pub witness: ContractionSequence,
    pub status: SolveStatus,
}

/// Search limits. `None` means unlimited.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Budget {
    pub nodes: Option<u64>,
    pub time: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn nodes(limit: u64) -> Self {
        Budget { nodes: Some(limit), time: None }
    }

    pub fn with_time(mut self, limit: Duration) -> Self {
        self.time = Some(limit);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutGroupInfo {
    pub generators: Vec<Permutation>,
    /// Exact group order when `complete`, otherwise a lower bound.
    pub order: u128,
    pub orbits: Partition,
    /// False when the budget ran out before the search finished.
    pub complete: bool,
}

/// Canonical code of a trigraph: equal for two trigraphs exactly when they
/// are isomorphic by a color-preserving bijection.
pub fn canonical_code(g: &crate::trigraph::Trigraph) -> Vec<u8> {
    let mut code = canon::canonical_form(&canon::ColoredGraph::from_trigraph(g, true)).code;
    code.extend((g.order() as u64).to_le_bytes());
    code
}
