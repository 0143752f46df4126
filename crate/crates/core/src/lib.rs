//! Twin-width toolkit: trigraphs and contraction sequences, the one-step
//! lower bound lb₁, constructive contraction schemes for structured graph
//! families, and exact and heuristic solvers that certify every bound by
//! replaying the emitted sequence.

mod bitset;
pub mod bounds;
pub mod families;
pub mod io;
pub mod permutation;
pub mod schemes;
pub mod solver;
pub mod trigraph;

pub use bounds::{EliminationOrder, SrgParams};
pub use trigraph::{
    quotient, sequence_width, ContractionSequence, EdgeColor, MergeStep, Partition, QuotientState,
    Trigraph, VertexId, WidthReport,
};
