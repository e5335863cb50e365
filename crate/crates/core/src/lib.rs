//! Incremental strongly connected components with predictions.
//!
//! The crate provides three incremental SCC structures over a fixed vertex
//! set receiving one directed edge at a time:
//!
//! * [`LearnedIncScc`] takes a predicted arrival order up front and keeps one
//!   root-to-leaf path of a divide-and-conquer recursion tree, rebuilding only
//!   where the prediction turned out wrong.
//! * [`RecursionTree`] is the offline version, built once over the true
//!   order and queried for any past time.
//! * [`RankedCondensedGraph`] is the IncSCC⁺ baseline based on dynamic
//!   topological ordering.
//!
//! The remaining modules are the experiment pipeline: dataset ingestion,
//! prediction perturbation, a brute-force oracle and the benchmark runner.

pub mod baseline;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod ingest;
pub mod labels;
pub mod learned;
pub mod offline;
pub mod oracle;
pub mod perturb;
pub mod prediction;
pub mod subproblem;
pub mod synthetic;
pub mod verify;

pub use baseline::{RankedCondensedGraph, Variant};
pub use error::{Error, Result};
pub use graph::{edge_errors, tarjan_scc, Edge, EdgeId, EdgeSequence, PredictionError, SccPartition, Time, VertexId};
pub use labels::NodeLabels;
pub use learned::LearnedIncScc;
pub use offline::{build_offline, OfflineReplay, RecursionTree};
pub use prediction::Prediction;
pub use subproblem::Interval;

/// An incremental SCC structure driven one edge at a time.
pub trait IncrementalScc {
    fn insert(&mut self, e: &Edge) -> Result<()>;

    /// Whether `u` and `v` share an SCC of the current graph. Both must be
    /// below [`IncrementalScc::vertex_count`].
    fn same_scc(&self, u: VertexId, v: VertexId) -> bool;

    fn vertex_count(&self) -> usize;
}
