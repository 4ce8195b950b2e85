//! Iterated P_n-line graphs.
//!
//! The P_n-line graph `HL(G)` has the edges of `G` as vertices, two of them
//! adjacent when they share an endpoint and lie on a common simple path with
//! `n` vertices. This crate builds the operator, iterates it, certifies
//! divergence by order with re-checkable witnesses, decides minimal
//! convergence over proper subgraphs, and sweeps small graphs for
//! counterexamples to open conjectures about these sequences.

pub mod budget;
pub mod canon;
pub mod classify;
pub mod cycles;
pub mod families;
pub mod graph;
pub mod hline;
pub mod io;
pub mod lab;
pub mod paths;
pub mod verify;

pub use budget::Budget;
pub use canon::{canonical_code, is_isomorphic, CanonicalCode};
pub use classify::{classify, Certificate, Classification, Outcome, OutcomeTag};
pub use graph::{Edge, Graph, GraphError};
pub use hline::{hl_iterate, hl_step, HLGraph, SequenceTrace};

/// Version string stamped into reports and cache records. The suffix is
/// bumped whenever a change can alter a classification.
pub const TOOL_VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "+alg1");
