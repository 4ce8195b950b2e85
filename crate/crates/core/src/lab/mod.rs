//! Minimal convergence: deciding membership in λ_n, enumerating small
//! graphs, structural checks on unicyclic members, and conjecture sweeps.

mod arms;
mod conjecture;
mod enumerate;
mod lambda;
mod properties;
mod search;
mod subgraphs;

use std::collections::HashMap;

use parking_lot::Mutex;
use thiserror::Error;

pub use arms::{arm_decomposition, ArmDecomposition};
pub use conjecture::{
    bridge_count, run_conjecture, Candidate, ConjectureId, ConjectureReport, ConjectureStatus, Observation,
    TranscriptEntry,
};
pub use enumerate::{disjoint_unions, enumerate_connected_graphs, MAX_ENUMERATION_ORDER};
pub use lambda::{is_minimally_convergent, lambda_audit, LambdaAudit, LambdaStatus, SubgraphAudit};
pub use properties::{property_suite, PropertyCheck, PropertyId, PropertyReport, Verdict};
pub use search::{find_minimal_members, ExpectedMember, SearchRecord, SearchReport};
pub use subgraphs::{proper_subgraphs, MAX_SUBGRAPH_EDGES};

use crate::budget::Budget;
use crate::canon::{canonical_code, CanonError, CanonicalCode};
use crate::classify::{classify, OutcomeSummary};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabError {
    #[error("enumeration order {requested} exceeds the cap of {cap}")]
    EnumerationCap { requested: usize, cap: usize },
    #[error("graph with {edges} edges exceeds the subgraph enumeration cap of {cap}")]
    SubgraphCap { edges: usize, cap: usize },
    #[error("graph has isolated vertices")]
    IsolatedVertices,
    #[error(transparent)]
    Canon(#[from] CanonError),
}

/// Budget plus a shared, idempotent cache of classification summaries
/// keyed by canonical code and `n`.
pub struct Lab {
    pub budget: Budget,
    cache: Mutex<HashMap<(CanonicalCode, usize), OutcomeSummary>>,
    fresh: Mutex<Vec<(CanonicalCode, usize, OutcomeSummary)>>,
}

impl Lab {
    pub fn new(budget: Budget) -> Self {
        Lab {
            budget,
            cache: Mutex::new(HashMap::new()),
            fresh: Mutex::new(Vec::new()),
        }
    }

    /// Pre-loads summaries, e.g. from the on-disk cache.
    pub fn seed<I>(&self, entries: I)
    where
        I: IntoIterator<Item = (CanonicalCode, usize, OutcomeSummary)>,
    {
        let mut cache = self.cache.lock();
        for (code, n, summary) in entries {
            cache.insert((code, n), summary);
        }
    }

    /// Summaries computed since construction (not seeded ones).
    pub fn take_fresh(&self) -> Vec<(CanonicalCode, usize, OutcomeSummary)> {
        std::mem::take(&mut *self.fresh.lock())
    }

    pub fn summary(&self, g: &Graph, n: usize) -> OutcomeSummary {
        let Ok(code) = canonical_code(g) else {
            return classify(g, n, self.budget).summary();
        };
        if let Some(hit) = self.cache.lock().get(&(code.clone(), n)) {
            return hit.clone();
        }
        let summary = classify(g, n, self.budget).summary();
        self.cache.lock().insert((code.clone(), n), summary.clone());
        self.fresh.lock().push((code, n, summary.clone()));
        summary
    }
}

impl Default for Lab {
    fn default() -> Self {
        Lab::new(Budget::default())
    }
}
