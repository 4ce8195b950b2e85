//! Classifying the sequence `HL^k(G)` as converged, terminated, divergent
//! by order, or unknown within a budget.

mod certificate;
mod checks;

use serde::{Deserialize, Serialize};

pub use certificate::{Certificate, CertificateKind, TailedCycle, Witness};
pub use checks::{check_key1, check_long_tail, check_spider, check_twin_delta, CheckResult};

use crate::budget::Budget;
use crate::canon::{canonical_code_with, is_isomorphic_with, CanonLimits};
use crate::graph::Graph;
use crate::hline::{hl_step, SequenceTrace, StopReason, TraceStep};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum UnknownReason {
    OrderCap,
    IterCap,
    /// The isomorphism test between consecutive iterates ran out of budget.
    SearchBudget,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// `HL^at ≅ HL^{at+1}`; `limit` is `HL^at`.
    Converged { at: usize, limit: Graph },
    /// `HL^at` is the empty graph.
    Terminated { at: usize },
    DivergedByOrder { certificate: Certificate },
    Unknown { reason: UnknownReason },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OutcomeTag {
    Converged,
    Terminated,
    DivergedByOrder,
    Unknown,
}

impl Outcome {
    pub fn tag(&self) -> OutcomeTag {
        match self {
            Outcome::Converged { .. } => OutcomeTag::Converged,
            Outcome::Terminated { .. } => OutcomeTag::Terminated,
            Outcome::DivergedByOrder { .. } => OutcomeTag::DivergedByOrder,
            Outcome::Unknown { .. } => OutcomeTag::Unknown,
        }
    }

    /// The index `N` for converged and terminated sequences.
    pub fn index(&self) -> Option<usize> {
        match self {
            Outcome::Converged { at, .. } | Outcome::Terminated { at } => Some(*at),
            Outcome::DivergedByOrder { certificate } => Some(certificate.found_at_iteration),
            Outcome::Unknown { .. } => None,
        }
    }
}

/// Compact form of an outcome: what the cache stores and what the sweeps
/// compare when replaying.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OutcomeSummary {
    pub tag: OutcomeTag,
    #[serde(rename = "N")]
    pub index: Option<usize>,
    pub certificate: Option<CertificateKind>,
    pub limit_code: Option<String>,
    pub unknown: Option<UnknownReason>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub n: usize,
    pub outcome: Outcome,
    pub trace: SequenceTrace,
    /// Some certificate search ran out of budget on a recorded iterate.
    pub search_exhausted: bool,
}

impl Classification {
    pub fn summary(&self) -> OutcomeSummary {
        let limit_code = match &self.outcome {
            Outcome::Converged { limit, .. } => {
                canonical_code_with(limit, CanonLimits::with_max_order(limit.order()))
                    .ok()
                    .map(|c| c.to_hex())
            }
            _ => None,
        };
        OutcomeSummary {
            tag: self.outcome.tag(),
            index: self.outcome.index(),
            certificate: match &self.outcome {
                Outcome::DivergedByOrder { certificate } => Some(certificate.kind()),
                _ => None,
            },
            limit_code,
            unknown: match self.outcome {
                Outcome::Unknown { reason } => Some(reason),
                _ => None,
            },
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match &self.outcome {
            Outcome::DivergedByOrder { certificate } => Some(certificate),
            _ => None,
        }
    }

    /// Re-verifies an attached certificate against the iterate it names.
    pub fn verify_certificate(&self) -> Option<Result<(), String>> {
        let cert = self.certificate()?;
        let step = self.trace.steps.get(cert.found_at_iteration);
        Some(match step {
            Some(step) => cert.verify(&step.graph, self.n),
            None => Err("certificate iterate missing from trace".into()),
        })
    }
}

/// Runs the four checks in their fixed order; the first certificate wins.
pub fn find_certificate(g: &Graph, n: usize, nodes: u64) -> CheckResult {
    let mut exhausted = false;
    for check in [check_key1, check_long_tail, check_spider, check_twin_delta] {
        let r = check(g, n, nodes);
        if r.certificate.is_some() {
            return r;
        }
        exhausted |= r.exhausted;
    }
    CheckResult {
        certificate: None,
        exhausted,
    }
}

/// Iterates the operator, checking every iterate for a divergence
/// certificate before stepping past it.
///
/// Per iterate `HL^k`: an empty graph terminates; then the certificate
/// checks run; then `HL^{k+1}` is built, and an empty result terminates at
/// `k + 1` before an isomorphism `HL^k ≅ HL^{k+1}` is reported as
/// convergence at `k`.
pub fn classify(g: &Graph, n: usize, budget: Budget) -> Classification {
    assert!(n >= 4, "classification is defined for n >= 4");
    let limits = CanonLimits {
        max_order: budget.max_order.max(g.order()),
        max_nodes: budget.search_nodes,
    };
    let mut steps = vec![TraceStep::new(0, g.clone(), None)];
    let mut search_exhausted = false;
    let finish = |steps: Vec<TraceStep>, stop, outcome, search_exhausted| Classification {
        n,
        outcome,
        trace: SequenceTrace { n, steps, stop },
        search_exhausted,
    };
    loop {
        let k = steps.len() - 1;
        let cur = &steps[k].graph;
        if cur.is_empty() {
            return finish(steps, StopReason::Empty, Outcome::Terminated { at: k }, search_exhausted);
        }
        let found = find_certificate(cur, n, budget.search_nodes);
        search_exhausted |= found.exhausted;
        if let Some(mut certificate) = found.certificate {
            certificate.found_at_iteration = k;
            return finish(
                steps,
                StopReason::Certified,
                Outcome::DivergedByOrder { certificate },
                search_exhausted,
            );
        }
        if k >= budget.max_iter {
            let outcome = Outcome::Unknown {
                reason: UnknownReason::IterCap,
            };
            return finish(steps, StopReason::IterCap, outcome, search_exhausted);
        }
        let next = hl_step(cur, n);
        let same = if next.graph.is_empty() {
            Ok(false)
        } else {
            is_isomorphic_with(cur, &next.graph, limits)
        };
        let next_empty = next.graph.is_empty();
        let next_order = next.graph.order();
        steps.push(TraceStep::new(k + 1, next.graph, Some(next.provenance)));
        if next_empty {
            return finish(steps, StopReason::Empty, Outcome::Terminated { at: k + 1 }, search_exhausted);
        }
        match same {
            Ok(true) => {
                let limit = steps[k].graph.clone();
                return finish(
                    steps,
                    StopReason::FixedPoint,
                    Outcome::Converged { at: k, limit },
                    search_exhausted,
                );
            }
            Ok(false) => {}
            Err(_) => {
                let outcome = Outcome::Unknown {
                    reason: UnknownReason::SearchBudget,
                };
                return finish(steps, StopReason::SearchBudget, outcome, search_exhausted);
            }
        }
        if next_order > budget.max_order {
            let outcome = Outcome::Unknown {
                reason: UnknownReason::OrderCap,
            };
            return finish(steps, StopReason::OrderCap, outcome, search_exhausted);
        }
    }
}
