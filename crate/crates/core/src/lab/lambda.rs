use serde::{Deserialize, Serialize};

use crate::canon::canonical_code;
use crate::classify::{OutcomeSummary, OutcomeTag};
use crate::graph::Graph;

use super::{proper_subgraphs, Lab, LabError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LambdaStatus {
    Yes,
    No,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgraphAudit {
    pub code: String,
    pub graph: String,
    pub outcome: OutcomeSummary,
}

/// The decision together with what it rests on. For `yes` the audit lists
/// every proper subgraph class; for `no` it ends at the first converging
/// subgraph (or is empty when `g` itself does not converge).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaAudit {
    pub status: LambdaStatus,
    pub outcome: OutcomeSummary,
    pub subgraphs: Vec<SubgraphAudit>,
}

pub fn is_minimally_convergent(g: &Graph, n: usize, lab: &Lab) -> Result<LambdaStatus, LabError> {
    lambda_audit(g, n, lab).map(|a| a.status)
}

pub fn lambda_audit(g: &Graph, n: usize, lab: &Lab) -> Result<LambdaAudit, LabError> {
    if g.has_isolated() {
        return Err(LabError::IsolatedVertices);
    }
    let outcome = lab.summary(g, n);
    let mut audit = LambdaAudit {
        status: LambdaStatus::No,
        outcome,
        subgraphs: Vec::new(),
    };
    match audit.outcome.tag {
        OutcomeTag::Converged => {}
        OutcomeTag::Unknown => {
            audit.status = LambdaStatus::Unknown;
            return Ok(audit);
        }
        _ => return Ok(audit),
    }
    let mut unknown = false;
    // Largest subgraphs first: they are the likeliest to converge.
    for h in proper_subgraphs(g)?.iter().rev() {
        let outcome = lab.summary(h, n);
        let tag = outcome.tag;
        audit.subgraphs.push(SubgraphAudit {
            code: canonical_code(h)?.to_hex(),
            graph: h.to_string(),
            outcome,
        });
        match tag {
            OutcomeTag::Converged => return Ok(audit),
            OutcomeTag::Unknown => unknown = true,
            _ => {}
        }
    }
    audit.status = if unknown { LambdaStatus::Unknown } else { LambdaStatus::Yes };
    Ok(audit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_cycle, make_grm, make_path, make_spider};

    #[test]
    fn delta_member_and_cycle() {
        let lab = Lab::default();
        let a = lambda_audit(&make_grm(1, 4).unwrap(), 5, &lab).unwrap();
        assert_eq!(a.status, LambdaStatus::Yes);
        assert!(a.subgraphs.iter().all(|s| s.outcome.tag != OutcomeTag::Converged));
        let c5 = lambda_audit(&make_cycle(5).unwrap(), 5, &lab).unwrap();
        assert_eq!(c5.status, LambdaStatus::Yes);
        // Empty graph, P_2, P_3, P_4, P_5, 2P_2, P_2 + P_3.
        assert_eq!(c5.subgraphs.len(), 7);
        assert!(c5.subgraphs.iter().all(|s| s.outcome.tag == OutcomeTag::Terminated));
    }

    #[test]
    fn union_with_converging_part_is_not_minimal() {
        let lab = Lab::default();
        let g = make_grm(1, 4).unwrap().disjoint_union(&make_path(2).unwrap());
        assert_eq!(is_minimally_convergent(&g, 5, &lab).unwrap(), LambdaStatus::No);
    }

    #[test]
    fn non_converging_is_no() {
        let lab = Lab::default();
        let claw = make_spider(1, 1, 1).unwrap();
        assert_eq!(is_minimally_convergent(&claw, 4, &lab).unwrap(), LambdaStatus::No);
    }

    #[test]
    fn isolated_vertices_rejected() {
        let lab = Lab::default();
        assert_eq!(
            is_minimally_convergent(&Graph::edgeless(1), 4, &lab),
            Err(LabError::IsolatedVertices)
        );
    }
}
