use serde::{Deserialize, Serialize};

use crate::canon::{canonical_code_with, CanonLimits};
use crate::classify::{CertificateKind, Classification, Outcome, OutcomeTag, UnknownReason, Witness};
use crate::graph::Graph;
use crate::TOOL_VERSION;

/// JSON Schema (draft 2020-12) for [`ClassificationReport`].
pub const REPORT_SCHEMA: &str = include_str!("../../schema/report.schema.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub k: usize,
    pub order: usize,
    pub size: usize,
    pub components: usize,
}

/// The witness with the iterate it refers to, enough to re-check the
/// certificate without this tool.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub kind: CertificateKind,
    pub found_at_iteration: usize,
    pub iterate: String,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub tool_version: String,
    pub n: usize,
    pub input: String,
    pub input_code: Option<String>,
    pub outcome: OutcomeTag,
    #[serde(rename = "N")]
    pub index: Option<usize>,
    pub unknown_reason: Option<UnknownReason>,
    pub limit: Option<String>,
    pub limit_code: Option<String>,
    pub certificate: Option<CertificateReport>,
    pub search_exhausted: bool,
    pub trace: Vec<TraceEntry>,
}

pub fn report_for(input: &Graph, c: &Classification) -> ClassificationReport {
    let code = |g: &Graph| {
        canonical_code_with(g, CanonLimits::with_max_order(g.order()))
            .ok()
            .map(|c| c.to_hex())
    };
    let summary = c.summary();
    let certificate = c.certificate().map(|cert| CertificateReport {
        kind: cert.kind(),
        found_at_iteration: cert.found_at_iteration,
        iterate: c.trace.steps[cert.found_at_iteration].graph.to_string(),
        witness: cert.witness.clone(),
    });
    ClassificationReport {
        tool_version: TOOL_VERSION.to_string(),
        n: c.n,
        input: input.to_string(),
        input_code: code(input),
        outcome: summary.tag,
        index: summary.index,
        unknown_reason: summary.unknown,
        limit: match &c.outcome {
            Outcome::Converged { limit, .. } => Some(limit.to_string()),
            _ => None,
        },
        limit_code: summary.limit_code,
        certificate,
        search_exhausted: c.search_exhausted,
        trace: c
            .trace
            .steps
            .iter()
            .map(|s| TraceEntry {
                k: s.k,
                order: s.order,
                size: s.size,
                components: s.components,
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::classify::classify;
    use crate::families::{make_fm, make_grm};
    use crate::io::parse_edge_list;

    #[test]
    fn converged_report() {
        let g = make_grm(1, 3).unwrap();
        let r = report_for(&g, &classify(&g, 4, Budget::default()));
        assert_eq!(r.outcome, OutcomeTag::Converged);
        assert_eq!(r.index, Some(1));
        assert_eq!(r.trace.len(), 3);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["N"], 1);
        assert!(json["certificate"].is_null());
    }

    #[test]
    fn certificate_is_checkable_from_json() {
        let g = make_fm(7).unwrap();
        let r = report_for(&g, &classify(&g, 6, Budget::default()));
        let json = serde_json::to_string(&r).unwrap();
        let back: ClassificationReport = serde_json::from_str(&json).unwrap();
        let cert = back.certificate.unwrap();
        assert_eq!(cert.kind, CertificateKind::Key1);
        let iterate = parse_edge_list(&cert.iterate).unwrap();
        let rebuilt = crate::classify::Certificate {
            witness: cert.witness,
            found_at_iteration: cert.found_at_iteration,
        };
        rebuilt.verify(&iterate, 6).unwrap();
    }
}
