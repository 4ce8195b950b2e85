use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::canon::{canonical_code, CanonicalCode};
use crate::classify::{classify, OutcomeSummary, OutcomeTag, UnknownReason};
use crate::graph::Graph;
use crate::io::parse_edge_list;
use crate::TOOL_VERSION;

use super::search::sweep_graphs;
use super::{find_minimal_members, proper_subgraphs, Lab, LabError, LambdaStatus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConjectureId {
    #[serde(rename = "Div-iff-Key1")]
    DivIffKey1,
    NonIsoPair,
    UnicyclicMin,
    Bridge,
}

impl ConjectureId {
    pub const ALL: [ConjectureId; 4] = [
        ConjectureId::DivIffKey1,
        ConjectureId::NonIsoPair,
        ConjectureId::UnicyclicMin,
        ConjectureId::Bridge,
    ];
}

impl fmt::Display for ConjectureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConjectureId::DivIffKey1 => "Div-iff-Key1",
            ConjectureId::NonIsoPair => "NonIsoPair",
            ConjectureId::UnicyclicMin => "UnicyclicMin",
            ConjectureId::Bridge => "Bridge",
        })
    }
}

impl FromStr for ConjectureId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect::<String>()
            .to_ascii_lowercase();
        ConjectureId::ALL
            .into_iter()
            .find(|id| id.to_string().replace('-', "").to_ascii_lowercase() == key)
            .ok_or_else(|| format!("unknown conjecture {s:?}; expected one of Div-iff-Key1, NonIsoPair, UnicyclicMin, Bridge"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConjectureStatus {
    NoCounterexampleWithinBounds,
    CounterexampleFound,
    Inconclusive,
}

impl fmt::Display for ConjectureStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConjectureStatus::NoCounterexampleWithinBounds => "no-counterexample-within-bounds",
            ConjectureStatus::CounterexampleFound => "counterexample-found",
            ConjectureStatus::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptEntry {
    pub role: String,
    pub graph: String,
    pub outcome: OutcomeSummary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Candidate {
    pub graph: String,
    pub code: String,
    /// Set only after the transcript replayed identically.
    pub counterexample: bool,
    pub detail: String,
    pub transcript: Vec<TranscriptEntry>,
}

impl Candidate {
    /// Re-parses every transcript graph, classifies it from scratch, and
    /// compares with the stored summary.
    pub fn replay(&self, n: usize, budget: Budget) -> Result<(), String> {
        for entry in &self.transcript {
            let g = parse_edge_list(&entry.graph).map_err(|e| format!("{}: {e}", entry.role))?;
            let fresh = classify(&g, n, budget).summary();
            if fresh != entry.outcome {
                return Err(format!(
                    "{} {}: stored {:?}, replayed {:?}",
                    entry.role, entry.graph, entry.outcome, fresh
                ));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Observation {
    pub graph: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub tool_version: String,
    pub id: ConjectureId,
    pub n: usize,
    pub v_max: usize,
    pub status: ConjectureStatus,
    pub graphs_examined: usize,
    pub unknown_classifications: usize,
    pub candidates: Vec<Candidate>,
    pub observations: Vec<Observation>,
}

fn entry(role: impl Into<String>, g: &Graph, outcome: OutcomeSummary) -> TranscriptEntry {
    TranscriptEntry {
        role: role.into(),
        graph: g.to_string(),
        outcome,
    }
}

fn candidate(g: &Graph, counterexample: bool, detail: String, transcript: Vec<TranscriptEntry>) -> Result<Candidate, LabError> {
    Ok(Candidate {
        graph: g.to_string(),
        code: canonical_code(g)?.to_hex(),
        counterexample,
        detail,
        transcript,
    })
}

/// Per-graph sweep result, merged in sweep order.
#[derive(Default)]
struct Finding {
    examined: bool,
    unknown: usize,
    candidate: Option<Candidate>,
    observation: Option<Observation>,
}

/// Distinct λ_n members among `g` and its proper subgraphs, or `None` when
/// one of those classes has an undecided classification.
pub fn bridge_count(g: &Graph, n: usize, lab: &Lab) -> Result<Option<Vec<Graph>>, LabError> {
    let g = g.without_isolated();
    let mut classes = proper_subgraphs(&g)?;
    classes.push(g);
    let mut converged: Vec<(CanonicalCode, Graph)> = Vec::new();
    for h in classes {
        match lab.summary(&h, n).tag {
            OutcomeTag::Converged => converged.push((canonical_code(&h)?, h)),
            OutcomeTag::Unknown => return Ok(None),
            _ => {}
        }
    }
    let codes: HashSet<&CanonicalCode> = converged.iter().map(|(c, _)| c).collect();
    let mut minimal = Vec::new();
    for (_, h) in &converged {
        let below = proper_subgraphs(h)?;
        let mut has_converged_part = false;
        for s in &below {
            if codes.contains(&canonical_code(s)?) {
                has_converged_part = true;
                break;
            }
        }
        if !has_converged_part {
            minimal.push(h.clone());
        }
    }
    Ok(Some(minimal))
}

fn div_iff_key1(g: &Graph, n: usize, lab: &Lab) -> Result<Finding, LabError> {
    let summary = lab.summary(g, n);
    let mut f = Finding {
        examined: true,
        ..Finding::default()
    };
    if summary.tag != OutcomeTag::Unknown {
        if summary.tag == OutcomeTag::DivergedByOrder && summary.certificate != Some(crate::classify::CertificateKind::Key1) {
            f.observation = Some(Observation {
                graph: g.to_string(),
                detail: format!(
                    "diverges by a {} certificate; no Key1 component before it",
                    summary.certificate.expect("diverged outcomes carry a kind")
                ),
            });
        }
        return Ok(f);
    }
    f.unknown = 1;
    if summary.unknown != Some(UnknownReason::OrderCap) {
        return Ok(f);
    }
    let trace = classify(g, n, lab.budget).trace;
    let orders = trace.orders();
    let growing = orders.windows(2).skip(1).all(|w| w[0] < w[1]);
    if growing {
        let detail = format!("orders {orders:?} grow to the cap with no Key1 component on any iterate");
        f.candidate = Some(candidate(g, false, detail, vec![entry("input", g, summary)])?);
    }
    Ok(f)
}

fn non_iso_pair(g: &Graph, n: usize, lab: &Lab) -> Result<Finding, LabError> {
    let mut f = Finding::default();
    if !g.is_connected() {
        return Ok(f);
    }
    f.examined = true;
    let summary = lab.summary(g, n);
    match summary.tag {
        OutcomeTag::Converged => {}
        OutcomeTag::Unknown => {
            f.unknown = 1;
            return Ok(f);
        }
        _ => return Ok(f),
    }
    let mut hits = Vec::new();
    for h in proper_subgraphs(g)? {
        let s = lab.summary(&h, n);
        match s.tag {
            OutcomeTag::Converged => hits.push((h, s)),
            OutcomeTag::Unknown => f.unknown += 1,
            _ => {}
        }
    }
    if hits.len() >= 2 {
        let detail = format!(
            "converges and contains {} pairwise non-isomorphic convergent proper subgraphs",
            hits.len()
        );
        let mut transcript = vec![entry("input", g, summary)];
        transcript.extend(hits.iter().take(2).enumerate().map(|(i, (h, s))| entry(format!("subgraph{}", i + 1), h, s.clone())));
        f.candidate = Some(candidate(g, true, detail, transcript)?);
    }
    Ok(f)
}

fn bridge(g: &Graph, n: usize, lab: &Lab) -> Result<Finding, LabError> {
    let mut f = Finding::default();
    let summary = lab.summary(g, n);
    match summary.tag {
        OutcomeTag::Converged => {}
        OutcomeTag::Unknown => {
            f.examined = true;
            f.unknown = 1;
            return Ok(f);
        }
        _ => return Ok(f),
    }
    let parts = g.components();
    if parts.len() == 2 {
        let both = parts
            .iter()
            .all(|c| lab.summary(&g.induced(c), n).tag == OutcomeTag::Converged);
        if both {
            return Ok(f);
        }
    }
    f.examined = true;
    let Some(members) = bridge_count(g, n, lab)? else {
        f.unknown = 1;
        return Ok(f);
    };
    f.observation = Some(Observation {
        graph: g.to_string(),
        detail: format!("{} minimally convergent subgraph(s)", members.len()),
    });
    if members.len() != 1 {
        let mut transcript = vec![entry("input", g, summary)];
        for h in proper_subgraphs(g)? {
            let s = lab.summary(&h, n);
            transcript.push(entry("subgraph", &h, s));
        }
        let shown: Vec<String> = members.iter().map(Graph::to_string).collect();
        let detail = format!("{} minimally convergent subgraphs: {shown:?}", members.len());
        f.candidate = Some(candidate(g, true, detail, transcript)?);
    }
    Ok(f)
}

fn unicyclic_min(n: usize, v_max: usize, lab: &Lab) -> Result<Vec<Finding>, LabError> {
    let report = find_minimal_members(n, v_max, lab, true)?;
    let mut out = Vec::new();
    for r in &report.records {
        let g = parse_edge_list(&r.graph).expect("records hold rendered graphs");
        let mut f = Finding {
            examined: r.lambda == LambdaStatus::Yes,
            unknown: usize::from(r.lambda == LambdaStatus::Unknown),
            ..Finding::default()
        };
        if r.lambda == LambdaStatus::Yes {
            let bad: Vec<Vec<usize>> = g
                .components()
                .into_iter()
                .filter(|c| !g.induced(c).is_unicyclic())
                .collect();
            if !bad.is_empty() {
                let mut transcript = vec![entry("input", &g, r.outcome.clone())];
                for s in r.audit.iter().flatten() {
                    transcript.push(TranscriptEntry {
                        role: "subgraph".into(),
                        graph: s.graph.clone(),
                        outcome: s.outcome.clone(),
                    });
                }
                let detail = format!("minimally convergent with non-unicyclic component(s) {bad:?}");
                f.candidate = Some(candidate(&g, true, detail, transcript)?);
            }
        }
        out.push(f);
    }
    // Only yes/unknown records are kept; the rest were examined and cleared.
    let cleared = report.examined - report.records.len();
    out.extend((0..cleared).map(|_| Finding {
        examined: true,
        ..Finding::default()
    }));
    Ok(out)
}

/// Sweeps every graph within `v_max` vertices for counterexamples to the
/// chosen conjecture. Flagged counterexamples are replayed from their
/// transcripts with fresh classifications; one that does not reproduce is
/// demoted to a plain candidate and the status becomes inconclusive.
pub fn run_conjecture(id: ConjectureId, n: usize, v_max: usize, lab: &Lab) -> Result<ConjectureReport, LabError> {
    let findings: Vec<Finding> = match id {
        ConjectureId::UnicyclicMin => unicyclic_min(n, v_max, lab)?,
        _ => {
            let graphs = sweep_graphs(v_max, id == ConjectureId::Bridge)?;
            graphs
                .par_iter()
                .map(|g| match id {
                    ConjectureId::DivIffKey1 => div_iff_key1(g, n, lab),
                    ConjectureId::NonIsoPair => non_iso_pair(g, n, lab),
                    _ => bridge(g, n, lab),
                })
                .collect::<Result<_, _>>()?
        }
    };
    let mut report = ConjectureReport {
        tool_version: TOOL_VERSION.to_string(),
        id,
        n,
        v_max,
        status: ConjectureStatus::NoCounterexampleWithinBounds,
        graphs_examined: 0,
        unknown_classifications: 0,
        candidates: Vec::new(),
        observations: Vec::new(),
    };
    let mut replay_failed = false;
    for f in findings {
        report.graphs_examined += usize::from(f.examined);
        report.unknown_classifications += f.unknown;
        report.observations.extend(f.observation);
        if let Some(mut c) = f.candidate {
            if c.counterexample {
                if let Err(why) = c.replay(n, lab.budget) {
                    c.counterexample = false;
                    c.detail = format!("{}; replay mismatch: {why}", c.detail);
                    replay_failed = true;
                }
            }
            report.candidates.push(c);
        }
    }
    report.status = if report.candidates.iter().any(|c| c.counterexample) {
        ConjectureStatus::CounterexampleFound
    } else if replay_failed || report.unknown_classifications > 0 || !report.candidates.is_empty() {
        ConjectureStatus::Inconclusive
    } else {
        ConjectureStatus::NoCounterexampleWithinBounds
    };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_cycle, make_grm};

    #[test]
    fn ids_round_trip() {
        for id in ConjectureId::ALL {
            assert_eq!(id.to_string().parse::<ConjectureId>().unwrap(), id);
        }
        assert_eq!("div-iff-key1".parse::<ConjectureId>().unwrap(), ConjectureId::DivIffKey1);
        assert_eq!("bridge".parse::<ConjectureId>().unwrap(), ConjectureId::Bridge);
        assert!("nope".parse::<ConjectureId>().is_err());
    }

    #[test]
    fn bridge_on_four_cycle() {
        let lab = Lab::default();
        let members = bridge_count(&make_cycle(4).unwrap(), 4, &lab).unwrap().unwrap();
        assert_eq!(members.len(), 1);
        assert!(crate::canon::is_isomorphic(&members[0], &make_cycle(4).unwrap()).unwrap());
    }

    #[test]
    fn bridge_on_tailed_cycle() {
        let lab = Lab::default();
        // G(2,4) at n=5 diverges, but its subgraph G(1,4) is minimal.
        let members = bridge_count(&make_grm(2, 4).unwrap(), 5, &lab).unwrap().unwrap();
        assert_eq!(members.len(), 1);
    }

    #[test]
    fn unicyclic_sweep_at_four() {
        let lab = Lab::default();
        let r = run_conjecture(ConjectureId::UnicyclicMin, 4, 6, &lab).unwrap();
        assert_eq!(r.status, ConjectureStatus::NoCounterexampleWithinBounds, "{:?}", r.candidates);
        assert!(r.graphs_examined > 0);
    }

    #[test]
    fn replay_detects_tampering() {
        let lab = Lab::default();
        let g = make_cycle(5).unwrap();
        let mut outcome = lab.summary(&g, 5);
        let c = candidate(&g, true, String::new(), vec![entry("input", &g, outcome.clone())]).unwrap();
        c.replay(5, lab.budget).unwrap();
        outcome.index = Some(3);
        let bad = candidate(&g, true, String::new(), vec![entry("input", &g, outcome)]).unwrap();
        assert!(bad.replay(5, lab.budget).is_err());
    }
}
