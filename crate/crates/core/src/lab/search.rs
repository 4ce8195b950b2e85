use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::canonical_code;
use crate::classify::OutcomeSummary;
use crate::families::{delta_members, make_cycle, FamilySpec};
use crate::graph::Graph;
use crate::TOOL_VERSION;

use super::{disjoint_unions, enumerate_connected_graphs, lambda_audit, Lab, LabError, LambdaStatus, SubgraphAudit};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub code: String,
    pub graph: String,
    pub components: usize,
    pub outcome: OutcomeSummary,
    pub lambda: LambdaStatus,
    /// Full proper-subgraph audit; present on `yes` records.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub audit: Option<Vec<SubgraphAudit>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedMember {
    pub name: String,
    pub code: String,
    pub found_yes: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub tool_version: String,
    pub n: usize,
    pub v_max: usize,
    pub e_max: usize,
    pub unions: bool,
    pub examined: usize,
    pub counts: BTreeMap<LambdaStatus, usize>,
    /// All `yes` and `unknown` records, ordered by (order, size, code).
    pub records: Vec<SearchRecord>,
    pub expected: Vec<ExpectedMember>,
}

impl SearchReport {
    pub fn yes(&self) -> impl Iterator<Item = &SearchRecord> {
        self.records.iter().filter(|r| r.lambda == LambdaStatus::Yes)
    }

    pub fn expected_all_found(&self) -> bool {
        self.expected.iter().all(|e| e.found_yes)
    }
}

/// Candidate graphs for a sweep: connected graphs with at least one edge
/// and, optionally, two-component unions, all within `v_max` vertices.
pub(crate) fn sweep_graphs(v_max: usize, unions: bool) -> Result<Vec<Graph>, LabError> {
    let e_max = v_max * v_max.saturating_sub(1) / 2;
    let connected: Vec<Graph> = enumerate_connected_graphs(v_max, e_max)?
        .into_iter()
        .filter(|g| g.size() > 0)
        .collect();
    let mut all = connected.clone();
    if unions {
        all.extend(disjoint_unions(&connected, v_max)?);
    }
    Ok(all)
}

/// Decides λ_n membership for every sweep graph and keeps the `yes` and
/// `unknown` records. The tailed cycles of order `n` and the cycles
/// `C_n..C_{v_max}` are cross-checked as expected members.
pub fn find_minimal_members(n: usize, v_max: usize, lab: &Lab, unions: bool) -> Result<SearchReport, LabError> {
    let graphs = sweep_graphs(v_max, unions)?;
    let records: Vec<SearchRecord> = graphs
        .par_iter()
        .map(|g| -> Result<SearchRecord, LabError> {
            let audit = lambda_audit(g, n, lab)?;
            Ok(SearchRecord {
                code: canonical_code(g)?.to_hex(),
                graph: g.to_string(),
                components: g.components().len(),
                outcome: audit.outcome,
                lambda: audit.status,
                audit: (audit.status == LambdaStatus::Yes).then_some(audit.subgraphs),
            })
        })
        .collect::<Result<_, _>>()?;

    let mut counts = BTreeMap::new();
    for r in &records {
        *counts.entry(r.lambda).or_insert(0) += 1;
    }
    let status: HashMap<&str, LambdaStatus> = records.iter().map(|r| (r.code.as_str(), r.lambda)).collect();
    let mut expected = Vec::new();
    let mut expect = |name: String, g: &Graph| -> Result<(), LabError> {
        let code = canonical_code(g)?.to_hex();
        let found_yes = status.get(code.as_str()) == Some(&LambdaStatus::Yes);
        expected.push(ExpectedMember { name, code, found_yes });
        Ok(())
    };
    if n <= v_max && n >= 4 {
        for g in delta_members(n).expect("n >= 4") {
            let cycle_len = g.unique_cycle().map_or(0, |c| c.len());
            let spec = FamilySpec::Grm {
                r: g.order() - cycle_len,
                m: cycle_len,
            };
            expect(spec.to_string(), &g)?;
        }
    }
    for m in n..=v_max {
        expect(format!("C{m}"), &make_cycle(m).expect("m >= 3"))?;
    }

    let examined = records.len();
    let records = records.into_iter().filter(|r| r.lambda != LambdaStatus::No).collect();
    Ok(SearchReport {
        tool_version: TOOL_VERSION.to_string(),
        n,
        v_max,
        e_max: v_max * v_max.saturating_sub(1) / 2,
        unions,
        examined,
        counts,
        records,
        expected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_grm, make_spider};

    fn code(g: &Graph) -> String {
        canonical_code(g).unwrap().to_hex()
    }

    #[test]
    fn order_four_sweep() {
        let lab = Lab::default();
        let r = find_minimal_members(4, 6, &lab, false).unwrap();
        assert!(r.expected_all_found(), "{:?}", r.expected);
        let yes: Vec<&str> = r.yes().map(|x| x.code.as_str()).collect();
        for g in [make_grm(1, 3).unwrap(), make_cycle(4).unwrap(), make_cycle(5).unwrap(), make_cycle(6).unwrap()] {
            assert!(yes.contains(&code(&g).as_str()));
        }
        assert!(r.yes().all(|x| x.audit.is_some()));
    }

    #[test]
    fn claw_is_not_minimal_at_four() {
        let lab = Lab::default();
        let r = find_minimal_members(4, 4, &lab, false).unwrap();
        let claw = code(&make_spider(1, 1, 1).unwrap());
        assert!(r.records.iter().all(|x| x.code != claw));
        // K_2, P_3, K_3 and the six connected graphs on four vertices.
        assert_eq!(r.examined, 9);
    }

    #[test]
    fn order_six_tailed_cycles() {
        let lab = Lab::default();
        let r = find_minimal_members(6, 6, &lab, false).unwrap();
        assert_eq!(r.expected.len(), 4);
        assert!(r.expected_all_found(), "{:?}", r.expected);
    }
}
