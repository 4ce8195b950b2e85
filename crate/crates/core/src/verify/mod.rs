//! The reproduction suite: each criterion rebuilds a family result or
//! sweeps small graphs, and reports pass/fail with timing.

pub mod oracle;

use std::collections::BTreeSet;
use std::fmt;
use std::ops::RangeInclusive;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::budget::Budget;
use crate::canon::is_isomorphic;
use crate::classify::{classify, Certificate, CertificateKind, Outcome};
use crate::cycles::circumference;
use crate::families::{delta_members, make_cycle, make_fm, make_grm, make_spider};
use crate::graph::Graph;
use crate::hline::{edge_in_pn, hl_iterate, hl_step, pn_adjacent};
use crate::lab::{
    enumerate_connected_graphs, find_minimal_members, is_minimally_convergent, property_suite, run_conjecture,
    ConjectureId, ConjectureReport, ConjectureStatus, Lab, LambdaStatus, PropertyId,
};

/// At most this many failure descriptions are kept per criterion.
const MAX_FAILURES: usize = 10;

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub checked: usize,
    pub failures: Vec<String>,
    pub elapsed_secs: f64,
    pub limit_secs: Option<u64>,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "[{mark}] {:>2} {}: {} checked, {} failed, {:.2}s",
            self.id,
            self.title,
            self.checked,
            self.failures.len(),
            self.elapsed_secs
        )?;
        if let Some(limit) = self.limit_secs {
            write!(f, " (limit {limit}s)")?;
        }
        if let Some(first) = self.failures.first() {
            write!(f, "; first failure: {first}")?;
        }
        Ok(())
    }
}

/// Which `n` the suite covers; each criterion intersects its own range
/// with this one.
#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub n_range: RangeInclusive<usize>,
    pub budget: Budget,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            n_range: 4..=8,
            budget: Budget::default(),
        }
    }
}

impl VerifyConfig {
    fn ns(&self, own: RangeInclusive<usize>) -> Vec<usize> {
        own.filter(|n| self.n_range.contains(n)).collect()
    }
}

/// A certificate as it would be stored: serialized, then read back.
#[derive(Debug, Clone)]
pub struct StoredCertificate {
    pub source: String,
    pub n: usize,
    pub iterate: Graph,
    pub json: String,
}

impl StoredCertificate {
    fn capture(source: String, n: usize, c: &crate::classify::Classification) -> Option<Self> {
        let cert = c.certificate()?;
        Some(StoredCertificate {
            source,
            n,
            iterate: c.trace.steps[cert.found_at_iteration].graph.clone(),
            json: serde_json::to_string(cert).expect("certificates serialize"),
        })
    }

    pub fn reverify(&self) -> Result<(), String> {
        let cert: Certificate = serde_json::from_str(&self.json).map_err(|e| e.to_string())?;
        cert.verify(&self.iterate, self.n)
    }
}

struct Tally {
    checked: usize,
    failures: Vec<String>,
    failed: usize,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checked: 0,
            failures: Vec::new(),
            failed: 0,
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_FAILURES {
                self.failures.push(describe());
            }
        }
    }

    fn merge(&mut self, other: Tally) {
        self.checked += other.checked;
        self.failed += other.failed;
        let room = MAX_FAILURES.saturating_sub(self.failures.len());
        self.failures.extend(other.failures.into_iter().take(room));
    }

    fn finish(self, id: usize, title: &'static str, started: Instant, limit: Option<u64>) -> CriterionResult {
        let elapsed = started.elapsed();
        let mut failures = self.failures;
        let in_time = limit.is_none_or(|l| elapsed <= Duration::from_secs(l));
        if !in_time {
            failures.push(format!("took {:.1}s, over the {}s limit", elapsed.as_secs_f64(), limit.unwrap_or(0)));
        }
        CriterionResult {
            id,
            title,
            passed: self.failed == 0 && in_time,
            checked: self.checked,
            failures,
            elapsed_secs: elapsed.as_secs_f64(),
            limit_secs: limit,
        }
    }
}

/// Tailed cycles `G(r, m)` with `r + m = n` converge to `C_n` in exactly
/// `r` steps.
pub fn tailed_cycle_convergence(cfg: &VerifyConfig) -> CriterionResult {
    let started = Instant::now();
    let mut t = Tally::new();
    for n in cfg.ns(4..=8) {
        let cn = make_cycle(n).expect("n >= 3");
        for r in 1..=n - 3 {
            let m = n - r;
            let g = make_grm(r, m).expect("valid");
            let c = classify(&g, n, cfg.budget);
            let ok = match &c.outcome {
                Outcome::Converged { at, limit } => *at == r && is_isomorphic(limit, &cn).unwrap_or(false),
                _ => false,
            };
            t.check(ok, || format!("G({r},{m}) at n={n}: {:?}", c.outcome.tag()));
        }
    }
    t.finish(1, "tailed cycles converge to C_n in r steps", started, Some(60))
}

/// Tailed cycles with `n < r + m <= n + 3` diverge with a certificate
/// that re-verifies.
pub fn long_tail_divergence(cfg: &VerifyConfig, pool: &mut Vec<StoredCertificate>) -> CriterionResult {
    let started = Instant::now();
    let mut t = Tally::new();
    for n in cfg.ns(4..=8) {
        for total in n + 1..=n + 3 {
            for r in 1..=total - 3 {
                let m = total - r;
                let g = make_grm(r, m).expect("valid");
                let c = classify(&g, n, cfg.budget);
                let verified = c.verify_certificate();
                t.check(matches!(verified, Some(Ok(()))), || {
                    format!("G({r},{m}) at n={n}: {:?} / {verified:?}", c.outcome.tag())
                });
                pool.extend(StoredCertificate::capture(format!("G({r},{m}) n={n}"), n, &c));
            }
        }
    }
    t.finish(2, "longer tailed cycles diverge by order", started, Some(60))
}

/// `F_m` diverges through a Key1 certificate and its first iterates grow.
pub fn chorded_cycle_divergence(cfg: &VerifyConfig, pool: &mut Vec<StoredCertificate>) -> CriterionResult {
    let started = Instant::now();
    let mut t = Tally::new();
    for n in cfg.ns(4..=6) {
        for m in n..=n + 3 {
            let g = make_fm(m).expect("m >= 4");
            let c = classify(&g, n, cfg.budget);
            let kind = c.certificate().map(Certificate::kind);
            let verified = matches!(c.verify_certificate(), Some(Ok(())));
            t.check(kind == Some(CertificateKind::Key1) && verified, || {
                format!("F{m} at n={n}: {:?} {kind:?}", c.outcome.tag())
            });
            pool.extend(StoredCertificate::capture(format!("F{m} n={n}"), n, &c));
            let orders = hl_iterate(&g, n, 3, usize::MAX).orders();
            let growing = orders.len() == 4 && orders.windows(2).all(|w| w[0] < w[1]);
            t.check(growing, || format!("F{m} at n={n}: orders {orders:?}"));
        }
    }
    t.finish(3, "chorded cycles diverge via Key1", started, Some(120))
}

/// Triangle with pendant paths of the given orders hung from its three
/// corners.
pub fn triangle_with_tails(tails: [usize; 3]) -> Graph {
    let mut edges = vec![(0, 1), (1, 2), (0, 2)];
    let mut next = 3;
    for (corner, &len) in tails.iter().enumerate() {
        let mut prev = corner;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    Graph::from_edges(next, edges).expect("valid")
}

/// `HL(CL(k, k, d))` is a triangle with tails `k-1, k-1, d-1`, and the
/// spider diverges.
pub fn spider_image(cfg: &VerifyConfig, pool: &mut Vec<StoredCertificate>) -> CriterionResult {
    let started = Instant::now();
    let mut t = Tally::new();
    for (k, d) in [(2, 1), (3, 2), (3, 3), (4, 3)] {
        let n = k + d + 1;
        // (3, 3) has n = 7 > 2k, outside the divergence hypothesis; it is
        // checked anyway and behaves the same.
        if !cfg.n_range.contains(&n) {
            continue;
        }
        let g = make_spider(k, k, d).expect("valid");
        let image = hl_step(&g, n).graph;
        let expected = triangle_with_tails([k - 1, k - 1, d - 1]);
        let same = is_isomorphic(&image, &expected).unwrap_or(false);
        t.check(same, || format!("HL(CL({k},{k},{d})) at n={n} is {image}"));
        let c = classify(&g, n, cfg.budget);
        let verified = matches!(c.verify_certificate(), Some(Ok(())));
        t.check(verified, || format!("CL({k},{k},{d}) at n={n}: {:?}", c.outcome.tag()));
        pool.extend(StoredCertificate::capture(format!("CL({k},{k},{d}) n={n}"), n, &c));
    }
    t.finish(4, "spider images and divergence", started, Some(60))
}

fn connected_with_edges(v_max: usize) -> Vec<Graph> {
    enumerate_connected_graphs(v_max, v_max * (v_max - 1) / 2)
        .expect("within enumeration cap")
        .into_iter()
        .filter(|g| g.size() > 0)
        .collect()
}

/// Over connected graphs of order at most 7, `HL(G)` has at most one
/// component with an edge.
pub fn single_nontrivial_component(cfg: &VerifyConfig) -> CriterionResult {
    let started = Instant::now();
    let graphs = connected_with_edges(7);
    let ns = cfg.ns(4..=6);
    let tally = graphs
        .par_iter()
        .map(|g| {
            let mut t = Tally::new();
            for &n in &ns {
                let h = hl_step(g, n).graph;
                let nontrivial = h.components().iter().filter(|c| c.len() > 1).count();
                t.check(nontrivial <= 1, || format!("{g} at n={n}: {nontrivial} nontrivial components"));
            }
            t
        })
        .reduce(Tally::new, |mut a, b| {
            a.merge(b);
            a
        });
    tally.finish(5, "image has one nontrivial component", started, Some(1800))
}

/// `pn_adjacent` against naive enumeration of all n-vertex paths.
pub fn adjacency_oracle(cfg: &VerifyConfig) -> CriterionResult {
    let started = Instant::now();
    let graphs = connected_with_edges(7);
    let ns = cfg.ns(4..=6);
    let tally = graphs
        .par_iter()
        .map(|g| {
            let mut t = Tally::new();
            let edges = g.edges();
            for &n in &ns {
                let naive = oracle::pn_adjacent_pairs(g, n);
                for (i, &e) in edges.iter().enumerate() {
                    for &f in &edges[i + 1..] {
                        if e.shared_endpoint(f).is_none() {
                            continue;
                        }
                        let fast = pn_adjacent(g, e, f, n).expect("edges of g");
                        t.check(fast == naive.contains(&(e, f)), || format!("{g} n={n} {e} {f}: fast={fast}"));
                    }
                }
            }
            t
        })
        .reduce(Tally::new, |mut a, b| {
            a.merge(b);
            a
        });
    tally.finish(6, "P_n-adjacency matches naive paths", started, None)
}

/// For unicyclic graphs of order at most 8 with every edge on a P_n,
/// `cr(HL(G)) >= cr(G)`.
pub fn circumference_bound(cfg: &VerifyConfig) -> CriterionResult {
    let started = Instant::now();
    let graphs: Vec<Graph> = enumerate_connected_graphs(8, 8)
        .expect("within enumeration cap")
        .into_iter()
        .filter(Graph::is_unicyclic)
        .collect();
    let ns = cfg.ns(4..=6);
    let tally = graphs
        .par_iter()
        .map(|g| {
            let mut t = Tally::new();
            for &n in &ns {
                let covered = g.edges().into_iter().all(|e| edge_in_pn(g, e, n).expect("edge of g"));
                if !covered {
                    continue;
                }
                let h = hl_step(g, n).graph;
                let (cg, ch) = (circumference(g), circumference(&h));
                let ok = matches!((cg, ch), (Ok(a), Ok(b)) if b >= a);
                t.check(ok, || format!("{g} at n={n}: cr(G)={cg:?}, cr(HL)={ch:?}"));
            }
            t
        })
        .reduce(Tally::new, |mut a, b| {
            a.merge(b);
            a
        });
    tally.finish(7, "circumference does not drop on unicyclic graphs", started, None)
}

/// Tailed cycles of order `n` and cycles `C_n..C_8` are minimally
/// convergent.
pub fn minimal_families(cfg: &VerifyConfig, lab: &Lab) -> CriterionResult {
    let started = Instant::now();
    let mut t = Tally::new();
    for n in cfg.ns(4..=6) {
        let mut graphs: Vec<(String, Graph)> = delta_members(n)
            .expect("n >= 4")
            .into_iter()
            .map(|g| (g.to_string(), g))
            .collect();
        graphs.extend((n..=8).map(|m| (format!("C{m}"), make_cycle(m).expect("m >= 3"))));
        for (name, g) in graphs {
            let status = is_minimally_convergent(&g, n, lab);
            t.check(status == Ok(LambdaStatus::Yes), || format!("{name} at n={n}: {status:?}"));
        }
    }
    t.finish(8, "tailed cycles and cycles are minimally convergent", started, Some(600))
}

/// Re-checks stored certificates from their JSON witnesses, adding a
/// classification sweep over connected graphs of order at most 7.
pub fn certificate_audit(cfg: &VerifyConfig, pool: &[StoredCertificate]) -> CriterionResult {
    let started = Instant::now();
    let graphs = connected_with_edges(7);
    let ns = cfg.ns(4..=6);
    let budget = cfg.budget;
    let swept: Vec<StoredCertificate> = graphs
        .par_iter()
        .flat_map_iter(|g| {
            ns.iter()
                .filter_map(|&n| StoredCertificate::capture(format!("{g} n={n}"), n, &classify(g, n, budget)))
                .collect::<Vec<_>>()
        })
        .collect();
    let mut t = Tally::new();
    for cert in pool.iter().chain(&swept) {
        let r = cert.reverify();
        t.check(r.is_ok(), || format!("{}: {r:?}", cert.source));
    }
    t.finish(9, "stored certificates re-verify", started, None)
}

fn well_formed(report: &ConjectureReport) -> Result<(), String> {
    let json = serde_json::to_string(report).map_err(|e| e.to_string())?;
    let back: ConjectureReport = serde_json::from_str(&json).map_err(|e| e.to_string())?;
    if &back != report {
        return Err("report does not survive a JSON round trip".into());
    }
    let has_counterexample = report.candidates.iter().any(|c| c.counterexample);
    let consistent = match report.status {
        ConjectureStatus::CounterexampleFound => has_counterexample,
        ConjectureStatus::NoCounterexampleWithinBounds => {
            report.candidates.is_empty() && report.unknown_classifications == 0
        }
        ConjectureStatus::Inconclusive => !has_counterexample,
    };
    if !consistent {
        return Err(format!("status {} contradicts its candidates", report.status));
    }
    if report.id == ConjectureId::DivIffKey1 && has_counterexample {
        return Err("Div-iff-Key1 candidates are never counterexamples".into());
    }
    Ok(())
}

/// All four conjecture sweeps finish with well-formed reports whose
/// candidates replay from their transcripts.
pub fn conjecture_harness(cfg: &VerifyConfig, lab: &Lab) -> (CriterionResult, Vec<ConjectureReport>) {
    let started = Instant::now();
    let mut t = Tally::new();
    let mut reports = Vec::new();
    for n in cfg.ns(4..=5) {
        for id in ConjectureId::ALL {
            match run_conjecture(id, n, 6, lab) {
                Ok(report) => {
                    let shape = well_formed(&report);
                    t.check(shape.is_ok(), || format!("{id} n={n}: {shape:?}"));
                    for c in &report.candidates {
                        let r = c.replay(n, lab.budget);
                        t.check(r.is_ok(), || format!("{id} n={n} {}: {r:?}", c.graph));
                    }
                    reports.push(report);
                }
                Err(e) => t.check(false, || format!("{id} n={n}: {e}")),
            }
        }
    }
    (t.finish(10, "conjecture sweeps complete and replay", started, None), reports)
}

/// Checks (a) and (c) of the property suite pass on every minimally
/// convergent graph of order at most 7.
pub fn lambda_structure(cfg: &VerifyConfig, lab: &Lab) -> CriterionResult {
    let started = Instant::now();
    let mut t = Tally::new();
    for n in cfg.ns(4..=6) {
        let report = match find_minimal_members(n, 7, lab, true) {
            Ok(r) => r,
            Err(e) => {
                t.check(false, || format!("search at n={n}: {e}"));
                continue;
            }
        };
        let yes: Vec<Graph> = report
            .yes()
            .map(|r| crate::io::parse_edge_list(&r.graph).expect("rendered graph"))
            .collect();
        let results: Vec<(String, Result<BTreeSet<PropertyId>, String>)> = yes
            .par_iter()
            .map(|g| {
                let r = property_suite(g, n, lab).map_err(|e| e.to_string()).map(|rep| {
                    [PropertyId::A, PropertyId::C]
                        .into_iter()
                        .filter(|&id| !rep.get(id).is_pass())
                        .collect()
                });
                (g.to_string(), r)
            })
            .collect();
        for (g, r) in results {
            t.check(matches!(&r, Ok(bad) if bad.is_empty()), || format!("{g} at n={n}: {r:?}"));
        }
    }
    t.finish(11, "minimal members satisfy (a) and (c)", started, None)
}

/// Runs criteria 1 through 11 in order.
pub fn run_all(cfg: &VerifyConfig, lab: &Lab) -> Vec<CriterionResult> {
    let mut pool = Vec::new();
    let mut out = vec![
        tailed_cycle_convergence(cfg),
        long_tail_divergence(cfg, &mut pool),
        chorded_cycle_divergence(cfg, &mut pool),
        spider_image(cfg, &mut pool),
        single_nontrivial_component(cfg),
        adjacency_oracle(cfg),
        circumference_bound(cfg),
        minimal_families(cfg, lab),
    ];
    out.push(certificate_audit(cfg, &pool));
    out.push(conjecture_harness(cfg, lab).0);
    out.push(lambda_structure(cfg, lab));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_tails_shape() {
        let g = triangle_with_tails([1, 1, 0]);
        assert_eq!((g.order(), g.size()), (5, 5));
        assert!(g.is_unicyclic());
    }

    #[test]
    fn family_criteria_pass_on_small_range() {
        let cfg = VerifyConfig {
            n_range: 4..=5,
            ..VerifyConfig::default()
        };
        let mut pool = Vec::new();
        assert!(tailed_cycle_convergence(&cfg).passed);
        assert!(long_tail_divergence(&cfg, &mut pool).passed);
        assert!(spider_image(&cfg, &mut pool).passed);
        assert!(!pool.is_empty());
        assert!(pool.iter().all(|c| c.reverify().is_ok()));
    }
}
