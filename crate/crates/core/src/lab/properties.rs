use std::fmt;

use serde::{Deserialize, Serialize};

use crate::budget::{Exhausted, Meter};
use crate::canon::is_isomorphic;
use crate::classify::OutcomeTag;
use crate::cycles::{circumference_with, girth, vertices_on_cycles};
use crate::families::delta_members;
use crate::graph::{Edge, Graph};
use crate::hline::{edge_in_pn, hl_step, HLGraph};

use super::{arm_decomposition, lambda_audit, Lab, LabError, LambdaStatus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PropertyId {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
}

impl PropertyId {
    pub const ALL: [PropertyId; 8] = [
        PropertyId::A,
        PropertyId::B,
        PropertyId::C,
        PropertyId::D,
        PropertyId::E,
        PropertyId::F,
        PropertyId::G,
        PropertyId::H,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PropertyId::A => "every-edge-in-pn",
            PropertyId::B => "non-extendable-paths-end-in-leaves",
            PropertyId::C => "component-count-preserved",
            PropertyId::D => "circumference-nondecreasing",
            PropertyId::E => "image-not-a-tree",
            PropertyId::F => "arm-edges-off-image-cycles",
            PropertyId::G => "root-stars-without-long-cycles",
            PropertyId::H => "unicyclic-components-preserved",
        }
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = format!("{self:?}").to_lowercase();
        write!(f, "({letter}) {}", self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "detail", rename_all = "lowercase")]
pub enum Verdict {
    Pass(String),
    Fail(String),
    Skip(String),
}

impl Verdict {
    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail(_))
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyCheck {
    pub id: PropertyId,
    pub name: String,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub n: usize,
    pub graph: String,
    pub lambda: LambdaStatus,
    pub outcome: OutcomeTag,
    pub checks: Vec<PropertyCheck>,
}

impl PropertyReport {
    pub fn get(&self, id: PropertyId) -> &Verdict {
        &self.checks.iter().find(|c| c.id == id).expect("all checks present").verdict
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyCheck> {
        self.checks.iter().filter(|c| c.verdict.is_fail())
    }
}

/// Shared facts the checks consult, computed once.
struct Facts<'a> {
    g: &'a Graph,
    n: usize,
    nodes: u64,
    lambda: LambdaStatus,
    converged: Option<bool>,
    hl: HLGraph,
}

impl Facts<'_> {
    fn require_lambda(&self) -> Result<(), Verdict> {
        match self.lambda {
            LambdaStatus::Yes => Ok(()),
            LambdaStatus::No => Err(Verdict::Skip("not minimally convergent".into())),
            LambdaStatus::Unknown => Err(Verdict::Skip("minimal convergence undecided".into())),
        }
    }

    fn require_converged(&self) -> Result<(), Verdict> {
        match self.converged {
            Some(true) => Ok(()),
            Some(false) => Err(Verdict::Skip("sequence does not converge".into())),
            None => Err(Verdict::Skip("classification unknown".into())),
        }
    }

    fn require_unicyclic(&self) -> Result<(), Verdict> {
        if self.g.is_unicyclic() {
            Ok(())
        } else {
            Err(Verdict::Skip("not connected unicyclic".into()))
        }
    }

    fn edge_not_in_pn(&self) -> Option<Edge> {
        self.g
            .edges()
            .into_iter()
            .find(|&e| !edge_in_pn(self.g, e, self.n).expect("edge of g"))
    }
}

fn check_a(f: &Facts) -> Result<Verdict, Verdict> {
    f.require_lambda()?;
    Ok(match f.edge_not_in_pn() {
        None => Verdict::Pass(format!("all {} edges lie on a P_{}", f.g.size(), f.n)),
        Some(e) => Verdict::Fail(format!("edge {e} lies on no P_{}", f.n)),
    })
}

/// Simple paths with at least `min_order` vertices, each once, whose ends
/// have no neighbor off the path; stops at the first with a non-leaf end.
fn non_extendable_with_inner_end(g: &Graph, min_order: usize, nodes: u64) -> Result<Option<Vec<usize>>, Exhausted> {
    fn walk(
        g: &Graph,
        min_order: usize,
        path: &mut Vec<usize>,
        on: &mut [bool],
        meter: &mut Meter,
    ) -> Result<Option<Vec<usize>>, Exhausted> {
        meter.tick()?;
        let (s, t) = (path[0], *path.last().expect("non-empty"));
        if path.len() >= min_order && s < t {
            let closed = |v: usize| g.neighbors(v).iter().all(|&w| on[w]);
            if closed(s) && closed(t) && (g.degree(s) != 1 || g.degree(t) != 1) {
                return Ok(Some(path.clone()));
            }
        }
        for &w in g.neighbors(t) {
            if on[w] {
                continue;
            }
            on[w] = true;
            path.push(w);
            let r = walk(g, min_order, path, on, meter);
            path.pop();
            on[w] = false;
            if let Some(p) = r? {
                return Ok(Some(p));
            }
        }
        Ok(None)
    }

    let mut meter = Meter::new(nodes);
    let mut on = vec![false; g.order()];
    for s in 0..g.order() {
        on[s] = true;
        let mut path = vec![s];
        let r = walk(g, min_order, &mut path, &mut on, &mut meter);
        on[s] = false;
        if let Some(p) = r? {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

fn check_b(f: &Facts) -> Result<Verdict, Verdict> {
    f.require_lambda()?;
    if f.g.is_cycle_graph() {
        return Err(Verdict::Skip("cycle graph".into()));
    }
    let deltas = delta_members(f.n).map_err(|e| Verdict::Skip(e.to_string()))?;
    if deltas.iter().any(|d| is_isomorphic(d, f.g).unwrap_or(false)) {
        return Err(Verdict::Skip("member of the tailed-cycle family".into()));
    }
    match non_extendable_with_inner_end(f.g, f.n, f.nodes) {
        Ok(None) => Ok(Verdict::Pass(format!(
            "non-extendable paths of order >= {} end in leaves",
            f.n
        ))),
        Ok(Some(p)) => Ok(Verdict::Fail(format!("non-extendable path {p:?} has a non-leaf end"))),
        Err(e) => Err(Verdict::Skip(format!("path search budget exhausted after {} nodes", e.0))),
    }
}

fn check_c(f: &Facts) -> Result<Verdict, Verdict> {
    f.require_lambda()?;
    let (a, b) = (f.g.components().len(), f.hl.graph.components().len());
    Ok(if a == b {
        Verdict::Pass(format!("{a} components in both"))
    } else {
        Verdict::Fail(format!("G has {a} components, HL(G) has {b}"))
    })
}

fn check_d(f: &Facts) -> Result<Verdict, Verdict> {
    f.require_unicyclic()?;
    if let Some(e) = f.edge_not_in_pn() {
        return Err(Verdict::Skip(format!("edge {e} lies on no P_{}", f.n)));
    }
    let budget = |e: crate::cycles::CycleBudgetError| Verdict::Skip(e.to_string());
    let cg = circumference_with(f.g, f.nodes).map_err(budget)?;
    let ch = circumference_with(&f.hl.graph, f.nodes).map_err(budget)?;
    Ok(if ch >= cg {
        Verdict::Pass(format!("cr(HL)={ch} >= cr(G)={cg}"))
    } else {
        Verdict::Fail(format!("cr(HL)={ch} < cr(G)={cg}"))
    })
}

fn check_e(f: &Facts) -> Result<Verdict, Verdict> {
    f.require_unicyclic()?;
    f.require_lambda()?;
    let h = &f.hl.graph;
    let tree = h.order() > 0 && h.is_connected() && h.size() + 1 == h.order();
    Ok(if tree {
        Verdict::Fail(format!("HL(G) is a tree on {} vertices", h.order()))
    } else {
        Verdict::Pass("HL(G) is not a tree".into())
    })
}

fn check_f(f: &Facts) -> Result<Verdict, Verdict> {
    f.require_unicyclic()?;
    f.require_converged()?;
    let arms = arm_decomposition(f.g).expect("connected unicyclic");
    let on_cycle = vertices_on_cycles(&f.hl.graph);
    let arm_edges: Vec<Edge> = f
        .g
        .edges()
        .into_iter()
        .filter(|e| arms.in_arm(e.lo()) && arms.in_arm(e.hi()))
        .collect();
    for &e in &arm_edges {
        let v = f.hl.vertex_of(e).expect("every edge is an image vertex");
        if on_cycle[v] {
            return Ok(Verdict::Fail(format!("arm edge {e} lies on a cycle of HL(G)")));
        }
    }
    Ok(Verdict::Pass(format!("{} arm edges, none on a cycle of HL(G)", arm_edges.len())))
}

fn check_g(f: &Facts) -> Result<Verdict, Verdict> {
    f.require_unicyclic()?;
    f.require_converged()?;
    let arms = arm_decomposition(f.g).expect("connected unicyclic");
    let mut roots = arms.roots.clone();
    roots.sort_unstable();
    roots.dedup();
    for &r in &roots {
        let star: Vec<usize> = f
            .g
            .neighbors(r)
            .iter()
            .map(|&w| f.hl.vertex_of(Edge::new(r, w)).expect("edge of g"))
            .collect();
        let c = circumference_with(&f.hl.graph.induced(&star), f.nodes).map_err(|e| Verdict::Skip(e.to_string()))?;
        if c >= 4 {
            return Ok(Verdict::Fail(format!("edges at root {r} induce a cycle of order {c} in HL(G)")));
        }
    }
    Ok(Verdict::Pass(format!("{} roots checked", roots.len())))
}

fn check_h(f: &Facts) -> Result<Verdict, Verdict> {
    f.require_lambda()?;
    let unicyclic_parts = |h: &Graph| {
        h.components()
            .iter()
            .all(|c| h.induced(c).is_unicyclic())
    };
    if !unicyclic_parts(f.g) {
        return Err(Verdict::Skip("some component is not unicyclic".into()));
    }
    let gh = girth(&f.hl.graph);
    if gh <= 4 {
        let shown = if gh == 0 { "infinite".to_string() } else { gh.to_string() };
        return Err(Verdict::Skip(format!(
            "girth of HL(G) is {shown}, outside the hypothesis"
        )));
    }
    Ok(if unicyclic_parts(&f.hl.graph) {
        Verdict::Pass("every component of HL(G) is unicyclic".into())
    } else {
        Verdict::Fail("HL(G) has a component that is not unicyclic".into())
    })
}

/// Runs checks (a) through (h). A check whose hypotheses fail, or depend
/// on an undecided classification, reports a skip.
pub fn property_suite(g: &Graph, n: usize, lab: &Lab) -> Result<PropertyReport, LabError> {
    let lambda = if g.has_isolated() || g.is_empty() {
        LambdaStatus::No
    } else {
        lambda_audit(g, n, lab)?.status
    };
    let outcome = lab.summary(g, n).tag;
    let converged = match outcome {
        OutcomeTag::Converged => Some(true),
        OutcomeTag::Unknown => None,
        _ => Some(false),
    };
    let facts = Facts {
        g,
        n,
        nodes: lab.budget.search_nodes,
        lambda,
        converged,
        hl: hl_step(g, n),
    };
    let checks = PropertyId::ALL
        .iter()
        .map(|&id| {
            let run = match id {
                PropertyId::A => check_a,
                PropertyId::B => check_b,
                PropertyId::C => check_c,
                PropertyId::D => check_d,
                PropertyId::E => check_e,
                PropertyId::F => check_f,
                PropertyId::G => check_g,
                PropertyId::H => check_h,
            };
            PropertyCheck {
                id,
                name: id.name().to_string(),
                verdict: run(&facts).unwrap_or_else(|skip| skip),
            }
        })
        .collect();
    Ok(PropertyReport {
        n,
        graph: g.to_string(),
        lambda,
        outcome,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_cycle, make_grm, make_spider};

    #[test]
    fn six_cycle() {
        let lab = Lab::default();
        let r = property_suite(&make_cycle(6).unwrap(), 6, &lab).unwrap();
        assert_eq!(r.lambda, LambdaStatus::Yes);
        for id in [PropertyId::A, PropertyId::C, PropertyId::D, PropertyId::E, PropertyId::F, PropertyId::G] {
            assert!(r.get(id).is_pass(), "{id}: {:?}", r.get(id));
        }
        assert_eq!(r.failures().count(), 0);
    }

    #[test]
    fn tailed_cycle_at_six() {
        let lab = Lab::default();
        let r = property_suite(&make_grm(2, 4).unwrap(), 6, &lab).unwrap();
        assert!(r.get(PropertyId::A).is_pass());
        assert_eq!(r.get(PropertyId::D), &Verdict::Pass("cr(HL)=5 >= cr(G)=4".into()));
        assert_eq!(r.failures().count(), 0);
    }

    #[test]
    fn claw_skips_everything() {
        let lab = Lab::default();
        let r = property_suite(&make_spider(1, 1, 1).unwrap(), 4, &lab).unwrap();
        assert!(r.checks.iter().all(|c| matches!(c.verdict, Verdict::Skip(_))), "{r:?}");
    }

    #[test]
    fn inner_ends_are_found() {
        // A triangle with one pendant: the path 3-0-1-2 is closed at 2 but 2 is not a leaf.
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 0), (0, 3)]).unwrap();
        assert!(non_extendable_with_inner_end(&g, 4, 1_000).unwrap().is_some());
        let p = crate::families::make_path(5).unwrap();
        assert!(non_extendable_with_inner_end(&p, 4, 1_000).unwrap().is_none());
    }
}
