//! The P_n-line graph operator and its iteration.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{is_isomorphic_with, CanonLimits};
use crate::graph::{Edge, Graph, GraphError};
use crate::paths::split_paths_exist;

/// Adjacent-pair counts above this are tested on the rayon pool.
const PARALLEL_PAIRS: usize = 512;

/// Whether `e` and `f` share an endpoint and lie on a common simple path
/// with exactly `n` vertices.
///
/// With `e = uv` and `f = vw`, such a path is `L^R u v w R` for disjoint
/// extensions `L` from `u` and `R` from `w` that avoid `v`, whose orders
/// sum to `n - 1` (counting `u` and `w`).
pub fn pn_adjacent(g: &Graph, e: Edge, f: Edge, n: usize) -> Result<bool, GraphError> {
    g.check_edge(e)?;
    g.check_edge(f)?;
    if e == f {
        return Err(GraphError::SameEdge(e, f));
    }
    Ok(pn_adjacent_unchecked(g, e, f, n))
}

fn pn_adjacent_unchecked(g: &Graph, e: Edge, f: Edge, n: usize) -> bool {
    match e.shared_endpoint(f) {
        Some(v) => split_paths_exist(g, e.other(v), f.other(v), &[v], n - 1),
        None => false,
    }
}

/// Whether some simple path with exactly `n` vertices uses `e`.
pub fn edge_in_pn(g: &Graph, e: Edge, n: usize) -> Result<bool, GraphError> {
    g.check_edge(e)?;
    Ok(split_paths_exist(g, e.lo(), e.hi(), &[], n))
}

/// A line-type graph whose vertex `i` stands for `provenance[i]`, an edge
/// of the graph it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HLGraph {
    pub graph: Graph,
    pub provenance: Vec<Edge>,
}

impl HLGraph {
    /// Vertex id representing edge `e` of the predecessor.
    pub fn vertex_of(&self, e: Edge) -> Option<usize> {
        self.provenance.binary_search(&e).ok()
    }
}

/// One application of the P_n-line graph operator. Vertices follow the
/// lexicographic order of the edges of `g`.
pub fn hl_step(g: &Graph, n: usize) -> HLGraph {
    assert!(n >= 3, "path order must be at least 3");
    let edges = g.edges();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); g.order()];
    for (i, e) in edges.iter().enumerate() {
        incident[e.lo()].push(i);
        incident[e.hi()].push(i);
    }
    let pairs: Vec<(usize, usize)> = incident
        .iter()
        .flat_map(|ids| {
            ids.iter()
                .enumerate()
                .flat_map(move |(a, &i)| ids[a + 1..].iter().map(move |&j| (i, j)))
        })
        .collect();
    let test = |&(i, j): &(usize, usize)| pn_adjacent_unchecked(g, edges[i], edges[j], n);
    let hits: Vec<bool> = if pairs.len() > PARALLEL_PAIRS {
        pairs.par_iter().map(test).collect()
    } else {
        pairs.iter().map(test).collect()
    };
    let mut adj = vec![Vec::new(); edges.len()];
    for (&(i, j), hit) in pairs.iter().zip(hits) {
        if hit {
            adj[i].push(j);
            adj[j].push(i);
        }
    }
    HLGraph {
        graph: Graph::from_adjacency_unchecked(adj),
        provenance: edges,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StopReason {
    /// `HL^k ≅ HL^{k+1}` for the last recorded `k` before the final step.
    FixedPoint,
    /// The empty graph appeared.
    Empty,
    OrderCap,
    IterCap,
    /// A divergence certificate was found (classification only).
    Certified,
    /// The isomorphism test ran out of budget.
    SearchBudget,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub k: usize,
    pub graph: Graph,
    /// Edges of `HL^{k-1}` represented by the vertices; absent for `k = 0`.
    pub provenance: Option<Vec<Edge>>,
    pub order: usize,
    pub size: usize,
    pub components: usize,
}

impl TraceStep {
    pub fn new(k: usize, graph: Graph, provenance: Option<Vec<Edge>>) -> Self {
        TraceStep {
            k,
            order: graph.order(),
            size: graph.size(),
            components: graph.components().len(),
            graph,
            provenance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceTrace {
    pub n: usize,
    pub steps: Vec<TraceStep>,
    pub stop: StopReason,
}

impl SequenceTrace {
    pub fn last(&self) -> &TraceStep {
        self.steps.last().expect("trace always holds HL^0")
    }

    pub fn orders(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.order).collect()
    }
}

/// Iterates the operator from `g` until a fixed point, the empty graph,
/// `max_order`, or `max_iter` steps.
pub fn hl_iterate(g: &Graph, n: usize, max_iter: usize, max_order: usize) -> SequenceTrace {
    let limits = CanonLimits::with_max_order(max_order.max(g.order()));
    let mut steps = vec![TraceStep::new(0, g.clone(), None)];
    let stop = loop {
        let cur = &steps.last().expect("non-empty").graph;
        let k = steps.len() - 1;
        if cur.is_empty() {
            break StopReason::Empty;
        }
        if k >= max_iter {
            break StopReason::IterCap;
        }
        let next = hl_step(cur, n);
        let same = if next.graph.is_empty() {
            Ok(false)
        } else {
            is_isomorphic_with(cur, &next.graph, limits)
        };
        let next_order = next.graph.order();
        let next_empty = next.graph.is_empty();
        steps.push(TraceStep::new(k + 1, next.graph, Some(next.provenance)));
        if next_empty {
            break StopReason::Empty;
        }
        match same {
            Ok(true) => break StopReason::FixedPoint,
            Ok(false) => {}
            Err(_) => break StopReason::SearchBudget,
        }
        if next_order > max_order {
            break StopReason::OrderCap;
        }
    };
    SequenceTrace { n, steps, stop }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_isomorphic;

    fn cycle(m: usize) -> Graph {
        Graph::from_edges(m, (0..m).map(|i| (i, (i + 1) % m))).unwrap()
    }

    fn path(m: usize) -> Graph {
        Graph::from_edges(m, (1..m).map(|i| (i - 1, i))).unwrap()
    }

    fn claw() -> Graph {
        Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    #[test]
    fn c5_adjacent_edges_are_p5_adjacent() {
        assert!(pn_adjacent(&cycle(5), Edge::new(0, 1), Edge::new(1, 2), 5).unwrap());
    }

    #[test]
    fn star_edges_are_never_p4_adjacent() {
        let g = claw();
        let e = g.edges();
        for i in 0..3 {
            for j in i + 1..3 {
                assert!(!pn_adjacent(&g, e[i], e[j], 4).unwrap());
            }
        }
    }

    #[test]
    fn invalid_edges_are_rejected() {
        let g = path(3);
        assert_eq!(
            pn_adjacent(&g, Edge::new(0, 2), Edge::new(0, 1), 4),
            Err(GraphError::InvalidEdge(Edge::new(0, 2)))
        );
        assert!(matches!(
            pn_adjacent(&g, Edge::new(0, 1), Edge::new(0, 1), 4),
            Err(GraphError::SameEdge(..))
        ));
        assert_eq!(
            edge_in_pn(&g, Edge::new(0, 2), 4),
            Err(GraphError::InvalidEdge(Edge::new(0, 2)))
        );
    }

    #[test]
    fn cycle_is_its_own_image() {
        let h = hl_step(&cycle(4), 4);
        assert!(is_isomorphic(&h.graph, &cycle(4)).unwrap());
        assert_eq!(h.provenance.len(), 4);
    }

    #[test]
    fn claw_image_is_edgeless() {
        let h = hl_step(&claw(), 4);
        assert_eq!(h.graph.order(), 3);
        assert_eq!(h.graph.size(), 0);
        assert!(hl_step(&Graph::edgeless(3), 4).graph.is_empty());
        assert!(hl_step(&Graph::default(), 4).graph.is_empty());
    }

    #[test]
    fn every_cycle_edge_lies_on_a_pn() {
        for n in 4..8 {
            let g = cycle(n);
            for e in g.edges() {
                assert!(edge_in_pn(&g, e, n).unwrap());
            }
        }
        let g = claw();
        for e in g.edges() {
            assert!(!edge_in_pn(&g, e, 4).unwrap());
        }
    }

    #[test]
    fn p4_terminates_in_three_steps() {
        let t = hl_iterate(&path(4), 4, 30, 512);
        assert_eq!(t.stop, StopReason::Empty);
        assert_eq!(t.orders(), vec![4, 3, 2, 0]);
        assert_eq!(t.steps[1].size, 2);
        assert_eq!(t.steps[2].size, 0);
    }

    #[test]
    fn c5_is_a_fixed_point_immediately() {
        let t = hl_iterate(&cycle(5), 5, 30, 512);
        assert_eq!(t.stop, StopReason::FixedPoint);
        assert_eq!(t.steps.len(), 2);
    }

    #[test]
    fn iteration_cap() {
        let t = hl_iterate(&path(6), 4, 1, 512);
        assert_eq!(t.stop, StopReason::IterCap);
        assert_eq!(t.steps.len(), 2);
    }
}
