//! Finite simple undirected graphs with dense `0..order` vertex ids.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("edge {0} is not in the graph")]
    InvalidEdge(Edge),
    #[error("edges {0} and {1} must be distinct")]
    SameEdge(Edge, Edge),
}

/// Unordered vertex pair stored as `(min, max)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "[usize; 2]", from = "[usize; 2]")]
pub struct Edge(usize, usize);

impl Edge {
    /// Normalizes the endpoint order. Callers are responsible for `a != b`.
    pub fn new(a: usize, b: usize) -> Self {
        debug_assert_ne!(a, b, "edge endpoints must differ");
        if a < b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn lo(self) -> usize {
        self.0
    }

    pub fn hi(self) -> usize {
        self.1
    }

    pub fn has(self, v: usize) -> bool {
        self.0 == v || self.1 == v
    }

    pub fn other(self, v: usize) -> usize {
        if self.0 == v {
            self.1
        } else {
            self.0
        }
    }

    /// The endpoint shared with `other`, if exactly one is shared.
    pub fn shared_endpoint(self, other: Edge) -> Option<usize> {
        if self == other {
            return None;
        }
        if other.has(self.0) {
            Some(self.0)
        } else if other.has(self.1) {
            Some(self.1)
        } else {
            None
        }
    }
}

impl From<Edge> for [usize; 2] {
    fn from(e: Edge) -> Self {
        [e.0, e.1]
    }
}

impl From<[usize; 2]> for Edge {
    fn from(p: [usize; 2]) -> Self {
        Edge::new(p[0], p[1])
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// `order` isolated vertices.
    pub fn edgeless(order: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); order],
        }
    }

    pub fn from_edges<I>(order: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); order];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= order {
                    return Err(GraphError::VertexOutOfRange { vertex: w, order });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, nbrs) in adj.iter_mut().enumerate() {
            nbrs.sort_unstable();
            if let Some(w) = nbrs.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Graph { adj })
    }

    /// Builds from adjacency lists that are already symmetric and loop-free.
    pub(crate) fn from_adjacency_unchecked(mut adj: Vec<Vec<usize>>) -> Self {
        for nbrs in &mut adj {
            nbrs.sort_unstable();
            nbrs.dedup();
        }
        Graph { adj }
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && v < self.order() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.has_edge(e.lo(), e.hi())
    }

    /// All edges in lexicographic order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.size());
        for (u, nbrs) in self.adj.iter().enumerate() {
            for &v in nbrs {
                if u < v {
                    out.push(Edge(u, v));
                }
            }
        }
        out
    }

    pub fn check_edge(&self, e: Edge) -> Result<(), GraphError> {
        if self.contains_edge(e) {
            Ok(())
        } else {
            Err(GraphError::InvalidEdge(e))
        }
    }

    /// Applies `perm` (old id -> new id).
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.order());
        let mut adj = vec![Vec::new(); self.order()];
        for (u, nbrs) in self.adj.iter().enumerate() {
            adj[perm[u]] = nbrs.iter().map(|&v| perm[v]).collect();
        }
        Graph::from_adjacency_unchecked(adj)
    }

    /// Subgraph induced by `vertices`, relabeled in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.order()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter_map(|&w| (index[w] != usize::MAX).then_some(index[w]))
                    .collect()
            })
            .collect();
        Graph::from_adjacency_unchecked(adj)
    }

    /// Spanning subgraph with the listed edges removed.
    pub fn without_edges(&self, removed: &[Edge]) -> Graph {
        let mut adj = self.adj.clone();
        for e in removed {
            adj[e.lo()].retain(|&w| w != e.hi());
            adj[e.hi()].retain(|&w| w != e.lo());
        }
        Graph { adj }
    }

    /// Drops isolated vertices, keeping the relative order of the rest.
    pub fn without_isolated(&self) -> Graph {
        let keep: Vec<usize> = (0..self.order()).filter(|&v| self.degree(v) > 0).collect();
        if keep.len() == self.order() {
            return self.clone();
        }
        self.induced(&keep)
    }

    pub fn has_isolated(&self) -> bool {
        self.adj.iter().any(Vec::is_empty)
    }

    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.order();
        let mut adj = self.adj.clone();
        adj.extend(
            other
                .adj
                .iter()
                .map(|nbrs| nbrs.iter().map(|&v| v + shift).collect()),
        );
        Graph { adj }
    }

    /// Connected components ordered by minimum vertex id; each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for s in 0..self.order() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Component index per vertex, consistent with [`Graph::components`].
    pub fn component_ids(&self) -> Vec<usize> {
        let mut ids = vec![0; self.order()];
        for (i, comp) in self.components().iter().enumerate() {
            for &v in comp {
                ids[v] = i;
            }
        }
        ids
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    pub fn is_cycle_graph(&self) -> bool {
        self.order() >= 3 && self.adj.iter().all(|n| n.len() == 2) && self.is_connected()
    }

    pub fn is_unicyclic(&self) -> bool {
        self.is_connected() && self.size() == self.order()
    }

    /// The cycle of a connected unicyclic graph, starting at its minimum
    /// vertex and heading toward the smaller of its two cycle neighbors.
    pub fn unique_cycle(&self) -> Option<Vec<usize>> {
        if !self.is_unicyclic() {
            return None;
        }
        // Peel leaves until only the cycle remains.
        let mut deg = self.degrees();
        let mut alive = vec![true; self.order()];
        let mut stack: Vec<usize> = (0..self.order()).filter(|&v| deg[v] == 1).collect();
        while let Some(v) = stack.pop() {
            alive[v] = false;
            for &w in &self.adj[v] {
                if alive[w] {
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        stack.push(w);
                    }
                }
            }
        }
        let start = (0..self.order()).find(|&v| alive[v])?;
        let on_cycle = |v: usize| alive[v];
        let mut cycle = vec![start];
        let mut prev = start;
        let mut cur = self.adj[start].iter().copied().filter(|&w| on_cycle(w)).min()?;
        while cur != start {
            cycle.push(cur);
            let next = self.adj[cur]
                .iter()
                .copied()
                .find(|&w| on_cycle(w) && w != prev)?;
            prev = cur;
            cur = next;
        }
        Some(cycle)
    }
}

impl fmt::Display for Graph {
    /// Edge-list text: `order; u-v, u-v`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.order())?;
        for (i, e) in self.edges().iter().enumerate() {
            if i == 0 {
                write!(f, " {e}")?;
            } else {
                write!(f, ", {e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(m: usize) -> Graph {
        Graph::from_edges(m, (0..m).map(|i| (i, (i + 1) % m))).unwrap()
    }

    #[test]
    fn rejects_malformed_edges() {
        assert_eq!(
            Graph::from_edges(3, [(1, 1)]),
            Err(GraphError::SelfLoop(1))
        );
        assert_eq!(
            Graph::from_edges(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert!(matches!(
            Graph::from_edges(2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, order: 2 })
        ));
    }

    #[test]
    fn components_are_ordered() {
        let g = Graph::from_edges(4, [(1, 2), (2, 3), (1, 3)]).unwrap();
        assert_eq!(g.components(), vec![vec![0], vec![1, 2, 3]]);
        assert_eq!(cycle(5).components().len(), 1);
        assert!(Graph::default().components().is_empty());
    }

    #[test]
    fn cycle_graph_detection() {
        assert!(cycle(7).is_cycle_graph());
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert!(!p3.is_cycle_graph());
        let two_triangles = cycle(3).disjoint_union(&cycle(3));
        assert!(!two_triangles.is_cycle_graph());
    }

    #[test]
    fn unique_cycle_orientation() {
        let g = Graph::from_edges(5, [(0, 4), (4, 2), (2, 3), (3, 0), (1, 4)]).unwrap();
        assert_eq!(g.unique_cycle(), Some(vec![0, 3, 2, 4]));
        assert_eq!(cycle(5).unique_cycle(), Some(vec![0, 1, 2, 3, 4]));
        let claw = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(claw.unique_cycle(), None);
    }

    #[test]
    fn display_is_edge_list() {
        let g = Graph::from_edges(4, [(2, 3), (0, 1), (1, 2)]).unwrap();
        assert_eq!(g.to_string(), "4; 0-1, 1-2, 2-3");
        assert_eq!(Graph::edgeless(2).to_string(), "2;");
    }

    #[test]
    fn shared_endpoint() {
        assert_eq!(Edge::new(1, 0).shared_endpoint(Edge::new(1, 2)), Some(1));
        assert_eq!(Edge::new(0, 1).shared_endpoint(Edge::new(2, 3)), None);
        assert_eq!(Edge::new(0, 1).shared_endpoint(Edge::new(0, 1)), None);
    }
}
