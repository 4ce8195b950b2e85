//! Divergence-by-order certificates and their stand-alone re-verification.
//!
//! A certificate names a divergence theorem and carries vertex lists that
//! are enough to re-check the theorem's hypothesis on the iterate where it
//! was found. [`Certificate::verify`] only walks those lists against the
//! adjacency of that iterate; it shares no code with the searches.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{Edge, Graph};

/// A copy of `G(r, m)`: the cycle, the cycle vertex carrying the tail, and
/// the tail itself with `tail[0]` adjacent to `root`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailedCycle {
    pub cycle: Vec<usize>,
    pub root: usize,
    pub tail: Vec<usize>,
}

impl TailedCycle {
    pub fn m(&self) -> usize {
        self.cycle.len()
    }

    pub fn r(&self) -> usize {
        self.tail.len()
    }

    pub fn edge_set(&self) -> BTreeSet<Edge> {
        let mut out = BTreeSet::new();
        let m = self.cycle.len();
        for i in 0..m {
            out.insert(Edge::new(self.cycle[i], self.cycle[(i + 1) % m]));
        }
        if let Some(&first) = self.tail.first() {
            out.insert(Edge::new(self.root, first));
        }
        for w in self.tail.windows(2) {
            out.insert(Edge::new(w[0], w[1]));
        }
        out
    }

    fn check(&self, g: &Graph) -> Result<(), String> {
        check_cycle(g, &self.cycle)?;
        if !self.cycle.contains(&self.root) {
            return Err(format!("root {} is not on the cycle", self.root));
        }
        if self.tail.is_empty() {
            return Err("empty tail".into());
        }
        let mut used: BTreeSet<usize> = self.cycle.iter().copied().collect();
        check_hanging_path(g, self.root, &self.tail, &mut used)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CertificateKind {
    Key1,
    LongTail,
    Spider,
    TwinDelta,
}

impl fmt::Display for CertificateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CertificateKind::Key1 => "Key1",
            CertificateKind::LongTail => "LongTail",
            CertificateKind::Spider => "Spider",
            CertificateKind::TwinDelta => "TwinDelta",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Witness {
    /// A component with a cycle of length `m >= n` that is not itself a cycle.
    Key1 {
        component: usize,
        m: usize,
        component_vertices: Vec<usize>,
        cycle: Vec<usize>,
    },
    /// A `G(r, m)` subgraph with `m + r > n`.
    LongTail { m: usize, r: usize, copy: TailedCycle },
    /// A `CL(k, k, d)` subgraph with `d = n - k - 1`, `n <= 2k`, `k + 1 < n`.
    Spider {
        k: usize,
        d: usize,
        center: usize,
        legs: [Vec<usize>; 3],
    },
    /// Two different `G(r, m)` subgraphs with `m + r = n` in one component.
    TwinDelta {
        first: TailedCycle,
        second: TailedCycle,
        first_edges: Vec<Edge>,
        second_edges: Vec<Edge>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub witness: Witness,
    /// Index `k` of the iterate `HL^k` the witness refers to.
    pub found_at_iteration: usize,
}

impl Certificate {
    pub fn kind(&self) -> CertificateKind {
        match self.witness {
            Witness::Key1 { .. } => CertificateKind::Key1,
            Witness::LongTail { .. } => CertificateKind::LongTail,
            Witness::Spider { .. } => CertificateKind::Spider,
            Witness::TwinDelta { .. } => CertificateKind::TwinDelta,
        }
    }

    /// Re-checks the witness against `g`, the iterate it was found in.
    pub fn verify(&self, g: &Graph, n: usize) -> Result<(), String> {
        match &self.witness {
            Witness::Key1 {
                component,
                m,
                component_vertices,
                cycle,
            } => {
                check_component(g, component_vertices)?;
                let first = component_vertices.first().ok_or("empty component")?;
                let index = (0..g.order()).filter(|&v| is_component_minimum(g, v)).position(|v| v == *first);
                if index != Some(*component) {
                    return Err(format!("component index {component} does not match"));
                }
                check_cycle(g, cycle)?;
                if cycle.len() != *m || *m < n {
                    return Err(format!("cycle length {} with m = {m}, n = {n}", cycle.len()));
                }
                if !cycle.iter().all(|v| component_vertices.binary_search(v).is_ok()) {
                    return Err("cycle leaves the component".into());
                }
                let degree_two = component_vertices.iter().all(|&v| g.degree(v) == 2);
                if degree_two {
                    return Err("component is a cycle graph".into());
                }
                Ok(())
            }
            Witness::LongTail { m, r, copy } => {
                copy.check(g)?;
                if copy.m() != *m || copy.r() != *r {
                    return Err("recorded (m, r) disagree with the witness".into());
                }
                if m + r <= n {
                    return Err(format!("m + r = {} does not exceed n = {n}", m + r));
                }
                Ok(())
            }
            Witness::Spider { k, d, center, legs } => {
                if *k + 1 >= n || n > 2 * k || *k + *d + 1 != n || *d == 0 {
                    return Err(format!("(k, d) = ({k}, {d}) violates the spider conditions for n = {n}"));
                }
                if *center >= g.order() {
                    return Err("center out of range".into());
                }
                let want = [*k, *k, *d];
                let mut used = BTreeSet::from([*center]);
                for (leg, &len) in legs.iter().zip(&want) {
                    if leg.len() != len {
                        return Err(format!("leg of order {} where {len} was recorded", leg.len()));
                    }
                    check_hanging_path(g, *center, leg, &mut used)?;
                }
                Ok(())
            }
            Witness::TwinDelta {
                first,
                second,
                first_edges,
                second_edges,
            } => {
                for copy in [first, second] {
                    copy.check(g)?;
                    if copy.m() + copy.r() != n || copy.m() < 3 {
                        return Err(format!("copy G({}, {}) is not in the delta family", copy.r(), copy.m()));
                    }
                }
                let (a, b) = (first.edge_set(), second.edge_set());
                if a == b {
                    return Err("the two copies have equal edge sets".into());
                }
                if a.iter().copied().collect::<Vec<_>>() != *first_edges
                    || b.iter().copied().collect::<Vec<_>>() != *second_edges
                {
                    return Err("recorded edge sets disagree with the copies".into());
                }
                if !connected_in(g, first.root, second.root) {
                    return Err("copies lie in different components".into());
                }
                Ok(())
            }
        }
    }
}

fn check_cycle(g: &Graph, cycle: &[usize]) -> Result<(), String> {
    let distinct: BTreeSet<_> = cycle.iter().collect();
    if cycle.len() < 3 || distinct.len() != cycle.len() || cycle.iter().any(|&v| v >= g.order()) {
        return Err(format!("{cycle:?} is not a vertex-simple cycle"));
    }
    for i in 0..cycle.len() {
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        if !g.has_edge(a, b) {
            return Err(format!("cycle edge {a}-{b} missing"));
        }
    }
    Ok(())
}

/// `path` must be a simple path, disjoint from `used`, whose first vertex
/// is adjacent to `anchor`. Its vertices are added to `used`.
fn check_hanging_path(g: &Graph, anchor: usize, path: &[usize], used: &mut BTreeSet<usize>) -> Result<(), String> {
    let first = *path.first().ok_or("empty path")?;
    if !g.has_edge(anchor, first) {
        return Err(format!("{anchor}-{first} missing"));
    }
    for w in path.windows(2) {
        if !g.has_edge(w[0], w[1]) {
            return Err(format!("path edge {}-{} missing", w[0], w[1]));
        }
    }
    for &v in path {
        if v >= g.order() || !used.insert(v) {
            return Err(format!("vertex {v} reused or out of range"));
        }
    }
    Ok(())
}

fn reach(g: &Graph, from: usize) -> Vec<bool> {
    let mut seen = vec![false; g.order()];
    let mut stack = vec![from];
    seen[from] = true;
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

fn is_component_minimum(g: &Graph, v: usize) -> bool {
    reach(g, v).iter().position(|&s| s) == Some(v)
}

fn connected_in(g: &Graph, a: usize, b: usize) -> bool {
    a < g.order() && b < g.order() && reach(g, a)[b]
}

fn check_component(g: &Graph, vertices: &[usize]) -> Result<(), String> {
    let first = *vertices.first().ok_or("empty component")?;
    if first >= g.order() {
        return Err("component vertex out of range".into());
    }
    let expected: Vec<usize> = reach(g, first)
        .iter()
        .enumerate()
        .filter_map(|(v, &s)| s.then_some(v))
        .collect();
    if expected != vertices {
        return Err("listed vertices are not a connected component".into());
    }
    Ok(())
}
