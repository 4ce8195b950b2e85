use std::collections::HashSet;

use crate::canon::{canonical_form, CanonLimits, CanonicalCode};
use crate::graph::{Edge, Graph};

use super::LabError;

pub const MAX_ENUMERATION_ORDER: usize = 9;

fn add_edge(g: &Graph, e: Edge) -> Graph {
    let mut edges: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.lo(), e.hi())).collect();
    edges.push((e.lo(), e.hi()));
    Graph::from_edges(g.order(), edges).expect("new edge is absent")
}

fn add_pendant(g: &Graph, anchor: usize) -> Graph {
    let mut edges: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.lo(), e.hi())).collect();
    edges.push((anchor, g.order()));
    Graph::from_edges(g.order() + 1, edges).expect("pendant vertex is new")
}

/// One representative per isomorphism class of connected graphs with at
/// most `v_max` vertices and `e_max` edges, in canonical form, ordered by
/// (order, size, canonical code).
///
/// Generation is by edge count: every connected graph with `e + 1` edges
/// arises from one with `e` edges by adding an edge between existing
/// vertices (delete a non-bridge edge) or a new pendant vertex (delete a
/// leaf). Children are canonicalized and duplicates rejected by code.
pub fn enumerate_connected_graphs(v_max: usize, e_max: usize) -> Result<Vec<Graph>, LabError> {
    if v_max > MAX_ENUMERATION_ORDER {
        return Err(LabError::EnumerationCap {
            requested: v_max,
            cap: MAX_ENUMERATION_ORDER,
        });
    }
    if v_max == 0 {
        return Ok(Vec::new());
    }
    let limits = CanonLimits::default();
    let mut all: Vec<(CanonicalCode, Graph)> = Vec::new();
    let k1 = canonical_form(&Graph::edgeless(1), limits)?;
    let mut level = vec![k1];
    for _ in 0..=e_max {
        all.extend(level.iter().cloned());
        if level.first().is_none_or(|(_, g)| g.size() >= e_max) {
            break;
        }
        let mut seen: HashSet<CanonicalCode> = HashSet::new();
        let mut next = Vec::new();
        for (_, g) in &level {
            let mut children = Vec::new();
            for u in 0..g.order() {
                for v in u + 1..g.order() {
                    if !g.has_edge(u, v) {
                        children.push(add_edge(g, Edge::new(u, v)));
                    }
                }
                if g.order() < v_max {
                    children.push(add_pendant(g, u));
                }
            }
            for child in children {
                let (code, canon) = canonical_form(&child, limits)?;
                if seen.insert(code.clone()) {
                    next.push((code, canon));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort_by(|a, b| a.0.cmp(&b.0));
        level = next;
    }
    all.sort_by(|a, b| (a.1.order(), a.1.size(), &a.0).cmp(&(b.1.order(), b.1.size(), &b.0)));
    Ok(all.into_iter().map(|(_, g)| g).collect())
}

/// Disjoint unions `a ∪ b` of two listed graphs (each with at least one
/// edge) of combined order at most `v_max`, one per isomorphism class.
pub fn disjoint_unions(graphs: &[Graph], v_max: usize) -> Result<Vec<Graph>, LabError> {
    let pool: Vec<&Graph> = graphs.iter().filter(|g| g.size() > 0).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (i, a) in pool.iter().enumerate() {
        for b in &pool[i..] {
            if a.order() + b.order() > v_max {
                continue;
            }
            let (code, canon) = canonical_form(&a.disjoint_union(b), CanonLimits::default())?;
            if seen.insert(code.clone()) {
                out.push((code, canon));
            }
        }
    }
    out.sort_by(|a, b| (a.1.order(), a.1.size(), &a.0).cmp(&(b.1.order(), b.1.size(), &b.0)));
    Ok(out.into_iter().map(|(_, g)| g).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_code;

    /// Brute force over every labeled edge subset on exactly `v` vertices.
    fn brute_force_connected(v: usize) -> HashSet<CanonicalCode> {
        let pairs: Vec<(usize, usize)> = (0..v).flat_map(|i| (i + 1..v).map(move |j| (i, j))).collect();
        let mut out = HashSet::new();
        for mask in 0u32..(1 << pairs.len()) {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &p)| p);
            let g = Graph::from_edges(v, edges).unwrap();
            if g.is_connected() {
                out.insert(canonical_code(&g).unwrap());
            }
        }
        out
    }

    #[test]
    fn small_orders_match_brute_force() {
        let graphs = enumerate_connected_graphs(5, 10).unwrap();
        for v in 1..=5 {
            let ours: HashSet<CanonicalCode> = graphs
                .iter()
                .filter(|g| g.order() == v)
                .map(|g| canonical_code(g).unwrap())
                .collect();
            assert_eq!(ours, brute_force_connected(v), "order {v}");
        }
    }

    #[test]
    fn known_counts() {
        let three = enumerate_connected_graphs(3, 3).unwrap();
        assert_eq!(three.len(), 4);
        assert_eq!(three.iter().filter(|g| g.order() == 3).count(), 2);
        let four = enumerate_connected_graphs(4, 6).unwrap();
        assert_eq!(four.iter().filter(|g| g.order() == 4).count(), 6);
        assert_eq!(enumerate_connected_graphs(1, 0).unwrap(), vec![Graph::edgeless(1)]);
        // OEIS A001349: 1, 1, 2, 6, 21, 112, 853.
        let seven = enumerate_connected_graphs(7, 21).unwrap();
        let per_order: Vec<usize> = (1..=7).map(|v| seven.iter().filter(|g| g.order() == v).count()).collect();
        assert_eq!(per_order, vec![1, 1, 2, 6, 21, 112, 853]);
    }

    #[test]
    fn edge_bound_is_respected() {
        let trees = enumerate_connected_graphs(6, 5).unwrap();
        assert!(trees.iter().all(|g| g.size() <= 5));
        // Trees on 6 vertices: 6.
        assert_eq!(trees.iter().filter(|g| g.order() == 6).count(), 6);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            enumerate_connected_graphs(10, 3),
            Err(LabError::EnumerationCap { .. })
        ));
    }

    #[test]
    fn unions_skip_edgeless_parts() {
        let base = enumerate_connected_graphs(3, 3).unwrap();
        let unions = disjoint_unions(&base, 4).unwrap();
        // 2K_2 only: K_2 + P_3 and beyond exceed order 4.
        assert_eq!(unions.len(), 1);
        assert_eq!((unions[0].order(), unions[0].size()), (4, 2));
    }
}
