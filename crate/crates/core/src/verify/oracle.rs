//! Slow reference implementations used only to cross-check the fast code
//! paths. Nothing here shares search code with the rest of the crate.

use std::collections::HashSet;

use crate::graph::{Edge, Graph};

/// Every simple path with exactly `order` vertices, as a vertex sequence,
/// once per direction.
pub fn all_paths(g: &Graph, order: usize) -> Vec<Vec<usize>> {
    fn extend(g: &Graph, order: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if path.len() == order {
            out.push(path.clone());
            return;
        }
        let last = *path.last().expect("non-empty");
        for w in 0..g.order() {
            if g.has_edge(last, w) && !path.contains(&w) {
                path.push(w);
                extend(g, order, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    if order == 0 {
        return out;
    }
    for s in 0..g.order() {
        extend(g, order, &mut vec![s], &mut out);
    }
    out
}

/// Unordered pairs of distinct edges that appear consecutively on some
/// simple path with `n` vertices, smaller edge first.
pub fn pn_adjacent_pairs(g: &Graph, n: usize) -> HashSet<(Edge, Edge)> {
    let mut out = HashSet::new();
    for p in all_paths(g, n) {
        for w in p.windows(3) {
            let (a, b) = (Edge::new(w[0], w[1]), Edge::new(w[1], w[2]));
            out.insert((a.min(b), a.max(b)));
        }
    }
    out
}

/// Edges lying on some simple path with `n` vertices.
pub fn edges_on_pn(g: &Graph, n: usize) -> HashSet<Edge> {
    all_paths(g, n)
        .iter()
        .flat_map(|p| p.windows(2).map(|w| Edge::new(w[0], w[1])).collect::<Vec<_>>())
        .collect()
}

/// The P_n-line graph built straight from the definition.
pub fn naive_hl(g: &Graph, n: usize) -> Graph {
    let edges = g.edges();
    let pairs = pn_adjacent_pairs(g, n);
    let mut out = Vec::new();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            if pairs.contains(&(edges[i], edges[j])) {
                out.push((i, j));
            }
        }
    }
    Graph::from_edges(edges.len(), out).expect("distinct pairs")
}

/// Tries every bijection. Practical up to about nine vertices.
pub fn brute_force_isomorphic(a: &Graph, b: &Graph) -> bool {
    fn place(a: &Graph, b: &Graph, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let v = map.len();
        if v == a.order() {
            return true;
        }
        for w in 0..b.order() {
            if used[w] || a.degree(v) != b.degree(w) {
                continue;
            }
            if (0..v).all(|u| a.has_edge(u, v) == b.has_edge(map[u], w)) {
                used[w] = true;
                map.push(w);
                if place(a, b, map, used) {
                    return true;
                }
                map.pop();
                used[w] = false;
            }
        }
        false
    }
    if a.order() != b.order() || a.size() != b.size() {
        return false;
    }
    let mut da = a.degrees();
    let mut db = b.degrees();
    da.sort_unstable();
    db.sort_unstable();
    da == db && place(a, b, &mut Vec::new(), &mut vec![false; b.order()])
}

/// Length of the longest cycle, 0 for forests, by closing every simple path.
pub fn naive_circumference(g: &Graph) -> usize {
    cycle_lengths(g).into_iter().max().unwrap_or(0)
}

/// Length of the shortest cycle, 0 for forests.
pub fn naive_girth(g: &Graph) -> usize {
    cycle_lengths(g).into_iter().min().unwrap_or(0)
}

fn cycle_lengths(g: &Graph) -> Vec<usize> {
    let mut out = Vec::new();
    for k in 3..=g.order() {
        if all_paths(g, k).iter().any(|p| g.has_edge(p[0], p[k - 1])) {
            out.push(k);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_cycle, make_path, make_spider};

    #[test]
    fn path_counts() {
        // P_4 has one 4-vertex path, seen from both ends.
        assert_eq!(all_paths(&make_path(4).unwrap(), 4).len(), 2);
        assert_eq!(all_paths(&make_cycle(5).unwrap(), 5).len(), 10);
    }

    #[test]
    fn claw_image_is_edgeless() {
        let h = naive_hl(&make_spider(1, 1, 1).unwrap(), 4);
        assert_eq!((h.order(), h.size()), (3, 0));
    }

    #[test]
    fn brute_force_iso() {
        let c4 = make_cycle(4).unwrap();
        let relabeled = c4.relabel(&[2, 0, 3, 1]);
        assert!(brute_force_isomorphic(&c4, &relabeled));
        assert!(!brute_force_isomorphic(&c4, &make_path(4).unwrap()));
    }

    #[test]
    fn cycle_lengths_of_small_graphs() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(naive_circumference(&g), 5);
        assert_eq!(naive_girth(&g), 3);
        assert_eq!(naive_girth(&make_path(5).unwrap()), 0);
    }
}
