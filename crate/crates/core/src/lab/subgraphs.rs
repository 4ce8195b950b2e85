use std::collections::{HashSet, VecDeque};

use crate::canon::{canonical_form, CanonLimits, CanonicalCode};
use crate::graph::{Edge, Graph};

use super::LabError;

/// Largest edge count accepted by [`proper_subgraphs`]; the class count
/// grows roughly like the number of graphs with that many edges.
pub const MAX_SUBGRAPH_EDGES: usize = 24;

/// Isomorphism classes of proper subgraphs of `g`, without isolated
/// vertices, in canonical form, ordered by (size, order, code). Includes
/// the empty graph (when `g` has an edge) and excludes `g` itself.
///
/// Vertex deletions are not enumerated separately: dropping isolated
/// vertices after every edge deletion already yields every class.
pub fn proper_subgraphs(g: &Graph) -> Result<Vec<Graph>, LabError> {
    if g.size() > MAX_SUBGRAPH_EDGES {
        return Err(LabError::SubgraphCap {
            edges: g.size(),
            cap: MAX_SUBGRAPH_EDGES,
        });
    }
    let limits = CanonLimits::default();
    let root = canonical_form(&g.without_isolated(), limits)?;
    let mut seen: HashSet<CanonicalCode> = HashSet::from([root.0.clone()]);
    let mut out = Vec::new();
    let mut queue = VecDeque::from([root.1]);
    while let Some(h) = queue.pop_front() {
        let edges = h.edges();
        for e in &edges {
            let child = h.without_edges(std::slice::from_ref::<Edge>(e)).without_isolated();
            let (code, canon) = canonical_form(&child, limits)?;
            if seen.insert(code.clone()) {
                out.push((code, canon.clone()));
                queue.push_back(canon);
            }
        }
    }
    out.sort_by(|a, b| (a.1.size(), a.1.order(), &a.0).cmp(&(b.1.size(), b.1.order(), &b.0)));
    Ok(out.into_iter().map(|(_, h)| h).collect())
}
