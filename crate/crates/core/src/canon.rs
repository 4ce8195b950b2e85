//! Canonical labeling by individualization and refinement.
//!
//! The ordered partition of the vertices is refined to an equitable one
//! (colour classes split by the multiset of neighbour colours), then the
//! first non-singleton cell is individualized vertex by vertex. Every leaf
//! of the resulting search tree is a relabeling; the canonical code is the
//! lexicographically smallest packed adjacency matrix among the leaves.
//! Branches are pruned with twin classes and with automorphisms discovered
//! from leaves that produce identical matrices.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::budget::Meter;
use crate::graph::Graph;

pub const DEFAULT_ORDER_CAP: usize = 24;
const DEFAULT_NODE_CAP: u64 = 2_000_000;
const MAX_STORED_AUTOMORPHISMS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum CanonError {
    #[error("graph of order {order} exceeds the canonicalization cap of {cap}")]
    OrderCap { order: usize, cap: usize },
    #[error("canonical labeling search exceeded {0} nodes")]
    Budget(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CanonLimits {
    pub max_order: usize,
    pub max_nodes: u64,
}

impl Default for CanonLimits {
    fn default() -> Self {
        CanonLimits {
            max_order: DEFAULT_ORDER_CAP,
            max_nodes: DEFAULT_NODE_CAP,
        }
    }
}

impl CanonLimits {
    pub fn with_max_order(max_order: usize) -> Self {
        CanonLimits {
            max_order,
            ..CanonLimits::default()
        }
    }
}

/// Order (u32, big endian) followed by the upper triangle of the canonical
/// adjacency matrix, row-major, packed most significant bit first.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }

    pub fn from_hex(s: &str) -> Option<Self> {
        let bytes = hex::decode(s).ok()?;
        (bytes.len() >= 4).then_some(CanonicalCode(bytes))
    }

    pub fn order(&self) -> usize {
        u32::from_be_bytes([self.0[0], self.0[1], self.0[2], self.0[3]]) as usize
    }

    /// Rebuilds the canonical representative.
    pub fn to_graph(&self) -> Graph {
        let n = self.order();
        let bits = &self.0[4..];
        let mut edges = Vec::new();
        let mut idx = 0usize;
        for i in 0..n {
            for j in i + 1..n {
                if bits[idx / 8] & (0x80 >> (idx % 8)) != 0 {
                    edges.push((i, j));
                }
                idx += 1;
            }
        }
        Graph::from_edges(n, edges).expect("canonical code encodes a simple graph")
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", self.to_hex())
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl Serialize for CanonicalCode {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for CanonicalCode {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        CanonicalCode::from_hex(&s).ok_or_else(|| serde::de::Error::custom("bad canonical code"))
    }
}

fn encode(g: &Graph, perm: &[usize]) -> Vec<u8> {
    let n = g.order();
    let mut inv = vec![0usize; n];
    for (v, &p) in perm.iter().enumerate() {
        inv[p] = v;
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let mut out = Vec::with_capacity(4 + nbits.div_ceil(8));
    out.extend_from_slice(&(n as u32).to_be_bytes());
    out.resize(4 + nbits.div_ceil(8), 0);
    let mut idx = 0usize;
    for i in 0..n {
        let u = inv[i];
        for j in i + 1..n {
            if g.has_edge(u, inv[j]) {
                out[4 + idx / 8] |= 0x80 >> (idx % 8);
            }
            idx += 1;
        }
    }
    out
}

fn rerank<K: Ord>(keys: Vec<(K, usize)>, colors: &mut [usize]) -> usize {
    let mut keys = keys;
    keys.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    let mut rank = 0;
    for i in 0..keys.len() {
        if i > 0 && keys[i].0 != keys[i - 1].0 {
            rank += 1;
        }
        colors[keys[i].1] = rank;
    }
    if keys.is_empty() {
        0
    } else {
        rank + 1
    }
}

/// Refines `colors` (dense ranks) to the coarsest equitable refinement.
fn refine(g: &Graph, colors: &mut [usize]) -> usize {
    let n = colors.len();
    let mut cells = {
        let mut seen: Vec<usize> = colors.to_vec();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    };
    loop {
        let keys: Vec<((usize, Vec<usize>), usize)> = (0..n)
            .map(|v| {
                let mut nc: Vec<usize> = g.neighbors(v).iter().map(|&w| colors[w]).collect();
                nc.sort_unstable();
                ((colors[v], nc), v)
            })
            .collect();
        let next = rerank(keys, colors);
        if next == cells {
            return cells;
        }
        cells = next;
    }
}

fn individualize(colors: &[usize], v: usize) -> Vec<usize> {
    let mut out = colors.to_vec();
    let keys = (0..colors.len())
        .map(|w| ((colors[w], w != v), w))
        .collect();
    rerank(keys, &mut out);
    out
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut c = x;
        while self.0[c] != r {
            let next = self.0[c];
            self.0[c] = r;
            c = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Vertices with equal open or closed neighbourhoods, closed transitively.
/// Any two vertices in one class are exchanged by an automorphism that fixes
/// every other vertex.
fn twin_classes(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut uf = UnionFind::new(n);
    let mut open: Vec<(Vec<usize>, usize)> = (0..n).map(|v| (g.neighbors(v).to_vec(), v)).collect();
    let mut closed: Vec<(Vec<usize>, usize)> = (0..n)
        .map(|v| {
            let mut c = g.neighbors(v).to_vec();
            c.push(v);
            c.sort_unstable();
            (c, v)
        })
        .collect();
    for list in [&mut open, &mut closed] {
        list.sort_unstable();
        for w in list.windows(2) {
            if w[0].0 == w[1].0 {
                uf.union(w[0].1, w[1].1);
            }
        }
    }
    (0..n).map(|v| uf.find(v)).collect()
}

struct Leaf {
    code: Vec<u8>,
    perm: Vec<usize>,
}

struct Search<'a> {
    g: &'a Graph,
    twins: Vec<usize>,
    first: Option<Leaf>,
    best: Option<Leaf>,
    autos: Vec<Vec<usize>>,
    meter: Meter,
}

impl Search<'_> {
    fn record_automorphism(&mut self, from: &[usize], to: &[usize]) {
        if self.autos.len() >= MAX_STORED_AUTOMORPHISMS {
            return;
        }
        let n = from.len();
        let mut inv_from = vec![0; n];
        for (v, &p) in from.iter().enumerate() {
            inv_from[p] = v;
        }
        let sigma: Vec<usize> = (0..n).map(|v| inv_from[to[v]]).collect();
        if sigma.iter().enumerate().all(|(v, &s)| v == s) {
            return;
        }
        debug_assert!(self
            .g
            .edges()
            .iter()
            .all(|e| self.g.has_edge(sigma[e.lo()], sigma[e.hi()])));
        self.autos.push(sigma);
    }

    fn leaf(&mut self, colors: &[usize]) {
        let perm = colors.to_vec();
        let code = encode(self.g, &perm);
        let Some(first) = &self.first else {
            self.first = Some(Leaf {
                code: code.clone(),
                perm: perm.clone(),
            });
            self.best = Some(Leaf { code, perm });
            return;
        };
        if code == first.code {
            let fp = first.perm.clone();
            self.record_automorphism(&fp, &perm);
        }
        let best = self.best.as_ref().expect("best set with first");
        match code.cmp(&best.code) {
            std::cmp::Ordering::Less => self.best = Some(Leaf { code, perm }),
            std::cmp::Ordering::Equal => {
                let bp = best.perm.clone();
                self.record_automorphism(&bp, &perm);
            }
            std::cmp::Ordering::Greater => {}
        }
    }

    fn same_orbit(&self, prefix: &[usize], a: usize, b: usize) -> bool {
        let n = self.g.order();
        let mut uf = UnionFind::new(n);
        for sigma in &self.autos {
            if prefix.iter().all(|&p| sigma[p] == p) {
                for v in 0..n {
                    uf.union(v, sigma[v]);
                }
            }
        }
        uf.find(a) == uf.find(b)
    }

    fn descend(&mut self, colors: Vec<usize>, cells: usize, prefix: &mut Vec<usize>) -> Result<(), CanonError> {
        self.meter
            .tick()
            .map_err(|e| CanonError::Budget(e.0))?;
        let n = colors.len();
        if cells == n {
            self.leaf(&colors);
            return Ok(());
        }
        let mut counts = vec![0usize; cells];
        for &c in &colors {
            counts[c] += 1;
        }
        let target = counts.iter().position(|&c| c > 1).expect("non-discrete partition");
        let cell: Vec<usize> = (0..n).filter(|&v| colors[v] == target).collect();

        let mut explored: Vec<usize> = Vec::new();
        let mut twin_seen: Vec<usize> = Vec::new();
        for &v in &cell {
            if twin_seen.contains(&self.twins[v]) {
                continue;
            }
            twin_seen.push(self.twins[v]);
            if explored.iter().any(|&u| self.same_orbit(prefix, u, v)) {
                continue;
            }
            let mut child = individualize(&colors, v);
            let child_cells = refine(self.g, &mut child);
            prefix.push(v);
            self.descend(child, child_cells, prefix)?;
            prefix.pop();
            explored.push(v);
        }
        Ok(())
    }
}

/// Canonical code together with the labeling (old id -> canonical id).
pub fn canonical_labeling(g: &Graph, limits: CanonLimits) -> Result<(CanonicalCode, Vec<usize>), CanonError> {
    if g.order() > limits.max_order {
        return Err(CanonError::OrderCap {
            order: g.order(),
            cap: limits.max_order,
        });
    }
    if g.order() == 0 {
        return Ok((CanonicalCode(encode(g, &[])), Vec::new()));
    }
    let mut colors = vec![0usize; g.order()];
    let cells = refine(g, &mut colors);
    let mut search = Search {
        g,
        twins: twin_classes(g),
        first: None,
        best: None,
        autos: Vec::new(),
        meter: Meter::new(limits.max_nodes),
    };
    search.descend(colors, cells, &mut Vec::new())?;
    let best = search.best.expect("search reaches at least one leaf");
    Ok((CanonicalCode(best.code), best.perm))
}

pub fn canonical_code(g: &Graph) -> Result<CanonicalCode, CanonError> {
    canonical_code_with(g, CanonLimits::default())
}

pub fn canonical_code_with(g: &Graph, limits: CanonLimits) -> Result<CanonicalCode, CanonError> {
    canonical_labeling(g, limits).map(|(code, _)| code)
}

/// Canonical code and the graph relabeled into canonical form.
pub fn canonical_form(g: &Graph, limits: CanonLimits) -> Result<(CanonicalCode, Graph), CanonError> {
    let (code, perm) = canonical_labeling(g, limits)?;
    let relabeled = g.relabel(&perm);
    Ok((code, relabeled))
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> Result<bool, CanonError> {
    is_isomorphic_with(a, b, CanonLimits::default())
}

pub fn is_isomorphic_with(a: &Graph, b: &Graph, limits: CanonLimits) -> Result<bool, CanonError> {
    for g in [a, b] {
        if g.order() > limits.max_order {
            return Err(CanonError::OrderCap {
                order: g.order(),
                cap: limits.max_order,
            });
        }
    }
    if a.order() != b.order() || a.size() != b.size() {
        return Ok(false);
    }
    let (mut da, mut db) = (a.degrees(), b.degrees());
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return Ok(false);
    }
    Ok(canonical_code_with(a, limits)? == canonical_code_with(b, limits)?)
}
