//! Cycle statistics: blocks, bridges, circumference, girth, and bounded
//! enumeration of simple cycles.

use std::collections::VecDeque;

use thiserror::Error;

use crate::budget::{Exhausted, Meter};
use crate::graph::{Edge, Graph};

pub const DEFAULT_CYCLE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("longest-cycle search exceeded its budget of {0} nodes")]
pub struct CycleBudgetError(pub u64);

/// Biconnected components as sorted vertex sets (bridges are 2-vertex blocks).
/// Isolated vertices belong to no block.
pub fn blocks(g: &Graph) -> Vec<Vec<usize>> {
    struct State<'a> {
        g: &'a Graph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<Edge>,
        out: Vec<Vec<usize>>,
    }

    fn visit(st: &mut State<'_>, u: usize, parent: Option<usize>) {
        st.time += 1;
        st.disc[u] = st.time;
        st.low[u] = st.time;
        for i in 0..st.g.degree(u) {
            let w = st.g.neighbors(u)[i];
            if st.disc[w] == 0 {
                st.stack.push(Edge::new(u, w));
                visit(st, w, Some(u));
                st.low[u] = st.low[u].min(st.low[w]);
                if st.low[w] >= st.disc[u] {
                    let mut verts = Vec::new();
                    while let Some(e) = st.stack.pop() {
                        verts.push(e.lo());
                        verts.push(e.hi());
                        if e == Edge::new(u, w) {
                            break;
                        }
                    }
                    verts.sort_unstable();
                    verts.dedup();
                    st.out.push(verts);
                }
            } else if Some(w) != parent && st.disc[w] < st.disc[u] {
                st.stack.push(Edge::new(u, w));
                st.low[u] = st.low[u].min(st.disc[w]);
            }
        }
    }

    let mut st = State {
        g,
        disc: vec![0; g.order()],
        low: vec![0; g.order()],
        time: 0,
        stack: Vec::new(),
        out: Vec::new(),
    };
    for v in 0..g.order() {
        if st.disc[v] == 0 && g.degree(v) > 0 {
            visit(&mut st, v, None);
        }
    }
    st.out.sort();
    st.out
}

pub fn bridges(g: &Graph) -> Vec<Edge> {
    let mut out: Vec<Edge> = blocks(g)
        .into_iter()
        .filter(|b| b.len() == 2)
        .map(|b| Edge::new(b[0], b[1]))
        .collect();
    out.sort_unstable();
    out
}

/// `true` for every vertex lying on at least one cycle.
pub fn vertices_on_cycles(g: &Graph) -> Vec<bool> {
    let mut on = vec![false; g.order()];
    for b in blocks(g) {
        if b.len() >= 3 {
            for v in b {
                on[v] = true;
            }
        }
    }
    on
}

pub fn has_cycle(g: &Graph) -> bool {
    // A forest has |E| = |V| - #components.
    g.size() + g.components().len() > g.order()
}

/// Shortest cycle length, 0 for forests.
pub fn girth(g: &Graph) -> usize {
    let n = g.order();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for s in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[s] = 0;
        parent[s] = usize::MAX;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if 2 * dist[u] + 1 >= best {
                break;
            }
            for &w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    best = best.min(dist[u] + dist[w] + 1);
                }
            }
        }
    }
    if best == usize::MAX {
        0
    } else {
        best
    }
}

/// Best cycle found by [`longest_cycle`]; `complete` is false when the
/// budget ran out before the search proved optimality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LongestCycle {
    pub cycle: Vec<usize>,
    pub complete: bool,
}

impl LongestCycle {
    pub fn len(&self) -> usize {
        self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycle.is_empty()
    }
}

struct LongestSearch<'a> {
    h: &'a Graph,
    start: usize,
    on_path: Vec<bool>,
    path: Vec<usize>,
    free_above: usize,
    best: Vec<usize>,
}

impl LongestSearch<'_> {
    fn dfs(&mut self, meter: &mut Meter) -> Result<(), Exhausted> {
        meter.tick()?;
        let u = *self.path.last().expect("path starts at the root");
        if self.path.len() >= 3 && self.h.has_edge(u, self.start) && self.path.len() > self.best.len() {
            self.best = self.path.clone();
        }
        if self.path.len() + self.free_above <= self.best.len() {
            return Ok(());
        }
        for i in 0..self.h.degree(u) {
            let w = self.h.neighbors(u)[i];
            if w <= self.start || self.on_path[w] {
                continue;
            }
            self.on_path[w] = true;
            self.path.push(w);
            self.free_above -= 1;
            let r = self.dfs(meter);
            self.free_above += 1;
            self.path.pop();
            self.on_path[w] = false;
            r?;
        }
        Ok(())
    }
}

fn longest_in_block(h: &Graph, meter: &mut Meter) -> (Vec<usize>, bool) {
    let k = h.order();
    if h.is_cycle_graph() {
        return (h.unique_cycle().unwrap_or_default(), true);
    }
    let mut search = LongestSearch {
        h,
        start: 0,
        on_path: vec![false; k],
        path: Vec::new(),
        free_above: 0,
        best: Vec::new(),
    };
    for s in 0..k {
        if search.best.len() >= k - s {
            break;
        }
        search.start = s;
        search.path = vec![s];
        search.on_path.iter_mut().for_each(|x| *x = false);
        search.on_path[s] = true;
        search.free_above = k - s - 1;
        if search.dfs(meter).is_err() {
            return (search.best, false);
        }
    }
    (search.best, true)
}

/// Longest cycle, searched block by block under `meter`.
pub fn longest_cycle(g: &Graph, meter: &mut Meter) -> LongestCycle {
    let mut best: Vec<usize> = Vec::new();
    let mut complete = true;
    let mut bl = blocks(g);
    bl.retain(|b| b.len() >= 3);
    // Large blocks first: they bound everything after them.
    bl.sort_by_key(|b| std::cmp::Reverse(b.len()));
    for b in bl {
        if b.len() <= best.len() {
            break;
        }
        let h = g.induced(&b);
        let (cycle, done) = longest_in_block(&h, meter);
        if cycle.len() > best.len() {
            best = cycle.into_iter().map(|v| b[v]).collect();
        }
        if !done {
            complete = false;
            break;
        }
    }
    LongestCycle {
        cycle: best,
        complete,
    }
}

/// Length of the longest cycle, 0 for forests.
pub fn circumference(g: &Graph) -> Result<usize, CycleBudgetError> {
    circumference_with(g, DEFAULT_CYCLE_BUDGET)
}

pub fn circumference_with(g: &Graph, nodes: u64) -> Result<usize, CycleBudgetError> {
    let found = longest_cycle(g, &mut Meter::new(nodes));
    if found.complete {
        Ok(found.len())
    } else {
        Err(CycleBudgetError(nodes))
    }
}

/// Visits every simple cycle of length in `min_len..=max_len` exactly once,
/// as a vertex sequence starting at its minimum vertex with the second
/// vertex smaller than the last. `visit` returns `true` to stop early.
/// Returns whether the walk was stopped by `visit`.
pub fn for_each_cycle<F>(
    g: &Graph,
    min_len: usize,
    max_len: usize,
    meter: &mut Meter,
    mut visit: F,
) -> Result<bool, Exhausted>
where
    F: FnMut(&[usize]) -> bool,
{
    struct Walk<'a, F> {
        h: &'a Graph,
        map: &'a [usize],
        start: usize,
        min_len: usize,
        max_len: usize,
        on_path: Vec<bool>,
        path: Vec<usize>,
        visit: &'a mut F,
    }

    impl<F: FnMut(&[usize]) -> bool> Walk<'_, F> {
        fn dfs(&mut self, meter: &mut Meter) -> Result<bool, Exhausted> {
            meter.tick()?;
            let u = *self.path.last().expect("non-empty path");
            let len = self.path.len();
            if len >= self.min_len.max(3) && self.path[1] < u && self.h.has_edge(u, self.start) {
                let mapped: Vec<usize> = self.path.iter().map(|&v| self.map[v]).collect();
                if (self.visit)(&mapped) {
                    return Ok(true);
                }
            }
            if len == self.max_len {
                return Ok(false);
            }
            for i in 0..self.h.degree(u) {
                let w = self.h.neighbors(u)[i];
                if w <= self.start || self.on_path[w] {
                    continue;
                }
                self.on_path[w] = true;
                self.path.push(w);
                let stop = self.dfs(meter);
                self.path.pop();
                self.on_path[w] = false;
                if stop? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }

    for b in blocks(g) {
        if b.len() < 3.max(min_len) {
            continue;
        }
        let h = g.induced(&b);
        for s in 0..h.order() {
            let mut walk = Walk {
                h: &h,
                map: &b,
                start: s,
                min_len,
                max_len,
                on_path: vec![false; h.order()],
                path: vec![s],
                visit: &mut visit,
            };
            walk.on_path[s] = true;
            if walk.dfs(meter)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Checks that `cycle` is a simple cycle of `g` (length ≥ 3).
pub fn is_cycle_in(g: &Graph, cycle: &[usize]) -> bool {
    let mut seen = vec![false; g.order()];
    cycle.len() >= 3
        && cycle.iter().all(|&v| {
            let fresh = v < g.order() && !seen[v];
            if fresh {
                seen[v] = true;
            }
            fresh
        })
        && (0..cycle.len()).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % cycle.len()]))
}
