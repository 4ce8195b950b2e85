//! Depth-first simple-path primitives shared by the operator and the
//! certificate searches. `blocked` marks vertices a path may not use; the
//! functions restore it before returning.

use std::collections::HashSet;

use crate::budget::{Exhausted, Meter};
use crate::graph::Graph;

/// Visits every simple path with exactly `order` vertices that starts at
/// `start` and avoids `blocked`. `visit` returns `true` to stop.
pub fn for_each_path_from<F>(
    g: &Graph,
    start: usize,
    order: usize,
    blocked: &mut [bool],
    meter: &mut Meter,
    visit: &mut F,
) -> Result<bool, Exhausted>
where
    F: FnMut(&[usize], &mut [bool], &mut Meter) -> Result<bool, Exhausted>,
{
    fn walk<F>(
        g: &Graph,
        order: usize,
        path: &mut Vec<usize>,
        blocked: &mut [bool],
        meter: &mut Meter,
        visit: &mut F,
    ) -> Result<bool, Exhausted>
    where
        F: FnMut(&[usize], &mut [bool], &mut Meter) -> Result<bool, Exhausted>,
    {
        meter.tick()?;
        if path.len() == order {
            return visit(path, blocked, meter);
        }
        let u = *path.last().expect("non-empty path");
        for &w in g.neighbors(u) {
            if blocked[w] {
                continue;
            }
            blocked[w] = true;
            path.push(w);
            let r = walk(g, order, path, blocked, meter, visit);
            path.pop();
            blocked[w] = false;
            if r? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    if order == 0 || blocked[start] {
        return Ok(false);
    }
    blocked[start] = true;
    let mut path = vec![start];
    let r = walk(g, order, &mut path, blocked, meter, visit);
    blocked[start] = false;
    r
}

/// Whether some simple path with `order` vertices starts at `start`.
pub fn path_exists(g: &Graph, start: usize, order: usize, blocked: &mut [bool], meter: &mut Meter) -> Result<bool, Exhausted> {
    fn walk(g: &Graph, u: usize, left: usize, blocked: &mut [bool], meter: &mut Meter) -> Result<bool, Exhausted> {
        meter.tick()?;
        if left == 0 {
            return Ok(true);
        }
        for &w in g.neighbors(u) {
            if blocked[w] {
                continue;
            }
            blocked[w] = true;
            let r = walk(g, w, left - 1, blocked, meter);
            blocked[w] = false;
            if r? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    if order == 0 {
        return Ok(true);
    }
    if blocked[start] {
        return Ok(false);
    }
    blocked[start] = true;
    let r = walk(g, start, order - 1, blocked, meter);
    blocked[start] = false;
    r
}

/// A longest simple path starting at `start` and avoiding `blocked`.
pub fn longest_path_from(g: &Graph, start: usize, blocked: &mut [bool], meter: &mut Meter) -> Result<Vec<usize>, Exhausted> {
    fn walk(
        g: &Graph,
        path: &mut Vec<usize>,
        best: &mut Vec<usize>,
        blocked: &mut [bool],
        meter: &mut Meter,
    ) -> Result<(), Exhausted> {
        meter.tick()?;
        if path.len() > best.len() {
            best.clone_from(path);
        }
        let u = *path.last().expect("non-empty path");
        for &w in g.neighbors(u) {
            if blocked[w] {
                continue;
            }
            blocked[w] = true;
            path.push(w);
            let r = walk(g, path, best, blocked, meter);
            path.pop();
            blocked[w] = false;
            r?;
        }
        Ok(())
    }

    if blocked[start] {
        return Ok(Vec::new());
    }
    blocked[start] = true;
    let mut path = vec![start];
    let mut best = Vec::new();
    let r = walk(g, &mut path, &mut best, blocked, meter);
    blocked[start] = false;
    r.map(|_| best)
}

/// Whether there are vertex-disjoint simple paths `L` from `left` and `R`
/// from `right`, both avoiding `avoid`, with `|L| + |R| = total` and each
/// of order at least 1. Equivalently: `reverse(L) ++ R` is a simple path
/// on `total` vertices through the edge or gap between `left` and `right`.
///
/// Failed right-hand queries are memoized by the vertex set of `L`, which
/// is all they depend on.
pub fn split_paths_exist(g: &Graph, left: usize, right: usize, avoid: &[usize], total: usize) -> bool {
    struct Split<'a> {
        g: &'a Graph,
        right: usize,
        total: usize,
        blocked: Vec<bool>,
        failed: HashSet<Vec<usize>>,
    }

    impl Split<'_> {
        fn left_dfs(&mut self, path: &mut Vec<usize>) -> bool {
            let need = self.total - path.len();
            let mut key = path.clone();
            key.sort_unstable();
            if !self.failed.contains(&key) {
                let mut meter = Meter::unlimited();
                if path_exists(self.g, self.right, need, &mut self.blocked, &mut meter).unwrap_or(false) {
                    return true;
                }
                self.failed.insert(key);
            }
            if path.len() + 1 >= self.total {
                return false;
            }
            let u = *path.last().expect("non-empty path");
            for i in 0..self.g.degree(u) {
                let w = self.g.neighbors(u)[i];
                if self.blocked[w] || w == self.right {
                    continue;
                }
                self.blocked[w] = true;
                path.push(w);
                let found = self.left_dfs(path);
                path.pop();
                self.blocked[w] = false;
                if found {
                    return true;
                }
            }
            false
        }
    }

    if total < 2 || left == right {
        return false;
    }
    let mut blocked = vec![false; g.order()];
    for &a in avoid {
        blocked[a] = true;
    }
    if blocked[left] || blocked[right] {
        return false;
    }
    blocked[left] = true;
    let mut split = Split {
        g,
        right,
        total,
        blocked,
        failed: HashSet::new(),
    };
    split.left_dfs(&mut vec![left])
}
