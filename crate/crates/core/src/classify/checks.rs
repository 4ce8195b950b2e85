//! Searches for the hypotheses of the divergence theorems on one graph.

use std::collections::{BTreeMap, BTreeSet};

use crate::budget::{Exhausted, Meter};
use crate::cycles::{for_each_cycle, longest_cycle};
use crate::graph::{Edge, Graph};
use crate::paths::{for_each_path_from, longest_path_from};

use super::certificate::{Certificate, TailedCycle, Witness};

/// A certificate if one was found, and whether the search ran out of
/// budget (in which case an absent certificate proves nothing).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckResult {
    pub certificate: Option<Certificate>,
    pub exhausted: bool,
}

impl CheckResult {
    fn found(witness: Witness) -> Self {
        CheckResult {
            certificate: Some(Certificate {
                witness,
                found_at_iteration: 0,
            }),
            exhausted: false,
        }
    }
}

/// Some component contains a cycle of length `m >= n` but is not a cycle.
/// Reports the longest cycle found in the first such component.
pub fn check_key1(g: &Graph, n: usize, nodes: u64) -> CheckResult {
    let mut meter = Meter::new(nodes);
    let mut exhausted = false;
    for (index, comp) in g.components().into_iter().enumerate() {
        if comp.len() < n {
            continue;
        }
        let h = g.induced(&comp);
        if h.is_cycle_graph() || h.size() < h.order() {
            continue;
        }
        let found = longest_cycle(&h, &mut meter);
        if found.len() >= n {
            let cycle = found.cycle.iter().map(|&v| comp[v]).collect();
            return CheckResult::found(Witness::Key1 {
                component: index,
                m: found.len(),
                component_vertices: comp,
                cycle,
            });
        }
        if !found.complete {
            exhausted = true;
            break;
        }
    }
    CheckResult {
        certificate: None,
        exhausted,
    }
}

/// A cycle with a vertex-disjoint pendant path such that `m + r > n`,
/// maximizing `m + r` over the part of the search completed.
pub fn check_long_tail(g: &Graph, n: usize, nodes: u64) -> CheckResult {
    let mut meter = Meter::new(nodes);
    let mut best: Option<TailedCycle> = None;
    let mut blocked = vec![false; g.order()];
    let ceiling = g.components().iter().map(Vec::len).max().unwrap_or(0);
    let mut inner: Result<(), Exhausted> = Ok(());
    let walk = for_each_cycle(g, 3, g.order(), &mut Meter::new(nodes), |cycle| {
        if best.as_ref().is_some_and(|b| b.m() + b.r() >= ceiling) {
            return true;
        }
        for &v in cycle {
            blocked[v] = true;
        }
        'roots: for &root in cycle {
            for &x in g.neighbors(root) {
                if blocked[x] {
                    continue;
                }
                match longest_path_from(g, x, &mut blocked, &mut meter) {
                    Ok(tail) => {
                        let better = best.as_ref().is_none_or(|b| cycle.len() + tail.len() > b.m() + b.r());
                        if cycle.len() + tail.len() > n && better {
                            best = Some(TailedCycle {
                                cycle: cycle.to_vec(),
                                root,
                                tail,
                            });
                        }
                    }
                    Err(e) => {
                        inner = Err(e);
                        break 'roots;
                    }
                }
            }
        }
        for &v in cycle {
            blocked[v] = false;
        }
        inner.is_err()
    });
    let exhausted = walk.is_err() || inner.is_err();
    match best {
        Some(copy) => CheckResult::found(Witness::LongTail {
            m: copy.m(),
            r: copy.r(),
            copy,
        }),
        None => CheckResult {
            certificate: None,
            exhausted,
        },
    }
}

/// A `CL(k, k, n-k-1)` subgraph for the smallest admissible `k`.
pub fn check_spider(g: &Graph, n: usize, nodes: u64) -> CheckResult {
    let mut meter = Meter::new(nodes);
    match find_spider(g, n, &mut meter) {
        Ok(Some(witness)) => CheckResult::found(witness),
        Ok(None) => CheckResult::default(),
        Err(_) => CheckResult {
            certificate: None,
            exhausted: true,
        },
    }
}

fn find_spider(g: &Graph, n: usize, meter: &mut Meter) -> Result<Option<Witness>, Exhausted> {
    let mut blocked = vec![false; g.order()];
    for k in n.div_ceil(2)..n.saturating_sub(1) {
        let d = n - k - 1;
        if d == 0 || 2 * k < n || k + 1 >= n {
            continue;
        }
        for center in 0..g.order() {
            let nbrs = g.neighbors(center);
            if nbrs.len() < 3 {
                continue;
            }
            blocked[center] = true;
            for (i, &a) in nbrs.iter().enumerate() {
                for &b in &nbrs[i + 1..] {
                    for &x in nbrs {
                        if x == a || x == b {
                            continue;
                        }
                        let mut legs: Option<[Vec<usize>; 3]> = None;
                        for_each_path_from(g, a, k, &mut blocked, meter, &mut |leg1, blocked, meter| {
                            for_each_path_from(g, b, k, blocked, meter, &mut |leg2, blocked, meter| {
                                for_each_path_from(g, x, d, blocked, meter, &mut |leg3, _, _| {
                                    legs = Some([leg1.to_vec(), leg2.to_vec(), leg3.to_vec()]);
                                    Ok(true)
                                })
                            })
                        })?;
                        if let Some(legs) = legs {
                            return Ok(Some(Witness::Spider { k, d, center, legs }));
                        }
                    }
                }
            }
            blocked[center] = false;
        }
    }
    Ok(None)
}

/// Two subgraphs `G(r, m)` with `m + r = n` and different edge sets inside
/// one component.
pub fn check_twin_delta(g: &Graph, n: usize, nodes: u64) -> CheckResult {
    let comp_ids = g.component_ids();
    let mut meter = Meter::new(nodes);
    let mut seen: BTreeMap<usize, (TailedCycle, BTreeSet<Edge>)> = BTreeMap::new();
    let mut pair: Option<(TailedCycle, TailedCycle)> = None;
    let mut blocked = vec![false; g.order()];
    let mut inner: Result<(), Exhausted> = Ok(());
    let walk = for_each_cycle(g, 3, n.saturating_sub(1), &mut Meter::new(nodes), |cycle| {
        let r = n - cycle.len();
        for &v in cycle {
            blocked[v] = true;
        }
        'roots: for &root in cycle {
            for &x in g.neighbors(root) {
                if blocked[x] {
                    continue;
                }
                let res = for_each_path_from(g, x, r, &mut blocked, &mut meter, &mut |tail, _, _| {
                    let copy = TailedCycle {
                        cycle: cycle.to_vec(),
                        root,
                        tail: tail.to_vec(),
                    };
                    let edges = copy.edge_set();
                    match seen.get(&comp_ids[root]) {
                        None => {
                            seen.insert(comp_ids[root], (copy, edges));
                            Ok(false)
                        }
                        Some((_, prior)) if *prior == edges => Ok(false),
                        Some((first, _)) => {
                            pair = Some((first.clone(), copy));
                            Ok(true)
                        }
                    }
                });
                match res {
                    Ok(true) => break 'roots,
                    Ok(false) => {}
                    Err(e) => {
                        inner = Err(e);
                        break 'roots;
                    }
                }
            }
        }
        for &v in cycle {
            blocked[v] = false;
        }
        pair.is_some() || inner.is_err()
    });
    match pair {
        Some((first, second)) => {
            let first_edges = first.edge_set().into_iter().collect();
            let second_edges = second.edge_set().into_iter().collect();
            CheckResult::found(Witness::TwinDelta {
                first,
                second,
                first_edges,
                second_edges,
            })
        }
        None => CheckResult {
            certificate: None,
            exhausted: walk.is_err() || inner.is_err(),
        },
    }
}
