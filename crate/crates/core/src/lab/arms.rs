use serde::{Deserialize, Serialize};

use crate::graph::Graph;

/// A connected unicyclic graph split into its cycle and the components of
/// `G - V(C)`. `roots[i]` is the cycle vertex adjacent to `arms[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArmDecomposition {
    pub cycle: Vec<usize>,
    pub arms: Vec<Vec<usize>>,
    pub roots: Vec<usize>,
}

impl ArmDecomposition {
    /// Vertex `v` lies in an arm.
    pub fn in_arm(&self, v: usize) -> bool {
        self.arms.iter().any(|a| a.binary_search(&v).is_ok())
    }
}

pub fn arm_decomposition(g: &Graph) -> Option<ArmDecomposition> {
    if !g.is_connected() || !g.is_unicyclic() {
        return None;
    }
    let cycle = g.unique_cycle()?;
    let mut on_cycle = vec![false; g.order()];
    for &v in &cycle {
        on_cycle[v] = true;
    }
    let rest: Vec<usize> = (0..g.order()).filter(|&v| !on_cycle[v]).collect();
    let sub = g.induced(&rest);
    let mut arms = Vec::new();
    let mut roots = Vec::new();
    for comp in sub.components() {
        let mut arm: Vec<usize> = comp.iter().map(|&i| rest[i]).collect();
        arm.sort_unstable();
        let mut attached = arm
            .iter()
            .flat_map(|&v| g.neighbors(v).iter().copied())
            .filter(|&u| on_cycle[u]);
        let root = attached.next()?;
        debug_assert!(attached.all(|u| u == root));
        arms.push(arm);
        roots.push(root);
    }
    Some(ArmDecomposition { cycle, arms, roots })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_cycle, make_grm, make_spider};
    use crate::hline::hl_step;

    #[test]
    fn tailed_cycle_has_one_arm() {
        let d = arm_decomposition(&make_grm(2, 4).unwrap()).unwrap();
        assert_eq!(d.cycle.len(), 4);
        assert_eq!(d.arms, vec![vec![4, 5]]);
        assert_eq!(d.roots, vec![0]);
    }

    #[test]
    fn cycle_has_no_arms() {
        let d = arm_decomposition(&make_cycle(5).unwrap()).unwrap();
        assert!(d.arms.is_empty());
    }

    #[test]
    fn spider_image_has_three_arms() {
        let h = hl_step(&make_spider(3, 3, 2).unwrap(), 6).graph;
        let d = arm_decomposition(&h).unwrap();
        assert_eq!(d.cycle.len(), 3);
        let mut orders: Vec<usize> = d.arms.iter().map(Vec::len).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 2, 2]);
        let mut roots = d.roots.clone();
        roots.sort_unstable();
        roots.dedup();
        assert_eq!(roots.len(), 3);
        let covered = d.cycle.len() + d.arms.iter().map(Vec::len).sum::<usize>();
        assert_eq!(covered, h.order());
    }

    #[test]
    fn non_unicyclic_has_none() {
        assert!(arm_decomposition(&make_spider(1, 1, 1).unwrap()).is_none());
        let two = make_cycle(3).unwrap().disjoint_union(&make_cycle(3).unwrap());
        assert!(arm_decomposition(&two).is_none());
    }
}
