use std::cmp::Reverse;

use rand::seq::SliceRandom;

use crate::graph::Graph;
use crate::greedy::seeded_rng;

/// Order in which the turbo loop adds edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSchedule {
    order: Vec<usize>,
    seed: u64,
}

impl EdgeSchedule {
    /// Edge indices into `graph.edges()`, in addition order.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

/// Sorts edges by (larger endpoint degree desc, smaller endpoint degree desc);
/// ties keep the order of a seeded shuffle.
pub fn schedule_edges(graph: &Graph, seed: u64) -> EdgeSchedule {
    let mut order: Vec<usize> = (0..graph.edge_count()).collect();
    order.shuffle(&mut seeded_rng(seed));
    order.sort_by_key(|&i| {
        let (u, v) = graph.edge(i);
        let (du, dv) = (graph.degree(u), graph.degree(v));
        (Reverse(du.max(dv)), Reverse(du.min(dv)))
    });
    EdgeSchedule { order, seed }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn schedule_is_a_seeded_permutation() {
        let k3 = complete(3);
        let s = schedule_edges(&k3, 9);
        let mut sorted = s.order().to_vec();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![0, 1, 2]);
        assert_eq!(s, schedule_edges(&k3, 9));
        assert_eq!(s.seed(), 9);
    }

    #[test]
    fn star_order_is_the_shuffle() {
        let g = star(4);
        let orders: std::collections::HashSet<Vec<usize>> = (0..30)
            .map(|seed| schedule_edges(&g, seed).order().to_vec())
            .collect();
        assert!(orders.len() > 1);
    }

    #[test]
    fn path_middle_edge_first() {
        let p4 = path(4);
        for seed in 0..10 {
            let s = schedule_edges(&p4, seed);
            assert_eq!(p4.edge(s.order()[0]), (1, 2));
        }
    }
}
