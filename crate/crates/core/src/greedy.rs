//! Vertex-sequential greedy baselines: largest-degree-first and
//! greedy-with-interchange.

use std::cmp::Reverse;
use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::coloring::{Color, Coloring};
use crate::graph::{Graph, VertexId};

pub(crate) fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Vertices by non-increasing degree; equal degrees keep the order of a
/// seeded shuffle.
pub fn lf_order(graph: &Graph, seed: u64) -> Vec<VertexId> {
    let mut order: Vec<VertexId> = (0..graph.vertex_count()).collect();
    order.shuffle(&mut seeded_rng(seed));
    order.sort_by_key(|&v| Reverse(graph.degree(v)));
    order
}

/// Scratch marker for "which colors appear around this vertex" queries.
struct ColorMarks {
    stamp: Vec<u32>,
    epoch: u32,
}

impl ColorMarks {
    fn new(max_colors: usize) -> Self {
        Self {
            stamp: vec![0; max_colors + 2],
            epoch: 0,
        }
    }

    fn mark_neighbors(&mut self, graph: &Graph, v: VertexId, colors: &[Color]) {
        self.epoch += 1;
        for &w in graph.neighbors(v) {
            let c = colors[w] as usize;
            if c != 0 {
                self.stamp[c] = self.epoch;
            }
        }
    }

    fn is_marked(&self, c: Color) -> bool {
        self.stamp[c as usize] == self.epoch
    }

    fn smallest_free(&self) -> Color {
        (1..).find(|&c| !self.is_marked(c)).unwrap()
    }
}

/// Colors vertices in `order`, each with the smallest color not on an
/// already-colored neighbor.
pub fn greedy_with_order(graph: &Graph, order: &[VertexId]) -> Coloring {
    let mut colors = vec![0 as Color; graph.vertex_count()];
    let mut marks = ColorMarks::new(graph.max_degree() + 1);
    for &v in order {
        marks.mark_neighbors(graph, v, &colors);
        colors[v] = marks.smallest_free();
    }
    Coloring::from_colors(colors).expect("greedy colors are contiguous")
}

pub fn greedy_lf(graph: &Graph, seed: u64) -> Coloring {
    greedy_with_order(graph, &lf_order(graph, seed))
}

pub fn greedy_interchange(graph: &Graph, seed: u64) -> Coloring {
    greedy_interchange_with_order(graph, &lf_order(graph, seed))
}

/// Greedy over `order`, but before opening a new color for `v` try to free an
/// existing one with a two-color (Kempe) interchange. Pairs `(a, b)` are tried
/// in ascending order; for each pair, freeing `a` is tried before `b`.
/// Never returns more colors than [`greedy_with_order`] on the same order:
/// if the interchanges end up worse, the plain greedy coloring is returned.
pub fn greedy_interchange_with_order(graph: &Graph, order: &[VertexId]) -> Coloring {
    let n = graph.vertex_count();
    let mut colors = vec![0 as Color; n];
    let mut marks = ColorMarks::new(graph.max_degree() + 1);
    let mut kempe = KempeScratch::new(n);
    let mut used: Color = 0;

    for &v in order {
        marks.mark_neighbors(graph, v, &colors);
        let free = marks.smallest_free();
        if free <= used {
            colors[v] = free;
            continue;
        }
        let mut freed = None;
        'pairs: for a in 1..=used {
            for b in a + 1..=used {
                for (keep, other) in [(a, b), (b, a)] {
                    if kempe.try_free(graph, &mut colors, v, keep, other) {
                        freed = Some(keep);
                        break 'pairs;
                    }
                }
            }
        }
        colors[v] = match freed {
            Some(c) => c,
            None => {
                used += 1;
                used
            }
        };
    }
    let swapped = Coloring::from_colors(colors).expect("interchange keeps colors contiguous");
    let plain = greedy_with_order(graph, order);
    if plain.used() < swapped.used() {
        plain
    } else {
        swapped
    }
}

struct KempeScratch {
    seen: Vec<u32>,
    epoch: u32,
    component: Vec<VertexId>,
    queue: VecDeque<VertexId>,
}

impl KempeScratch {
    fn new(n: usize) -> Self {
        Self {
            seen: vec![0; n],
            epoch: 0,
            component: Vec::new(),
            queue: VecDeque::new(),
        }
    }

    /// Swaps `target`/`other` on every `target`/`other` component reached
    /// from `v`'s `target`-colored neighbors, provided none of them touches a
    /// neighbor of `v` colored `other`. Returns whether `target` is now free.
    fn try_free(
        &mut self,
        graph: &Graph,
        colors: &mut [Color],
        v: VertexId,
        target: Color,
        other: Color,
    ) -> bool {
        self.epoch += 1;
        self.component.clear();
        self.queue.clear();
        for &w in graph.neighbors(v) {
            if colors[w] == target && self.seen[w] != self.epoch {
                self.seen[w] = self.epoch;
                self.queue.push_back(w);
            }
        }
        if self.queue.is_empty() {
            return true;
        }
        while let Some(x) = self.queue.pop_front() {
            self.component.push(x);
            for &y in graph.neighbors(x) {
                let cy = colors[y];
                if (cy == target || cy == other) && self.seen[y] != self.epoch {
                    if cy == other && graph.has_edge(v, y) {
                        return false;
                    }
                    self.seen[y] = self.epoch;
                    self.queue.push_back(y);
                }
            }
        }
        for &x in &self.component {
            colors[x] = if colors[x] == target { other } else { target };
        }
        true
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::coloring::verify;
    use crate::graph::fixtures::*;
    use proptest::prelude::*;

    /// S(3,3): a_i ~ b_j for i != j. Vertices a_i = 2i, b_i = 2i + 1.
    fn crown3() -> Graph {
        let mut edges = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    edges.push((2 * i, 2 * j + 1));
                }
            }
        }
        Graph::from_edges(6, edges).unwrap()
    }

    #[test]
    fn lf_small_graphs() {
        assert_eq!(greedy_lf(&complete(3), 1).used(), 3);
        assert_eq!(greedy_lf(&cycle(5), 1).used(), 3);
        assert_eq!(greedy_interchange(&complete(3), 1).used(), 3);
    }

    #[test]
    fn lf_order_is_degree_sorted_and_seeded() {
        let g = star(6);
        let order = lf_order(&g, 3);
        assert_eq!(order[0], 0);
        assert_eq!(order, lf_order(&g, 3));
        let leaves_differ = (0..20).any(|s| lf_order(&g, s)[1..] != order[1..]);
        assert!(leaves_differ);
    }

    #[test]
    fn crown_graph_adversarial_order() {
        let g = crown3();
        let order = [0, 1, 2, 3, 4, 5];
        assert_eq!(greedy_with_order(&g, &order).used(), 3);
        let c = greedy_interchange_with_order(&g, &order);
        assert_eq!(c.used(), 2);
        assert!(verify(&g, &c, None).unwrap().is_empty());
    }

    pub(crate) fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let mut edges = Vec::new();
                let mut k = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if bits[k] {
                            edges.push((u, v));
                        }
                        k += 1;
                    }
                }
                Graph::from_edges(n, edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn lf_is_proper_and_within_degree_bound(g in arb_graph(24), seed in any::<u64>()) {
            let c = greedy_lf(&g, seed);
            prop_assert!(verify(&g, &c, None).unwrap().is_empty());
            prop_assert!(c.used() as usize <= g.max_degree() + 1);
            prop_assert!(Coloring::from_colors(c.colors().to_vec()).is_ok());
        }

        #[test]
        fn interchange_never_worse_than_lf(g in arb_graph(24), seed in any::<u64>()) {
            let order = lf_order(&g, seed);
            let plain = greedy_with_order(&g, &order);
            let swapped = greedy_interchange_with_order(&g, &order);
            prop_assert!(verify(&g, &swapped, None).unwrap().is_empty());
            prop_assert!(swapped.used() <= plain.used());
        }
    }
}
