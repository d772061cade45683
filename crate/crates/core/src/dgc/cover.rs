//! Vertex covers of conflict subgraphs via bounded search trees.

use crate::dgc::ConflictSubgraph;
use crate::graph::VertexId;

/// Node budget shared by the search routines. `None` means unlimited.
#[derive(Debug, Clone)]
pub(crate) struct Budget {
    remaining: Option<u64>,
    exhausted: bool,
}

impl Budget {
    pub(crate) fn new(limit: Option<u64>) -> Self {
        Self {
            remaining: limit,
            exhausted: false,
        }
    }

    pub(crate) fn unlimited() -> Self {
        Self::new(None)
    }

    /// Consumes one node; false once the budget is spent.
    pub(crate) fn tick(&mut self) -> bool {
        match &mut self.remaining {
            None => true,
            Some(0) => {
                self.exhausted = true;
                false
            }
            Some(r) => {
                *r -= 1;
                true
            }
        }
    }

    pub(crate) fn exhausted(&self) -> bool {
        self.exhausted
    }
}

/// Conflict graph relabeled onto `0..touched.len()`.
struct LocalGraph {
    global: Vec<VertexId>,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl LocalGraph {
    fn new(h: &ConflictSubgraph) -> Self {
        let global = h.touched_vertices.clone();
        let local = |v: VertexId| global.binary_search(&v).expect("touched vertex");
        let mut edges: Vec<(usize, usize)> = h
            .conflict_edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (local(u), local(v));
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        edges.dedup();
        let mut adj = vec![Vec::new(); global.len()];
        for &(a, b) in &edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        Self { global, edges, adj }
    }

    fn to_global(&self, mut cover: Vec<usize>) -> Vec<VertexId> {
        cover.sort_unstable();
        cover.into_iter().map(|v| self.global[v]).collect()
    }
}

/// Decision search "is there a cover of size at most k" with degree-one and
/// high-degree reductions, branching on a maximum-degree vertex.
struct DecisionSearch<'g> {
    g: &'g LocalGraph,
    alive: Vec<bool>,
    degree: Vec<usize>,
    live_edges: usize,
    cover: Vec<usize>,
}

impl<'g> DecisionSearch<'g> {
    fn new(g: &'g LocalGraph) -> Self {
        Self {
            alive: vec![true; g.adj.len()],
            degree: g.adj.iter().map(Vec::len).collect(),
            live_edges: g.edges.len(),
            cover: Vec::new(),
            g,
        }
    }

    fn take(&mut self, v: usize) {
        debug_assert!(self.alive[v]);
        self.alive[v] = false;
        self.live_edges -= self.degree[v];
        for &w in &self.g.adj[v] {
            if self.alive[w] {
                self.degree[w] -= 1;
            }
        }
        self.cover.push(v);
    }

    fn untake(&mut self) {
        let v = self.cover.pop().expect("undo without take");
        for &w in &self.g.adj[v] {
            if self.alive[w] {
                self.degree[w] += 1;
            }
        }
        self.live_edges += self.degree[v];
        self.alive[v] = true;
    }

    fn undo_to(&mut self, len: usize) {
        while self.cover.len() > len {
            self.untake();
        }
    }

    fn decide(&mut self, k: usize, budget: &mut Budget) -> bool {
        if !budget.tick() {
            return false;
        }
        let start = self.cover.len();
        let mut k = k;
        // Reductions.
        loop {
            if self.live_edges == 0 {
                return true;
            }
            let mut forced = None;
            for v in 0..self.alive.len() {
                if !self.alive[v] || self.degree[v] == 0 {
                    continue;
                }
                if self.degree[v] > k {
                    forced = Some(v);
                    break;
                }
                if self.degree[v] == 1 {
                    let w = self.g.adj[v]
                        .iter()
                        .copied()
                        .find(|&w| self.alive[w])
                        .expect("live neighbor");
                    forced = Some(w);
                    break;
                }
            }
            match forced {
                Some(_) if k == 0 => {
                    self.undo_to(start);
                    return false;
                }
                Some(v) => {
                    self.take(v);
                    k -= 1;
                }
                None => break,
            }
        }
        if k == 0 {
            self.undo_to(start);
            return false;
        }
        let (v, max_deg) = (0..self.alive.len())
            .filter(|&v| self.alive[v])
            .map(|v| (v, self.degree[v]))
            .max_by_key(|&(v, d)| (d, std::cmp::Reverse(v)))
            .expect("live edge implies live vertex");
        if self.live_edges > k * max_deg {
            self.undo_to(start);
            return false;
        }

        let mark = self.cover.len();
        self.take(v);
        if self.decide(k - 1, budget) {
            return true;
        }
        self.undo_to(mark);
        if budget.exhausted() {
            self.undo_to(start);
            return false;
        }

        let neighbors: Vec<usize> = self.g.adj[v]
            .iter()
            .copied()
            .filter(|&w| self.alive[w])
            .collect();
        if neighbors.len() <= k {
            for w in neighbors.iter().copied() {
                self.take(w);
            }
            if self.decide(k - neighbors.len(), budget) {
                return true;
            }
        }
        self.undo_to(start);
        false
    }
}

pub(crate) enum CoverOutcome {
    Found(Vec<VertexId>),
    NoneWithin,
    BudgetExhausted,
}

/// Minimum cover of size at most `max_k`, located by binary search over the
/// size bound `[0, min(max_k, touched)]`.
pub(crate) fn min_vertex_cover_budgeted(
    h: &ConflictSubgraph,
    max_k: usize,
    budget: &mut Budget,
) -> CoverOutcome {
    if h.is_empty() {
        return CoverOutcome::Found(Vec::new());
    }
    let g = LocalGraph::new(h);
    let probe = |k: usize, budget: &mut Budget| -> Option<Vec<usize>> {
        let mut search = DecisionSearch::new(&g);
        search.decide(k, budget).then(|| search.cover.clone())
    };

    let mut hi = max_k.min(g.global.len());
    let Some(mut best) = probe(hi, budget) else {
        return if budget.exhausted() {
            CoverOutcome::BudgetExhausted
        } else {
            CoverOutcome::NoneWithin
        };
    };
    hi = hi.min(best.len());
    let mut lo = 0;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        match probe(mid, budget) {
            Some(cover) => {
                hi = cover.len().min(mid);
                best = cover;
            }
            None if budget.exhausted() => return CoverOutcome::BudgetExhausted,
            None => lo = mid + 1,
        }
    }
    CoverOutcome::Found(g.to_global(best))
}

/// A minimum-cardinality vertex cover of the conflict edges if one of size
/// at most `max_k` exists. Exact; no node budget.
pub fn min_vertex_cover(h: &ConflictSubgraph, max_k: usize) -> Option<Vec<VertexId>> {
    match min_vertex_cover_budgeted(h, max_k, &mut Budget::unlimited()) {
        CoverOutcome::Found(c) => Some(c),
        _ => None,
    }
}

struct MinimalCoverEnum<'g> {
    g: &'g LocalGraph,
    in_cover: Vec<bool>,
    excluded: Vec<bool>,
    cover: Vec<usize>,
    out: Vec<Vec<VertexId>>,
    limit: usize,
}

impl MinimalCoverEnum<'_> {
    fn is_minimal(&self) -> bool {
        self.cover
            .iter()
            .all(|&x| self.g.adj[x].iter().any(|&y| !self.in_cover[y]))
    }

    fn add(&mut self, v: usize) {
        self.in_cover[v] = true;
        self.cover.push(v);
    }

    fn remove_to(&mut self, len: usize) {
        while self.cover.len() > len {
            let v = self.cover.pop().unwrap();
            self.in_cover[v] = false;
        }
    }

    /// Every branch either puts `u` in the cover or excludes it (forcing all
    /// of its neighbors in), so each cover is reached exactly once.
    fn run(&mut self, size: usize, from_edge: usize, budget: &mut Budget) {
        if self.out.len() >= self.limit || !budget.tick() {
            return;
        }
        let next = (from_edge..self.g.edges.len()).find(|&i| {
            let (u, v) = self.g.edges[i];
            !self.in_cover[u] && !self.in_cover[v]
        });
        let Some(i) = next else {
            if self.cover.len() == size && self.is_minimal() {
                let cover = self.g.to_global(self.cover.clone());
                self.out.push(cover);
            }
            return;
        };
        let (u, _) = self.g.edges[i];
        let mark = self.cover.len();

        if self.cover.len() < size {
            self.add(u);
            self.run(size, i + 1, budget);
            self.remove_to(mark);
        }

        let forced: Vec<usize> = self.g.adj[u]
            .iter()
            .copied()
            .filter(|&w| !self.in_cover[w])
            .collect();
        if self.cover.len() + forced.len() <= size && forced.iter().all(|&w| !self.excluded[w]) {
            self.excluded[u] = true;
            for w in forced {
                self.add(w);
            }
            self.run(size, i + 1, budget);
            self.remove_to(mark);
            self.excluded[u] = false;
        }
    }
}

pub(crate) fn enumerate_covers_budgeted(
    h: &ConflictSubgraph,
    size_bound: usize,
    limit: usize,
    budget: &mut Budget,
) -> Vec<Vec<VertexId>> {
    if limit == 0 {
        return Vec::new();
    }
    if h.is_empty() {
        return vec![Vec::new()];
    }
    let min_size = match min_vertex_cover_budgeted(h, size_bound, budget) {
        CoverOutcome::Found(c) => c.len(),
        CoverOutcome::NoneWithin | CoverOutcome::BudgetExhausted => return Vec::new(),
    };
    let g = LocalGraph::new(h);
    let mut e = MinimalCoverEnum {
        in_cover: vec![false; g.global.len()],
        excluded: vec![false; g.global.len()],
        cover: Vec::new(),
        out: Vec::new(),
        limit,
        g: &g,
    };
    for size in min_size..=size_bound.min(g.global.len()) {
        e.run(size, 0, budget);
        if e.out.len() >= limit || budget.exhausted() {
            break;
        }
    }
    e.out
}

/// Distinct inclusion-minimal covers of size at most `size_bound`, smallest
/// first, at most `limit` of them. Order is deterministic.
pub fn enumerate_covers(
    h: &ConflictSubgraph,
    size_bound: usize,
    limit: usize,
) -> Vec<Vec<VertexId>> {
    enumerate_covers_budgeted(h, size_bound, limit, &mut Budget::unlimited())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn h(edges: &[Edge]) -> ConflictSubgraph {
        ConflictSubgraph::from_edges(edges.to_vec())
    }

    fn is_cover(edges: &[Edge], set: &[VertexId]) -> bool {
        edges
            .iter()
            .all(|(u, v)| set.contains(u) || set.contains(v))
    }

    /// All covers by subset enumeration over the touched vertices.
    fn brute_force_covers(h: &ConflictSubgraph) -> Vec<Vec<VertexId>> {
        let t = &h.touched_vertices;
        (0u32..1 << t.len())
            .map(|mask| {
                (0..t.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| t[i])
                    .collect::<Vec<_>>()
            })
            .filter(|s| is_cover(&h.conflict_edges, s))
            .collect()
    }

    fn brute_force_minimal(h: &ConflictSubgraph, bound: usize) -> BTreeSet<Vec<VertexId>> {
        brute_force_covers(h)
            .into_iter()
            .filter(|s| s.len() <= bound)
            .filter(|s| {
                (0..s.len()).all(|i| {
                    let mut smaller = s.clone();
                    smaller.remove(i);
                    !is_cover(&h.conflict_edges, &smaller)
                })
            })
            .collect()
    }

    #[test]
    fn triangle_and_star() {
        let tri = h(&[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(min_vertex_cover(&tri, 3).map(|c| c.len()), Some(2));
        assert_eq!(min_vertex_cover(&tri, 1), None);

        let star = h(&[(0, 1), (0, 2), (0, 3), (0, 4)]);
        assert_eq!(min_vertex_cover(&star, 4), Some(vec![0]));
    }

    #[test]
    fn empty_conflicts() {
        let empty = h(&[]);
        assert_eq!(min_vertex_cover(&empty, 0), Some(vec![]));
        assert_eq!(enumerate_covers(&empty, 0, 5), vec![Vec::<VertexId>::new()]);
    }

    #[test]
    fn single_edge_yields_both_endpoints_in_order() {
        let e = h(&[(3, 7)]);
        assert_eq!(enumerate_covers(&e, 1, 10), vec![vec![3], vec![7]]);
        assert_eq!(enumerate_covers(&e, 1, 1), vec![vec![3]]);
    }

    #[test]
    fn path_of_three_edges_matches_brute_force() {
        let p = h(&[(0, 1), (1, 2), (2, 3)]);
        let got = enumerate_covers(&p, 2, 100);
        let want = brute_force_minimal(&p, 2);
        assert_eq!(got.iter().cloned().collect::<BTreeSet<_>>(), want);
        assert_eq!(got.len(), want.len());
        // {0,2}, {1,2}, {1,3}
        assert_eq!(want.len(), 3);
    }

    fn arb_conflicts(max_n: usize) -> impl Strategy<Value = ConflictSubgraph> {
        (2..=max_n).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..24).prop_map(|pairs| {
                let mut edges: Vec<Edge> = pairs
                    .into_iter()
                    .filter(|(u, v)| u != v)
                    .map(|(u, v)| (u.min(v), u.max(v)))
                    .collect();
                edges.sort_unstable();
                edges.dedup();
                ConflictSubgraph::from_edges(edges)
            })
        })
    }

    proptest! {
        #[test]
        fn min_cover_matches_subset_enumeration(h in arb_conflicts(12)) {
            let best = brute_force_covers(&h).iter().map(Vec::len).min().unwrap();
            let cover = min_vertex_cover(&h, h.touched_vertices.len()).unwrap();
            prop_assert_eq!(cover.len(), best);
            prop_assert!(is_cover(&h.conflict_edges, &cover));
            if best > 0 {
                prop_assert!(min_vertex_cover(&h, best - 1).is_none());
            }
        }

        #[test]
        fn enumeration_is_exactly_the_minimal_covers(h in arb_conflicts(8), extra in 0usize..3) {
            let min = min_vertex_cover(&h, 64).unwrap().len();
            let bound = min + extra;
            let got = enumerate_covers(&h, bound, usize::MAX);
            let want = brute_force_minimal(&h, bound);
            let set: BTreeSet<_> = got.iter().cloned().collect();
            prop_assert_eq!(set.len(), got.len(), "duplicates");
            prop_assert_eq!(set, want);
            prop_assert!(got.windows(2).all(|w| w[0].len() <= w[1].len()));
        }
    }
}
