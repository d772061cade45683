//! Cover-based recoloring under a color ceiling and a Hamming budget.

use std::cmp::Reverse;
use std::collections::HashSet;

use crate::coloring::{Color, Coloring};
use crate::dgc::cover::{enumerate_covers_budgeted, Budget};
use crate::dgc::{conflict_subgraph, DgcInstance};
use crate::graph::{Graph, VertexId};

/// Search limits for [`dgc_solve_with`]. `None` budgets are unlimited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DgcLimits {
    /// Maximum number of minimal covers tried.
    pub max_covers: usize,
    /// Node budget for finding and enumerating covers.
    pub cover_nodes: Option<u64>,
    /// Node budget for recoloring the vertices of all enumerated covers.
    pub recolor_nodes: Option<u64>,
    /// Node budget for the fallback search that may also recolor vertices
    /// outside the cover.
    pub completion_nodes: Option<u64>,
}

impl Default for DgcLimits {
    fn default() -> Self {
        Self {
            max_covers: 256,
            cover_nodes: None,
            recolor_nodes: None,
            completion_nodes: None,
        }
    }
}

pub fn dgc_solve(inst: &DgcInstance<'_>) -> Option<Coloring> {
    dgc_solve_with(inst, &DgcLimits::default())
}

/// Tries to make the base coloring proper on the target graph with colors in
/// `1..=target_colors`, changing at most `increment_r` vertices.
///
/// First, every enumerated minimal cover of the conflict edges (together with
/// vertices whose color exceeds the ceiling) is recolored by backtracking,
/// highest target-degree first, smallest free color first. If no cover
/// works, a bounded search tree over conflict endpoints decides the question
/// exactly, within its node budget.
pub fn dgc_solve_with(inst: &DgcInstance<'_>, limits: &DgcLimits) -> Option<Coloring> {
    let base = inst.base_coloring().colors();
    let target = inst.target_colors();
    let r = inst.increment_r();
    let conflicts = conflict_subgraph(inst);
    let forced: Vec<VertexId> = (0..base.len()).filter(|&v| base[v] > target).collect();

    if conflicts.is_empty() && forced.is_empty() {
        return Some(inst.base_coloring().clone());
    }
    if forced.len() > r {
        return None;
    }

    let graph = inst.target_graph();
    let mut cover_budget = Budget::new(limits.cover_nodes);
    let covers = enumerate_covers_budgeted(
        &conflicts,
        r - forced.len(),
        limits.max_covers,
        &mut cover_budget,
    );
    let mut recolor = CoverRecolor {
        graph,
        base,
        target,
        r,
        assign: base.to_vec(),
        budget: Budget::new(limits.recolor_nodes),
    };
    for cover in &covers {
        let mut vertices: Vec<VertexId> = cover.iter().chain(&forced).copied().collect();
        vertices.sort_unstable();
        vertices.dedup();
        vertices.sort_by_key(|&v| (Reverse(graph.degree(v)), v));
        if let Some(c) = recolor.try_cover(&vertices) {
            return Some(c);
        }
        if recolor.budget.exhausted() {
            break;
        }
    }

    let mut completion = Completion::new(inst, &conflicts.conflict_edges, forced, limits);
    completion.run()
}

struct CoverRecolor<'a> {
    graph: &'a Graph,
    base: &'a [Color],
    target: Color,
    r: usize,
    assign: Vec<Color>,
    budget: Budget,
}

impl CoverRecolor<'_> {
    fn try_cover(&mut self, vertices: &[VertexId]) -> Option<Coloring> {
        for &v in vertices {
            self.assign[v] = 0;
        }
        let found = self.extend(vertices, 0, 0);
        let result = found.then(|| Coloring::from_colors(self.assign.clone()).unwrap());
        for &v in vertices {
            self.assign[v] = self.base[v];
        }
        result
    }

    fn extend(&mut self, vertices: &[VertexId], idx: usize, changes: usize) -> bool {
        if !self.budget.tick() {
            return false;
        }
        let Some(&v) = vertices.get(idx) else {
            return is_contiguous(&self.assign, self.target);
        };
        let mut blocked = vec![false; self.target as usize + 1];
        for &w in self.graph.neighbors(v) {
            let c = self.assign[w];
            if c != 0 && c <= self.target {
                blocked[c as usize] = true;
            }
        }
        for c in 1..=self.target {
            if blocked[c as usize] {
                continue;
            }
            let changes = changes + usize::from(c != self.base[v]);
            if changes > self.r {
                continue;
            }
            self.assign[v] = c;
            if self.extend(vertices, idx + 1, changes) {
                return true;
            }
            if self.budget.exhausted() {
                break;
            }
        }
        self.assign[v] = 0;
        false
    }
}

fn is_contiguous(colors: &[Color], max: Color) -> bool {
    let mut present = vec![false; max as usize + 1];
    for &c in colors {
        if c == 0 || c > max {
            return false;
        }
        present[c as usize] = true;
    }
    let used = present.iter().rposition(|&p| p).unwrap_or(0);
    present[1..=used].iter().all(|&p| p)
}

/// Exact search for any proper coloring with colors in `1..=target`, no gaps,
/// within Hamming distance `r` of the base coloring.
///
/// Each node picks one violation (a vertex above the ceiling, a
/// monochromatic edge, or a gap in the used colors) and branches over every
/// single-vertex change that any solution must make to resolve it. Each vertex
/// changes at most once, so depth is bounded by `r`.
struct Completion<'a> {
    graph: &'a Graph,
    base: &'a [Color],
    target: Color,
    r: usize,
    initial_conflicts: &'a [(VertexId, VertexId)],
    forced: Vec<VertexId>,
    assign: Vec<Color>,
    changed: Vec<bool>,
    /// Changed vertices in change order.
    trail: Vec<VertexId>,
    census: Vec<usize>,
    visited: HashSet<Vec<(VertexId, Color)>>,
    budget: Budget,
}

enum Violation {
    Forced(VertexId),
    Edge(VertexId, VertexId),
    Gap { missing: Color, top: Color },
    DeadEnd,
}

impl<'a> Completion<'a> {
    fn new(
        inst: &'a DgcInstance<'a>,
        initial_conflicts: &'a [(VertexId, VertexId)],
        forced: Vec<VertexId>,
        limits: &DgcLimits,
    ) -> Self {
        let base = inst.base_coloring().colors();
        let top = base
            .iter()
            .copied()
            .max()
            .unwrap_or(0)
            .max(inst.target_colors());
        let mut census = vec![0; top as usize + 1];
        for &c in base {
            census[c as usize] += 1;
        }
        Self {
            graph: inst.target_graph(),
            base,
            target: inst.target_colors(),
            r: inst.increment_r(),
            initial_conflicts,
            forced,
            assign: base.to_vec(),
            changed: vec![false; base.len()],
            trail: Vec::new(),
            census,
            visited: HashSet::new(),
            budget: Budget::new(limits.completion_nodes),
        }
    }

    fn run(&mut self) -> Option<Coloring> {
        self.search()
            .then(|| Coloring::from_colors(self.assign.clone()).expect("gap-free by search"))
    }

    fn set(&mut self, v: VertexId, c: Color) {
        self.census[self.assign[v] as usize] -= 1;
        self.census[c as usize] += 1;
        self.assign[v] = c;
        self.changed[v] = true;
        self.trail.push(v);
    }

    fn unset(&mut self) {
        let v = self.trail.pop().unwrap();
        self.census[self.assign[v] as usize] -= 1;
        self.census[self.base[v] as usize] += 1;
        self.assign[v] = self.base[v];
        self.changed[v] = false;
    }

    fn state_key(&self) -> Vec<(VertexId, Color)> {
        let mut key: Vec<_> = self.trail.iter().map(|&v| (v, self.assign[v])).collect();
        key.sort_unstable();
        key
    }

    fn find_violation(&self) -> Option<Violation> {
        if let Some(&v) = self.forced.iter().find(|&&v| !self.changed[v]) {
            return Some(Violation::Forced(v));
        }
        let clash = |&(u, v): &(VertexId, VertexId)| self.assign[u] == self.assign[v];
        if let Some(&(u, v)) = self.initial_conflicts.iter().find(|e| clash(e)) {
            return Some(self.edge_violation(u, v));
        }
        for &x in &self.trail {
            if let Some(&y) = self
                .graph
                .neighbors(x)
                .iter()
                .find(|&&y| self.assign[y] == self.assign[x])
            {
                return Some(self.edge_violation(x, y));
            }
        }
        let top = self.census.iter().rposition(|&n| n > 0).unwrap_or(0) as Color;
        let missing = (1..top).find(|&c| self.census[c as usize] == 0)?;
        Some(Violation::Gap { missing, top })
    }

    fn edge_violation(&self, u: VertexId, v: VertexId) -> Violation {
        if self.changed[u] && self.changed[v] {
            Violation::DeadEnd
        } else {
            Violation::Edge(u.min(v), u.max(v))
        }
    }

    /// Candidate recolorings of `v`, fewest new clashes first.
    fn moves_for(
        &self,
        v: VertexId,
        colors: impl Iterator<Item = Color>,
    ) -> Vec<(usize, VertexId, Color)> {
        let mut around = vec![0usize; self.census.len()];
        for &w in self.graph.neighbors(v) {
            around[self.assign[w] as usize] += 1;
        }
        colors
            .filter(|&c| c != self.assign[v])
            .map(|c| (around[c as usize], v, c))
            .collect()
    }

    fn search(&mut self) -> bool {
        if !self.budget.tick() {
            return false;
        }
        let Some(violation) = self.find_violation() else {
            return true;
        };
        if self.trail.len() >= self.r {
            return false;
        }
        let remaining_forced = self.forced.iter().filter(|&&v| !self.changed[v]).count();
        if self.trail.len() + remaining_forced > self.r {
            return false;
        }
        let all = 1..=self.target;
        let moves = match violation {
            Violation::DeadEnd => return false,
            Violation::Forced(v) => {
                let mut m = self.moves_for(v, all);
                m.sort_by_key(|&(clashes, w, c)| (clashes, c, w));
                m
            }
            Violation::Edge(u, v) => {
                let mut m = Vec::new();
                for w in [u, v] {
                    if !self.changed[w] {
                        m.extend(self.moves_for(w, all.clone()));
                    }
                }
                m.sort_by_key(|&(clashes, w, c)| (clashes, c, w));
                m
            }
            Violation::Gap { missing, top } => {
                // Either some unchanged vertex takes the missing color, or
                // every vertex on the top color moves below the gap.
                let mut m: Vec<_> = (0..self.assign.len())
                    .filter(|&w| !self.changed[w])
                    .map(|w| (0, w, missing))
                    .collect();
                let top_changed = self.trail.iter().any(|&x| self.assign[x] == top);
                if !top_changed {
                    if let Some(x) = (0..self.assign.len()).find(|&x| self.assign[x] == top) {
                        m.extend(self.moves_for(x, 1..missing));
                    }
                }
                m
            }
        };
        for (_, w, c) in moves {
            self.set(w, c);
            let key = self.state_key();
            if self.visited.insert(key) && self.search() {
                return true;
            }
            self.unset();
            if self.budget.exhausted() {
                return false;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::verify;
    use crate::graph::Edge;

    fn graph(n: usize, edges: &[Edge]) -> Graph {
        Graph::from_edges(n, edges.iter().copied()).unwrap()
    }

    #[test]
    fn identity_repair_when_nothing_conflicts() {
        let base = graph(3, &[(0, 1)]);
        let target = graph(3, &[(0, 1), (1, 2)]);
        let c = Coloring::from_colors(vec![1, 2, 1]).unwrap();
        let inst = DgcInstance::new(&base, &target, &c, 2, 2).unwrap();
        assert_eq!(dgc_solve(&inst), Some(c.clone()));
    }

    #[test]
    fn one_conflict_recolors_one_endpoint() {
        // Path 0-1-2 colored 1,2,1 plus added edge (0,2): 0 can take color 3.
        let base = graph(3, &[(0, 1), (1, 2)]);
        let target = graph(3, &[(0, 1), (1, 2), (0, 2)]);
        let c = Coloring::from_colors(vec![1, 2, 1]).unwrap();
        let inst = DgcInstance::new(&base, &target, &c, 2, 3).unwrap();
        let out = dgc_solve(&inst).unwrap();
        assert_eq!(out.hamming(&c), 1);
        assert!(verify(&target, &out, None).unwrap().is_empty());
        assert_eq!(out.used(), 3);

        let inst = DgcInstance::new(&base, &target, &c, 2, 2).unwrap();
        assert_eq!(dgc_solve(&inst), None);
    }

    #[test]
    fn colors_above_ceiling_are_forced_to_move() {
        // 0-1 edge, 2 isolated with color 3; ceiling 2.
        let base = graph(3, &[(0, 1)]);
        let target = graph(3, &[(0, 1), (1, 2)]);
        let c = Coloring::from_colors(vec![1, 2, 3]).unwrap();
        let inst = DgcInstance::new(&base, &target, &c, 2, 2).unwrap();
        let out = dgc_solve(&inst).unwrap();
        assert_eq!(out.colors(), &[1, 2, 1]);
    }

    #[test]
    fn cover_route_handles_a_blocked_endpoint() {
        // Added edge (0,4) clashes on color 1. Vertex 0 sees 1, 2 and 3, but
        // vertex 4 only sees 1 and 2, so the cover {4} recolors it to 3.
        let base = graph(5, &[(0, 1), (0, 2), (0, 3), (1, 4)]);
        let target = graph(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (0, 4)]);
        let c = Coloring::from_colors(vec![1, 2, 3, 2, 1]).unwrap();
        let inst = DgcInstance::new(&base, &target, &c, 2, 3).unwrap();
        let out = dgc_solve(&inst).unwrap();
        assert_eq!(out.colors(), &[1, 2, 3, 2, 3]);
    }

    #[test]
    fn infeasible_ceiling_returns_none() {
        // Completing K4 with a 3-color ceiling.
        let base = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]);
        let target = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let c = Coloring::from_colors(vec![1, 2, 3, 3]).unwrap();
        let inst = DgcInstance::new(&base, &target, &c, 2, 3).unwrap();
        assert_eq!(dgc_solve(&inst), None);
    }

    #[test]
    fn completion_changes_a_vertex_outside_every_cover() {
        // Added edge (0,2) clashes on color 1 with a 2-color ceiling. Both
        // covers {0} and {2} are blocked; moving 0 to 2 and then 3 to 1 works.
        let base = graph(4, &[(1, 2), (0, 3)]);
        let target = graph(4, &[(1, 2), (0, 3), (0, 2)]);
        let c = Coloring::from_colors(vec![1, 2, 1, 2]).unwrap();
        let inst = DgcInstance::new(&base, &target, &c, 2, 2).unwrap();
        let out = dgc_solve(&inst).unwrap();
        assert_eq!(out.colors(), &[2, 2, 1, 1]);

        let inst = DgcInstance::new(&base, &target, &c, 1, 2).unwrap();
        assert_eq!(dgc_solve(&inst), None);
    }
}
