use std::collections::HashSet;
use std::time::{Duration, Instant};

use crate::coloring::{Color, Coloring};
use crate::dgc::{dgc_solve_with, DgcInstance, DgcLimits};
use crate::graph::Graph;
use crate::turbo::checkpoint::CheckpointLog;
use crate::turbo::incremental::IncrementalColorer;
use crate::turbo::regret::RegretTracker;
use crate::turbo::schedule::{schedule_edges, EdgeSchedule};

/// Throttles for the repair step of [`dyn_turbo_color`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepairLimits {
    /// Maximum repair attempts per run. `None` means four per `k_best` color.
    pub max_attempts: Option<usize>,
    pub dgc: DgcLimits,
    /// Past this instant no further repairs are attempted; the remaining
    /// edges are still added greedily so the result stays proper.
    pub deadline: Option<Instant>,
}

impl Default for RepairLimits {
    fn default() -> Self {
        Self {
            max_attempts: None,
            dgc: DgcLimits {
                max_covers: 64,
                cover_nodes: Some(200_000),
                recolor_nodes: Some(200_000),
                completion_nodes: Some(50_000),
            },
            deadline: None,
        }
    }
}

impl RepairLimits {
    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.deadline = Some(Instant::now() + limit);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunStats {
    pub regret_events: usize,
    pub rollbacks_attempted: usize,
    pub rollbacks_accepted: usize,
    pub final_colors: Color,
    pub elapsed: Duration,
    pub timed_out: bool,
}

/// State of a run right after an edge addition or an accepted repair.
#[derive(Debug, Clone, Copy)]
pub struct StepView<'a> {
    /// Number of edges added so far.
    pub position: usize,
    /// Indices (into `graph.edges()`) of the added edges.
    pub prefix: &'a [usize],
    pub colors: &'a [Color],
    pub used: Color,
    /// The last edge opened a new color.
    pub color_event: bool,
    /// The coloring was just replaced by an accepted repair.
    pub repaired: bool,
}

/// Incremental edge greedy with regret-triggered rollback and repair.
/// `k_best` is the color count of a reference heuristic run.
pub fn dyn_turbo_color(
    graph: &Graph,
    seed: u64,
    k_best: Color,
    limits: &RepairLimits,
) -> (Coloring, RunStats) {
    dyn_turbo_color_observed(graph, seed, k_best, limits, |_| {})
}

/// The incremental edge greedy alone, without regret tracking or repair.
pub fn edge_greedy_color(graph: &Graph, seed: u64) -> (Coloring, RunStats) {
    let start = Instant::now();
    let schedule = schedule_edges(graph, seed);
    let mut inc = IncrementalColorer::new(graph.vertex_count());
    for &i in schedule.order() {
        let (u, v) = graph.edge(i);
        inc.add_edge(u, v);
    }
    let coloring = inc.coloring();
    let stats = RunStats {
        regret_events: 0,
        rollbacks_attempted: 0,
        rollbacks_accepted: 0,
        final_colors: coloring.used(),
        elapsed: start.elapsed(),
        timed_out: false,
    };
    (coloring, stats)
}

/// [`dyn_turbo_color`] calling `observe` after every step.
pub fn dyn_turbo_color_observed<F>(
    graph: &Graph,
    seed: u64,
    k_best: Color,
    limits: &RepairLimits,
    mut observe: F,
) -> (Coloring, RunStats)
where
    F: FnMut(&StepView<'_>),
{
    let start = Instant::now();
    let schedule = schedule_edges(graph, seed);
    let mut run = TurboRun::new(graph, &schedule, k_best, limits);
    let order = schedule.order();

    for pos in 1..=order.len() {
        let color_event = run.add_next(pos);
        observe(&StepView {
            position: pos,
            prefix: &order[..pos],
            colors: run.inc.colors(),
            used: run.inc.used(),
            color_event,
            repaired: false,
        });
        if color_event && run.tracker.is_moment_of_regret(run.inc.used()) {
            run.stats.regret_events += 1;
            if run.try_repair(pos) {
                observe(&StepView {
                    position: pos,
                    prefix: &order[..pos],
                    colors: run.inc.colors(),
                    used: run.inc.used(),
                    color_event: false,
                    repaired: true,
                });
            }
        }
    }

    let coloring = run.inc.coloring();
    let mut stats = run.stats;
    stats.final_colors = coloring.used();
    stats.elapsed = start.elapsed();
    (coloring, stats)
}

struct TurboRun<'a> {
    graph: &'a Graph,
    order: &'a [usize],
    limits: &'a RepairLimits,
    max_attempts: usize,
    inc: IncrementalColorer,
    tracker: RegretTracker,
    log: CheckpointLog,
    tried: HashSet<(usize, Color)>,
    stats: RunStats,
}

impl<'a> TurboRun<'a> {
    fn new(
        graph: &'a Graph,
        schedule: &'a EdgeSchedule,
        k_best: Color,
        limits: &'a RepairLimits,
    ) -> Self {
        let inc = IncrementalColorer::new(graph.vertex_count());
        let log = CheckpointLog::new(inc.colors().to_vec());
        Self {
            graph,
            order: schedule.order(),
            limits,
            max_attempts: limits.max_attempts.unwrap_or(4 * k_best as usize),
            tracker: RegretTracker::new(graph.edge_count(), k_best),
            inc,
            log,
            tried: HashSet::new(),
            stats: RunStats {
                regret_events: 0,
                rollbacks_attempted: 0,
                rollbacks_accepted: 0,
                final_colors: 1,
                elapsed: Duration::ZERO,
                timed_out: false,
            },
        }
    }

    /// Adds edge number `pos` (1-based) of the schedule. Returns whether it
    /// opened a color.
    fn add_next(&mut self, pos: usize) -> bool {
        let (u, v) = self.graph.edge(self.order[pos - 1]);
        let out = self.inc.add_edge(u, v);
        self.tracker.advance_to(pos);
        if let Some(rc) = out.recolored {
            self.log.record(pos, rc);
        }
        if out.color_added {
            self.tracker.record_color_event(self.inc.used(), pos);
            self.log.snapshot(pos, self.inc.colors());
        }
        out.color_added
    }

    fn past_deadline(&mut self) -> bool {
        if self.stats.timed_out {
            return true;
        }
        if self.limits.deadline.is_some_and(|d| Instant::now() >= d) {
            self.stats.timed_out = true;
        }
        self.stats.timed_out
    }

    fn try_repair(&mut self, pos: usize) -> bool {
        let current = self.inc.used();
        let target = current - 1;
        let j = self.tracker.rollback_point(&self.log);
        if j >= pos
            || self.stats.rollbacks_attempted >= self.max_attempts
            || self.past_deadline()
            || !self.tried.insert((j, target))
        {
            return false;
        }
        let Some(base_colors) = self.log.restore(j) else {
            return false;
        };
        self.stats.rollbacks_attempted += 1;

        let base_coloring =
            Coloring::from_colors(base_colors).expect("checkpoints are contiguous colorings");
        let base_graph = self.graph.edge_subgraph(&self.order[..j]);
        let target_graph = self.graph.edge_subgraph(&self.order[..pos]);
        let edit_k = pos - j;
        let inst = DgcInstance::new(
            &base_graph,
            &target_graph,
            &base_coloring,
            2 * edit_k,
            target,
        )
        .expect("rollback instance is well formed");
        let Some(repaired) = dgc_solve_with(&inst, &self.limits.dgc) else {
            return false;
        };
        if repaired.used() >= current {
            return false;
        }
        log::debug!(
            "repair at edge {pos}: rolled back {edit_k} edges, {current} -> {} colors",
            repaired.used()
        );
        self.stats.rollbacks_accepted += 1;
        self.inc.set_coloring(&repaired);
        self.tracker.reset(pos, repaired.used());
        self.log.reset(pos, repaired.into_colors());
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::verify;
    use crate::graph::fixtures::*;
    use crate::greedy::greedy_lf;
    use proptest::prelude::*;

    fn run_default(g: &Graph, seed: u64) -> (Coloring, RunStats) {
        let k = greedy_lf(g, seed).used();
        dyn_turbo_color(g, seed, k, &RepairLimits::default())
    }

    #[test]
    fn edgeless_graph_uses_one_color() {
        let g = Graph::empty(5).unwrap();
        let (c, stats) = run_default(&g, 3);
        assert_eq!(c.used(), 1);
        assert_eq!(stats.regret_events, 0);
        assert_eq!(stats.final_colors, 1);
    }

    #[test]
    fn complete_graph_uses_n_colors() {
        let k4 = complete(4);
        for seed in 0..10 {
            let (c, stats) = run_default(&k4, seed);
            assert_eq!(c.used(), 4);
            assert!(verify(&k4, &c, None).unwrap().is_empty());
            assert!(stats.rollbacks_accepted <= stats.rollbacks_attempted);
            assert!(stats.rollbacks_attempted <= stats.regret_events);
        }
    }

    fn queen(n: usize) -> Graph {
        let mut edges = Vec::new();
        for a in 0..n * n {
            for b in a + 1..n * n {
                let (ra, ca) = ((a / n) as isize, (a % n) as isize);
                let (rb, cb) = ((b / n) as isize, (b % n) as isize);
                if ra == rb || ca == cb || (ra - rb).abs() == (ca - cb).abs() {
                    edges.push((a, b));
                }
            }
        }
        Graph::from_edges(n * n, edges).unwrap()
    }

    #[test]
    fn repair_beats_plain_edge_greedy_on_queen_graph() {
        let g = queen(6);
        for seed in 1..=5 {
            let (plain, _) = edge_greedy_color(&g, seed);
            let (c, stats) = run_default(&g, seed);
            assert!(verify(&g, &c, None).unwrap().is_empty());
            assert!(c.used() < plain.used());
            assert!(stats.rollbacks_accepted > 0);
        }
    }

    #[test]
    fn edge_greedy_matches_turbo_without_repairs() {
        let g = petersen();
        let limits = RepairLimits {
            max_attempts: Some(0),
            ..RepairLimits::default()
        };
        for seed in 0..10 {
            let (plain, _) = edge_greedy_color(&g, seed);
            let (turbo, stats) = dyn_turbo_color(&g, seed, 3, &limits);
            assert_eq!(plain, turbo);
            assert_eq!(stats.rollbacks_attempted, 0);
        }
    }

    #[test]
    fn checkpoints_replay_to_the_live_coloring() {
        let g = petersen();
        let schedule = schedule_edges(&g, 5);
        let limits = RepairLimits::default();
        let mut run = TurboRun::new(&g, &schedule, 3, &limits);
        let mut history = vec![run.inc.colors().to_vec()];
        for pos in 1..=schedule.len() {
            run.add_next(pos);
            history.push(run.inc.colors().to_vec());
        }
        for (j, expected) in history.iter().enumerate() {
            let restored = run.log.restore(j).unwrap();
            assert_eq!(&restored, expected);

            let mut inc = IncrementalColorer::new(g.vertex_count());
            for &i in &schedule.order()[..j] {
                let (u, v) = g.edge(i);
                inc.add_edge(u, v);
            }
            inc.set_coloring(&Coloring::from_colors(restored).unwrap());
            for &i in &schedule.order()[j..] {
                let (u, v) = g.edge(i);
                inc.add_edge(u, v);
            }
            assert_eq!(inc.colors(), history.last().unwrap().as_slice());
        }
    }

    #[test]
    fn observer_sees_every_step() {
        let g = petersen();
        let mut positions = Vec::new();
        let (c, _) = dyn_turbo_color_observed(&g, 2, 3, &RepairLimits::default(), |s| {
            let sub = g.edge_subgraph(s.prefix);
            let col = Coloring::from_colors(s.colors.to_vec()).unwrap();
            assert!(verify(&sub, &col, None).unwrap().is_empty());
            if !s.repaired {
                positions.push(s.position);
            }
        });
        assert_eq!(positions, (1..=g.edge_count()).collect::<Vec<_>>());
        assert!(verify(&g, &c, None).unwrap().is_empty());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn turbo_is_proper_bounded_and_deterministic(
            g in crate::greedy::tests::arb_graph(16),
            seed in any::<u64>(),
        ) {
            let (c, stats) = run_default(&g, seed);
            prop_assert!(verify(&g, &c, None).unwrap().is_empty());
            prop_assert!(c.used() as usize <= g.max_degree() + 1);
            prop_assert!(stats.rollbacks_accepted <= stats.rollbacks_attempted);
            prop_assert!(stats.rollbacks_attempted <= stats.regret_events);
            let (again, stats2) = run_default(&g, seed);
            prop_assert_eq!(c, again);
            prop_assert_eq!(stats.regret_events, stats2.regret_events);
            prop_assert_eq!(stats.rollbacks_accepted, stats2.rollbacks_accepted);
        }
    }
}
