//! Dynamic moment of regret and rollback point.
//!
//! The tracker remembers the edge position at which each color was first
//! opened. With `c` colors and `n_i` edges added since color `i` opened, the
//! regret metric is `m = min_{i < c} n_i / (c - i)`, the slowest recent rate
//! of edges per new color. Regret fires when `m < |E| / k_best`, i.e. colors
//! are being spent faster than the budget of `k_best` colors for `|E|` edges
//! allows.

use crate::coloring::Color;
use crate::turbo::checkpoint::CheckpointLog;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegretTracker {
    /// Color whose event is `events[0]`. 1 at the start of a run, the color
    /// count at the last accepted repair afterwards.
    first_color: Color,
    /// `events[i]` is the edge position at which color `first_color + i`
    /// was first assigned.
    events: Vec<usize>,
    edges_added: usize,
    total_edges: usize,
    k_best: Color,
}

impl RegretTracker {
    pub fn new(total_edges: usize, k_best: Color) -> Self {
        assert!(k_best >= 1, "k_best must be positive");
        Self {
            first_color: 1,
            events: vec![0],
            edges_added: 0,
            total_edges,
            k_best,
        }
    }

    pub fn edges_added(&self) -> usize {
        self.edges_added
    }

    pub fn total_edges(&self) -> usize {
        self.total_edges
    }

    pub fn k_best(&self) -> Color {
        self.k_best
    }

    /// `(color, edge position)` pairs, oldest first.
    pub fn color_events(&self) -> impl Iterator<Item = (Color, usize)> + '_ {
        self.events
            .iter()
            .enumerate()
            .map(|(i, &at)| (self.first_color + i as Color, at))
    }

    pub fn advance_to(&mut self, edges_added: usize) {
        debug_assert!(edges_added >= self.edges_added && edges_added <= self.total_edges);
        self.edges_added = edges_added;
    }

    /// Records that `color` was opened by the edge at position `at`.
    pub fn record_color_event(&mut self, color: Color, at: usize) {
        assert_eq!(
            color,
            self.first_color + self.events.len() as Color,
            "colors are opened one at a time"
        );
        assert!(
            at > *self.events.last().unwrap(),
            "events strictly increase"
        );
        self.events.push(at);
    }

    /// Restarts the history at position `at` with `colors` colors in use.
    pub fn reset(&mut self, at: usize, colors: Color) {
        self.first_color = colors;
        self.events = vec![at];
        self.edges_added = at;
    }

    fn terms(&self, current_colors: Color) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.color_events()
            .take_while(move |&(color, _)| color < current_colors)
            .map(move |(color, at)| (self.edges_added - at, u64::from(current_colors - color)))
    }

    /// `min n_i / (c - i)` over recorded colors `i < c`; infinite when there
    /// is no such color.
    pub fn regret_metric(&self, current_colors: Color) -> f64 {
        self.terms(current_colors)
            .map(|(n, d)| n as f64 / d as f64)
            .fold(f64::INFINITY, f64::min)
    }

    /// Whether `regret_metric < total_edges / k_best`, compared exactly.
    pub fn is_moment_of_regret(&self, current_colors: Color) -> bool {
        let total = self.total_edges as u128;
        let k = u128::from(self.k_best);
        self.terms(current_colors)
            .any(|(n, d)| (n as u128) * k < total * u128::from(d))
    }

    /// End of the stable interval: with `T = total_edges / k_best`, the
    /// position just before the color event that closes the latest gap of at
    /// least `T` edges between consecutive color events. Without such a gap,
    /// the start of the tracked history (the last accepted repair, or 0).
    /// Never earlier than the oldest checkpoint in `log`.
    pub fn rollback_point(&self, log: &CheckpointLog) -> usize {
        let total = self.total_edges as u128;
        let k = u128::from(self.k_best);
        let stable_end = self
            .events
            .windows(2)
            .rposition(|w| ((w[1] - w[0]) as u128) * k >= total)
            .map(|i| self.events[i + 1] - 1);
        stable_end.unwrap_or(self.events[0]).max(log.origin())
    }
}
