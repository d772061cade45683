use std::collections::BTreeMap;

use crate::coloring::Color;
use crate::turbo::incremental::Recolor;

/// Coloring history of a turbo run: full snapshots at color events plus the
/// per-edge recolors between them.
#[derive(Debug, Clone, Default)]
pub struct CheckpointLog {
    snapshots: BTreeMap<usize, Vec<Color>>,
    /// `(edge position, recolor)` in position order.
    diffs: Vec<(usize, Recolor)>,
}

impl CheckpointLog {
    /// Log whose history starts at position 0 with `colors`.
    pub fn new(colors: Vec<Color>) -> Self {
        let mut log = Self::default();
        log.snapshots.insert(0, colors);
        log
    }

    /// Drops all history and restarts it at position `at`.
    pub fn reset(&mut self, at: usize, colors: Vec<Color>) {
        self.snapshots.clear();
        self.diffs.clear();
        self.snapshots.insert(at, colors);
    }

    /// Earliest restorable position.
    pub fn origin(&self) -> usize {
        *self
            .snapshots
            .keys()
            .next()
            .expect("log always has a snapshot")
    }

    pub fn snapshot(&mut self, at: usize, colors: &[Color]) {
        self.snapshots.insert(at, colors.to_vec());
    }

    pub fn record(&mut self, at: usize, recolor: Recolor) {
        debug_assert!(self.diffs.last().is_none_or(|&(p, _)| p <= at));
        self.diffs.push((at, recolor));
    }

    pub fn snapshot_count(&self) -> usize {
        self.snapshots.len()
    }

    /// Coloring after `at` edges, or `None` before the origin.
    pub fn restore(&self, at: usize) -> Option<Vec<Color>> {
        let (&from, snap) = self.snapshots.range(..=at).next_back()?;
        let mut colors = snap.clone();
        let start = self.diffs.partition_point(|&(p, _)| p <= from);
        for &(p, rc) in &self.diffs[start..] {
            if p > at {
                break;
            }
            debug_assert_eq!(colors[rc.vertex], rc.from);
            colors[rc.vertex] = rc.to;
        }
        Some(colors)
    }
}
