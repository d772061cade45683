//! Turbo-charged incremental edge greedy.

pub mod checkpoint;
pub mod incremental;
pub mod regret;
pub mod run;
pub mod schedule;

pub use checkpoint::CheckpointLog;
pub use incremental::{EdgeOutcome, IncrementalColorer, Recolor};
pub use regret::RegretTracker;
pub use run::{
    dyn_turbo_color, dyn_turbo_color_observed, edge_greedy_color, RepairLimits, RunStats, StepView,
};
pub use schedule::{schedule_edges, EdgeSchedule};
