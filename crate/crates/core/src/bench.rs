//! Benchmark harness: runs solvers over instance files and collects
//! verified results.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{verify, Color, Coloring};
use crate::dimacs::read_dimacs_file;
use crate::graph::Graph;
use crate::greedy::{greedy_interchange, greedy_lf};
use crate::turbo::{dyn_turbo_color, edge_greedy_color, RepairLimits};

const BUNDLED_REFERENCES: &str = include_str!("../data/reference_chi.csv");

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("no .col instances found in {0}")]
    NoInstances(PathBuf),
    #[error("reference table: {0}")]
    Reference(#[from] csv::Error),
    #[error("json output: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algorithm {
    GreedyLf,
    GreedyInterchange,
    EdgeGreedy,
    DynTc,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::GreedyLf,
        Algorithm::GreedyInterchange,
        Algorithm::EdgeGreedy,
        Algorithm::DynTc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::GreedyLf => "greedy-lf",
            Algorithm::GreedyInterchange => "greedy-interchange",
            Algorithm::EdgeGreedy => "edge-greedy",
            Algorithm::DynTc => "dyn-tc",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error)]
#[error("unknown algorithm `{0}` (expected greedy-lf, greedy-interchange, edge-greedy or dyn-tc)")]
pub struct UnknownAlgorithm(String);

impl FromStr for Algorithm {
    type Err = UnknownAlgorithm;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| UnknownAlgorithm(s.to_string()))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Overrides the greedy-lf color count used as the turbo budget.
    pub k_best: Option<Color>,
    pub time_limit: Option<Duration>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub coloring: Coloring,
    pub regret_events: usize,
    pub rollbacks_accepted: usize,
    pub elapsed: Duration,
    pub timed_out: bool,
}

pub fn run_algorithm(graph: &Graph, algo: Algorithm, seed: u64, opts: &RunOptions) -> RunOutput {
    let start = Instant::now();
    let (coloring, regret_events, rollbacks_accepted, mut timed_out) = match algo {
        Algorithm::GreedyLf => (greedy_lf(graph, seed), 0, 0, false),
        Algorithm::GreedyInterchange => (greedy_interchange(graph, seed), 0, 0, false),
        Algorithm::EdgeGreedy => (edge_greedy_color(graph, seed).0, 0, 0, false),
        Algorithm::DynTc => {
            let k_best = opts.k_best.unwrap_or_else(|| greedy_lf(graph, seed).used());
            let mut limits = RepairLimits::default();
            if let Some(limit) = opts.time_limit {
                limits.deadline = Some(start + limit);
            }
            let (c, stats) = dyn_turbo_color(graph, seed, k_best, &limits);
            (
                c,
                stats.regret_events,
                stats.rollbacks_accepted,
                stats.timed_out,
            )
        }
    };
    let elapsed = start.elapsed();
    if opts.time_limit.is_some_and(|limit| elapsed > limit) {
        timed_out = true;
    }
    RunOutput {
        coloring,
        regret_events,
        rollbacks_accepted,
        elapsed,
        timed_out,
    }
}

/// Chromatic number or best known value; `exact` is false for values that
/// are only the best reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReferenceChi {
    pub chi: Color,
    pub exact: bool,
}

impl fmt::Display for ReferenceChi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exact {
            write!(f, "{}", self.chi)
        } else {
            write!(f, "({})", self.chi)
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct ReferenceRow {
    pub instance: String,
    pub chi: Option<Color>,
    pub exact: bool,
    pub dyn_tc: Option<Color>,
    pub greedy: Option<Color>,
    pub rcc: Option<Color>,
    pub tabu_s: Option<Color>,
    pub search_tree: Option<Color>,
}

/// Published reference values keyed by instance name, case-insensitive.
#[derive(Debug, Clone, Default)]
pub struct ReferenceTable {
    rows: HashMap<String, ReferenceRow>,
}

impl ReferenceTable {
    pub fn bundled() -> Self {
        Self::from_reader(BUNDLED_REFERENCES.as_bytes()).expect("bundled reference table parses")
    }

    pub fn load(path: &Path) -> Result<Self, BenchError> {
        let file = fs::File::open(path).map_err(|source| BenchError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_reader(file)
    }

    pub fn from_reader<R: Read>(reader: R) -> Result<Self, BenchError> {
        let mut rows = HashMap::new();
        for row in csv::Reader::from_reader(reader).deserialize() {
            let row: ReferenceRow = row?;
            rows.insert(instance_key(&row.instance), row);
        }
        Ok(Self { rows })
    }

    pub fn row(&self, instance: &str) -> Option<&ReferenceRow> {
        self.rows.get(&instance_key(instance))
    }

    pub fn chi(&self, instance: &str) -> Option<ReferenceChi> {
        let row = self.row(instance)?;
        Some(ReferenceChi {
            chi: row.chi?,
            exact: row.exact,
        })
    }
}

fn instance_key(name: &str) -> String {
    name.strip_suffix(".col")
        .unwrap_or(name)
        .to_ascii_lowercase()
}

/// Display name of an instance file: the file name without `.col`.
pub fn instance_name(path: &Path) -> String {
    let file = path
        .file_name()
        .map(|f| f.to_string_lossy().into_owned())
        .unwrap_or_default();
    file.strip_suffix(".col")
        .map(str::to_string)
        .unwrap_or(file)
}

/// `.col` files directly inside `dir`, sorted by path.
pub fn list_instances(dir: &Path) -> Result<Vec<PathBuf>, BenchError> {
    let entries = fs::read_dir(dir).map_err(|source| BenchError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(Result::ok)
        .map(|e| e.path())
        .filter(|p| p.is_file() && p.extension().is_some_and(|e| e == "col"))
        .collect();
    if paths.is_empty() {
        return Err(BenchError::NoInstances(dir.to_path_buf()));
    }
    paths.sort();
    Ok(paths)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Timeout,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub algorithm: String,
    pub seed: u64,
    pub colors: Option<Color>,
    pub time_ms: u64,
    pub regret_events: usize,
    pub rollbacks_accepted: usize,
    pub reference_chi: Option<String>,
    pub status: Status,
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub algorithms: Vec<Algorithm>,
    pub seeds: Vec<u64>,
    pub k_best: Option<Color>,
    pub time_limit: Option<Duration>,
    /// When false, `time_ms` is written as 0 so output is reproducible.
    pub record_time: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            algorithms: Algorithm::ALL.to_vec(),
            seeds: (1..=5).collect(),
            k_best: None,
            time_limit: None,
            record_time: true,
        }
    }
}

/// Runs every (instance, algorithm, seed) cell. Failures become rows with
/// status `error`; the sweep never aborts. Records are sorted by instance,
/// algorithm, seed.
pub fn run_bench(
    instances: &[PathBuf],
    config: &BenchConfig,
    refs: &ReferenceTable,
) -> Vec<BenchRecord> {
    let loaded: Vec<(String, Option<Graph>)> = instances
        .par_iter()
        .map(|path| {
            let name = instance_name(path);
            match read_dimacs_file(path) {
                Ok(d) => (name, Some(d.graph)),
                Err(e) => {
                    log::error!("{}: {e}", path.display());
                    (name, None)
                }
            }
        })
        .collect();

    let cells: Vec<(usize, Algorithm, u64)> = (0..loaded.len())
        .flat_map(|i| {
            config
                .algorithms
                .iter()
                .flat_map(move |&a| config.seeds.iter().map(move |&s| (i, a, s)))
        })
        .collect();

    let mut records: Vec<(Algorithm, BenchRecord)> = cells
        .into_par_iter()
        .map(|(i, algo, seed)| {
            let (name, graph) = &loaded[i];
            let reference = refs.chi(name);
            let record = match graph {
                Some(g) => bench_cell(name, g, algo, seed, config, reference),
                None => BenchRecord {
                    instance: name.clone(),
                    n: 0,
                    m: 0,
                    algorithm: algo.name().to_string(),
                    seed,
                    colors: None,
                    time_ms: 0,
                    regret_events: 0,
                    rollbacks_accepted: 0,
                    reference_chi: reference.map(|r| r.to_string()),
                    status: Status::Error,
                },
            };
            (algo, record)
        })
        .collect();

    records.sort_by(|(a, x), (b, y)| (&x.instance, a, x.seed).cmp(&(&y.instance, b, y.seed)));
    records.into_iter().map(|(_, r)| r).collect()
}

fn bench_cell(
    name: &str,
    graph: &Graph,
    algo: Algorithm,
    seed: u64,
    config: &BenchConfig,
    reference: Option<ReferenceChi>,
) -> BenchRecord {
    let opts = RunOptions {
        k_best: config.k_best,
        time_limit: config.time_limit,
    };
    let out = run_algorithm(graph, algo, seed, &opts);
    let proper = matches!(verify(graph, &out.coloring, None), Ok(bad) if bad.is_empty());
    let below_exact = reference.is_some_and(|r| r.exact && out.coloring.used() < r.chi);
    let status = if !proper || below_exact {
        log::error!("{name} {algo} seed {seed}: coloring failed verification");
        Status::Error
    } else if out.timed_out {
        Status::Timeout
    } else {
        Status::Ok
    };
    BenchRecord {
        instance: name.to_string(),
        n: graph.vertex_count(),
        m: graph.edge_count(),
        algorithm: algo.name().to_string(),
        seed,
        colors: (status == Status::Ok).then(|| out.coloring.used()),
        time_ms: if config.record_time {
            out.elapsed.as_millis() as u64
        } else {
            0
        },
        regret_events: out.regret_events,
        rollbacks_accepted: out.rollbacks_accepted,
        reference_chi: reference.map(|r| r.to_string()),
        status,
    }
}

pub fn write_csv<W: Write>(records: &[BenchRecord], out: W) -> Result<(), BenchError> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    w.flush().map_err(|source| BenchError::Io {
        path: PathBuf::from("<csv>"),
        source,
    })
}

/// Best-of-seeds color count per algorithm for one instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SummaryRow {
    pub instance: String,
    pub reference_chi: Option<String>,
    pub best: BTreeMap<String, Option<Color>>,
}

pub fn summarize(records: &[BenchRecord]) -> Vec<SummaryRow> {
    let mut rows: BTreeMap<&str, SummaryRow> = BTreeMap::new();
    for r in records {
        let row = rows.entry(&r.instance).or_insert_with(|| SummaryRow {
            instance: r.instance.clone(),
            reference_chi: r.reference_chi.clone(),
            best: BTreeMap::new(),
        });
        let best = row.best.entry(r.algorithm.clone()).or_insert(None);
        if let Some(c) = r.colors {
            *best = Some(best.map_or(c, |b| b.min(c)));
        }
    }
    rows.into_values().collect()
}

#[derive(Serialize)]
struct JsonReport<'a> {
    records: &'a [BenchRecord],
    summary: Vec<SummaryRow>,
}

pub fn write_json<W: Write>(records: &[BenchRecord], out: W) -> Result<(), BenchError> {
    let report = JsonReport {
        records,
        summary: summarize(records),
    };
    serde_json::to_writer_pretty(out, &report)?;
    Ok(())
}

/// Plain-text table of best-of-seeds results, one line per instance.
pub fn format_summary(summary: &[SummaryRow], algorithms: &[Algorithm]) -> String {
    let mut s = format!("{:<20} {:>7}", "instance", "chi");
    for a in algorithms {
        s.push_str(&format!(" {:>18}", a.name()));
    }
    s.push('\n');
    for row in summary {
        s.push_str(&format!(
            "{:<20} {:>7}",
            row.instance,
            row.reference_chi.as_deref().unwrap_or("-")
        ));
        for a in algorithms {
            let cell = match row.best.get(a.name()) {
                Some(Some(c)) => c.to_string(),
                _ => "-".to_string(),
            };
            s.push_str(&format!(" {cell:>18}"));
        }
        s.push('\n');
    }
    s
}
