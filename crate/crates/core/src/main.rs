use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use turbocolor::bench::{
    self, format_summary, list_instances, run_algorithm, Algorithm, BenchConfig, ReferenceTable,
    RunOptions,
};
use turbocolor::coloring::{parse_assignment, write_assignment};
use turbocolor::{read_dimacs_file, verify, Color, Coloring, Graph};

const EXIT_INPUT: u8 = 1;
const EXIT_INTERNAL: u8 = 2;
const EXIT_IMPROPER: u8 = 3;

#[derive(Parser)]
#[command(
    name = "turbocolor",
    version,
    about = "Graph coloring heuristics and benchmark harness"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Color one DIMACS graph.
    Color(ColorArgs),
    /// Run algorithms over a directory of DIMACS graphs.
    Bench(BenchArgs),
    /// Check an assignment file against a graph.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct ColorArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value = "dyn-tc")]
    algo: Algorithm,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Color budget for dyn-tc; defaults to the greedy-lf result.
    #[arg(long)]
    k_best: Option<Color>,
    #[arg(long)]
    time_limit_s: Option<f64>,
    /// Write the assignment here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, env = "TURBOCOLOR_INSTANCES")]
    instances: PathBuf,
    /// Comma-separated algorithms; all by default.
    #[arg(long, value_delimiter = ',')]
    algo: Vec<Algorithm>,
    #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,5")]
    seeds: Vec<u64>,
    #[arg(long)]
    k_best: Option<Color>,
    /// Per-run limit; runs past it are reported as timeouts.
    #[arg(long)]
    time_limit_s: Option<f64>,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    json: Option<PathBuf>,
    /// Reference chromatic numbers (CSV); the bundled table by default.
    #[arg(long)]
    refs: Option<PathBuf>,
    /// Write time_ms as 0 for reproducible output.
    #[arg(long)]
    no_time: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    assignment: PathBuf,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let code = run(
        std::env::args_os(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    ExitCode::from(code)
}

fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
                EXIT_INPUT
            } else {
                let _ = out.write_all(rendered.as_bytes());
                0
            };
        }
    };
    let result = match cli.command {
        Command::Color(args) => run_color(args, out),
        Command::Bench(args) => run_bench(args, out),
        Command::Verify(args) => run_verify(args, out),
    };
    match result {
        Ok(code) => code,
        Err((code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

type CmdResult = Result<u8, (u8, String)>;

fn input_err(msg: impl ToString) -> (u8, String) {
    (EXIT_INPUT, msg.to_string())
}

fn time_limit(secs: Option<f64>) -> Result<Option<Duration>, (u8, String)> {
    secs.map(|s| {
        Duration::try_from_secs_f64(s).map_err(|_| input_err(format!("invalid time limit {s}")))
    })
    .transpose()
}

fn load_graph(path: &Path) -> Result<Graph, (u8, String)> {
    read_dimacs_file(path)
        .map(|d| d.graph)
        .map_err(|e| input_err(format!("{}: {e}", path.display())))
}

fn run_color(args: ColorArgs, out: &mut dyn Write) -> CmdResult {
    let graph = load_graph(&args.input)?;
    let opts = RunOptions {
        k_best: args.k_best,
        time_limit: time_limit(args.time_limit_s)?,
    };
    let result = run_algorithm(&graph, args.algo, args.seed, &opts);
    match verify(&graph, &result.coloring, None) {
        Ok(bad) if bad.is_empty() => {}
        _ => {
            return Err((
                EXIT_INTERNAL,
                format!("{} produced an improper coloring", args.algo),
            ))
        }
    }
    if let Some(path) = &args.out {
        File::create(path)
            .and_then(|f| write_assignment(&result.coloring, BufWriter::new(f)))
            .map_err(|e| input_err(format!("{}: {e}", path.display())))?;
    }
    if result.timed_out {
        log::warn!("time limit reached; repairs stopped early");
    }
    let _ = writeln!(
        out,
        "colors={} time_ms={}",
        result.coloring.used(),
        result.elapsed.as_millis()
    );
    Ok(0)
}

fn write_output<F>(path: &Path, write: F) -> Result<(), (u8, String)>
where
    F: FnOnce(BufWriter<File>) -> Result<(), bench::BenchError>,
{
    let file = File::create(path).map_err(|e| input_err(format!("{}: {e}", path.display())))?;
    write(BufWriter::new(file)).map_err(|e| input_err(format!("{}: {e}", path.display())))
}

fn run_bench(args: BenchArgs, out: &mut dyn Write) -> CmdResult {
    let instances = list_instances(&args.instances).map_err(input_err)?;
    let refs = match &args.refs {
        Some(path) => ReferenceTable::load(path).map_err(input_err)?,
        None => ReferenceTable::bundled(),
    };
    let algorithms = if args.algo.is_empty() {
        Algorithm::ALL.to_vec()
    } else {
        args.algo
    };
    let config = BenchConfig {
        algorithms: algorithms.clone(),
        seeds: args.seeds,
        k_best: args.k_best,
        time_limit: time_limit(args.time_limit_s)?,
        record_time: !args.no_time,
    };
    let records = bench::run_bench(&instances, &config, &refs);

    if let Some(path) = &args.csv {
        write_output(path, |w| bench::write_csv(&records, w))?;
    }
    if let Some(path) = &args.json {
        write_output(path, |w| bench::write_json(&records, w))?;
    }
    let summary = bench::summarize(&records);
    let _ = out.write_all(format_summary(&summary, &algorithms).as_bytes());
    Ok(0)
}

fn run_verify(args: VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let graph = load_graph(&args.input)?;
    let labels = File::open(&args.assignment)
        .map_err(Into::into)
        .and_then(|f| parse_assignment(BufReader::new(f), graph.vertex_count()))
        .map_err(|e| input_err(format!("{}: {e}", args.assignment.display())))?;
    let coloring =
        Coloring::normalized(labels).expect("labels are positive and sized to the graph");
    let conflicts = verify(&graph, &coloring, None).expect("coloring matches the graph");
    if conflicts.is_empty() {
        let _ = writeln!(out, "OK colors={}", coloring.used());
        return Ok(0);
    }
    let _ = writeln!(out, "IMPROPER conflicts={}", conflicts.len());
    for (u, v) in conflicts.iter().take(10) {
        let _ = writeln!(out, "conflict {} {}", u + 1, v + 1);
    }
    Ok(EXIT_IMPROPER)
}
