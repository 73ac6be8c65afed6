use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use topk_cli::query::{self, Query};
use topk_cli::stats::StatsReport;
use topk_cli::{build_options_from_env, read_input, verify, CliError, Kind, Params, Result, Snapshot};

#[derive(Parser)]
#[command(name = "topk", version, about = "Top-K color reporting and ranked document retrieval")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an index from a color array or corpus file and write a snapshot
    Build {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Sparsification factor (sparse kind)
        #[arg(long, default_value_t = 2)]
        f: u32,
        /// Largest supported t (docindex kind); defaults to the longest document
        #[arg(long)]
        max_t: Option<u64>,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
    /// Answer one query against a snapshot
    Query(QueryArgs),
    /// Check random queries against the brute-force oracle
    Verify {
        #[arg(long)]
        snapshot: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print space and timing statistics of a snapshot
    Stats {
        #[arg(long)]
        snapshot: PathBuf,
    },
}

#[derive(Args)]
struct QueryArgs {
    #[arg(long)]
    snapshot: PathBuf,
    /// 1-based inclusive range and K
    #[arg(long, num_args = 3, value_names = ["A", "B", "K"], conflicts_with = "pattern", required_unless_present = "pattern")]
    range: Option<Vec<usize>>,
    #[arg(long)]
    pattern: Option<String>,
    #[arg(long, requires = "pattern")]
    k: Option<usize>,
    /// Minimum occurrence count
    #[arg(long, requires = "pattern")]
    t: Option<usize>,
}

const STATS_SAMPLES: usize = 200;
const STATS_SEED: u64 = 7;

fn run(cli: Cli) -> Result<String> {
    let opts = build_options_from_env();
    match cli.command {
        Command::Build {
            kind,
            f,
            max_t,
            input,
            output,
        } => {
            let payload = read_input(&input, kind)?;
            let snap = Snapshot::new(kind, Params { f, max_t: max_t.unwrap_or(0) }, payload)?;
            let (_, report) = StatsReport::measure(&snap, &opts, STATS_SAMPLES, STATS_SEED)?;
            snap.save(&output)?;
            Ok(report.render())
        }
        Command::Query(q) => {
            let snap = Snapshot::load(&q.snapshot)?;
            let query = match (q.range, q.pattern) {
                (Some(r), _) => Query::Range { a: r[0], b: r[1], k: r[2] },
                (None, Some(p)) => Query::Pattern {
                    pattern: p.into_bytes(),
                    k: q.k.ok_or_else(|| CliError::Usage("--pattern needs --k".into()))?,
                    t: q.t,
                },
                (None, None) => unreachable!("clap requires one query form"),
            };
            let engine = snap.build(&opts)?;
            Ok(query::format_results(&query::run(&snap, &engine, &query)?))
        }
        Command::Verify { snapshot, trials, seed } => {
            let snap = Snapshot::load(&snapshot)?;
            let engine = snap.build(&opts)?;
            let report = verify::verify(&snap, &engine, trials, seed);
            if report.passed() {
                Ok(report.render())
            } else {
                print!("{}", report.render());
                Err(CliError::Mismatch(report.mismatches))
            }
        }
        Command::Stats { snapshot } => {
            let snap = Snapshot::load(&snapshot)?;
            let (_, report) = StatsReport::measure(&snap, &opts, STATS_SAMPLES, STATS_SEED)?;
            Ok(report.render())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(CliError::Usage(String::new()).exit_code());
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
