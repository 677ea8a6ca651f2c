use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{ArgAction, Parser, Subcommand, ValueEnum};
use measiso_cli::commands::{self, Candidates, CheckKind, Outcome, EXIT_USAGE};
use measiso_cli::io::{graph_arg, parse_point, split_list};
use measiso_cli::report::ExperimentReport;
use measiso_cli::suites::{
    self, CrosscheckParams, HarnessOptions, MainTheoremParams, NestingParams, ThreeConnectedParams,
};

/// Graph equivalences and measurement sets of frameworks.
///
/// Exit codes: 0 equivalent (or success), 1 not equivalent (or a failed
/// experiment), 2 unknown, 3 usage or parse error.
#[derive(Debug, Parser)]
#[command(name = "measiso", version)]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Ambient dimension.
    #[arg(long, global = true)]
    d: Option<usize>,
    /// Max-norm residual accepted as a realization.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,
    /// Solver restarts per membership query.
    #[arg(long, global = true, default_value_t = 32)]
    restarts: usize,
    /// Skip reversals that would create parallel edges.
    #[arg(long, global = true)]
    simple_only: bool,
    /// Reversal depth limit for the orbit search (unlimited by default).
    #[arg(long, global = true)]
    max_depth: Option<usize>,
    /// Print JSON (`--json false` prints one line of text instead).
    #[arg(
        long,
        global = true,
        default_value_t = true,
        action = ArgAction::Set,
        num_args = 0..=1,
        default_missing_value = "true"
    )]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Iso,
    #[value(name = "1iso")]
    OneIso,
    #[value(name = "2iso")]
    TwoIso,
    Cycleiso,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Suite {
    WhitneyCrosscheck,
    MainTheorem,
    Nesting,
    ThreeConnected,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide an equivalence between two graphs (files or builtins like `k4`, `c5`).
    Check { kind: Kind, a: String, b: String },
    /// Sample, test, project and separate measurement points.
    #[command(subcommand)]
    Measure(Measure),
    /// Run an experiment suite and print its report.
    Experiment {
        suite: Suite,
        /// Exhaustive bound for the cross-check.
        #[arg(long)]
        max_edges: Option<usize>,
        /// Random or constructed pairs.
        #[arg(long)]
        pairs: Option<usize>,
        /// Pairs that are not cycle isomorphic (main-theorem suite).
        #[arg(long)]
        nonpairs: Option<usize>,
        /// Samples per case.
        #[arg(long)]
        n: Option<usize>,
        /// Comma-separated graphs (builtins or files) for nesting and three-connected.
        #[arg(long)]
        graphs: Option<String>,
        /// Random graphs added to the listed ones.
        #[arg(long)]
        random: Option<usize>,
        /// Also write the report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum Measure {
    /// Squared edge lengths of random configurations.
    Sample {
        graph: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        spread: f64,
    },
    /// Membership of a point in the measurement set.
    Member {
        graph: String,
        /// Comma list in edge order (or along --axes), inline JSON, or @file.
        #[arg(long)]
        target: String,
        #[arg(long)]
        axes: Option<String>,
    },
    /// Restrict a point to some of its axes.
    Project {
        /// Inline JSON point or @file.
        #[arg(long)]
        point: String,
        /// Comma-separated edge ids to keep.
        #[arg(long)]
        keep: String,
    },
    /// A cycle and point separating the measurement sets of two graphs.
    Witness {
        a: String,
        b: String,
        /// `positional`, `all`, or a number of random bijections.
        #[arg(long, default_value = "positional")]
        candidates: Candidates,
    },
}

fn harness(cli: &Cli) -> HarnessOptions {
    HarnessOptions {
        seed: cli.seed,
        tol: cli.tol,
        restarts: cli.restarts,
        max_depth: cli.max_depth,
        simple_only: cli.simple_only,
    }
}

fn named_graphs(list: &str) -> Result<Vec<(String, measiso_core::Graph)>> {
    split_list(list)
        .into_iter()
        .map(|s| Ok((s.clone(), graph_arg(&s)?)))
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn experiment(
    cli: &Cli,
    suite: Suite,
    max_edges: Option<usize>,
    pairs: Option<usize>,
    nonpairs: Option<usize>,
    n: Option<usize>,
    graphs: Option<&str>,
    random: Option<usize>,
) -> Result<ExperimentReport> {
    let opts = harness(cli);
    match suite {
        Suite::WhitneyCrosscheck => {
            let mut p = CrosscheckParams::default();
            p.max_edges = max_edges.unwrap_or(p.max_edges);
            p.random_pairs = pairs.unwrap_or(p.random_pairs);
            suites::whitney_crosscheck(&opts, &p)
        }
        Suite::MainTheorem => {
            let mut p = MainTheoremParams::default();
            p.pairs = pairs.unwrap_or(p.pairs);
            p.nonpairs = nonpairs.unwrap_or(p.nonpairs);
            p.samples = n.unwrap_or(p.samples);
            p.max_edges = max_edges.unwrap_or(p.max_edges);
            if let Some(d) = cli.d {
                p.dims = vec![d];
            }
            suites::main_theorem(&opts, &p)
        }
        Suite::Nesting => {
            let mut p = NestingParams::default();
            p.samples = n.unwrap_or(p.samples);
            if let Some(d) = cli.d {
                p.dims = vec![d];
            }
            if let Some(list) = graphs {
                p.graphs = named_graphs(list)?;
                p.random_graphs = 0;
            }
            p.random_graphs = random.unwrap_or(p.random_graphs);
            suites::nesting(&opts, &p)
        }
        Suite::ThreeConnected => {
            let mut p = ThreeConnectedParams::default();
            if let Some(list) = graphs {
                p.graphs = named_graphs(list)?;
                p.random_graphs = 0;
            }
            p.random_graphs = random.unwrap_or(p.random_graphs);
            suites::three_connected(&opts, &p)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    let opts = harness(cli);
    let d = cli.d.unwrap_or(2);
    match &cli.command {
        Command::Check { kind, a, b } => {
            let kind = match kind {
                Kind::Iso => CheckKind::Iso,
                Kind::OneIso => CheckKind::OneIso,
                Kind::TwoIso => CheckKind::TwoIso,
                Kind::Cycleiso => CheckKind::CycleIso,
            };
            commands::check(kind, &graph_arg(a)?, &graph_arg(b)?, &opts)
        }
        Command::Measure(Measure::Sample { graph, n, spread }) => {
            commands::sample(&graph_arg(graph)?, d, *n, cli.seed, *spread)
        }
        Command::Measure(Measure::Member {
            graph,
            target,
            axes,
        }) => {
            let g = graph_arg(graph)?;
            let t = parse_point(target, Some(&g), axes.as_deref())?;
            commands::member(&g, &t, d, &opts)
        }
        Command::Measure(Measure::Project { point, keep }) => {
            commands::project(&parse_point(point, None, None)?, &split_list(keep))
        }
        Command::Measure(Measure::Witness { a, b, candidates }) => {
            commands::witness(&graph_arg(a)?, &graph_arg(b)?, d, *candidates, &opts)
        }
        Command::Experiment {
            suite,
            max_edges,
            pairs,
            nonpairs,
            n,
            graphs,
            random,
            out,
        } => {
            let report = experiment(
                cli,
                *suite,
                *max_edges,
                *pairs,
                *nonpairs,
                *n,
                graphs.as_deref(),
                *random,
            )?;
            let json = serde_json::to_value(&report)?;
            if let Some(path) = out {
                std::fs::write(path, serde_json::to_string_pretty(&json)?)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            let s = report.summary();
            Ok(Outcome {
                code: report.exit_code(),
                text: format!(
                    "{}: {} cases, {} agreeing, {} disagreeing, {} unknown",
                    report.suite, s.cases, s.agreeing, s.disagreeing, s.unknown
                ),
                json,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("JSON values serialize")
                );
            } else {
                println!("{}", out.text);
            }
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
