//! `unfriendly`: generate graphs, run the flip dynamics with exact
//! verification, query the exhaustive oracle, and probe ball growth and
//! frozen-boundary truncations.
//!
//! Exit codes: 0 all verifications passed, 1 a verification failed, 2 usage
//! or input error.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use unfriendly_core::ball::{growth_profile, log_growth_rate};
use unfriendly_core::dynamics::is_unfriendly;
use unfriendly_core::harness::boundary::boundary_experiment;
use unfriendly_core::harness::experiment::{
    ExperimentConfig, GraphSource, InitialColoring, MeasureSource, Permutation, ScheduleKind,
    VerifyToggles,
};
use unfriendly_core::harness::{
    generate, growth_csv, run_experiment, summary_csv, write_trace_jsonl, Family, GeneratorSpec,
};
use unfriendly_core::measure::parse_rational;
use unfriendly_core::{cocycle_bound_ok, oracle, Coloring, Error, FiniteGraph};

#[derive(Parser)]
#[command(name = "unfriendly", version, about = "Flip dynamics for unfriendly 2-colorings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated graph in `n m` / `u v` text form.
    Generate {
        #[arg(long = "gen", value_name = "FAMILY:PARAMS")]
        family: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the flip sequence and the requested verifiers.
    Run(RunArgs),
    /// Check that a coloring is unfriendly (and optionally a measure's cocycle bound).
    Verify {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long)]
        measure: Option<String>,
    },
    /// Exhaustive enumeration of all colorings (at most 24 vertices).
    Oracle {
        #[command(flatten)]
        graph: GraphArgs,
        /// Write the full per-coloring flag table as CSV.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Ball sizes |B(x, r)| for r = 0..=radius as `r,ball_size` rows.
    Growth {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        center: usize,
        #[arg(long)]
        radius: usize,
    },
    /// Frozen-boundary truncation experiment (empirical, no theorem asserted).
    Boundary {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        center: usize,
        /// Interior radius r whose stabilization is reported.
        #[arg(long)]
        interior: usize,
        /// Ball radius R; the sphere at distance R is frozen.
        #[arg(long)]
        radius: usize,
        #[arg(long)]
        max_rounds: usize,
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Per-distance flip counts as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GraphSourceArgs {
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long = "gen", value_name = "FAMILY:PARAMS")]
    family: Option<String>,
}

#[derive(Args)]
struct GraphArgs {
    #[command(flatten)]
    source: GraphSourceArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl GraphArgs {
    fn source(&self) -> Result<GraphSource, Error> {
        match (&self.source.graph, &self.source.family) {
            (Some(p), _) => Ok(GraphSource::File(p.clone())),
            (None, Some(f)) => Ok(GraphSource::Generated(GeneratorSpec::new(f.parse()?, self.seed))),
            (None, None) => Err(Error::Config("one of --graph or --gen is required".into())),
        }
    }

    fn load(&self) -> Result<FiniteGraph, Error> {
        match self.source()? {
            GraphSource::File(p) => FiniteGraph::parse_text(&fs::read_to_string(p)?),
            GraphSource::Generated(spec) => generate(&spec),
            GraphSource::Given(g) => Ok(g),
        }
    }
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// uniform | FILE | ball:CENTER[:EPS] (EPS defaults to 1/d)
    #[arg(long, default_value = "uniform")]
    measure: String,
    /// greedy | singleton:identity|reverse|random|ID,ID,... | file:PATH
    #[arg(long, default_value = "greedy")]
    schedule: String,
    /// zeros | FILE
    #[arg(long, default_value = "zeros")]
    c0: String,
    #[arg(long)]
    max_rounds: Option<usize>,
    /// Comma-separated subset of claims,telescope,unfriendly,oracle (or all, none).
    #[arg(long, default_value = "claims,telescope,unfriendly")]
    verify: String,
    /// Line-delimited JSON trace, one record per round.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Per-round CSV with decimal approximations.
    #[arg(long)]
    summary: Option<PathBuf>,
    /// Decide flips within a round in parallel.
    #[arg(long)]
    parallel: bool,
}

fn parse_measure(s: &str) -> Result<MeasureSource, Error> {
    if s == "uniform" {
        return Ok(MeasureSource::Uniform);
    }
    if let Some(rest) = s.strip_prefix("ball:") {
        let (center, eps) = match rest.split_once(':') {
            Some((c, e)) => (c, Some(parse_rational(e).map_err(Error::Config)?)),
            None => (rest, None),
        };
        let center = center
            .parse()
            .map_err(|_| Error::Config(format!("bad ball center `{center}`")))?;
        return Ok(MeasureSource::Ball { center, epsilon: eps });
    }
    Ok(MeasureSource::File(PathBuf::from(s)))
}

fn parse_schedule(s: &str, seed: u64) -> Result<ScheduleKind, Error> {
    if s == "greedy" {
        return Ok(ScheduleKind::Greedy);
    }
    if let Some(path) = s.strip_prefix("file:") {
        return Ok(ScheduleKind::File(PathBuf::from(path)));
    }
    let perm = s
        .strip_prefix("singleton:")
        .ok_or_else(|| Error::Config(format!("unknown schedule `{s}`")))?;
    let perm = match perm {
        "identity" => Permutation::Identity,
        "reverse" => Permutation::Reverse,
        "random" => Permutation::Seeded(seed),
        list => Permutation::Explicit(
            list.split(',')
                .map(|t| t.trim().parse().map_err(|_| Error::Config(format!("bad vertex `{t}`"))))
                .collect::<Result<_, _>>()?,
        ),
    };
    Ok(ScheduleKind::Singleton(perm))
}

fn write_out(path: Option<&PathBuf>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn print_json(value: &impl serde::Serialize) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(value).map_err(io::Error::from)?;
    println!("{text}");
    Ok(())
}

/// `Ok(true)` when every check passed.
fn execute(cli: Cli) -> Result<bool, Error> {
    match cli.command {
        Command::Generate { family, seed, output } => {
            let fam: Family = family.parse()?;
            let g = generate(&GeneratorSpec::new(fam, seed))?;
            write_out(output.as_ref(), &g.to_text())?;
            Ok(true)
        }
        Command::Run(args) => {
            let mut cfg = ExperimentConfig::new(args.graph.source()?);
            cfg.measure = parse_measure(&args.measure)?;
            cfg.schedule = parse_schedule(&args.schedule, args.graph.seed)?;
            cfg.c0 = match args.c0.as_str() {
                "zeros" => InitialColoring::Zeros,
                path => InitialColoring::File(PathBuf::from(path)),
            };
            cfg.max_rounds = args.max_rounds;
            cfg.verify = VerifyToggles::parse(&args.verify)?;
            cfg.parallel = args.parallel;
            let exp = cfg.resolve()?;
            let report = run_experiment(&exp)?;
            if let Some(p) = &args.trace {
                write_trace_jsonl(&report.trace, io::BufWriter::new(fs::File::create(p)?))?;
            }
            if let Some(p) = &args.summary {
                fs::write(p, summary_csv(&report.trace))?;
            }
            print_json(&report.summary)?;
            Ok(true)
        }
        Command::Verify { graph, coloring, measure } => {
            let g = graph.load()?;
            let c = Coloring::parse_text(&fs::read_to_string(coloring)?)?;
            if c.len() != g.vertex_count() {
                return Err(Error::LengthMismatch {
                    expected: g.vertex_count(),
                    found: c.len(),
                });
            }
            let check = is_unfriendly(&g, &c);
            let bound = match measure.as_deref() {
                None => None,
                Some(m) => {
                    let mut cfg = ExperimentConfig::new(GraphSource::Given(g.clone()));
                    cfg.measure = parse_measure(m)?;
                    let mu = cfg.resolve()?.measure;
                    Some(cocycle_bound_ok(&g, &mu).map_err(|e| e.to_string()))
                }
            };
            let bound_ok = bound.as_ref().is_none_or(|b| b.is_ok());
            print_json(&json!({
                "unfriendly": check.holds(),
                "violators": check.violators,
                "cocycle_bound": bound.map(|b| match b {
                    Ok(()) => json!({"ok": true}),
                    Err(e) => json!({"ok": false, "violation": e}),
                }),
            }))?;
            Ok(check.holds() && bound_ok)
        }
        Command::Oracle { graph, table } => {
            let g = graph.load()?;
            let e = oracle::enumerate(&g)?;
            let (best, mono) = oracle::min_monochrome_coloring(&g)?;
            if let Some(p) = &table {
                fs::write(p, e.to_csv())?;
            }
            print_json(&json!({
                "vertices": g.vertex_count(),
                "colorings": 1u64 << g.vertex_count(),
                "unfriendly": e.count(oracle::UNFRIENDLY),
                "fixed_points": e.count(oracle::FIXED_POINT),
                "local_max_cuts": e.count(oracle::LOCAL_MAX_CUT),
                "equivalent": e.all_agree(),
                "min_monochromatic_edges": mono,
                "min_monochromatic_coloring": best.as_slice(),
            }))?;
            Ok(e.all_agree())
        }
        Command::Growth { graph, center, radius } => {
            let g = graph.load()?;
            let profile = growth_profile(&g, center, radius)?;
            write_out(None, &growth_csv(&profile))?;
            if let Some(rate) = log_growth_rate(&profile) {
                eprintln!("log growth rate ln|B(x,{radius})|/{radius} = {rate:.6}");
            }
            Ok(true)
        }
        Command::Boundary {
            graph,
            center,
            interior,
            radius,
            max_rounds,
            trace,
            csv,
        } => {
            let g = graph.load()?;
            let (report, run) = boundary_experiment(&g, center, interior, radius, max_rounds)?;
            if let Some(p) = &trace {
                write_trace_jsonl(&run, io::BufWriter::new(fs::File::create(p)?))?;
            }
            if let Some(p) = &csv {
                fs::write(p, report.to_csv())?;
            }
            print_json(&report)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.is_verification_failure() => {
            eprintln!("{e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
