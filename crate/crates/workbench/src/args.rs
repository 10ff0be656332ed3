use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use reflexive_core::pathcond::DEFAULT_BRUTEFORCE_BUDGET;
use reflexive_core::slupecki::DEFAULT_NODE_BUDGET;
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "reflexive", version, about = "Classification experiments on reflexive cycles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the canonical word of every reflexive cycle of a girth, one per line.
    Enumerate { girth: usize },
    /// Classify every cycle in a girth range and write a report.
    Classify(ClassifyArgs),
    /// Search for a homomorphism between two graphs.
    Hom(HomArgs),
    /// Lift a homomorphism into a cycle through the covering path.
    Lift(LiftArgs),
    /// Write a graph, or a window of a cycle's covering path, as graphviz DOT.
    ExportDot(DotArgs),
}

/// Graphs are given as `path:WORD`, `cycle:WORD` or a bare `WORD` (a path).
#[derive(Debug, Args)]
pub struct HomArgs {
    /// Source graph: `path:W`, `cycle:W`, or a bare word (a path).
    #[arg(long)]
    pub from: String,
    /// Target graph, same syntax.
    #[arg(long)]
    pub to: String,
    /// Fix a source vertex: `--pin a=b`. Repeatable.
    #[arg(long = "pin", value_parser = parse_pin)]
    pub pins: Vec<(usize, usize)>,
}

#[derive(Debug, Args)]
pub struct LiftArgs {
    /// The target cycle, as a word.
    #[arg(long)]
    pub cycle: String,
    /// Source graph; defaults to the cycle itself.
    #[arg(long)]
    pub source: Option<String>,
    /// Images of the source vertices, comma separated; defaults to the identity.
    #[arg(long, value_delimiter = ',')]
    pub map: Option<Vec<usize>>,
    #[arg(long, default_value_t = 0)]
    pub root: usize,
    /// Gate vertex `a`; the gate edge is the one entering `a`.
    #[arg(long, default_value_t = 0)]
    pub gate: usize,
    /// Levels on each side of the window; defaults to the source size.
    #[arg(long)]
    pub levels: Option<usize>,
}

#[derive(Debug, Args)]
pub struct DotArgs {
    /// `path:W`, `cycle:W`, or a bare word (a path).
    pub graph: String,
    /// Leave out the loops at every vertex.
    #[arg(long)]
    pub no_loops: bool,
    /// Export the covering-path window with this many levels on each side
    /// instead of the graph itself (cycles only).
    #[arg(long)]
    pub cover_levels: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub gate: usize,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodName {
    Syntactic,
    Bruteforce,
    /// The word criterion with the `W_N` candidate for every spanning path.
    Witness,
    Slupecki,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// Inclusive girth range `A..B`, or a single girth.
    #[arg(long, value_parser = parse_girth_range)]
    pub girth: RangeInclusive<usize>,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "syntactic,bruteforce,slupecki")]
    pub methods: Vec<MethodName>,
    /// Run the polymorphism search at this arity only, instead of the
    /// default ladder (2 everywhere, plus 3 at girth 4).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=8))]
    pub arity: Option<u64>,
    /// Repetition length for the witness method; defaults to `2 * girth + 2`.
    #[arg(long = "witness-N", value_parser = clap::value_parser!(u64).range(1..))]
    pub witness_n: Option<u64>,
    /// Node cap per (cycle, arity) search.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_nodes: u64,
    /// Wall-clock cap in seconds per (cycle, arity) search.
    #[arg(long, value_parser = parse_seconds)]
    pub budget_secs: Option<f64>,
    /// Largest girth the brute-force method runs on; larger ones are skipped.
    #[arg(long, default_value_t = DEFAULT_BRUTEFORCE_BUDGET)]
    pub bruteforce_max_girth: usize,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: Option<u64>,
    /// Directory of per-cycle records reused across runs.
    #[arg(long)]
    pub cache: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Report file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Timings file (JSON lines); defaults to `<out>.timings.jsonl` when
    /// `--out` is given.
    #[arg(long)]
    pub timings: Option<PathBuf>,
}

fn parse_pin(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once('=').ok_or_else(|| format!("expected a=b, got {s:?}"))?;
    let parse = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}"));
    Ok((parse(a)?, parse(b)?))
}

pub fn parse_girth_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let parse = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let g = parse(s)?;
            (g, g)
        }
    };
    if lo < 3 {
        return Err(format!("girth must be at least 3, got {lo}"));
    }
    if lo > hi {
        return Err(format!("empty girth range {lo}..{hi}"));
    }
    Ok(lo..=hi)
}

fn parse_seconds(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() && x > 0.0 => Ok(x),
        Ok(x) => Err(format!("budget must be positive, got {x}")),
        Err(e) => Err(format!("{s:?}: {e}")),
    }
}
