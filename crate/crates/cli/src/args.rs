use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "spex",
    version,
    about = "Spectral extremal experiments on planar graphs"
)]
pub struct Cli {
    /// Worker threads for the search commands.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: Option<u16>,

    /// Accepted for reproducibility of scripted runs; every algorithm here is
    /// deterministic and ignores it.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Write the output to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Indent the JSON output.
    #[arg(long, global = true)]
    pub pretty: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a graph and print its graph6 string.
    Construct(ConstructArgs),
    /// Spectral radius of a graph6 graph.
    Rho(RhoArgs),
    /// Planarity verdict for a graph6 graph.
    Planar(InputArgs),
    /// Test a graph6 graph for a forbidden pattern.
    CheckFree(CheckFreeArgs),
    /// Evaluate a freeness predicate on a path partition.
    Predicate(PredicateArgs),
    /// Compare a predicate with direct subgraph search over all partitions.
    OracleVsPredicate(OracleArgs),
    /// Rank K2 + H candidates built from path partitions.
    FamilySearch(FamilySearchArgs),
    /// Rank all connected planar pattern-free graphs of a given order.
    ExtremalSearch(ExtremalSearchArgs),
    /// Perron vector entries against the dominating-vertex bounds.
    PerronReport(RhoArgs),
    /// Apply every (s1, s2)-transformation to a partition.
    TransformAscent(AscentArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// graph6 file; standard input when absent or "-".
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TolArgs {
    /// Residual tolerance; defaults to $SPEX_TOL, then 1e-12.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, default_value_t = spex_core::spectral::DEFAULT_MAX_ITER)]
    pub max_iter: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Family {
    Path,
    Cycle,
    /// Path union for --partition.
    Paths,
    /// K2 + H for --partition.
    Join,
    /// K2 + H(n1, n2) on --n vertices.
    H,
    K2Bipartite,
    K2Plus,
    Cll,
    Theta,
    /// Conjectured extremal graph for --forbid on --n vertices.
    Extremal,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub l: Option<usize>,
    /// Chord position for --family theta.
    #[arg(long)]
    pub a: Option<usize>,
    #[arg(long)]
    pub n1: Option<usize>,
    #[arg(long)]
    pub n2: Option<usize>,
    #[arg(long)]
    pub partition: Option<String>,
    #[arg(long)]
    pub forbid: Option<String>,
    /// Emit the JSON envelope instead of a bare graph6 line.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct RhoArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub tol: TolArgs,
    /// Include the Perron vector.
    #[arg(long)]
    pub perron: bool,
}

#[derive(Debug, Args)]
pub struct CheckFreeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// cll:L, theta:K or g6:<graph6>.
    #[arg(long, alias = "forbid")]
    pub pattern: String,
}

#[derive(Debug, Args)]
pub struct ClaimArgs {
    /// 4, 8 or c33.
    #[arg(long)]
    pub claim: String,
    /// Cycle length for --claim 4.
    #[arg(long)]
    pub l: Option<usize>,
    /// Theta order for --claim 8.
    #[arg(long)]
    pub k: Option<usize>,
}

#[derive(Debug, Args)]
pub struct PredicateArgs {
    #[command(flatten)]
    pub claim: ClaimArgs,
    /// Comma-separated path orders, e.g. 3,2,2.
    #[arg(long)]
    pub partition: String,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub claim: ClaimArgs,
    #[arg(long, default_value_t = 12)]
    pub max_total: usize,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub forbid: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 10)]
    pub top: usize,
    #[arg(long, default_value_t = spex_core::spectral::DEFAULT_GAP_TOL)]
    pub gap_tol: f64,
    #[command(flatten)]
    pub tol: TolArgs,
    /// Also write the ranking as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Record wall-clock time in the report.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct FamilySearchArgs {
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Debug, Args)]
pub struct ExtremalSearchArgs {
    #[command(flatten)]
    pub search: SearchArgs,
    /// Enumerate connected graphs internally (n <= 8).
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    pub internal: bool,
    /// graph6 stream, one graph per line; "-" for standard input.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Skip the planarity re-check for stream candidates.
    #[arg(long, conflicts_with = "internal")]
    pub trust_planar: bool,
    /// Fail on the first malformed stream line instead of skipping it.
    #[arg(long, conflicts_with = "internal")]
    pub strict: bool,
}

#[derive(Debug, Args)]
pub struct AscentArgs {
    #[arg(long)]
    pub forbid: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub partition: String,
    #[arg(long, default_value_t = spex_core::spectral::DEFAULT_GAP_TOL)]
    pub gap_tol: f64,
}
