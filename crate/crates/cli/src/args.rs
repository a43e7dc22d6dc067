//! Command-line grammar.

use std::path::PathBuf;

use brannan_core::minimize::{Axis, FunctionId};
use brannan_core::rng::DEFAULT_SEED;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::parse;

/// Numerical certification of |A_n(a, b, w)| <= A_n(a, b, 1) for the
/// coefficients of (1 + w z)^a (1 - z)^-b.
///
/// Exit status: 0 pass, 1 certification or tolerance failure, 2 usage
/// error, 3 numerical failure. Real-valued flags accept `pi` and `phi0`.
#[derive(Parser, Debug)]
#[command(name = "brannan", version)]
pub struct Cli {
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, env = "BRANNAN_THREADS", default_value_t = 0)]
    pub threads: usize,
    /// Seed of the sampled verification suites (decimal or 0x-hex).
    #[arg(long, global = true, value_parser = parse::seed, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reproduce the reference constants and compare with the frozen table.
    Constants(ConstantsArgs),
    /// Run certification suites.
    Verify(VerifyArgs),
    /// Tabulate a function over two axes as CSV.
    Surface(SurfaceArgs),
    /// Minimize a function over a box.
    Minimize(MinimizeArgs),
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    M0,
    Minf,
    P5,
    F1,
    F2,
    PiSlice,
    All,
}

#[derive(Args, Debug)]
pub struct ConstantsArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub which: Which,
    /// Feed the frozen m0 and m_inf into the P5 searches (default).
    #[arg(long, conflicts_with = "recompute")]
    pub use_frozen: bool,
    /// Recompute m0 and m_inf and feed them into the P5 searches.
    #[arg(long)]
    pub recompute: bool,
    #[arg(long)]
    pub json: bool,
    /// Search setting, repeatable: nodes_alpha, nodes_beta, nodes_phi,
    /// scan_s, refine_depth, tol_abscissa, prune.
    #[arg(long = "cfg", value_name = "KEY=VALUE", value_parser = parse::key_value)]
    pub cfg: Vec<(String, String)>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Representations,
    Decomposition,
    Chain,
    Brannan,
    Monotonicity,
    All,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridPreset {
    Default,
    Coarse,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalfArg {
    Both,
    F1,
    F2,
}

/// A comma-separated degree list, kept as one flag value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Degrees(pub Vec<u32>);

fn degrees(s: &str) -> Result<Degrees, String> {
    parse::n_list(s).map(Degrees)
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
    /// Degrees, e.g. 3,5,7 (default per suite).
    #[arg(long, value_parser = degrees)]
    pub n_list: Option<Degrees>,
    /// Grid and sample density.
    #[arg(long, value_enum, default_value = "default")]
    pub grid: GridPreset,
    /// Random samples of the sampled suites (default 200, coarse 50).
    #[arg(long)]
    pub samples: Option<usize>,
    /// Part of the square for the monotonicity suite.
    #[arg(long, value_enum, default_value = "both")]
    pub half: HalfArg,
    #[arg(long)]
    pub json: bool,
}

fn function_id(s: &str) -> Result<FunctionId, String> {
    FunctionId::parse(s.trim()).ok_or_else(|| format!("unknown function {s:?} (L, L0, Linf, P5, F1, F2, F, smoke-quad)"))
}

#[derive(Args, Debug)]
pub struct SurfaceArgs {
    /// L, L0, Linf, P5, F1, F2 or F.
    #[arg(long, value_parser = function_id)]
    pub func: FunctionId,
    /// Fixed coordinate, repeatable (defaults alpha=0 beta=0 phi=phi0 s=0 n=5).
    #[arg(long, value_name = "NAME=VALUE", value_parser = parse::fix)]
    pub fix: Vec<(Axis, f64)>,
    /// Free axis, given exactly twice; the first varies slowest.
    #[arg(long, value_name = "NAME:MIN:MAX:COUNT", value_parser = parse::sweep)]
    pub axes: Vec<(Axis, f64, f64, usize)>,
    /// Output file; standard output if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionArg {
    All,
    /// alpha >= beta
    Ge,
    /// alpha <= beta
    Le,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanArg {
    /// Logarithmic when the inner range spans two decades or more.
    Auto,
    Uniform,
    Log,
}

#[derive(Args, Debug)]
pub struct MinimizeArgs {
    #[arg(long, value_parser = function_id)]
    pub func: FunctionId,
    /// Searched range, repeatable; at most three outer axes.
    #[arg(long = "box", value_name = "AXIS:MIN:MAX", value_parser = parse::range)]
    pub boxes: Vec<(Axis, f64, f64)>,
    /// Box axis minimized per outer node (implied when only one box is given).
    #[arg(long, value_parser = parse::axis)]
    pub inner: Option<Axis>,
    #[arg(long, value_name = "NAME=VALUE", value_parser = parse::fix)]
    pub fix: Vec<(Axis, f64)>,
    #[arg(long = "cfg", value_name = "KEY=VALUE", value_parser = parse::key_value)]
    pub cfg: Vec<(String, String)>,
    /// Feasible (alpha, beta) region (default: ge for F1, le for F2).
    #[arg(long, value_enum)]
    pub region: Option<RegionArg>,
    #[arg(long, value_enum, default_value = "auto")]
    pub scan: ScanArg,
    #[arg(long)]
    pub json: bool,
}
