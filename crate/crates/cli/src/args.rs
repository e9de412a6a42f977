use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use clone_bound::{AnyParams, Bloch, GeneralParams, Params, Rational64};
use num_traits::ToPrimitive;

/// Defaults for every flag. `defaults.json` in this crate mirrors these.
pub mod defaults {
    pub const ETA: &str = "2/3";
    pub const T: &str = "1/3";
    pub const T_XY: &str = "0";
    pub const AXIS_A: &str = "0,0,1";
    pub const AXIS_B: &str = "1,0,0";
    pub const INPUT: &str = "0,0,1";
    pub const SHOTS: u64 = 100_000;
    pub const SEED: u64 = 0;
    pub const OPTIMIZE_RESOLUTION: usize = 2001;
    pub const SWEEP_RESOLUTION: usize = 25;
    pub const METHOD: &str = "both";
    pub const TOL: &str = "1e-7";
    pub const VERIFY_PAIRS: usize = 50;
}

#[derive(Debug, Parser)]
#[command(
    name = "clone-bound",
    version,
    about = "Optimal universal qubit cloning from no-signaling"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check covariance, axial invariance, no-signaling and positivity of a cloner.
    Verify(VerifyArgs),
    /// Maximal shrink factor: closed form and grid search.
    Optimize(OptimizeArgs),
    /// Run the Bužek–Hillery cloner on a pure input.
    Clone(CloneArgs),
    /// Remote-preparation signaling experiment on the singlet.
    Signal(SignalArgs),
    /// Feasibility landscape over an (η, t, t_xy) grid.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Both,
    ClosedForm,
    Grid,
}

/// A comma-separated real 3-vector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Triple(pub [f64; 3]);

#[derive(Debug, Args)]
pub struct ParamArgs {
    /// Shrink factor η (decimal or fraction).
    #[arg(long, default_value = defaults::ETA, value_parser = parse_number, allow_hyphen_values = true)]
    pub eta: f64,
    /// Isotropic correlation t.
    #[arg(long, default_value = defaults::T, value_parser = parse_number, allow_hyphen_values = true)]
    pub t: f64,
    /// Antisymmetric correlation t_xy.
    #[arg(long = "t_xy", default_value = defaults::T_XY, value_parser = parse_number, allow_hyphen_values = true)]
    pub t_xy: f64,
    /// Diagonal correlation tensor t_xx,t_yy,t_zz for ρ_out(ẑ), replacing t and t_xy.
    #[arg(long = "t_diag", value_parser = parse_triple, allow_hyphen_values = true, conflicts_with_all = ["t", "t_xy"])]
    pub t_diag: Option<Triple>,
    /// Parameters as JSON: {"eta","t","t_xy"} or {"eta","t":[[..],[..],[..]]}.
    #[arg(long, value_parser = parse_params, conflicts_with_all = ["eta", "t", "t_xy", "t_diag"])]
    pub params: Option<AnyParams>,
}

impl ParamArgs {
    pub fn resolve(&self) -> Result<AnyParams, String> {
        let p = if let Some(p) = self.params {
            p
        } else if let Some(Triple(d)) = self.t_diag {
            AnyParams::General(GeneralParams::diagonal(self.eta, d).map_err(|e| e.to_string())?)
        } else {
            AnyParams::Family(Params::new(self.eta, self.t, self.t_xy).map_err(|e| e.to_string())?)
        };
        p.validated().map_err(|e| e.to_string())
    }
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Seed for the random axis pairs of the no-signaling check.
    #[arg(long, default_value_t = defaults::SEED)]
    pub seed: u64,
    /// Positivity tolerance: the smallest eigenvalue must be ≥ −tol.
    #[arg(long, default_value = defaults::TOL, value_parser = parse_nonnegative)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    #[arg(long, value_enum, default_value_t = Method::Both)]
    pub method: Method,
    /// Grid points per axis.
    #[arg(long, default_value_t = defaults::OPTIMIZE_RESOLUTION, value_parser = parse_resolution)]
    pub resolution: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CloneArgs {
    /// Unit Bloch vector of the pure input.
    #[arg(long, default_value = defaults::INPUT, value_parser = parse_unit, allow_hyphen_values = true)]
    pub input: Triple,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SignalArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Alice's first measurement axis.
    #[arg(long = "axis-a", default_value = defaults::AXIS_A, value_parser = parse_unit, allow_hyphen_values = true)]
    pub axis_a: Triple,
    /// Alice's second measurement axis.
    #[arg(long = "axis-b", default_value = defaults::AXIS_B, value_parser = parse_unit, allow_hyphen_values = true)]
    pub axis_b: Triple,
    /// Monte-Carlo rounds.
    #[arg(long, default_value_t = defaults::SHOTS, value_parser = clap::value_parser!(u64).range(1..))]
    pub shots: u64,
    #[arg(long, default_value_t = defaults::SEED)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Grid points per axis; rows = resolution³.
    #[arg(long, default_value_t = defaults::SWEEP_RESOLUTION, value_parser = parse_resolution)]
    pub resolution: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Accepts decimals ("0.25", "1e-3") and fractions ("2/3", "-1/3").
pub fn parse_number(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let value = if s.contains('/') {
        s.parse::<Rational64>()
            .map_err(|e| format!("invalid fraction {s:?}: {e}"))?
            .to_f64()
            .ok_or_else(|| format!("fraction {s:?} is not representable"))?
    } else {
        s.parse::<f64>()
            .map_err(|e| format!("invalid number {s:?}: {e}"))?
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("{s:?} is not finite"))
    }
}

fn parse_nonnegative(s: &str) -> Result<f64, String> {
    let v = parse_number(s)?;
    if v >= 0.0 {
        Ok(v)
    } else {
        Err(format!("{s:?} must be non-negative"))
    }
}

pub fn parse_triple(s: &str) -> Result<Triple, String> {
    let parts = s
        .split(',')
        .map(parse_number)
        .collect::<Result<Vec<_>, _>>()?;
    <[f64; 3]>::try_from(parts)
        .map(Triple)
        .map_err(|v| format!("expected three comma-separated numbers, got {}", v.len()))
}

fn parse_unit(s: &str) -> Result<Triple, String> {
    let t = parse_triple(s)?;
    let [x, y, z] = t.0;
    Bloch::new(x, y, z)
        .require_unit()
        .map_err(|e| e.to_string())?;
    Ok(t)
}

fn parse_resolution(s: &str) -> Result<usize, String> {
    let r: usize = s
        .parse()
        .map_err(|e| format!("invalid resolution {s:?}: {e}"))?;
    if r >= 3 {
        Ok(r)
    } else {
        Err(format!("resolution must be at least 3, got {r}"))
    }
}

fn parse_params(s: &str) -> Result<AnyParams, String> {
    let p: AnyParams =
        serde_json::from_str(s).map_err(|e| format!("malformed params JSON: {e}"))?;
    p.validated().map_err(|e| e.to_string())
}
