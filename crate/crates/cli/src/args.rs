use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "intcheb", version, about = "Integer Chebyshev bounds, resultants, Mahler measures and Schur-type checks")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Emit CSV instead of JSON.
    #[arg(long, global = true)]
    pub csv: bool,
    /// With --csv: one row per table entry instead of the lossless path,type,value form.
    #[arg(long, global = true)]
    pub wide: bool,
    /// Worker threads for the data-parallel parts (output does not depend on it).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// JSON object whose keys mirror long flags; command-line flags win.
    #[arg(long, global = true)]
    pub config: Option<String>,
    /// Target root radius / relative enclosure width.
    #[arg(long, global = true, default_value_t = 1e-12)]
    pub eps: f64,
    /// Working-precision cap in bits for root finding [env: INTCHEB_PRECISION_CAP].
    #[arg(long, global = true)]
    pub precision_cap: Option<usize>,
    /// Record the wall-clock time in the manifest (breaks byte-identical reruns).
    #[arg(long, global = true)]
    pub stamp: bool,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Exact polynomial arithmetic.
    #[command(subcommand)]
    Poly(PolyCommand),
    /// Certified roots.
    Roots(CoeffArgs),
    /// Mahler measure, or the generalized one for [c-2, c+2] with --c.
    Mahler(MahlerArgs),
    /// Monic Chebyshev polynomial of an interval and its norm.
    Cheb(ChebArgs),
    /// Integer Chebyshev constant bounds.
    #[command(subcommand)]
    Icheb(IchebCommand),
    /// Finite-degree Schur-type checks.
    #[command(subcommand)]
    Schur(SchurCommand),
    /// List the members of a polynomial family.
    Families(FamilyArgs),
    /// Re-run the command recorded in a JSON or CSV output (or bare manifest).
    Replay(ReplayArgs),
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PolyCommand {
    /// Exact value at a rational point.
    Eval(EvalArgs),
    /// Certified sup norm on an interval.
    Norm(NormArgs),
    /// Exact resultant of two integer polynomials.
    Resultant(ResultantArgs),
    /// Exact discriminant.
    Discriminant(CoeffArgs),
    /// Elementary symmetric functions and power sums.
    Newton(NewtonArgs),
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IchebCommand {
    /// Exhaustive search over bounded-height integer polynomials.
    Exhaustive(ExhaustiveArgs),
    /// Factor-exponent optimization over a basis.
    Factors(FactorArgs),
    /// min(1, sqrt(|I|/4)).
    Hilbert(IntervalArgs),
    /// Bounds on [1/(m+4), 1/m].
    Trigub(TrigubArgs),
    /// Leading-coefficient lower bound from a polynomial small on the interval.
    Leading(NormArgs),
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchurCommand {
    /// Subleading coefficient and power-sum growth for unit-disk polynomials.
    Growth(GrowthArgs),
    /// Equidistribution estimate for the truncated power test function.
    Lipschitz(LipschitzArgs),
    /// Trace means and normalized elementary symmetric functions of a family.
    Trace(TraceArgs),
    /// Generalized Mahler measure against root means for a family.
    MahlerHyp(MahlerHypArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CoeffArgs {
    /// Coefficients low-to-high, e.g. '["0","1"]' or 0,1.
    #[arg(long, num_args = 1.., required = true)]
    pub coeffs: Vec<String>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct EvalArgs {
    #[command(flatten)]
    pub poly: CoeffArgs,
    /// Rational evaluation point.
    #[arg(long)]
    pub x: String,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct NormArgs {
    #[command(flatten)]
    pub poly: CoeffArgs,
    /// Interval as a,b with rational endpoints.
    #[arg(long)]
    pub interval: String,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ResultantArgs {
    #[arg(long, num_args = 1.., required = true)]
    pub p: Vec<String>,
    #[arg(long, num_args = 1.., required = true)]
    pub q: Vec<String>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct NewtonArgs {
    #[command(flatten)]
    pub poly: CoeffArgs,
    /// Highest order; defaults to the degree.
    #[arg(long)]
    pub order: Option<usize>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MahlerArgs {
    #[command(flatten)]
    pub poly: CoeffArgs,
    /// Center of the segment [c-2, c+2] for the generalized measure.
    #[arg(long)]
    pub c: Option<String>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ChebArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub interval: String,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct IntervalArgs {
    #[arg(long)]
    pub interval: String,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TrigubArgs {
    #[arg(long)]
    pub m: u64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ExhaustiveArgs {
    #[arg(long)]
    pub interval: String,
    #[arg(long)]
    pub nmax: usize,
    #[arg(long)]
    pub height: u32,
    /// Maximum number of candidates to enumerate.
    #[arg(long, default_value_t = 50_000_000)]
    pub budget: u64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FactorArgs {
    #[arg(long, default_value = "0,1")]
    pub interval: String,
    /// JSON list of coefficient lists; defaults to the shipped [0,1] basis.
    #[arg(long)]
    pub basis: Option<String>,
    #[arg(long, default_value_t = 1e-12)]
    pub grid_eps: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub lp_eps: f64,
    #[arg(long, default_value_t = 2048)]
    pub grid_size: usize,
    /// Total degree of the integer realization (0 skips it).
    #[arg(long, default_value_t = 60)]
    pub degree: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GrowthArgs {
    #[command(flatten)]
    pub poly: CoeffArgs,
    /// Bound M on the absolute leading coefficient.
    #[arg(long = "leading-bound", short = 'M', default_value_t = 1)]
    pub leading_bound: u64,
    #[arg(long, default_value_t = 5)]
    pub mmax: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct LipschitzArgs {
    #[command(flatten)]
    pub poly: CoeffArgs,
    #[arg(long)]
    pub m: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum FamilyKind {
    Chebyshev04,
    Chebyshev04Trace,
    PrimeCyclotomic,
    UserList,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub family: FamilyKind,
    /// Degrees, primes or k values: a list like 25,50,100 or a range like 1..10.
    #[arg(long)]
    pub params: Option<String>,
    /// For user_list: path to a JSON list of coefficient lists.
    #[arg(long)]
    pub polys: Option<String>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TraceArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, default_value_t = 3)]
    pub mmax: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MahlerHypArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, default_value = "2")]
    pub c: String,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ReplayArgs {
    pub file: String,
}
