//! Command-line grammar. Vectors are comma-separated reals, e.g.
//! `--x 1,0,0,-1`; scientific notation is accepted everywhere.

use clap::{Args, Parser, Subcommand, ValueEnum};

use conformal5::charts::{DomainTag, Side};

#[derive(Debug, Parser)]
#[command(
    name = "conformal5",
    version,
    about = "Geometry of the O(4,2) domains Sigma+- and their conformal boundary"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Embed a Minkowski point into the null cone of R^{4,2}.
    Embed(EmbedArgs),
    /// Convert between chart coordinates and ambient vectors.
    #[command(subcommand)]
    Chart(ChartCommand),
    /// Metric tensor of a half-space chart.
    Metric(TensorArgs),
    /// Nonzero Christoffel symbols of a half-space chart.
    Christoffel(TensorArgs),
    /// Integrate a geodesic.
    Geodesic(GeodesicArgs),
    /// Write one of the three geodesic-family figures as SVG.
    Figure(FigureArgs),
    /// Run the seeded property suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MapArg {
    TauPlus,
    TauMinus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DomainArg {
    SigmaMinus,
    SigmaPlus,
}

impl From<DomainArg> for DomainTag {
    fn from(d: DomainArg) -> Self {
        match d {
            DomainArg::SigmaMinus => DomainTag::SigmaMinus,
            DomainArg::SigmaPlus => DomainTag::SigmaPlus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    #[value(name = "+1", alias = "1", alias = "positive")]
    Positive,
    #[value(name = "-1", alias = "negative")]
    Negative,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Self {
        match s {
            SideArg::Positive => Side::Positive,
            SideArg::Negative => Side::Negative,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParamArg {
    Affine,
    Lambda,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PathFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

/// `N` comma-separated reals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reals<const N: usize>(pub [f64; N]);

impl<const N: usize> std::str::FromStr for Reals<N> {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != N {
            return Err(format!("expected {N} comma-separated reals, got {}", parts.len()));
        }
        let mut out = [0.0; N];
        for (slot, part) in out.iter_mut().zip(&parts) {
            let v: f64 = part.parse().map_err(|_| format!("'{part}' is not a real number"))?;
            if !v.is_finite() {
                return Err(format!("'{part}' is not finite"));
            }
            *slot = v;
        }
        Ok(Reals(out))
    }
}

/// Comma-separated list of reals of any positive length.
#[derive(Debug, Clone, PartialEq)]
pub struct RealList(pub Vec<f64>);

impl std::str::FromStr for RealList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let values = s
            .split(',')
            .map(|p| {
                let p = p.trim();
                p.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| format!("'{p}' is not a finite real number"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RealList(values))
    }
}

#[derive(Debug, Args)]
pub struct EmbedArgs {
    /// Minkowski point x1,x2,x3,x4.
    #[arg(long, allow_hyphen_values = true)]
    pub x: Reals<4>,
    #[arg(long, value_enum, default_value = "tau-plus")]
    pub map: MapArg,
}

#[derive(Debug, Subcommand)]
pub enum ChartCommand {
    /// Chart coordinates (x, lambda) to an ambient vector.
    ToAmbient(ToAmbientArgs),
    /// Ambient vector on Sigma+- to chart coordinates.
    ToChart(ToChartArgs),
}

#[derive(Debug, Args)]
pub struct ToAmbientArgs {
    #[arg(long, value_enum, default_value = "sigma-minus")]
    pub domain: DomainArg,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Reals<4>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: f64,
    #[arg(long, value_enum, default_value = "+1", allow_hyphen_values = true)]
    pub side: SideArg,
}

#[derive(Debug, Args)]
pub struct ToChartArgs {
    /// Ambient vector X1,...,X6.
    #[arg(long = "X", allow_hyphen_values = true)]
    pub ambient: Reals<6>,
    #[arg(long, default_value_t = conformal5::ambient::DEFAULT_TOL)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct TensorArgs {
    #[arg(long, value_enum, default_value = "sigma-minus")]
    pub domain: DomainArg,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: f64,
    #[arg(long, allow_hyphen_values = true, default_value = "0,0,0,0")]
    pub x: Reals<4>,
    #[arg(long, value_enum, default_value = "+1", allow_hyphen_values = true)]
    pub side: SideArg,
    /// Also compute the tensor by finite differences and report the deviation.
    #[arg(long)]
    pub numerical: bool,
    /// Finite-difference step; must be below lambda.
    #[arg(long, default_value_t = 1e-5, allow_hyphen_values = true)]
    pub h: f64,
}

#[derive(Debug, Args)]
pub struct GeodesicArgs {
    #[arg(long, value_enum, default_value = "affine")]
    pub param: ParamArg,
    #[arg(long, value_enum, default_value = "sigma-minus")]
    pub domain: DomainArg,
    #[arg(long, value_enum, default_value = "+1", allow_hyphen_values = true)]
    pub side: SideArg,
    /// Starting Minkowski coordinates x1,...,x4.
    #[arg(long, allow_hyphen_values = true)]
    pub start: Reals<4>,
    /// Starting lambda.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: f64,
    /// Affine velocity dx1/ds,...,dx4/ds,dlambda/ds.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "dir")]
    pub vel: Option<Reals<5>>,
    /// Lambda-parameterized direction dx1/dlambda,...,dx4/dlambda.
    #[arg(long, allow_hyphen_values = true)]
    pub dir: Option<Reals<4>>,
    /// Affine parameter range [0, smax].
    #[arg(long, default_value_t = 10.0, allow_hyphen_values = true)]
    pub smax: f64,
    /// Final lambda for lambda-parameterized runs.
    #[arg(long = "lambda-end", allow_hyphen_values = true)]
    pub lambda_end: Option<f64>,
    #[arg(long, default_value_t = conformal5::geodesics::DEFAULT_STEP, allow_hyphen_values = true)]
    pub h: f64,
    /// Affine runs stop before lambda falls to this value.
    #[arg(long, default_value_t = conformal5::geodesics::DEFAULT_LAMBDA_FLOOR, allow_hyphen_values = true)]
    pub floor: f64,
    #[arg(long, value_enum, default_value = "json")]
    pub format: PathFormat,
    /// Append conservation and plane-section diagnostics.
    #[arg(long)]
    pub check: bool,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    /// Figure number: 1 (null, x1 = x4 plane), 2 (spacelike, x1 plane) or
    /// 3 (timelike, x4 plane).
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub n: u8,
    #[arg(long)]
    pub out: std::path::PathBuf,
    /// Family parameters: a for figure 1, x0 for figures 2 and 3.
    #[arg(long, allow_hyphen_values = true)]
    pub params: Option<RealList>,
    /// Horizontal plot range lo,hi.
    #[arg(long = "x-range", allow_hyphen_values = true)]
    pub x_range: Option<Reals<2>>,
    /// Vertical plot range lo,hi with lo >= 0.
    #[arg(long = "lambda-range", allow_hyphen_values = true)]
    pub lambda_range: Option<Reals<2>>,
    /// Samples per curve.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    /// Worker threads for sampling family members.
    #[arg(long, default_value_t = 1)]
    pub parallel: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Trials per property; each property has its own default.
    #[arg(long)]
    pub trials: Option<usize>,
    /// Worker threads; properties run concurrently, reports stay ordered.
    #[arg(long, default_value_t = 1)]
    pub parallel: usize,
    #[arg(long, value_enum, default_value = "text")]
    pub format: ReportFormat,
    /// Flip a Christoffel sign to confirm the suite detects it.
    #[arg(long, hide = true)]
    pub mutant: bool,
}
