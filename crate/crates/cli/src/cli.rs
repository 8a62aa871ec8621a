use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use krall_core::identities::DEFAULT_TOLERANCE;

#[derive(Debug, Parser)]
#[command(
    name = "krall",
    version,
    about = "Krall orthogonal polynomials, their zeros, spectral matrices and identity checks"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Family name, or `all` for the three Krall families.
    #[arg(long, global = true)]
    pub family: Option<String>,
    /// First family parameter (`alpha`, or `a` for classical families). Accepts `p/q` and decimals.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// Second classical Jacobi parameter `b`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub beta: Option<String>,
    /// Krall-Jacobi mass parameter `M`.
    #[arg(long = "m-param", global = true)]
    pub m_param: Option<String>,
    /// Degree `N`, or an inclusive range such as `2..12`.
    #[arg(long, visible_alias = "n-range", global = true)]
    pub n: Option<String>,
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE)]
    pub tolerance: f64,
    /// Scalar field. The default depends on the command.
    #[arg(long, global = true, value_enum)]
    pub mode: Option<Mode>,
    /// Output format. Defaults to csv for `matrix` and json otherwise.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for randomly placed nodes.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Override the scalar type's degree cap.
    #[arg(long = "degree-cap", global = true)]
    pub degree_cap: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Rational,
    #[value(alias = "f64")]
    Float,
    #[value(alias = "dd")]
    DoubleDouble,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Rational => "rational",
            Mode::Float => "float",
            Mode::DoubleDouble => "double-double",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coefficients of p_0, ..., p_N.
    Family,
    /// Zeros of p_N with their residuals.
    Zeros,
    /// Export a differentiation, collocation, tau or transition matrix.
    Matrix(MatrixArgs),
    /// Check an identity over a range of N.
    Verify(VerifyArgs),
    /// Run every identity check, or re-render a saved JSON report.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatrixKind {
    /// Differentiation matrix Z^(k).
    Ztilde,
    /// Collocation representation of the family operator.
    Dc,
    /// Tau (modal) representation.
    Dtau,
    /// Transition matrix from nodal to modal coordinates.
    #[value(name = "L")]
    L,
    #[value(name = "Linv")]
    Linv,
    /// Diagonal of Christoffel numbers.
    Lambda,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Explicit,
    Recursive,
    Alternative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Form {
    FamilySpecific,
    General,
}

#[derive(Debug, Clone, Args)]
pub struct MatrixArgs {
    #[arg(long, value_enum)]
    pub kind: MatrixKind,
    /// Derivative order for `ztilde`.
    #[arg(long, default_value_t = 1)]
    pub order: usize,
    /// Comma-separated nodes; defaults to the zeros of p_N.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub nodes: Option<Vec<f64>>,
    #[arg(long, value_enum, default_value = "recursive")]
    pub method: Method,
    /// Closed form for `dc` at the zeros.
    #[arg(long, value_enum, default_value = "family-specific")]
    pub form: Form,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Eigenpair relation of D^c at the zeros.
    Thm1,
    /// Row sums of D^c against mu_0.
    Rowsum,
    /// Eigenpair relation of a power of D^c.
    Power,
    /// Fourth-order identity written with the operator coefficients.
    Krall4,
    #[value(name = "kleg-main")]
    KlegMain,
    #[value(name = "klag-main")]
    KlagMain,
    #[value(name = "kjac-main")]
    KjacMain,
    /// Eigenvalues of D^c on arbitrary nodes.
    Spectrum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Printed,
    Corrected,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NodeChoice {
    Zeros,
    Equispaced,
    Random,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    /// Form of the family-specific identity.
    #[arg(long, value_enum, default_value = "printed")]
    pub variant: VariantArg,
    /// Power of D^c for the `power` suite.
    #[arg(long, default_value_t = 2)]
    pub exponent: u32,
    /// Nodes for the `spectrum` suite; requires a single N equal to their count.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub nodes: Option<Vec<f64>>,
    /// Node placement for the `spectrum` suite when `--nodes` is absent.
    #[arg(long = "node-set", value_enum, default_value = "equispaced")]
    pub node_set: NodeChoice,
    #[arg(long, value_enum, default_value = "family-specific")]
    pub form: Form,
}

#[derive(Debug, Clone, Args)]
pub struct ReportArgs {
    /// A JSON report to re-render instead of running the checks.
    #[arg(long)]
    pub input: Option<PathBuf>,
}
