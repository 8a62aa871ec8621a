use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degree {requested} exceeds the float-mode cap of {cap}; raise the cap explicitly")]
    DegreeCapExceeded { requested: usize, cap: usize },

    #[error("polynomial of degree {0:?} has no zeros to compute")]
    DegreeTooLow(Option<usize>),

    #[error("root {index} is not real (imaginary part {imag:e} after polishing)")]
    NonRealRoot { index: usize, imag: f64 },

    #[error("roots near {x} are not simple (separation {gap:e})")]
    NonSimpleRoot { x: f64, gap: f64 },

    #[error("Newton polishing did not converge at {x} (|p(x)| = {residual:e})")]
    NotConverged { x: f64, residual: f64 },

    #[error("root {x} lies outside the support hull [{lo}, {hi}]")]
    OutsideHull { x: f64, lo: f64, hi: f64 },

    #[error("Christoffel number {index} is not positive ({value:e})")]
    PositivityViolation { index: usize, value: f64 },

    #[error("L * L^-1 deviates from the identity by {residual:e}")]
    InversionInconsistent { residual: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("node set carries no derivative values of p_N; build it with `zeros`")]
    MissingDerivatives,

    #[error("matrix power overflows: exponent {exponent} with spectral scale {scale:e}")]
    PowerOverflow { exponent: u32, scale: f64 },

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
