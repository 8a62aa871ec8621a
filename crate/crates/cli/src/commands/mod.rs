pub mod family;
pub mod matrix;
pub mod verify;
pub mod zeros;

use krall_core::families::build_family_capped;
use krall_core::rootfinding::zeros;
use krall_core::scalar::format_rational;
use krall_core::{FamilySpec, NodeSet, Polynomial, Rational, Scalar};

use crate::config::RunConfig;
use crate::output::{Meta, Number, Real};

/// Calls `$f::<T>(args)` with `T` chosen by the scalar mode.
macro_rules! with_scalar {
    ($mode:expr, $f:ident ( $($arg:expr),* $(,)? )) => {
        match $mode {
            $crate::cli::Mode::Rational => $f::<krall_core::Rational>($($arg),*),
            $crate::cli::Mode::Float => $f::<f64>($($arg),*),
            $crate::cli::Mode::DoubleDouble => $f::<krall_core::DoubleDouble>($($arg),*),
        }
    };
}
pub(crate) use with_scalar;

pub fn meta(cfg: &RunConfig) -> Meta {
    Meta {
        command: cfg.command.to_string(),
        family: cfg.family_label.clone(),
        params: cfg.params.clone(),
        n: cfg.n_spec.clone(),
        tolerance: Real(cfg.tolerance),
        seed: cfg.seed,
        mode: cfg.mode.name().to_string(),
    }
}

pub fn number<T: Scalar>(value: &T) -> Number {
    if T::EXACT {
        Number::Exact(format_rational(&value.to_rational()))
    } else {
        Number::Real(Real(value.to_f64_lossy()))
    }
}

/// Exact `p_0, ..., p_n` and the zeros of `p_n`, honouring the degree cap of `T`.
pub fn exact_family_and_zeros<T: Scalar>(
    spec: &FamilySpec<Rational>,
    n: usize,
    cfg: &RunConfig,
) -> anyhow::Result<(Vec<Polynomial<Rational>>, NodeSet)> {
    let family = build_family_capped(spec, n, cfg.cap::<T>())?;
    let nodes = zeros(&family[n], spec)?;
    Ok((family, nodes))
}
