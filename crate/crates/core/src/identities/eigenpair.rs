use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::families::FamilySpec;
use crate::identities::{abs, max_abs, IdentityReport, IdentityTag, Settings, Setup};
use crate::matrices::{matmul, norm_inf};
use crate::scalar::Scalar;

/// `sum_k D^c_nk p_m(x_k) = mu_m p_m(x_n)` at the zeros of `p_N`, for
/// `0 <= m < N` and every node. Residuals are scaled by
/// `max(1, |mu_m| max_k |p_m(x_k)|)`.
pub fn verify_theorem1<T: Scalar>(spec: &FamilySpec<T>, n: usize, settings: &Settings) -> Result<IdentityReport> {
    require_two(n)?;
    let setup = Setup::new(spec, n, settings)?;
    let report = eigen_sweep(
        &setup,
        setup.dc.data(),
        spec,
        1,
        IdentityReport::new(IdentityTag::Thm1Eq1xn, spec, n, settings),
    );
    Ok(report.finish(|m| spec.eigenvalue(m).to_f64_lossy()))
}

/// Row sums of `D^c` against `mu_0`, the `m = 0` case of the eigenpair
/// relation. Residuals are `|sum_k D^c_nk - mu_0| / max(1, |mu_0|)`.
pub fn verify_row_sums<T: Scalar>(spec: &FamilySpec<T>, n: usize, settings: &Settings) -> Result<IdentityReport> {
    require_two(n)?;
    let setup = Setup::new(spec, n, settings)?;
    let mu0 = spec.eigenvalue(0);
    let scale = abs(&mu0).max(1.0);
    let mut report = IdentityReport::new(IdentityTag::Thm1Eq1xnm0, spec, n, settings);
    let d = setup.dc.data();
    for row in 0..n {
        let sum = (0..n).fold(T::zero(), |acc, k| acc + d[(row, k)].clone());
        report.push(0, Some(row + 1), abs(&(sum - mu0.clone())) / scale);
    }
    Ok(report.finish(|_| mu0.to_f64_lossy()))
}

/// The eigenpair relation for `(D^c)^exponent` with eigenvalues `mu_m^exponent`.
pub fn verify_power<T: Scalar>(
    spec: &FamilySpec<T>,
    n: usize,
    exponent: u32,
    settings: &Settings,
) -> Result<IdentityReport> {
    if exponent == 0 {
        return Err(Error::InvalidArgument("exponent must be at least 1".into()));
    }
    require_two(n)?;
    let setup = Setup::new(spec, n, settings)?;
    let d = setup.dc.data();
    if !T::EXACT {
        // Entries of the power grow like |D^c|^exponent.
        let scale = norm_inf(d).max(1.0);
        if exponent as f64 * scale.log10() > f64::MAX_10_EXP as f64 - 10.0 {
            return Err(Error::PowerOverflow { exponent, scale });
        }
    }
    let mut power = d.clone();
    for _ in 1..exponent {
        power = matmul(&power, d);
    }
    let report = eigen_sweep(
        &setup,
        &power,
        spec,
        exponent,
        IdentityReport::new(IdentityTag::Remark2Power(exponent), spec, n, settings),
    );
    Ok(report.finish(|m| spec.eigenvalue(m).to_f64_lossy().powi(exponent as i32)))
}

fn require_two(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("N must be at least 2, got {n}")));
    }
    Ok(())
}

fn eigen_sweep<T: Scalar>(
    setup: &Setup<T>,
    matrix: &DMatrix<T>,
    spec: &FamilySpec<T>,
    exponent: u32,
    mut report: IdentityReport,
) -> IdentityReport {
    let n = setup.n();
    for m in 0..n {
        let v = setup.nodal(m);
        let mu = (1..exponent).fold(spec.eigenvalue(m), |acc, _| acc * spec.eigenvalue(m));
        let scale = (abs(&mu) * max_abs(&v)).max(1.0);
        for row in 0..n {
            let lhs = (0..n).fold(T::zero(), |acc, k| acc + matrix[(row, k)].clone() * v[k].clone());
            let residual = abs(&(lhs - mu.clone() * v[row].clone())) / scale;
            report.push(m, Some(row + 1), residual);
        }
    }
    if !setup.dc.flagged().is_empty() {
        report.notes.push(format!(
            "general assembly used for the diagonal at nodes {:?}",
            setup.dc.flagged().iter().map(|i| i + 1).collect::<Vec<_>>()
        ));
    }
    report
}
