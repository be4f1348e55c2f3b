//! Accuracy-probability evaluators.
//!
//! Every evaluator works on scale-free ratios of distances, so none of them
//! reads `lambda`, `R` or `sigma2`; only the model family matters. PPP and
//! TCP share one distance law up to scale and therefore one set of
//! integrands. Nakagami evaluators take the shape `m` only; the mean power
//! does not enter.

mod cluster;
mod nakagami;
mod pairing;
mod rayleigh;

pub use cluster::{ClusterSpec, Pairing};
pub use nakagami::{accuracy_nakagami_2ue, accuracy_nakagami_3ue, inner_expectation_nakagami_2ue};
pub use pairing::{accuracy_pairing_general, accuracy_pairing_rayleigh_2ue, McFallback, MAX_PAIRING_QUADRATURE_USERS};
pub use rayleigh::{
    accuracy_rayleigh_2ue, accuracy_rayleigh_3ue, accuracy_rayleigh_general, inner_expectation_rayleigh,
    MAX_GENERAL_USERS,
};

use alloc::format;

use crate::numerics::{gauss_legendre_unit, tensor_integrate};
use crate::{Error, Estimate, Method, Result};

/// Gauss-Legendre order used by every quadrature evaluator.
pub const QUADRATURE_ORDER: usize = 30;
/// Lower order whose disagreement with [`QUADRATURE_ORDER`] is reported as
/// the error bound.
pub const REFERENCE_ORDER: usize = 20;
/// Truncation tolerance of the accelerated series.
pub const SERIES_TOL: f64 = 1e-8;

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha >= 2.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(Error::param("alpha", format!("{alpha} must be finite and >= 2")))
    }
}

pub(crate) fn check_m(m: f64) -> Result<()> {
    if m >= 0.5 && m.is_finite() {
        Ok(())
    } else {
        Err(Error::param("m", format!("{m} must be finite and >= 0.5")))
    }
}

/// Tensor quadrature at the working order, with the gap to the reference
/// order as error bound.
pub(crate) fn cube_estimate<F>(dim: usize, mut f: F) -> Result<Estimate>
where
    F: FnMut(&[f64]) -> f64,
{
    let hi = tensor_integrate(&mut f, dim, &gauss_legendre_unit(QUADRATURE_ORDER)?)?;
    let lo = tensor_integrate(&mut f, dim, &gauss_legendre_unit(REFERENCE_ORDER)?)?;
    Ok(Estimate::new(hi, (hi - lo).abs(), Method::TensorQuadrature).into_probability())
}

/// Accuracy probability of `spec` by the analytic route that applies.
///
/// Pairing specs go to [`accuracy_pairing_general`] (without Monte Carlo
/// fallback); otherwise Rayleigh uses the series for `N = 2`, the 2-D
/// integral for `N = 3` and the general unit-cube integral up to
/// [`MAX_GENERAL_USERS`]; Nakagami uses the 2F1 quadrature for `N = 2` and
/// the 4-D integral for `N = 3`.
pub fn accuracy(spec: &ClusterSpec) -> Result<Estimate> {
    spec.validate()?;
    if spec.pairing.is_some() {
        return accuracy_pairing_general(spec, None);
    }
    let m = spec.fading.m();
    match (spec.fading.is_rayleigh(), spec.n_users) {
        (true, 2) => accuracy_rayleigh_2ue(&spec.model, spec.alpha),
        (true, 3) => accuracy_rayleigh_3ue(&spec.model, spec.alpha),
        (true, n) if (2..=MAX_GENERAL_USERS).contains(&n) => accuracy_rayleigh_general(&spec.model, spec.alpha, n),
        (false, 2) => accuracy_nakagami_2ue(&spec.model, spec.alpha, m),
        (false, 3) => accuracy_nakagami_3ue(&spec.model, spec.alpha, m),
        (_, n) => Err(Error::param(
            "n_users",
            format!("no analytic route for N = {n} with m = {m}"),
        )),
    }
}
