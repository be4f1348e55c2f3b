use alloc::format;

use num_traits::Float;

use crate::analytic::{check_alpha, check_m, cube_estimate, QUADRATURE_ORDER, REFERENCE_ORDER};
use crate::geometry::{DistanceModel, ModelKind, OrderedDistances};
use crate::numerics::{beta_inc_pair, gauss_legendre_unit, hyp2f1, ln_gamma, QuadratureRule};
use crate::{Error, Estimate, Method, Result};

/// Conditional accuracy of a 2-user cluster under Nakagami-m fading:
/// `P(h1 r1^-a > h2 r2^-a) = I_x(m, m)` with `x = 1 / (1 + (r1/r2)^a)`,
/// since `h2 / (h1 + h2)` is `Beta(m, m)`.
pub fn inner_expectation_nakagami_2ue(distances: &OrderedDistances, alpha: f64, m: f64) -> Result<f64> {
    check_alpha(alpha)?;
    check_m(m)?;
    let r = distances.as_slice();
    if r.len() != 2 {
        return Err(Error::Precondition(format!("expected 2 distances, got {}", r.len())));
    }
    beta_inc_ratio(r[0] / r[1], alpha, m)
}

/// `I_{1/(1+rho^a)}(m, m)`, with both `x` and `1 - x` formed without
/// cancellation.
pub(crate) fn beta_inc_ratio(rho: f64, alpha: f64, m: f64) -> Result<f64> {
    let q = rho.powf(alpha);
    beta_inc_pair(m, m, 1.0 / (1.0 + q), q / (1.0 + q))
}

fn integrate_2f1(rule: &QuadratureRule, alpha: f64, m: f64, ppp: bool, ln_pref: f64) -> Result<f64> {
    let mut total = 0.0;
    for (u, w) in rule.iter() {
        let f = hyp2f1(2.0 * m, m, m + 1.0, -u.powf(-alpha))?;
        let mut v = (ln_pref + (1.0 - alpha * m) * u.ln() + f.ln()).exp();
        if ppp {
            v /= (1.0 + u * u).powi(2);
        }
        if !v.is_finite() {
            return Err(Error::NonFinite { node: alloc::vec![u] });
        }
        total += w * v;
    }
    Ok(total)
}

/// Two users under Nakagami-m fading:
/// `c Γ(2m) / (Γ(m) Γ(m+1)) ∫₀¹ g(u) u^(1-a m) 2F1(2m, m; m+1; -u^-a) du`
/// with `c = 4`, `g = (1+u^2)^-2` for PPP/TCP and `c = 2`, `g = 1` for MCP.
/// The integrand is evaluated in log space; the hypergeometric factor decays
/// like `u^(a m)` and cancels the growth of `u^(1-a m)`.
pub fn accuracy_nakagami_2ue(model: &DistanceModel, alpha: f64, m: f64) -> Result<Estimate> {
    check_alpha(alpha)?;
    check_m(m)?;
    model.validate()?;
    let ppp = model.kind() != ModelKind::Mcp;
    let c: f64 = if ppp { 4.0 } else { 2.0 };
    let ln_pref = c.ln() + ln_gamma(2.0 * m)? - ln_gamma(m)? - ln_gamma(m + 1.0)?;
    let hi = integrate_2f1(&gauss_legendre_unit(QUADRATURE_ORDER)?, alpha, m, ppp, ln_pref)?;
    let lo = integrate_2f1(&gauss_legendre_unit(REFERENCE_ORDER)?, alpha, m, ppp, ln_pref)?;
    Ok(Estimate::new(hi, (hi - lo).abs(), Method::Quadrature2F1).into_probability())
}

/// Three users under Nakagami-m fading: the 4-D integral
/// `c Γ(3m)/Γ(m)^3 ∫ u1^(1+am) u2^(3+2am) z1^(2m-1) z2^(m-1)
///  / [(u1^a u2^a + u2^a z1 + z1 z2)^(3m) h(u1, u2)]`
/// with `c = 48`, `h = (1+u2^2+u1^2 u2^2)^3` for PPP/TCP and `c = 8`, `h = 1`
/// for MCP.
///
/// Every axis is substituted `x = t^2` before tensor quadrature. The
/// integrand has power-law endpoint behaviour in `z1`, `z2` (exponents
/// `2m-1`, `m-1`) and a ridge near the origin that plain Gauss-Legendre
/// resolves poorly; the substitution doubles the smoothness at `0`.
pub fn accuracy_nakagami_3ue(model: &DistanceModel, alpha: f64, m: f64) -> Result<Estimate> {
    check_alpha(alpha)?;
    check_m(m)?;
    model.validate()?;
    let ppp = model.kind() != ModelKind::Mcp;
    let c: f64 = if ppp { 48.0 } else { 8.0 };
    let ln_pref = c.ln() + ln_gamma(3.0 * m)? - 3.0 * ln_gamma(m)?;
    let am = alpha * m;
    cube_estimate(4, |t| {
        let (u1, u2, z1, z2) = (t[0] * t[0], t[1] * t[1], t[2] * t[2], t[3] * t[3]);
        let ln_jac = (16.0 * t[0] * t[1] * t[2] * t[3]).ln();
        let (lu1, lu2) = (u1.ln(), u2.ln());
        let denom = (alpha * (lu1 + lu2)).exp() + (alpha * lu2).exp() * z1 + z1 * z2;
        let mut ln_f = ln_pref
            + ln_jac
            + (1.0 + am) * lu1
            + (3.0 + 2.0 * am) * lu2
            + (2.0 * m - 1.0) * z1.ln()
            + (m - 1.0) * z2.ln()
            - 3.0 * m * denom.ln();
        if ppp {
            ln_f -= 3.0 * (1.0 + u2 * u2 + u1 * u1 * u2 * u2).ln();
        }
        ln_f.exp()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{accuracy_rayleigh_2ue, accuracy_rayleigh_3ue};
    use core::f64::consts::FRAC_PI_4;

    fn ppp() -> DistanceModel {
        DistanceModel::ppp(0.0005).unwrap()
    }
    fn mcp() -> DistanceModel {
        DistanceModel::mcp(20.0).unwrap()
    }

    /// `2 ∫₀¹ v I_{1/(1+v^a)}(m, m) dv` (MCP) and
    /// `∫₀¹ 4v/(1+v^2)^2 I_{1/(1+v^a)}(m, m) dv` (PPP): the ratio density
    /// averaged against the beta-form conditional accuracy.
    fn beta_oracle(alpha: f64, m: f64, ppp: bool) -> f64 {
        gauss_legendre_unit(128).unwrap().integrate(|v| {
            let i = beta_inc_ratio(v, alpha, m).unwrap();
            if ppp {
                4.0 * v / (1.0 + v * v).powi(2) * i
            } else {
                2.0 * v * i
            }
        })
    }

    #[test]
    fn inner_expectation_reduces_to_rayleigh() {
        let d = OrderedDistances::new(alloc::vec![1.0, 2.0]).unwrap();
        let v = inner_expectation_nakagami_2ue(&d, 4.0, 1.0).unwrap();
        assert!((v - 1.0 / 1.0625).abs() < 1e-14);
        let eq = OrderedDistances::new(alloc::vec![3.0, 3.0]).unwrap();
        assert!((inner_expectation_nakagami_2ue(&eq, 4.0, 2.5).unwrap() - 0.5).abs() < 1e-14);
        // I_x(2, 2) = 3x^2 - 2x^3
        let x: f64 = 1.0 / 1.0625;
        let v2 = inner_expectation_nakagami_2ue(&d, 4.0, 2.0).unwrap();
        assert!((v2 - (3.0 * x * x - 2.0 * x.powi(3))).abs() < 1e-14);
    }

    #[test]
    fn two_users_unit_shape() {
        let m = accuracy_nakagami_2ue(&mcp(), 4.0, 1.0).unwrap();
        assert!((m.value - FRAC_PI_4).abs() < 1e-6);
        let p = accuracy_nakagami_2ue(&ppp(), 4.0, 1.0).unwrap();
        let r = accuracy_rayleigh_2ue(&ppp(), 4.0).unwrap();
        assert!((p.value - r.value).abs() < 1e-6);
    }

    #[test]
    fn two_users_match_beta_oracle() {
        for &alpha in &[2.5, 4.0, 6.0, 8.0] {
            for &m in &[0.5, 1.5, 2.0, 4.0, 8.0] {
                for ppp_model in [true, false] {
                    let model = if ppp_model { ppp() } else { mcp() };
                    let got = accuracy_nakagami_2ue(&model, alpha, m).unwrap().value;
                    let oracle = beta_oracle(alpha, m, ppp_model);
                    assert!(
                        (got - oracle).abs() < 1e-5,
                        "a={alpha} m={m} ppp={ppp_model}: {got} {oracle}"
                    );
                }
            }
        }
    }

    #[test]
    fn two_users_increase_in_m() {
        let v: alloc::vec::Vec<f64> = [0.5, 1.0, 2.0, 4.0]
            .iter()
            .map(|&m| accuracy_nakagami_2ue(&mcp(), 4.0, m).unwrap().value)
            .collect();
        assert!(v.windows(2).all(|w| w[1] > w[0]), "{v:?}");
        assert!(v[2] > FRAC_PI_4);
    }

    #[test]
    fn three_users_unit_shape() {
        for model in [ppp(), mcp()] {
            let n = accuracy_nakagami_3ue(&model, 4.0, 1.0).unwrap();
            let r = accuracy_rayleigh_3ue(&model, 4.0).unwrap();
            assert!((n.value - r.value).abs() < 1e-3, "{} {}", n.value, r.value);
        }
    }

    #[test]
    fn three_users_large_shape_is_finite() {
        let v = accuracy_nakagami_3ue(&mcp(), 8.0, 8.0).unwrap();
        assert!(v.value > 0.0 && v.value <= 1.0);
    }

    #[test]
    fn rejects_small_shape() {
        assert!(accuracy_nakagami_2ue(&mcp(), 4.0, 0.4).is_err());
        assert!(accuracy_nakagami_3ue(&mcp(), 4.0, 0.0).is_err());
    }
}
