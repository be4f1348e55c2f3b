use alloc::format;

use num_traits::Float;

use crate::analytic::{check_alpha, cube_estimate, SERIES_TOL};
use crate::geometry::{DistanceModel, ModelKind, OrderedDistances};
use crate::numerics::{alternating_series_sum, hyp2f1};
use crate::{Error, Estimate, Result};

/// Largest cluster handled by [`accuracy_rayleigh_general`].
pub const MAX_GENERAL_USERS: usize = 6;

/// Conditional accuracy given the ordered distances under Rayleigh fading:
/// `Π_{i=2..N} 1 / Σ_{j<=i} (r_j / r_i)^alpha`.
pub fn inner_expectation_rayleigh(distances: &OrderedDistances, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let r = distances.as_slice();
    let mut p = 1.0;
    for i in 1..r.len() {
        let s: f64 = r[..=i].iter().map(|&rj| (rj / r[i]).powf(alpha)).sum();
        p /= s;
    }
    Ok(p)
}

/// Two users, random selection.
///
/// PPP/TCP: `Σ_k (-1)^k / (alpha k + 2) 2F1(2, 1; alpha k / 2 + 2; 1/2)`.
/// MCP: `Σ_k (-1)^k 2 / (2 + alpha k)`.
pub fn accuracy_rayleigh_2ue(model: &DistanceModel, alpha: f64) -> Result<Estimate> {
    check_alpha(alpha)?;
    model.validate()?;
    let mut failure = None;
    let est = match model.kind() {
        ModelKind::Mcp => alternating_series_sum(|k| sign(k) * 2.0 / (2.0 + alpha * k as f64), SERIES_TOL)?,
        ModelKind::Ppp | ModelKind::Tcp => alternating_series_sum(
            |k| {
                let kf = k as f64;
                match hyp2f1(2.0, 1.0, 0.5 * alpha * kf + 2.0, 0.5) {
                    Ok(f) => sign(k) * f / (alpha * kf + 2.0),
                    Err(e) => {
                        failure.get_or_insert(e);
                        f64::NAN
                    }
                }
            },
            SERIES_TOL,
        )
        .map_err(|e| failure.take().unwrap_or(e))?,
    };
    Ok(est.into_probability())
}

fn sign(k: usize) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Three users, random selection: the 2-D unit-square integrals
/// `48 ∫∫ u1 u2^3 / [(1+u1^a)(1+u2^a+u1^a u2^a)(1+u2^2+u1^2 u2^2)^3]`
/// (PPP/TCP) and `8 ∫∫ u1 u2^3 / [(1+u1^a)(1+u2^a+u1^a u2^a)]` (MCP).
pub fn accuracy_rayleigh_3ue(model: &DistanceModel, alpha: f64) -> Result<Estimate> {
    check_alpha(alpha)?;
    model.validate()?;
    let kind = model.kind();
    cube_estimate(2, |x| {
        let (u1, u2) = (x[0], x[1]);
        let (a1, a2) = (u1.powf(alpha), u2.powf(alpha));
        let fading = (1.0 + a1) * (1.0 + a2 + a1 * a2);
        match kind {
            ModelKind::Mcp => 8.0 * u1 * u2.powi(3) / fading,
            _ => 48.0 * u1 * u2.powi(3) / (fading * (1.0 + u2 * u2 + u1 * u1 * u2 * u2).powi(3)),
        }
    })
}

/// Any `N` in `2..=6`, random selection, as an `(N-1)`-dimensional integral
/// over the consecutive ratios `w_k = r_k / r_{k+1}`.
///
/// MCP density: `N! 2^(N-1) / N Π w_k^(2k-1)`. PPP/TCP density:
/// `N! (N-1)! 2^(N-1) Π w_k^(2k-1) / (Σ_i Q_i^2)^N` with
/// `Q_i = Π_{k>=i} w_k`. Both reduce to the 3-user integrals above.
pub fn accuracy_rayleigh_general(model: &DistanceModel, alpha: f64, n: usize) -> Result<Estimate> {
    check_alpha(alpha)?;
    model.validate()?;
    if !(2..=MAX_GENERAL_USERS).contains(&n) {
        return Err(Error::param("n_users", format!("{n} outside 2..={MAX_GENERAL_USERS}")));
    }
    let kind = model.kind();
    let nf = n as f64;
    let fact = |k: usize| (1..=k).map(|i| i as f64).product::<f64>();
    let prefactor = match kind {
        ModelKind::Mcp => fact(n) * 2f64.powi(n as i32 - 1) / nf,
        _ => fact(n) * fact(n - 1) * 2f64.powi(n as i32 - 1),
    };
    let mut wa = [0.0; MAX_GENERAL_USERS];
    cube_estimate(n - 1, |w| {
        let mut density = prefactor;
        for (k, &wk) in w.iter().enumerate() {
            density *= wk.powi(2 * k as i32 + 1);
            wa[k] = wk.powf(alpha);
        }
        if kind != ModelKind::Mcp {
            // Σ_{i=1}^{N} Q_i^2, accumulated from Q_N = 1 downwards
            let (mut q2, mut sum) = (1.0, 1.0);
            for &wk in w.iter().rev() {
                q2 *= wk * wk;
                sum += q2;
            }
            density /= sum.powi(n as i32);
        }
        // user i+1 (0-based i): 1 + Σ_{j<i} Π_{k=j}^{i-1} w_k^alpha
        let mut inner = 1.0;
        for i in 1..n {
            let (mut prod, mut s) = (1.0, 1.0);
            for k in (0..i).rev() {
                prod *= wa[k];
                s += prod;
            }
            inner /= s;
        }
        density * inner
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::gauss_legendre_unit;
    use core::f64::consts::{FRAC_PI_4, LN_2};

    fn ppp() -> DistanceModel {
        DistanceModel::ppp(0.0005).unwrap()
    }
    fn mcp() -> DistanceModel {
        DistanceModel::mcp(20.0).unwrap()
    }
    fn tcp() -> DistanceModel {
        DistanceModel::tcp(25.0).unwrap()
    }

    #[test]
    fn inner_expectation_values() {
        let eq = OrderedDistances::new(alloc::vec![2.0, 2.0, 2.0]).unwrap();
        assert!((inner_expectation_rayleigh(&eq, 4.0).unwrap() - 1.0 / 6.0).abs() < 1e-15);
        let eq2 = OrderedDistances::new(alloc::vec![3.0, 3.0]).unwrap();
        assert!((inner_expectation_rayleigh(&eq2, 3.0).unwrap() - 0.5).abs() < 1e-15);
        let half = OrderedDistances::new(alloc::vec![1.0, 2.0]).unwrap();
        assert!((inner_expectation_rayleigh(&half, 4.0).unwrap() - 1.0 / 1.0625).abs() < 1e-15);
    }

    #[test]
    fn two_users_mcp() {
        let e = accuracy_rayleigh_2ue(&mcp(), 4.0).unwrap();
        assert!((e.value - FRAC_PI_4).abs() < 1e-8);
        assert!(e.error_bound <= 1e-8);
        assert!((accuracy_rayleigh_2ue(&mcp(), 2.0).unwrap().value - LN_2).abs() < 1e-8);
    }

    /// `2 ∫₀¹ dx / ((1+x)^2 (1+x^(alpha/2)))`, with `x = (r1/r2)^2`.
    fn ppp_two_user_oracle(alpha: f64) -> f64 {
        gauss_legendre_unit(128)
            .unwrap()
            .integrate(|x| 2.0 / ((1.0 + x) * (1.0 + x) * (1.0 + x.powf(0.5 * alpha))))
    }

    #[test]
    fn two_users_ppp_matches_integral() {
        for &alpha in &[2.5, 3.0, 4.0, 5.0, 6.0] {
            let e = accuracy_rayleigh_2ue(&ppp(), alpha).unwrap();
            assert!((e.value - ppp_two_user_oracle(alpha)).abs() < 1e-7, "alpha={alpha}");
        }
        let v = accuracy_rayleigh_2ue(&ppp(), 4.0).unwrap().value;
        assert!((v - 0.846_573_590_279_972_7).abs() < 1e-8);
        assert_eq!(v, accuracy_rayleigh_2ue(&tcp(), 4.0).unwrap().value);
    }

    #[test]
    fn three_users() {
        let p = accuracy_rayleigh_3ue(&ppp(), 4.0).unwrap();
        let m = accuracy_rayleigh_3ue(&mcp(), 4.0).unwrap();
        assert!((p.value - 0.61).abs() < 0.02);
        assert!((m.value - 0.51).abs() < 0.02);
        assert!(p.error_bound < 1e-5 && m.error_bound < 1e-5);
        let big = accuracy_rayleigh_3ue(&mcp(), 50.0).unwrap().value;
        assert!(big > accuracy_rayleigh_3ue(&mcp(), 20.0).unwrap().value);
        assert!(big > 0.9);
    }

    #[test]
    fn general_matches_special_cases() {
        for model in [ppp(), mcp(), tcp()] {
            for &alpha in &[2.5, 4.0, 6.0] {
                let g2 = accuracy_rayleigh_general(&model, alpha, 2).unwrap().value;
                let s2 = accuracy_rayleigh_2ue(&model, alpha).unwrap().value;
                assert!((g2 - s2).abs() < 1e-4, "{model:?} {alpha}: {g2} {s2}");
                let g3 = accuracy_rayleigh_general(&model, alpha, 3).unwrap().value;
                let s3 = accuracy_rayleigh_3ue(&model, alpha).unwrap().value;
                assert!((g3 - s3).abs() < 1e-4);
            }
        }
    }

    #[test]
    fn general_decreases_in_n() {
        let vals: alloc::vec::Vec<f64> = (2..=5)
            .map(|n| accuracy_rayleigh_general(&mcp(), 4.0, n).unwrap().value)
            .collect();
        assert!(vals.windows(2).all(|w| w[1] < w[0]), "{vals:?}");
        assert!(accuracy_rayleigh_general(&mcp(), 4.0, 1).is_err());
        assert!(accuracy_rayleigh_general(&mcp(), 4.0, 7).is_err());
    }

    #[test]
    fn scale_free() {
        for (a, b) in [
            (DistanceModel::mcp(1.0).unwrap(), DistanceModel::mcp(500.0).unwrap()),
            (DistanceModel::tcp(1.0).unwrap(), DistanceModel::tcp(1e4).unwrap()),
            (DistanceModel::ppp(1e-5).unwrap(), DistanceModel::ppp(1e-2).unwrap()),
        ] {
            assert_eq!(
                accuracy_rayleigh_2ue(&a, 4.0).unwrap(),
                accuracy_rayleigh_2ue(&b, 4.0).unwrap()
            );
            assert_eq!(
                accuracy_rayleigh_3ue(&a, 3.0).unwrap(),
                accuracy_rayleigh_3ue(&b, 3.0).unwrap()
            );
            assert_eq!(
                accuracy_rayleigh_general(&a, 5.0, 4).unwrap(),
                accuracy_rayleigh_general(&b, 5.0, 4).unwrap()
            );
        }
    }

    #[test]
    fn rejects_small_alpha() {
        assert!(accuracy_rayleigh_2ue(&mcp(), 1.5).is_err());
        assert!(accuracy_rayleigh_3ue(&mcp(), f64::NAN).is_err());
    }
}
