use alloc::format;

use num_traits::Float;

use crate::analytic::nakagami::beta_inc_ratio;
use crate::analytic::{check_alpha, check_m, cube_estimate, ClusterSpec, Pairing};
use crate::geometry::{DistanceModel, ModelKind};
use crate::numerics::ln_gamma;
use crate::{mc, Error, Estimate, Method, Result};

/// Largest selection evaluated by quadrature (the integral has one
/// dimension per selected user).
pub const MAX_PAIRING_QUADRATURE_USERS: usize = 5;

/// Monte Carlo settings used when no quadrature route exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McFallback {
    pub n_samples: u64,
    pub seed: u64,
}

/// Nearest and farthest of `pool_size` users under Rayleigh fading.
pub fn accuracy_pairing_rayleigh_2ue(model: &DistanceModel, alpha: f64, pool_size: usize) -> Result<Estimate> {
    check_alpha(alpha)?;
    model.validate()?;
    pairing_quadrature(model.kind(), alpha, 1.0, &Pairing::nearest_farthest(pool_size)?)
}

/// Accuracy of a rank-selected cluster.
///
/// The selected distances are mapped to uniforms `y_i = F(r_(s_i))`, whose
/// joint law is that of selected uniform order statistics,
/// `M! / Π g! · y_1^g0 Π (y_{i+1} - y_i)^g_i (1 - y_N)^g_N`, and then to the
/// unit cube by `y_N = v_N`, `y_i = y_{i+1} v_i`. Distance ratios follow from
/// the inverse CDF and are free of the model scale. The integral has `N`
/// dimensions whatever `M` is.
///
/// Quadrature covers Rayleigh fading with `N <= 5` and Nakagami fading with
/// `N = 2`. Other cases run Monte Carlo if `fallback` is given (method tag
/// `monte-carlo`), and are a parameter error otherwise.
pub fn accuracy_pairing_general(spec: &ClusterSpec, fallback: Option<McFallback>) -> Result<Estimate> {
    spec.validate()?;
    let pairing = spec
        .pairing
        .as_ref()
        .ok_or_else(|| Error::param("pairing", "spec has no pairing rule"))?;
    let n = spec.n_users;
    if n < 2 {
        return Err(Error::param("n_users", "must be >= 2"));
    }
    let m = spec.fading.m();
    let quadrature = n <= MAX_PAIRING_QUADRATURE_USERS && (spec.fading.is_rayleigh() || n == 2);
    if quadrature {
        return pairing_quadrature(spec.model.kind(), spec.alpha, m, pairing);
    }
    match fallback {
        Some(fb) => {
            let e = mc::estimate_accuracy(spec, fb.n_samples, fb.seed, false)?;
            Ok(Estimate::new(e.estimate, e.stderr, Method::MonteCarlo))
        }
        None => Err(Error::param(
            "pairing",
            format!("no quadrature route for N = {n}, m = {m}; Monte Carlo fallback required"),
        )),
    }
}

fn pairing_quadrature(kind: ModelKind, alpha: f64, m: f64, pairing: &Pairing) -> Result<Estimate> {
    check_m(m)?;
    const K: usize = MAX_PAIRING_QUADRATURE_USERS;
    let n = pairing.ranks().len();
    if !(2..=K).contains(&n) {
        return Err(Error::param("ranks", format!("{n} selected users outside 2..={K}")));
    }
    let gaps = pairing.gaps();
    let mut ln_coef = ln_gamma(pairing.pool_size() as f64 + 1.0)?;
    for &g in &gaps {
        ln_coef -= ln_gamma(g as f64 + 1.0)?;
    }
    let rayleigh = m == 1.0;
    let half_alpha = 0.5 * alpha;
    let mut y = [0.0; K];
    // scale-free stand-ins for r^2: y (MCP) or -ln(1 - y) (PPP/TCP)
    let mut s = [0.0; K];
    cube_estimate(n, |v| {
        y[n - 1] = v[n - 1];
        for i in (0..n - 1).rev() {
            y[i] = y[i + 1] * v[i];
        }
        let mut ln_f = ln_coef;
        if gaps[0] > 0 {
            ln_f += gaps[0] as f64 * y[0].ln();
        }
        for i in 0..n - 1 {
            if gaps[i + 1] > 0 {
                ln_f += gaps[i + 1] as f64 * (y[i + 1].ln() + (-v[i]).ln_1p());
            }
        }
        if gaps[n] > 0 {
            ln_f += gaps[n] as f64 * (-y[n - 1]).ln_1p();
        }
        // Jacobian Π_{k=2}^{N} v_k^{k-1}
        for (k, &vk) in v.iter().enumerate().skip(1) {
            ln_f += k as f64 * vk.ln();
        }
        for i in 0..n {
            s[i] = match kind {
                ModelKind::Mcp => y[i],
                _ => -(-y[i]).ln_1p(),
            };
        }
        let inner = if rayleigh {
            let mut p = 1.0;
            for i in 1..n {
                let sum: f64 = 1.0 + (0..i).map(|j| (s[j] / s[i]).powf(half_alpha)).sum::<f64>();
                p /= sum;
            }
            p
        } else {
            beta_inc_ratio((s[0] / s[1]).sqrt(), alpha, m).unwrap_or(f64::NAN)
        };
        ln_f.exp() * inner
    })
}
