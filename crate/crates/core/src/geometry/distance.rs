use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_traits::Float;
use rand::Rng;
use rand_distr::Open01;

use crate::{Error, Result};

/// Correction constant in the PPP typical-cell distance approximation.
pub const PPP_CORRECTION: f64 = 1.25;

/// Law of the distance between a user and its serving base station.
///
/// - `PppVoronoi`: users uniform in the Voronoi cell of a PPP of intensity
///   `lambda`, approximated by `F(x) = 1 - exp(-c lambda pi x^2)`.
/// - `Mcp`: users uniform in a disk of radius `radius` around the BS.
/// - `Tcp`: users Gaussian-scattered around the BS with per-coordinate
///   variance `sigma2`, so `F(x) = 1 - exp(-x^2 / (2 sigma2))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DistanceModel {
    PppVoronoi { lambda: f64, c: f64 },
    Mcp { radius: f64 },
    Tcp { sigma2: f64 },
}

/// The variant of a [`DistanceModel`] without its scale parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    Ppp,
    Mcp,
    Tcp,
}

impl ModelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::Ppp => "ppp",
            ModelKind::Mcp => "mcp",
            ModelKind::Tcp => "tcp",
        }
    }
}

fn positive(name: &'static str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Error::param(name, format!("{v} must be finite and > 0")))
    }
}

impl DistanceModel {
    pub fn ppp(lambda: f64) -> Result<Self> {
        Self::ppp_with_correction(lambda, PPP_CORRECTION)
    }

    pub fn ppp_with_correction(lambda: f64, c: f64) -> Result<Self> {
        Ok(DistanceModel::PppVoronoi {
            lambda: positive("lambda", lambda)?,
            c: positive("c", c)?,
        })
    }

    pub fn mcp(radius: f64) -> Result<Self> {
        Ok(DistanceModel::Mcp {
            radius: positive("radius", radius)?,
        })
    }

    pub fn tcp(sigma2: f64) -> Result<Self> {
        Ok(DistanceModel::Tcp {
            sigma2: positive("sigma2", sigma2)?,
        })
    }

    /// Re-checks the parameters of a directly constructed variant.
    pub fn validate(&self) -> Result<()> {
        match *self {
            DistanceModel::PppVoronoi { lambda, c } => {
                positive("lambda", lambda)?;
                positive("c", c)?;
            }
            DistanceModel::Mcp { radius } => {
                positive("radius", radius)?;
            }
            DistanceModel::Tcp { sigma2 } => {
                positive("sigma2", sigma2)?;
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> ModelKind {
        match self {
            DistanceModel::PppVoronoi { .. } => ModelKind::Ppp,
            DistanceModel::Mcp { .. } => ModelKind::Mcp,
            DistanceModel::Tcp { .. } => ModelKind::Tcp,
        }
    }

    /// `kappa` in `F(x) = 1 - exp(-kappa x^2)` for the PPP and TCP laws.
    fn kappa(&self) -> Option<f64> {
        match *self {
            DistanceModel::PppVoronoi { lambda, c } => Some(c * lambda * PI),
            DistanceModel::Tcp { sigma2 } => Some(0.5 / sigma2),
            DistanceModel::Mcp { .. } => None,
        }
    }

    fn check_x(x: f64) -> Result<()> {
        if x >= 0.0 {
            Ok(())
        } else {
            Err(Error::domain("distance law", format!("x = {x} must be >= 0")))
        }
    }

    pub fn pdf(&self, x: f64) -> Result<f64> {
        Self::check_x(x)?;
        Ok(match (*self, self.kappa()) {
            (DistanceModel::Mcp { radius }, _) => {
                if x <= radius {
                    2.0 * x / (radius * radius)
                } else {
                    0.0
                }
            }
            (_, Some(k)) => 2.0 * k * x * (-k * x * x).exp(),
            (_, None) => unreachable!(),
        })
    }

    pub fn cdf(&self, x: f64) -> Result<f64> {
        Self::check_x(x)?;
        Ok(match (*self, self.kappa()) {
            (DistanceModel::Mcp { radius }, _) => (x / radius).powi(2).min(1.0),
            (_, Some(k)) => -(-k * x * x).exp_m1(),
            (_, None) => unreachable!(),
        })
    }

    /// `F^-1(u)` for `u ∈ [0, 1)`.
    pub fn inverse_cdf(&self, u: f64) -> Result<f64> {
        if !(0.0..1.0).contains(&u) {
            return Err(Error::domain("inverse_cdf", format!("u = {u} outside [0, 1)")));
        }
        Ok(self.inverse_cdf_unchecked(u))
    }

    fn inverse_cdf_unchecked(&self, u: f64) -> f64 {
        match (*self, self.kappa()) {
            (DistanceModel::Mcp { radius }, _) => radius * u.sqrt(),
            (_, Some(k)) => (-(-u).ln_1p() / k).sqrt(),
            (_, None) => unreachable!(),
        }
    }

    /// Upper end of the support, if finite.
    pub fn support_max(&self) -> Option<f64> {
        match *self {
            DistanceModel::Mcp { radius } => Some(radius),
            _ => None,
        }
    }
}

/// One inverse-CDF draw; strictly positive, and below `R` for the MCP.
pub fn sample_distance<R: Rng + ?Sized>(model: &DistanceModel, rng: &mut R) -> f64 {
    let u: f64 = rng.sample(Open01);
    model.inverse_cdf_unchecked(u)
}

/// Fills `out` with i.i.d. draws sorted ascending.
pub(crate) fn fill_ordered<R: Rng + ?Sized>(model: &DistanceModel, out: &mut [f64], rng: &mut R) {
    for x in out.iter_mut() {
        *x = sample_distance(model, rng);
    }
    out.sort_unstable_by(f64::total_cmp);
}

/// `n` i.i.d. draws sorted ascending: a draw from the joint law of the
/// order statistics `n! Π f(r_i)` on `r_1 <= ... <= r_n`.
pub fn sample_ordered<R: Rng + ?Sized>(model: &DistanceModel, n: usize, rng: &mut R) -> Result<OrderedDistances> {
    if n == 0 {
        return Err(Error::param("n_users", "must be >= 1"));
    }
    model.validate()?;
    let mut values = alloc::vec![0.0; n];
    fill_ordered(model, &mut values, rng);
    Ok(OrderedDistances { values })
}

/// Ascending, strictly positive user distances.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderedDistances {
    values: Vec<f64>,
}

impl OrderedDistances {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Precondition("no distances".into()));
        }
        if values.iter().any(|&v| !(v > 0.0) || !v.is_finite()) {
            return Err(Error::Precondition("distances must be finite and > 0".into()));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Precondition("distances must be sorted ascending".into()));
        }
        Ok(Self { values })
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.values
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::gauss_legendre_unit;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn models() -> [DistanceModel; 3] {
        [
            DistanceModel::ppp(0.0005).unwrap(),
            DistanceModel::mcp(20.0).unwrap(),
            DistanceModel::tcp(25.0).unwrap(),
        ]
    }

    #[test]
    fn mcp_pdf_values() {
        let m = DistanceModel::mcp(20.0).unwrap();
        assert!((m.pdf(10.0).unwrap() - 0.05).abs() < 1e-15);
        assert_eq!(m.pdf(25.0).unwrap(), 0.0);
        assert_eq!(m.cdf(20.0).unwrap(), 1.0);
        assert!(m.pdf(-1.0).is_err());
        assert!(m.cdf(-1.0).is_err());
    }

    #[test]
    fn cdf_spot_values() {
        let t = DistanceModel::tcp(25.0).unwrap();
        let median = (2.0 * 25.0 * core::f64::consts::LN_2).sqrt();
        assert!((median - 5.887).abs() < 1e-3);
        assert!((t.cdf(median).unwrap() - 0.5).abs() < 1e-14);
        let lambda = 0.0005;
        let p = DistanceModel::ppp(lambda).unwrap();
        let x = (1.0 / (1.25 * lambda * PI)).sqrt();
        assert!((p.cdf(x).unwrap() - (1.0 - (-1.0f64).exp())).abs() < 1e-14);
        assert_eq!(p.pdf(0.0).unwrap(), 0.0);
    }

    #[test]
    fn pdf_normalised() {
        // substitute x = s / (1 - s) to map [0, inf) onto [0, 1)
        let rule = gauss_legendre_unit(128).unwrap();
        for m in models() {
            let scale = match m {
                DistanceModel::PppVoronoi { lambda, c } => 1.0 / (c * lambda * PI).sqrt(),
                DistanceModel::Tcp { sigma2 } => sigma2.sqrt(),
                DistanceModel::Mcp { radius } => radius,
            };
            let total = if let Some(r) = m.support_max() {
                rule.integrate(|s| r * m.pdf(r * s).unwrap())
            } else {
                rule.integrate(|s| {
                    let x = scale * s / (1.0 - s);
                    m.pdf(x).unwrap() * scale / ((1.0 - s) * (1.0 - s))
                })
            };
            assert!((total - 1.0).abs() < 1e-9, "{m:?}: {total}");
        }
    }

    #[test]
    fn inverse_cdf_roundtrip() {
        for m in models() {
            for &u in &[0.0, 1e-12, 0.1, 0.5, 0.9, 0.999_999] {
                let x = m.inverse_cdf(u).unwrap();
                assert!((m.cdf(x).unwrap() - u).abs() < 1e-12);
            }
            assert!(m.inverse_cdf(1.0).is_err());
        }
    }

    #[test]
    fn draws_positive_and_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for m in models() {
            for _ in 0..10_000 {
                let x = sample_distance(&m, &mut rng);
                assert!(x > 0.0);
                if let Some(r) = m.support_max() {
                    assert!(x < r);
                }
            }
        }
    }

    #[test]
    fn mcp_mean() {
        let m = DistanceModel::mcp(20.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let n = 1_000_000;
        let mean = (0..n).map(|_| sample_distance(&m, &mut rng)).sum::<f64>() / n as f64;
        assert!((mean - 40.0 / 3.0).abs() < 0.02, "{mean}");
    }

    #[test]
    fn ordered_sampler() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let m = DistanceModel::tcp(4.0).unwrap();
        assert!(sample_ordered(&m, 0, &mut rng).is_err());
        assert_eq!(sample_ordered(&m, 1, &mut rng).unwrap().len(), 1);
        for _ in 0..1000 {
            let d = sample_ordered(&m, 2, &mut rng).unwrap();
            assert!(d.as_slice()[0] <= d.as_slice()[1]);
        }
    }

    #[test]
    fn ordered_distances_validation() {
        assert!(OrderedDistances::new(alloc::vec![1.0, 2.0]).is_ok());
        assert!(OrderedDistances::new(alloc::vec![2.0, 1.0]).is_err());
        assert!(OrderedDistances::new(alloc::vec![0.0, 1.0]).is_err());
        assert!(OrderedDistances::new(alloc::vec![]).is_err());
    }

    #[test]
    fn invalid_models() {
        assert!(DistanceModel::ppp(0.0).is_err());
        assert!(DistanceModel::mcp(-1.0).is_err());
        assert!(DistanceModel::tcp(f64::NAN).is_err());
        assert!(DistanceModel::Mcp { radius: 0.0 }.validate().is_err());
    }
}
