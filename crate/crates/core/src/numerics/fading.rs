use rand::Rng;
use rand_distr::{Distribution, Gamma};

use crate::numerics::special::gamma_p;
use crate::{Error, Result};

/// Nakagami-m channel power: `h ~ Gamma(shape = m, scale = omega / m)`, so
/// `E[h] = omega`. `m = 1` is Rayleigh fading (exponential power).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FadingModel {
    m: f64,
    omega: f64,
}

impl FadingModel {
    /// Smallest supported shape.
    pub const MIN_M: f64 = 0.5;

    pub fn new(m: f64, omega: f64) -> Result<Self> {
        if !(m >= Self::MIN_M) || !m.is_finite() {
            return Err(Error::param("m", alloc::format!("{m} must be finite and >= 0.5")));
        }
        if !(omega > 0.0) || !omega.is_finite() {
            return Err(Error::param("omega", alloc::format!("{omega} must be finite and > 0")));
        }
        Ok(Self { m, omega })
    }

    /// Unit-mean Nakagami fading with shape `m`.
    pub fn nakagami(m: f64) -> Result<Self> {
        Self::new(m, 1.0)
    }

    pub fn rayleigh() -> Self {
        Self { m: 1.0, omega: 1.0 }
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn is_rayleigh(&self) -> bool {
        self.m == 1.0
    }

    /// A reusable sampler. Prefer this over [`sample_gamma`] in loops.
    pub fn sampler(&self) -> Gamma<f64> {
        Gamma::new(self.m, self.omega / self.m).expect("validated shape and scale")
    }

    /// `P(h <= x)`.
    pub fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        gamma_p(self.m, self.m * x / self.omega).unwrap_or(1.0)
    }
}

/// One draw of the channel power gain.
pub fn sample_gamma<R: Rng + ?Sized>(fading: &FadingModel, rng: &mut R) -> f64 {
    fading.sampler().sample(rng)
}
