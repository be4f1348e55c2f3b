use num_traits::Float;
use rand::Rng;
use rand_distr::{Distribution, Gamma};

use crate::geometry::{radial_ppp, sample_distance, DistanceModel};

/// Uplink inter-cell interference at the typical BS (origin): one active
/// user per interfering BS, placed around its BS by `model`, each received
/// with power `p_tx h D^-alpha`. Interfering BSs form a PPP of intensity
/// `lambda` in `guard <= |b| < window`.
#[allow(clippy::too_many_arguments)]
pub fn interference_field_uplink<R: Rng + ?Sized>(
    lambda: f64,
    model: &DistanceModel,
    alpha: f64,
    gains: &Gamma<f64>,
    p_tx: f64,
    guard: f64,
    window: f64,
    rng: &mut R,
) -> f64 {
    let mut total = 0.0;
    radial_ppp(lambda, guard, window, rng, |rng, rb, phi| {
        let d = sample_distance(model, rng);
        let psi = 2.0 * core::f64::consts::PI * rng.random::<f64>();
        let x = rb * phi.cos() + d * psi.cos();
        let y = rb * phi.sin() + d * psi.sin();
        let h = gains.sample(rng);
        total += p_tx * h * (x * x + y * y).powf(-0.5 * alpha);
    });
    total
}

/// Downlink inter-cell interference at a user `user_distance` from the
/// typical BS: `Σ p_bs h |b - x|^-alpha` over interfering BSs in
/// `guard <= |b| < window`. The field is isotropic, so the user sits on the
/// positive x axis.
#[allow(clippy::too_many_arguments)]
pub fn interference_field_downlink<R: Rng + ?Sized>(
    lambda: f64,
    alpha: f64,
    gains: &Gamma<f64>,
    p_bs: f64,
    user_distance: f64,
    guard: f64,
    window: f64,
    rng: &mut R,
) -> f64 {
    let mut total = 0.0;
    radial_ppp(lambda, guard, window, rng, |rng, rb, phi| {
        let dx = rb * phi.cos() - user_distance;
        let dy = rb * phi.sin();
        let h = gains.sample(rng);
        total += p_bs * h * (dx * dx + dy * dy).powf(-0.5 * alpha);
    });
    total
}
