use core::f64::consts::PI;

use num_traits::Float;
use rand::Rng;
use rand_distr::{Distribution, Exp1};

/// Points of a homogeneous PPP of intensity `lambda` in the annulus
/// `guard <= |x| < radius`, generated in order of increasing distance from
/// the origin. `visit(r, phi)` is called once per point.
///
/// Points come from cumulative unit-exponential arrivals,
/// `r_k^2 = guard^2 + (E_1 + ... + E_k) / (lambda pi)`, so a run with a
/// larger `radius` and the same generator state reproduces every point of
/// the smaller window first. Returns the number of points.
pub fn radial_ppp<R, F>(lambda: f64, guard: f64, radius: f64, rng: &mut R, mut visit: F) -> usize
where
    R: Rng + ?Sized,
    F: FnMut(&mut R, f64, f64),
{
    let mut r2 = guard * guard;
    let limit = radius * radius;
    let mut count = 0;
    loop {
        let e: f64 = Exp1.sample(rng);
        r2 += e / (lambda * PI);
        if r2 >= limit {
            return count;
        }
        let phi = 2.0 * PI * rng.random::<f64>();
        visit(rng, r2.sqrt(), phi);
        count += 1;
    }
}
