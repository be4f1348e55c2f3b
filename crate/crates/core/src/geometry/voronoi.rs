use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_traits::Float;
use rand::Rng;
use rand_distr::{Distribution, Poisson};

use crate::geometry::OrderedDistances;
use crate::{Error, Result};

/// Minimum expected number of users per cell, per requested user.
pub const MIN_LOAD_PER_USER: f64 = 3.0;

/// Redraws allowed per requested cluster before giving up.
const MAX_REDRAWS: usize = 100_000;

/// One realization of the BS and user point processes in the square window
/// `[-w, w]^2`, with a BS conditioned at the origin (index 0 of
/// `bs_points`).
#[derive(Debug, Clone, Default)]
pub struct VoronoiScene {
    pub bs_points: Vec<[f64; 2]>,
    pub user_points: Vec<[f64; 2]>,
    /// Distances from the origin BS to the users in its Voronoi cell.
    pub typical_cell_users: Vec<f64>,
    pub lambda_u: f64,
}

/// Ground-truth sampler for distances of users in the typical Voronoi cell.
///
/// Buffers are reused between scenes.
#[derive(Debug, Clone)]
pub struct VoronoiSampler {
    half_width: f64,
    bs_count: Poisson<f64>,
    user_count: Poisson<f64>,
    scene: VoronoiScene,
    bs_norms: Vec<(f64, [f64; 2])>,
}

impl VoronoiSampler {
    /// Default window half-width, `4 / sqrt(lambda pi)`.
    pub fn default_half_width(lambda: f64) -> f64 {
        4.0 / (lambda * PI).sqrt()
    }

    /// `lambda`, `lambda_u`: BS and user intensities. The load ratio
    /// `lambda_u / lambda` must be at least `MIN_LOAD_PER_USER * n_max`,
    /// where `n_max` is the largest cluster that will be requested.
    pub fn new(lambda: f64, lambda_u: f64, half_width: f64, n_max: usize) -> Result<Self> {
        for (name, v) in [("lambda", lambda), ("lambda_u", lambda_u), ("half_width", half_width)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::param(name, format!("{v} must be finite and > 0")));
            }
        }
        if lambda_u / lambda < MIN_LOAD_PER_USER * n_max as f64 {
            return Err(Error::param(
                "lambda_u",
                format!(
                    "load ratio {} is below {} for clusters of {n_max}",
                    lambda_u / lambda,
                    MIN_LOAD_PER_USER * n_max as f64
                ),
            ));
        }
        let min_w = Self::default_half_width(lambda);
        if half_width < min_w * (1.0 - 1e-12) {
            return Err(Error::param(
                "half_width",
                format!("{half_width} is smaller than 4/sqrt(lambda pi) = {min_w}"),
            ));
        }
        let area = 4.0 * half_width * half_width;
        Ok(Self {
            half_width,
            bs_count: Poisson::new(lambda * area).map_err(|e| Error::param("lambda", format!("{e}")))?,
            user_count: Poisson::new(lambda_u * area).map_err(|e| Error::param("lambda_u", format!("{e}")))?,
            scene: VoronoiScene {
                lambda_u,
                ..VoronoiScene::default()
            },
            bs_norms: Vec::new(),
        })
    }

    fn uniform_point<R: Rng + ?Sized>(&self, rng: &mut R) -> [f64; 2] {
        let w = self.half_width;
        [
            w * (2.0 * rng.random::<f64>() - 1.0),
            w * (2.0 * rng.random::<f64>() - 1.0),
        ]
    }

    /// Draws a fresh scene and returns it.
    pub fn draw_scene<R: Rng + ?Sized>(&mut self, rng: &mut R) -> &VoronoiScene {
        let n_bs = self.bs_count.sample(rng) as usize;
        let n_users = self.user_count.sample(rng) as usize;

        let mut bs = core::mem::take(&mut self.scene.bs_points);
        bs.clear();
        bs.push([0.0, 0.0]);
        for _ in 0..n_bs {
            bs.push(self.uniform_point(rng));
        }
        self.bs_norms.clear();
        self.bs_norms.extend(bs[1..].iter().map(|p| (p[0].hypot(p[1]), *p)));
        self.bs_norms.sort_unstable_by(|a, b| a.0.total_cmp(&b.0));

        let mut users = core::mem::take(&mut self.scene.user_points);
        users.clear();
        self.scene.typical_cell_users.clear();
        for _ in 0..n_users {
            let u = self.uniform_point(rng);
            users.push(u);
            let d0 = u[0].hypot(u[1]);
            // a BS closer to u than the origin has |b| < 2 d0
            let in_cell = self
                .bs_norms
                .iter()
                .take_while(|(norm, _)| *norm < 2.0 * d0)
                .all(|(_, b)| (u[0] - b[0]).hypot(u[1] - b[1]) >= d0);
            if in_cell && d0 > 0.0 {
                self.scene.typical_cell_users.push(d0);
            }
        }
        self.scene.bs_points = bs;
        self.scene.user_points = users;
        &self.scene
    }

    /// Fills `out` with the sorted distances of `out.len()` users chosen
    /// uniformly from the typical cell, redrawing scenes whose typical cell
    /// holds fewer users. Returns the number of scenes drawn.
    pub fn fill_ordered<R: Rng + ?Sized>(&mut self, out: &mut [f64], rng: &mut R) -> Result<usize> {
        let n = out.len();
        for attempt in 1..=MAX_REDRAWS {
            self.draw_scene(rng);
            let cell = &mut self.scene.typical_cell_users;
            if cell.len() < n {
                continue;
            }
            // partial Fisher-Yates
            for i in 0..n {
                let j = rng.random_range(i..cell.len());
                cell.swap(i, j);
            }
            out.copy_from_slice(&cell[..n]);
            out.sort_unstable_by(f64::total_cmp);
            return Ok(attempt);
        }
        Err(Error::NoConvergence {
            op: "voronoi redraw",
            iterations: MAX_REDRAWS,
        })
    }
}

/// Sorted distances of `n` users chosen uniformly from the typical Voronoi
/// cell of a PPP of BSs, with users from an independent PPP of intensity
/// `lambda_u` associated to their nearest BS.
pub fn simulate_voronoi_cell<R: Rng + ?Sized>(
    lambda: f64,
    lambda_u: f64,
    n: usize,
    half_width: f64,
    rng: &mut R,
) -> Result<OrderedDistances> {
    if n == 0 {
        return Err(Error::param("n_users", "must be >= 1"));
    }
    let mut sampler = VoronoiSampler::new(lambda, lambda_u, half_width, n)?;
    let mut out = alloc::vec![0.0; n];
    sampler.fill_ordered(&mut out, rng)?;
    OrderedDistances::new(out)
}
