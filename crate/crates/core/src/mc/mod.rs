//! Monte Carlo estimation of the accuracy probability.
//!
//! Samples are split into blocks of [`BLOCK_LEN`]. Block `b` draws from
//! `ChaCha8Rng::seed_from_u64(seed)` switched to stream `b`, so every block
//! is reproducible on its own and block results (integer counts) can be
//! computed on any number of workers and summed in any order.
//!
//! Per sample the distances are drawn first (the whole pool under pairing),
//! then one gain per selected user. The ranking indicator compares
//! `ln h_i - alpha ln r_i`; a floating-point tie counts as a mismatch.

mod permutation;

pub use permutation::{
    estimate_permutation_distribution, estimate_permutation_distribution_with, permutation_block,
    PermutationDistribution, MAX_PERMUTATION_USERS, MIN_PERMUTATION_SAMPLES,
};

use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;
use num_traits::Float;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};

use crate::analytic::ClusterSpec;
use crate::geometry::{DistanceModel, ModelKind, VoronoiSampler};
use crate::{Error, Result};

/// Samples per block.
pub const BLOCK_LEN: u64 = 10_000;
/// Smallest accepted sample count.
pub const MIN_SAMPLES: u64 = 10_000;
/// Default sample count.
pub const DEFAULT_SAMPLES: u64 = 1_000_000;
/// Default user-to-BS intensity ratio of the Voronoi ground truth.
pub const DEFAULT_LOAD_RATIO: f64 = 10.0;

/// Result of a Monte Carlo indicator mean.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub estimate: f64,
    /// `sqrt(p (1 - p) / n)`.
    pub stderr: f64,
    pub n_samples: u64,
    pub seed: u64,
}

impl McEstimate {
    pub fn from_counts(hits: u64, n_samples: u64, seed: u64) -> Self {
        let p = hits as f64 / n_samples as f64;
        Self {
            estimate: p,
            stderr: (p * (1.0 - p) / n_samples as f64).sqrt(),
            n_samples,
            seed,
        }
    }
}

/// The generator for block `block` of a run seeded with `seed`.
pub fn block_rng(seed: u64, block: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block);
    rng
}

/// Number of blocks covering `n_samples`.
pub fn block_count(n_samples: u64) -> u64 {
    n_samples.div_ceil(BLOCK_LEN)
}

/// Samples in block `block` of a run of `n_samples`.
pub fn block_len(n_samples: u64, block: u64) -> u64 {
    BLOCK_LEN.min(n_samples.saturating_sub(block * BLOCK_LEN))
}

pub fn check_samples(n_samples: u64) -> Result<()> {
    if n_samples < MIN_SAMPLES {
        return Err(Error::param("n_samples", format!("{n_samples} is below {MIN_SAMPLES}")));
    }
    Ok(())
}

/// Where the user distances of a sample come from.
#[derive(Debug, Clone, PartialEq)]
pub enum DistanceSource {
    /// I.i.d. draws from the spec's distance law, sorted.
    Model,
    /// Users of the typical cell of a simulated PPP Voronoi tessellation;
    /// only for PPP specs. `load_ratio` is `lambda_u / lambda`, `None` picks
    /// `max(10, 3 * pool)`; `half_width` defaults to `4 / sqrt(lambda pi)`.
    Voronoi {
        load_ratio: Option<f64>,
        half_width: Option<f64>,
    },
    /// The same sorted distances in every sample.
    Pinned(Vec<f64>),
}

impl DistanceSource {
    pub fn voronoi() -> Self {
        DistanceSource::Voronoi {
            load_ratio: None,
            half_width: None,
        }
    }
}

enum Source {
    Model(DistanceModel),
    Voronoi(Box<VoronoiSampler>),
    Pinned,
}

/// Per-block sampling state for one spec.
pub(crate) struct Sampler {
    alpha: f64,
    ranks: Option<Vec<usize>>,
    source: Source,
    gains: Gamma<f64>,
    pool: Vec<f64>,
    selected: Vec<f64>,
    /// `ln h_i - alpha ln r_i` of the last sample.
    pub(crate) powers: Vec<f64>,
}

impl Sampler {
    pub(crate) fn new(spec: &ClusterSpec, source: &DistanceSource) -> Result<Self> {
        spec.validate()?;
        let pool_len = spec.draws_per_sample();
        let mut pool = alloc::vec![0.0; pool_len];
        let source = match source {
            DistanceSource::Model => Source::Model(spec.model),
            DistanceSource::Voronoi { load_ratio, half_width } => {
                let DistanceModel::PppVoronoi { lambda, .. } = spec.model else {
                    return Err(Error::param(
                        "ground_truth_voronoi",
                        format!(
                            "Voronoi ground truth needs the PPP model, not {}",
                            spec.model.kind().as_str()
                        ),
                    ));
                };
                let ratio = load_ratio.unwrap_or(DEFAULT_LOAD_RATIO.max(3.0 * pool_len as f64));
                let w = half_width.unwrap_or_else(|| VoronoiSampler::default_half_width(lambda));
                Source::Voronoi(Box::new(VoronoiSampler::new(lambda, ratio * lambda, w, pool_len)?))
            }
            DistanceSource::Pinned(d) => {
                if d.len() != pool_len {
                    return Err(Error::param(
                        "pinned distances",
                        format!("{} given, {pool_len} needed", d.len()),
                    ));
                }
                crate::geometry::OrderedDistances::new(d.clone())?;
                pool.copy_from_slice(d);
                Source::Pinned
            }
        };
        let n = spec.n_users;
        Ok(Self {
            alpha: spec.alpha,
            ranks: spec.pairing.as_ref().map(|p| p.ranks().to_vec()),
            source,
            gains: spec.fading.sampler(),
            pool,
            selected: alloc::vec![0.0; n],
            powers: alloc::vec![0.0; n],
        })
    }

    /// Draws one sample and fills `powers`.
    pub(crate) fn draw(&mut self, rng: &mut ChaCha8Rng) -> Result<()> {
        match &mut self.source {
            Source::Model(model) => crate::geometry::distance::fill_ordered(model, &mut self.pool, rng),
            Source::Voronoi(v) => {
                v.fill_ordered(&mut self.pool, rng)?;
            }
            Source::Pinned => {}
        }
        match &self.ranks {
            Some(ranks) => {
                for (dst, &s) in self.selected.iter_mut().zip(ranks) {
                    *dst = self.pool[s - 1];
                }
            }
            None => self.selected.copy_from_slice(&self.pool),
        }
        for (p, &r) in self.powers.iter_mut().zip(&self.selected) {
            let h = self.gains.sample(rng);
            *p = h.ln() - self.alpha * r.ln();
        }
        Ok(())
    }

    /// Distance ranking agrees with power ranking (strictly).
    pub(crate) fn matches(&self) -> bool {
        self.powers.windows(2).all(|w| w[0] > w[1])
    }
}

/// Matching count in one block.
pub fn accuracy_block(
    spec: &ClusterSpec,
    source: &DistanceSource,
    seed: u64,
    block: u64,
    n_samples: u64,
) -> Result<u64> {
    let mut sampler = Sampler::new(spec, source)?;
    let mut rng = block_rng(seed, block);
    let mut hits = 0;
    for _ in 0..block_len(n_samples, block) {
        sampler.draw(&mut rng)?;
        hits += sampler.matches() as u64;
    }
    Ok(hits)
}

/// Monte Carlo accuracy estimate. With `ground_truth_voronoi` the distances
/// come from the simulated typical Voronoi cell (PPP specs only).
pub fn estimate_accuracy(
    spec: &ClusterSpec,
    n_samples: u64,
    seed: u64,
    ground_truth_voronoi: bool,
) -> Result<McEstimate> {
    if ground_truth_voronoi && spec.model.kind() != ModelKind::Ppp {
        return Err(Error::param(
            "ground_truth_voronoi",
            format!("only valid for the PPP model, not {}", spec.model.kind().as_str()),
        ));
    }
    let source = if ground_truth_voronoi {
        DistanceSource::voronoi()
    } else {
        DistanceSource::Model
    };
    estimate_accuracy_with(spec, &source, n_samples, seed)
}

/// [`estimate_accuracy`] with an explicit distance source, sequential over
/// blocks.
pub fn estimate_accuracy_with(
    spec: &ClusterSpec,
    source: &DistanceSource,
    n_samples: u64,
    seed: u64,
) -> Result<McEstimate> {
    check_samples(n_samples)?;
    let mut hits = 0;
    for b in 0..block_count(n_samples) {
        hits += accuracy_block(spec, source, seed, b, n_samples)?;
    }
    Ok(McEstimate::from_counts(hits, n_samples, seed))
}

/// The per-sample ranking indicators of a run, in sample order.
pub fn sample_indicators(spec: &ClusterSpec, source: &DistanceSource, n_samples: u64, seed: u64) -> Result<Vec<bool>> {
    let mut out = Vec::with_capacity(n_samples as usize);
    for b in 0..block_count(n_samples) {
        let mut sampler = Sampler::new(spec, source)?;
        let mut rng = block_rng(seed, b);
        for _ in 0..block_len(n_samples, b) {
            sampler.draw(&mut rng)?;
            out.push(sampler.matches());
        }
    }
    Ok(out)
}
