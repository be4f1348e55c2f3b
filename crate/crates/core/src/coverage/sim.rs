use alloc::format;
use alloc::vec::Vec;
use core::ops::AddAssign;

use num_traits::Float;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};

use crate::coverage::{interference_field_downlink, interference_field_uplink, CoverageConfig, Direction, MspMode};
use crate::geometry::distance::fill_ordered;
use crate::mc::{block_count, block_len, block_rng, check_samples, McEstimate};
use crate::{Error, Result};

/// Ranking rule a coverage figure refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ranking {
    Isp,
    Msp(MspMode),
}

impl Ranking {
    pub fn as_str(self) -> &'static str {
        match self {
            Ranking::Isp => "isp",
            Ranking::Msp(MspMode::FirstTerm) => "msp-first-term",
            Ranking::Msp(MspMode::Unconditional) => "msp-unconditional",
        }
    }
}

/// SIRs of one sample. Index 0 is the branch where the near user is the
/// stronger one (event `E`), index 1 the other branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverageSample {
    pub event: bool,
    pub sir_near: [f64; 2],
    pub sir_far: [f64; 2],
}

impl CoverageSample {
    fn branch(&self) -> usize {
        if self.event {
            0
        } else {
            1
        }
    }

    pub fn isp_near(&self, theta: f64) -> bool {
        self.sir_near[self.branch()] > theta
    }

    pub fn isp_far(&self, theta: f64) -> bool {
        self.sir_far[self.branch()] > theta
    }

    pub fn msp_near(&self, theta: f64, mode: MspMode) -> bool {
        self.sir_near[0] > theta && (mode == MspMode::Unconditional || self.event)
    }

    pub fn msp_far(&self, theta: f64, mode: MspMode) -> bool {
        self.sir_far[0] > theta && (mode == MspMode::Unconditional || self.event)
    }
}

/// Integer tallies of a run; blocks merge by addition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CoverageCounts {
    pub n: u64,
    /// Samples in `E`.
    pub n_event: u64,
    /// Covered in the realized branch, split by branch.
    pub near_branch: [u64; 2],
    pub far_branch: [u64; 2],
    /// Covered under the first-branch SIR, all samples.
    pub near_first: u64,
    pub far_first: u64,
}

impl AddAssign for CoverageCounts {
    fn add_assign(&mut self, o: Self) {
        self.n += o.n;
        self.n_event += o.n_event;
        for i in 0..2 {
            self.near_branch[i] += o.near_branch[i];
            self.far_branch[i] += o.far_branch[i];
        }
        self.near_first += o.near_first;
        self.far_first += o.far_first;
    }
}

impl CoverageCounts {
    fn record(&mut self, s: &CoverageSample, theta: f64) {
        let b = s.branch();
        self.n += 1;
        self.n_event += s.event as u64;
        self.near_branch[b] += (s.sir_near[b] > theta) as u64;
        self.far_branch[b] += (s.sir_far[b] > theta) as u64;
        self.near_first += (s.sir_near[0] > theta) as u64;
        self.far_first += (s.sir_far[0] > theta) as u64;
    }

    /// Coverage of both users under `ranking`.
    pub fn result(&self, ranking: Ranking, seed: u64) -> CoverageResult {
        let (near, far) = match ranking {
            Ranking::Isp => (
                self.near_branch[0] + self.near_branch[1],
                self.far_branch[0] + self.far_branch[1],
            ),
            Ranking::Msp(MspMode::FirstTerm) => (self.near_branch[0], self.far_branch[0]),
            Ranking::Msp(MspMode::Unconditional) => (self.near_first, self.far_first),
        };
        let decomposition = (ranking == Ranking::Isp).then(|| self.decomposition());
        CoverageResult {
            ranking,
            p_cov_near: McEstimate::from_counts(near, self.n, seed),
            p_cov_far: McEstimate::from_counts(far, self.n, seed),
            decomposition,
        }
    }

    fn decomposition(&self) -> Decomposition {
        let n_not = self.n - self.n_event;
        let ratio = |c: u64, d: u64| if d == 0 { 0.0 } else { c as f64 / d as f64 };
        Decomposition {
            weights: [ratio(self.n_event, self.n), ratio(n_not, self.n)],
            near: [
                ratio(self.near_branch[0], self.n_event),
                ratio(self.near_branch[1], n_not),
            ],
            far: [
                ratio(self.far_branch[0], self.n_event),
                ratio(self.far_branch[1], n_not),
            ],
        }
    }
}

/// The two terms of the ISP coverage: branch weights `P(E)`, `P(not E)` and
/// per-branch conditional coverage. A branch without samples reports 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decomposition {
    pub weights: [f64; 2],
    pub near: [f64; 2],
    pub far: [f64; 2],
}

impl Decomposition {
    pub fn near_total(&self) -> f64 {
        self.near[0] * self.weights[0] + self.near[1] * self.weights[1]
    }

    pub fn far_total(&self) -> f64 {
        self.far[0] * self.weights[0] + self.far[1] * self.weights[1]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverageResult {
    pub ranking: Ranking,
    pub p_cov_near: McEstimate,
    pub p_cov_far: McEstimate,
    /// Present for ISP ranking.
    pub decomposition: Option<Decomposition>,
}

/// ISP result, MSP result for the configured mode, and the raw tallies
/// (from which the other MSP mode can be read).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverageOutcome {
    pub isp: CoverageResult,
    pub msp: CoverageResult,
    pub counts: CoverageCounts,
}

impl CoverageOutcome {
    pub fn from_counts(counts: CoverageCounts, mode: MspMode, seed: u64) -> Self {
        Self {
            isp: counts.result(Ranking::Isp, seed),
            msp: counts.result(Ranking::Msp(mode), seed),
            counts,
        }
    }
}

struct Drawer<'a> {
    cfg: &'a CoverageConfig,
    gains: Gamma<f64>,
    guard: f64,
    window: f64,
    r: [f64; 2],
}

impl<'a> Drawer<'a> {
    fn new(cfg: &'a CoverageConfig) -> Result<Self> {
        cfg.validate()?;
        Ok(Self {
            cfg,
            gains: cfg.fading.sampler(),
            guard: cfg.guard_radius(),
            window: cfg.window_radius(),
            r: [0.0; 2],
        })
    }

    fn draw(&mut self, rng: &mut ChaCha8Rng) -> CoverageSample {
        let c = self.cfg;
        fill_ordered(&c.model, &mut self.r, rng);
        let p = c.power();
        let s1 = p * self.gains.sample(rng) * self.r[0].powf(-c.alpha);
        let s2 = p * self.gains.sample(rng) * self.r[1].powf(-c.alpha);
        let (beta, n0) = (c.beta, c.noise);
        match c.direction {
            Direction::Uplink => {
                let i = interference_field_uplink(
                    c.lambda,
                    &c.model,
                    c.alpha,
                    &self.gains,
                    c.p_tx,
                    self.guard,
                    self.window,
                    rng,
                );
                CoverageSample {
                    event: s1 > s2,
                    sir_near: [s1 / (s2 + i + n0), s1 / (beta * s2 + i + n0)],
                    sir_far: [s2 / (beta * s1 + i + n0), s2 / (s1 + i + n0)],
                }
            }
            Direction::Downlink => {
                let f = |d: f64, rng: &mut ChaCha8Rng| {
                    interference_field_downlink(c.lambda, c.alpha, &self.gains, c.p_bs, d, self.guard, self.window, rng)
                };
                let i1 = f(self.r[0], rng);
                let i2 = f(self.r[1], rng);
                let (a1, a2) = (c.a1, c.a2);
                CoverageSample {
                    event: s1 > s2,
                    sir_near: [a1 * s1 / (beta * a2 * s1 + i1 + n0), a2 * s1 / (a1 * s1 + i1 + n0)],
                    sir_far: [a2 * s2 / (a1 * s2 + i2 + n0), a1 * s2 / (beta * a2 * s2 + i2 + n0)],
                }
            }
        }
    }
}

/// Tallies of one block.
pub fn coverage_block(cfg: &CoverageConfig, seed: u64, block: u64, n_samples: u64) -> Result<CoverageCounts> {
    let mut d = Drawer::new(cfg)?;
    let mut rng = block_rng(seed, block);
    let mut counts = CoverageCounts::default();
    for _ in 0..block_len(n_samples, block) {
        let s = d.draw(&mut rng);
        counts.record(&s, cfg.theta);
    }
    Ok(counts)
}

/// Coverage of both users under ISP and MSP ranking.
pub fn coverage_mc(cfg: &CoverageConfig, n_samples: u64, seed: u64) -> Result<CoverageOutcome> {
    check_samples(n_samples)?;
    cfg.validate()?;
    let mut counts = CoverageCounts::default();
    for b in 0..block_count(n_samples) {
        counts += coverage_block(cfg, seed, b, n_samples)?;
    }
    Ok(CoverageOutcome::from_counts(counts, cfg.msp_mode, seed))
}

fn require(cfg: &CoverageConfig, d: Direction) -> Result<()> {
    if cfg.direction != d {
        return Err(Error::param(
            "direction",
            format!("expected {}, config is {}", d.as_str(), cfg.direction.as_str()),
        ));
    }
    Ok(())
}

pub fn uplink_coverage_mc(cfg: &CoverageConfig, n_samples: u64, seed: u64) -> Result<CoverageOutcome> {
    require(cfg, Direction::Uplink)?;
    coverage_mc(cfg, n_samples, seed)
}

pub fn downlink_coverage_mc(cfg: &CoverageConfig, n_samples: u64, seed: u64) -> Result<CoverageOutcome> {
    require(cfg, Direction::Downlink)?;
    coverage_mc(cfg, n_samples, seed)
}

/// Per-sample SIR records of a run, in sample order; the same draws as
/// [`coverage_mc`] with the same seed.
pub fn coverage_samples(cfg: &CoverageConfig, n_samples: u64, seed: u64) -> Result<Vec<CoverageSample>> {
    let mut d = Drawer::new(cfg)?;
    let mut out = Vec::with_capacity(n_samples as usize);
    for b in 0..block_count(n_samples) {
        let mut rng = block_rng(seed, b);
        for _ in 0..block_len(n_samples, b) {
            out.push(d.draw(&mut rng));
        }
    }
    Ok(out)
}
