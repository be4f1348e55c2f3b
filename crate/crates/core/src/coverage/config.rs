use alloc::format;

use crate::geometry::{DistanceModel, VoronoiSampler};
use crate::numerics::FadingModel;
use crate::{Error, Result};

/// Interfering BSs of an MCP network keep out of the disk of radius
/// `DEFAULT_GUARD_FACTOR * R` around the typical BS, so no interfering
/// cluster overlaps the typical one.
pub const DEFAULT_GUARD_FACTOR: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Uplink,
    Downlink,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Uplink => "uplink",
            Direction::Downlink => "downlink",
        }
    }
}

/// How MSP (distance-ranked) coverage is reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MspMode {
    /// `P(E and covered in the first branch)`.
    #[default]
    FirstTerm,
    /// `P(covered in the first branch)` over all samples.
    Unconditional,
}

impl MspMode {
    pub fn as_str(self) -> &'static str {
        match self {
            MspMode::FirstTerm => "first-term",
            MspMode::Unconditional => "unconditional",
        }
    }
}

/// Parameters of a 2-user coverage experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverageConfig {
    pub direction: Direction,
    /// SIR threshold, linear.
    pub theta: f64,
    /// Residual fraction of a cancelled signal.
    pub beta: f64,
    pub p_tx: f64,
    pub p_bs: f64,
    /// Power fractions of the strong and the weak user (downlink).
    pub a1: f64,
    pub a2: f64,
    pub noise: f64,
    pub model: DistanceModel,
    pub alpha: f64,
    pub fading: FadingModel,
    /// Intensity of interfering BSs.
    pub lambda: f64,
    pub msp_mode: MspMode,
    /// Radius of the interference window; default `4 / sqrt(lambda pi)`.
    pub window: Option<f64>,
    /// Exclusion radius for interfering BSs; default `2R` for the MCP and
    /// `0` otherwise.
    pub guard: Option<f64>,
}

impl CoverageConfig {
    /// Unit powers, no noise, `a1 = 0.3`, `a2 = 0.7`, default windows.
    pub fn new(
        direction: Direction,
        model: DistanceModel,
        alpha: f64,
        fading: FadingModel,
        lambda: f64,
        theta: f64,
        beta: f64,
    ) -> Result<Self> {
        let c = Self {
            direction,
            theta,
            beta,
            p_tx: 1.0,
            p_bs: 1.0,
            a1: 0.3,
            a2: 0.7,
            noise: 0.0,
            model,
            alpha,
            fading,
            lambda,
            msp_mode: MspMode::FirstTerm,
            window: None,
            guard: None,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        self.model.validate()?;
        FadingModel::new(self.fading.m(), self.fading.omega())?;
        let pos = |name: &'static str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::param(name, format!("{v} must be finite and > 0")))
            }
        };
        pos("theta", self.theta)?;
        pos("p_tx", self.p_tx)?;
        pos("p_bs", self.p_bs)?;
        pos("lambda", self.lambda)?;
        if !(self.alpha > 2.0) || !self.alpha.is_finite() {
            return Err(Error::param("alpha", format!("{} must be finite and > 2", self.alpha)));
        }
        if !(0.0..=1.0).contains(&self.beta) {
            return Err(Error::param("beta", format!("{} outside [0, 1]", self.beta)));
        }
        if !(self.noise >= 0.0) || !self.noise.is_finite() {
            return Err(Error::param("noise", format!("{} must be finite and >= 0", self.noise)));
        }
        if self.direction == Direction::Downlink {
            if !(0.0 < self.a1 && self.a1 < self.a2 && self.a2 < 1.0) {
                return Err(Error::param(
                    "a1",
                    format!("need 0 < a1 < a2 < 1, got {} and {}", self.a1, self.a2),
                ));
            }
            if (self.a1 + self.a2 - 1.0).abs() > 1e-12 {
                return Err(Error::param("a2", format!("a1 + a2 = {} must be 1", self.a1 + self.a2)));
            }
        }
        let min_w = VoronoiSampler::default_half_width(self.lambda);
        if let Some(w) = self.window {
            if !(w >= min_w * (1.0 - 1e-12)) || !w.is_finite() {
                return Err(Error::param(
                    "window",
                    format!("{w} is smaller than 4/sqrt(lambda pi) = {min_w}"),
                ));
            }
        }
        let guard = self.guard_radius();
        if !(guard >= 0.0) || guard >= self.window_radius() {
            return Err(Error::param("guard", format!("{guard} must be in [0, window)")));
        }
        Ok(())
    }

    pub fn window_radius(&self) -> f64 {
        self.window
            .unwrap_or_else(|| VoronoiSampler::default_half_width(self.lambda))
    }

    pub fn guard_radius(&self) -> f64 {
        self.guard.unwrap_or(match self.model {
            DistanceModel::Mcp { radius } => DEFAULT_GUARD_FACTOR * radius,
            _ => 0.0,
        })
    }

    /// Transmit power of the signals in this direction.
    pub fn power(&self) -> f64 {
        match self.direction {
            Direction::Uplink => self.p_tx,
            Direction::Downlink => self.p_bs,
        }
    }
}
