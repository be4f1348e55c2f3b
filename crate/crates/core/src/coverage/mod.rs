//! Two-user uplink and downlink coverage under instantaneous-power (ISP)
//! and distance (MSP) ranking, by Monte Carlo.
//!
//! With `S_i = P h_i r_i^-alpha` and `E = {S_1 > S_2}` (distance ranking is
//! right), the ISP coverage of each user follows the SIC decode order set by
//! the realized ranking. MSP ranking always treats the near user as strong;
//! [`MspMode::FirstTerm`] counts `E ∩ covered` (the first term of the ISP
//! decomposition, weight included) and [`MspMode::Unconditional`] applies
//! the first-branch SIR to every sample.

mod config;
mod field;
mod sim;

pub use config::{CoverageConfig, Direction, MspMode, DEFAULT_GUARD_FACTOR};
pub use field::{interference_field_downlink, interference_field_uplink};
pub use sim::{
    coverage_block, coverage_mc, coverage_samples, downlink_coverage_mc, uplink_coverage_mc, CoverageCounts,
    CoverageOutcome, CoverageResult, CoverageSample, Decomposition, Ranking,
};
