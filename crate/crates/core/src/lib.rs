//! Accuracy of distance-based user ranking in NOMA clusters.
//!
//! A NOMA cluster of `N` users is usually analysed by assuming the user
//! nearest to the base station also has the strongest received signal. This
//! crate computes the probability that this distance ranking agrees with the
//! ranking by instantaneous received power `h_i * r_i^-alpha` (the *accuracy
//! probability*), both from closed-form/series/quadrature expressions and by
//! Monte Carlo simulation, together with the uplink and downlink coverage
//! probabilities that depend on the ranking rule.
//!
//! The crate is `no_std` (it needs `alloc`). Randomness is always passed in
//! explicitly; Monte Carlo work is split into fixed-size blocks, each driven
//! by its own ChaCha stream derived from a master seed, so block results can
//! be computed on any number of workers and merged deterministically.
//!
//! Module map:
//! - [`numerics`]: quadrature rules, special functions, series acceleration,
//!   gamma variates.
//! - [`geometry`]: user-distance laws, ordered samplers, Voronoi ground truth.
//! - [`analytic`]: accuracy-probability evaluators.
//! - [`mc`]: Monte Carlo accuracy estimator.
//! - [`coverage`]: 2-user uplink/downlink coverage under ISP and MSP ranking.
#![no_std]
// `num_traits::Float` supplies f64 math under no_std; rustc flags the import
// as unused because core now declares (unstable) inherent float methods.
#![allow(unused_imports)]
// negated comparisons are how NaN parameters get rejected
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analytic;
pub mod coverage;
mod error;
mod estimate;
pub mod geometry;
pub mod mc;
pub mod numerics;

pub use error::{Error, Result};
pub use estimate::{Estimate, Method};

pub use analytic::{ClusterSpec, Pairing};
pub use geometry::{DistanceModel, OrderedDistances};
pub use mc::McEstimate;
pub use numerics::{FadingModel, QuadratureRule};
