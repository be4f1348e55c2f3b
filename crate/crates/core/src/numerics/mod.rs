//! Numerical building blocks shared by the evaluators and simulators.

mod fading;
mod quadrature;
mod series;
mod special;

pub use fading::{sample_gamma, FadingModel};
pub use quadrature::{gauss_legendre_unit, tensor_integrate, QuadratureRule, MAX_TENSOR_DIM};
pub use series::{alternating_series_sum, MAX_SERIES_TERMS};
pub(crate) use special::beta_inc_pair;
pub use special::{beta_inc_regularized, gamma_p, hyp2f1, ln_beta, ln_gamma};
