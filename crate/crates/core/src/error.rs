use alloc::string::String;
use alloc::vec::Vec;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument is outside the range the operation accepts.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// A mathematical function was evaluated outside its domain.
    #[error("{op}: argument outside domain ({reason})")]
    Domain { op: &'static str, reason: String },

    /// An integrand returned NaN or an infinity at a quadrature node.
    #[error("integrand is not finite at node {node:?}")]
    NonFinite { node: Vec<f64> },

    /// A series or iteration did not reach the requested tolerance.
    #[error("{op}: no convergence after {iterations} iterations")]
    NoConvergence { op: &'static str, iterations: usize },

    /// The caller passed data that violates a documented precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    pub fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn domain(op: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            op,
            reason: reason.into(),
        }
    }

    /// True for failures of the numerical machinery rather than bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NonFinite { .. } | Error::NoConvergence { .. } | Error::Domain { .. }
        )
    }
}
