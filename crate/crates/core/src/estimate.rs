use core::fmt;

/// How an [`Estimate`] was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Accelerated alternating series.
    Series,
    /// One-dimensional Gauss quadrature over a hypergeometric integrand.
    Quadrature2F1,
    /// Tensor-product Gauss quadrature on the unit cube.
    TensorQuadrature,
    /// Plain Monte Carlo; the error is one standard error.
    MonteCarlo,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Series => "series",
            Method::Quadrature2F1 => "quadrature-2F1",
            Method::TensorQuadrature => "tensor-quadrature",
            Method::MonteCarlo => "monte-carlo",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A value with an attached error bound and the method that produced it.
///
/// For series the bound is the acceleration's truncation bound, for
/// quadrature it is the gap to a lower-order rule, for Monte Carlo it is the
/// standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error_bound: f64,
    pub method: Method,
}

impl Estimate {
    pub fn new(value: f64, error_bound: f64, method: Method) -> Self {
        Self {
            value,
            error_bound,
            method,
        }
    }

    /// Clamps a probability estimate into `[0, 1]`, widening the bound by the
    /// amount clipped.
    pub(crate) fn into_probability(self) -> Self {
        let clamped = self.value.clamp(0.0, 1.0);
        Self {
            value: clamped,
            error_bound: self.error_bound + (clamped - self.value).abs(),
            method: self.method,
        }
    }
}
