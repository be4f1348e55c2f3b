use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_traits::Float;

use crate::{Error, Result};

/// Largest tensor dimension [`tensor_integrate`] accepts. The general-`N`
/// accuracy integrals need `N - 1 <= 5` axes.
pub const MAX_TENSOR_DIM: usize = 6;

/// An `n`-point Gauss–Legendre rule on `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Nodes, strictly increasing in `(0, 1)`.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Positive weights summing to one.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }

    /// One-dimensional `∫₀¹ f`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.iter().map(|(x, w)| w * f(x)).sum()
    }
}

/// Builds the `n`-point Gauss–Legendre rule mapped from `[-1, 1]` to `[0, 1]`.
///
/// Roots of `P_n` are found by Newton iteration from the Tricomi initial
/// guess; `1 <= n <= 128`.
pub fn gauss_legendre_unit(n: usize) -> Result<QuadratureRule> {
    if !(1..=128).contains(&n) {
        return Err(Error::param("n", "quadrature order must be in 1..=128"));
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    // Roots are symmetric; solve for the positive half.
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // x is the i-th largest root; store ascending on [0, 1].
        nodes[n - 1 - i] = 0.5 * (1.0 + x);
        nodes[i] = 0.5 * (1.0 - x);
        weights[n - 1 - i] = 0.5 * w;
        weights[i] = 0.5 * w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.5;
    }
    Ok(QuadratureRule { nodes, weights })
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    let dp = nf * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Tensor-product quadrature over `[0, 1]^dim`:
/// `Σ w_{i1}…w_{id} f(x_{i1}, …, x_{id})`.
///
/// Stops at the first non-finite integrand value and reports its node.
pub fn tensor_integrate<F>(mut f: F, dim: usize, rule: &QuadratureRule) -> Result<f64>
where
    F: FnMut(&[f64]) -> f64,
{
    if !(1..=MAX_TENSOR_DIM).contains(&dim) {
        return Err(Error::param("dim", "tensor dimension must be in 1..=6"));
    }
    let n = rule.order();
    let nodes = rule.nodes();
    let weights = rule.weights();
    let mut index = vec![0usize; dim];
    let mut point: Vec<f64> = vec![nodes[0]; dim];
    let mut total = 0.0;
    loop {
        // Innermost axis is the last one; the weight of the outer axes is
        // shared across the inner loop.
        let mut outer_w = 1.0;
        for axis in 0..dim - 1 {
            outer_w *= weights[index[axis]];
        }
        let mut inner = 0.0;
        for j in 0..n {
            point[dim - 1] = nodes[j];
            let v = f(&point);
            if !v.is_finite() {
                return Err(Error::NonFinite { node: point.clone() });
            }
            inner += weights[j] * v;
        }
        total += outer_w * inner;

        // Advance the odometer over the outer axes.
        let mut axis = dim - 1;
        loop {
            if axis == 0 {
                return Ok(total);
            }
            axis -= 1;
            index[axis] += 1;
            if index[axis] < n {
                point[axis] = nodes[index[axis]];
                break;
            }
            index[axis] = 0;
            point[axis] = nodes[0];
        }
    }
}
