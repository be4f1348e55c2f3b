use alloc::vec::Vec;

use crate::{Error, Estimate, Method, Result};

/// Hard cap on the number of terms consumed by [`alternating_series_sum`].
pub const MAX_SERIES_TERMS: usize = 1_000_000;

/// Depth of the repeated-averaging table. Beyond this the transform works on
/// a sliding window of partial sums.
const MAX_DEPTH: usize = 60;
const MIN_TERMS: usize = 4;

/// Sums `Σ_{k≥0} term(k)` for an alternating series with eventually
/// decreasing magnitudes using the Euler/van Wijngaarden transform (repeated
/// averaging of partial sums).
///
/// The returned `error_bound` is twice the larger of the last two changes of
/// the accelerated value; for series whose terms are moments of a positive
/// measure (all the accuracy series) the transformed sequence converges
/// geometrically with ratio at most 1/2, which makes this a bound.
pub fn alternating_series_sum<F>(mut term: F, tol: f64) -> Result<Estimate>
where
    F: FnMut(usize) -> f64,
{
    if !(tol > 0.0) {
        return Err(Error::param("tol", "must be > 0"));
    }
    // row[j]: j-fold average ending at the current partial sum
    let mut row: Vec<f64> = Vec::with_capacity(MAX_DEPTH + 1);
    let mut partial = 0.0;
    let mut prev = [f64::NAN; 2];
    for k in 0..MAX_SERIES_TERMS {
        let t = term(k);
        if !t.is_finite() {
            return Err(Error::domain(
                "alternating_series_sum",
                alloc::format!("term {k} = {t}"),
            ));
        }
        partial += t;
        let mut carry = partial;
        for slot in row.iter_mut() {
            let avg = 0.5 * (*slot + carry);
            *slot = carry;
            carry = avg;
        }
        if row.len() <= MAX_DEPTH {
            row.push(carry);
        }
        let value = *row.last().expect("row is non-empty");
        if k + 1 >= MIN_TERMS {
            let bound = 2.0 * (value - prev[1]).abs().max((prev[1] - prev[0]).abs());
            if bound <= tol {
                return Ok(Estimate::new(value, bound, Method::Series));
            }
        }
        prev = [prev[1], value];
    }
    Err(Error::NoConvergence {
        op: "alternating_series_sum",
        iterations: MAX_SERIES_TERMS,
    })
}
