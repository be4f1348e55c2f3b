use alloc::format;
use alloc::vec::Vec;
use num_traits::Float;

use crate::analytic::ClusterSpec;
use crate::mc::{block_count, block_len, block_rng, check_samples, DistanceSource, Sampler};
use crate::{Error, Result};

/// Largest cluster for which every ordering is tabulated.
pub const MAX_PERMUTATION_USERS: usize = 5;
/// Smallest accepted sample count for a permutation distribution.
pub const MIN_PERMUTATION_SAMPLES: u64 = 100_000;

/// Empirical law of the instantaneous-power ordering.
///
/// A permutation lists the distance ranks (1-based) of the users from the
/// strongest received power to the weakest; the identity means the distance
/// ranking is exact. Counts are indexed by the lexicographic rank of the
/// permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationDistribution {
    pub n_users: usize,
    pub counts: Vec<u64>,
    pub n_samples: u64,
    pub seed: u64,
}

impl PermutationDistribution {
    pub fn probability(&self, perm: &[usize]) -> Option<f64> {
        let idx = lehmer_index(perm)?;
        Some(self.counts[idx] as f64 / self.n_samples as f64)
    }

    /// `(permutation, probability)` pairs in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, f64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .map(|(i, &c)| (permutation_at(self.n_users, i), c as f64 / self.n_samples as f64))
    }

    /// Standard error of one cell's probability.
    pub fn stderr(&self, perm: &[usize]) -> Option<f64> {
        let p = self.probability(perm)?;
        Some((p * (1.0 - p) / self.n_samples as f64).sqrt())
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Lexicographic rank of a permutation of `1..=n`.
fn lehmer_index(perm: &[usize]) -> Option<usize> {
    let n = perm.len();
    let mut seen = [false; MAX_PERMUTATION_USERS + 1];
    let mut idx = 0;
    for (i, &p) in perm.iter().enumerate() {
        if p == 0 || p > n || n > MAX_PERMUTATION_USERS || seen[p] {
            return None;
        }
        let smaller_unused = (1..p).filter(|&q| !seen[q]).count();
        idx += smaller_unused * factorial(n - 1 - i);
        seen[p] = true;
    }
    Some(idx)
}

fn permutation_at(n: usize, mut idx: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = (1..=n).collect();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let f = factorial(n - 1 - i);
        out.push(pool.remove(idx / f));
        idx %= f;
    }
    out
}

/// Ordering counts in one block.
pub fn permutation_block(
    spec: &ClusterSpec,
    source: &DistanceSource,
    seed: u64,
    block: u64,
    n_samples: u64,
) -> Result<Vec<u64>> {
    let n = spec.n_users;
    if n > MAX_PERMUTATION_USERS {
        return Err(Error::param("n_users", format!("{n} exceeds {MAX_PERMUTATION_USERS}")));
    }
    let mut sampler = Sampler::new(spec, source)?;
    let mut rng = block_rng(seed, block);
    let mut counts = alloc::vec![0u64; factorial(n)];
    let mut order = [0usize; MAX_PERMUTATION_USERS];
    for _ in 0..block_len(n_samples, block) {
        sampler.draw(&mut rng)?;
        let order = &mut order[..n];
        for (i, o) in order.iter_mut().enumerate() {
            *o = i + 1;
        }
        // descending power; ties put the higher rank first, so a tie is
        // never read as the identity
        let pw = &sampler.powers;
        order.sort_by(|&a, &b| pw[b - 1].total_cmp(&pw[a - 1]).then(b.cmp(&a)));
        counts[lehmer_index(order).expect("valid permutation")] += 1;
    }
    Ok(counts)
}

pub fn estimate_permutation_distribution(
    spec: &ClusterSpec,
    n_samples: u64,
    seed: u64,
) -> Result<PermutationDistribution> {
    estimate_permutation_distribution_with(spec, &DistanceSource::Model, n_samples, seed)
}

pub fn estimate_permutation_distribution_with(
    spec: &ClusterSpec,
    source: &DistanceSource,
    n_samples: u64,
    seed: u64,
) -> Result<PermutationDistribution> {
    check_samples(n_samples)?;
    if n_samples < MIN_PERMUTATION_SAMPLES {
        return Err(Error::param(
            "n_samples",
            format!("{n_samples} is below {MIN_PERMUTATION_SAMPLES}"),
        ));
    }
    let mut counts = alloc::vec![0u64; factorial(spec.n_users.min(MAX_PERMUTATION_USERS + 1))];
    for b in 0..block_count(n_samples) {
        let c = permutation_block(spec, source, seed, b, n_samples)?;
        for (t, x) in counts.iter_mut().zip(c) {
            *t += x;
        }
    }
    Ok(PermutationDistribution {
        n_users: spec.n_users,
        counts,
        n_samples,
        seed,
    })
}
