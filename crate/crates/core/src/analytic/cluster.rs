use alloc::format;
use alloc::vec::Vec;

use crate::analytic::check_alpha;
use crate::geometry::DistanceModel;
use crate::numerics::FadingModel;
use crate::{Error, Result};

/// Selection of `N` users by distance rank out of `pool_size` associated
/// users. Ranks are 1-based and strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pairing {
    pool_size: usize,
    ranks: Vec<usize>,
}

impl Pairing {
    pub fn new(pool_size: usize, ranks: Vec<usize>) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::param("ranks", "empty selection"));
        }
        if ranks[0] < 1 || *ranks.last().unwrap() > pool_size {
            return Err(Error::param("ranks", format!("{ranks:?} not within 1..={pool_size}")));
        }
        if ranks.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::param("ranks", format!("{ranks:?} not strictly increasing")));
        }
        Ok(Self { pool_size, ranks })
    }

    /// The nearest and the farthest of `pool_size` users.
    pub fn nearest_farthest(pool_size: usize) -> Result<Self> {
        if pool_size < 2 {
            return Err(Error::param("pool_size", format!("{pool_size} must be >= 2")));
        }
        Self::new(pool_size, alloc::vec![1, pool_size])
    }

    pub fn pool_size(&self) -> usize {
        self.pool_size
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Sizes of the unselected runs: before the first rank, between
    /// consecutive ranks, after the last.
    pub(crate) fn gaps(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.ranks.len() + 1);
        let mut prev = 0;
        for &s in &self.ranks {
            out.push(s - prev - 1);
            prev = s;
        }
        out.push(self.pool_size - prev);
        out
    }
}

/// A NOMA cluster: user-distance law, path-loss exponent, fading, size and
/// an optional rank-based pairing rule (absent means `N` users drawn at
/// random from the cell).
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterSpec {
    pub model: DistanceModel,
    pub alpha: f64,
    pub fading: FadingModel,
    pub n_users: usize,
    pub pairing: Option<Pairing>,
}

impl ClusterSpec {
    pub fn new(model: DistanceModel, alpha: f64, fading: FadingModel, n_users: usize) -> Result<Self> {
        let spec = Self {
            model,
            alpha,
            fading,
            n_users,
            pairing: None,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_pairing(mut self, pairing: Pairing) -> Result<Self> {
        self.pairing = Some(pairing);
        self.validate()?;
        Ok(self)
    }

    /// `alpha > 2`, `N >= 1`, and a pairing (if any) selecting exactly `N`
    /// ranks.
    pub fn validate(&self) -> Result<()> {
        self.model.validate()?;
        check_alpha(self.alpha)?;
        if self.alpha <= 2.0 {
            return Err(Error::param("alpha", format!("{} must be > 2", self.alpha)));
        }
        FadingModel::new(self.fading.m(), self.fading.omega())?;
        if self.n_users == 0 {
            return Err(Error::param("n_users", "must be >= 1"));
        }
        if let Some(p) = &self.pairing {
            if p.ranks().len() != self.n_users {
                return Err(Error::param(
                    "ranks",
                    format!("{} ranks selected for a cluster of {}", p.ranks().len(), self.n_users),
                ));
            }
        }
        Ok(())
    }

    /// Number of distances drawn per sample: the pool size under pairing.
    pub fn draws_per_sample(&self) -> usize {
        self.pairing.as_ref().map_or(self.n_users, Pairing::pool_size)
    }
}
