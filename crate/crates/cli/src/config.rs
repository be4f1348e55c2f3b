//! Experiment configuration: flat `key = value` files plus flag overrides.

use std::collections::BTreeMap;
use std::path::PathBuf;

use noma_accuracy_core::coverage::{Direction, MspMode};
use noma_accuracy_core::mc::DEFAULT_SAMPLES;

use crate::output::parse_selection;
use crate::CliError;

pub const DEFAULT_LAMBDA: f64 = 5e-4;
pub const DEFAULT_RADIUS: f64 = 20.0;
pub const DEFAULT_SIGMA2: f64 = 100.0;
pub const DEFAULT_SEED: u64 = 1;

/// Keys accepted in config files (dashes and underscores are interchangeable).
pub const KEYS: [&str; 23] = [
    "kind",
    "model",
    "alpha",
    "m",
    "n_users",
    "pool_size",
    "select",
    "theta",
    "theta_db",
    "beta",
    "msp_mode",
    "direction",
    "lambda",
    "radius",
    "sigma2",
    "a1",
    "a2",
    "noise",
    "p_tx",
    "p_bs",
    "seed",
    "samples",
    "out",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Analytic,
    Mc,
    Coverage,
    Sweep,
}

impl Kind {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "analytic" | "accuracy-analytic" => Ok(Kind::Analytic),
            "mc" | "accuracy-mc" => Ok(Kind::Mc),
            "coverage" | "coverage-mc" => Ok(Kind::Coverage),
            "sweep" => Ok(Kind::Sweep),
            _ => Err(CliError::config(format!("unknown kind `{s}`"))),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Analytic => "accuracy-analytic",
            Kind::Mc => "accuracy-mc",
            Kind::Coverage => "coverage-mc",
            Kind::Sweep => "sweep",
        }
    }
}

/// User-location model as named on the command line. `ppp-voronoi` is the
/// PPP with distances taken from simulated typical Voronoi cells (Monte
/// Carlo only).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelChoice {
    Ppp,
    Mcp,
    Tcp,
    PppVoronoi,
}

impl ModelChoice {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "ppp" => Ok(ModelChoice::Ppp),
            "mcp" => Ok(ModelChoice::Mcp),
            "tcp" => Ok(ModelChoice::Tcp),
            "ppp-voronoi" => Ok(ModelChoice::PppVoronoi),
            _ => Err(CliError::config(format!(
                "unknown model `{s}` (ppp, mcp, tcp, ppp-voronoi)"
            ))),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ModelChoice::Ppp => "ppp",
            ModelChoice::Mcp => "mcp",
            ModelChoice::Tcp => "tcp",
            ModelChoice::PppVoronoi => "ppp-voronoi",
        }
    }
}

/// A user-selection rule: ranks out of a pool of `pool` nearest users.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Selection {
    pub pool: usize,
    pub ranks: Vec<usize>,
}

/// Fully resolved experiment. Grid axes are lists; every combination is
/// one grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct Experiment {
    pub kind: Kind,
    pub models: Vec<ModelChoice>,
    pub alphas: Vec<f64>,
    pub ms: Vec<f64>,
    pub n_users: Vec<usize>,
    /// Empty means random selection with `n_users` users.
    pub selections: Vec<Selection>,
    pub thetas: Vec<f64>,
    pub betas: Vec<f64>,
    pub msp_modes: Vec<MspMode>,
    pub directions: Vec<Direction>,
    pub lambda: f64,
    pub radius: f64,
    pub sigma2: f64,
    pub a1: f64,
    pub a2: f64,
    pub noise: f64,
    pub p_tx: f64,
    pub p_bs: f64,
    pub seed: u64,
    pub samples: u64,
    pub out: Option<PathBuf>,
    /// Extra `#` header lines.
    pub notes: Vec<String>,
}

/// Ordered key/value settings; later insertions win.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings(BTreeMap<String, String>);

impl Settings {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) -> Result<(), CliError> {
        let key = key.trim().replace('-', "_");
        if !KEYS.contains(&key.as_str()) {
            return Err(CliError::config(format!("unknown key `{key}`")));
        }
        self.0.insert(key, value.into().trim().to_string());
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    pub fn remove(&mut self, key: &str) {
        self.0.remove(key);
    }

    /// Applies `other` on top of `self`.
    pub fn merge(&mut self, other: &Settings) {
        for (k, v) in &other.0 {
            self.0.insert(k.clone(), v.clone());
        }
    }

    /// Parses `key = value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut s = Self::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::config(format!("line {}: expected key = value", i + 1)))?;
            s.set(k, v)
                .map_err(|e| CliError::config(format!("line {}: {e}", i + 1)))?;
        }
        Ok(s)
    }

    pub fn resolve(&self, kind: Option<Kind>) -> Result<Experiment, CliError> {
        let kind = match (kind, self.get("kind")) {
            (Some(k), _) => k,
            (None, Some(s)) => Kind::parse(s)?,
            (None, None) => return Err(CliError::config("no experiment kind given")),
        };
        let coverage = kind == Kind::Coverage;
        let thetas = match (self.get("theta"), self.get("theta_db")) {
            (Some(_), Some(_)) => return Err(CliError::config("give either theta or theta_db")),
            (Some(t), None) => list(t, "theta")?,
            (None, Some(t)) => list::<f64>(t, "theta_db")?
                .into_iter()
                .map(|d| 10f64.powf(d / 10.0))
                .collect(),
            (None, None) => vec![1.0],
        };
        let pools: Vec<usize> = self
            .get("pool_size")
            .map(|s| list(s, "pool_size"))
            .transpose()?
            .unwrap_or_default();
        let exp = Experiment {
            kind,
            models: self
                .get("model")
                .map(|s| split(s).map(ModelChoice::parse).collect())
                .transpose()?
                .unwrap_or_else(|| {
                    if coverage {
                        vec![ModelChoice::Mcp]
                    } else {
                        vec![ModelChoice::Ppp, ModelChoice::Mcp, ModelChoice::Tcp]
                    }
                }),
            alphas: self.list_or("alpha", vec![4.0])?,
            ms: self.list_or("m", vec![1.0])?,
            n_users: self.list_or("n_users", vec![2])?,
            selections: selections(self.get("select"), &pools)?,
            thetas,
            betas: self.list_or("beta", vec![0.0])?,
            msp_modes: self
                .get("msp_mode")
                .map(|s| split(s).map(parse_msp).collect())
                .transpose()?
                .unwrap_or_else(|| vec![MspMode::FirstTerm]),
            directions: self
                .get("direction")
                .map(|s| split(s).map(parse_direction).collect())
                .transpose()?
                .unwrap_or_else(|| vec![Direction::Uplink]),
            lambda: self.one_or("lambda", DEFAULT_LAMBDA)?,
            radius: self.one_or("radius", DEFAULT_RADIUS)?,
            sigma2: self.one_or("sigma2", DEFAULT_SIGMA2)?,
            a1: self.one_or("a1", 0.3)?,
            a2: self.one_or("a2", 0.7)?,
            noise: self.one_or("noise", 0.0)?,
            p_tx: self.one_or("p_tx", 1.0)?,
            p_bs: self.one_or("p_bs", 1.0)?,
            seed: self.one_or("seed", DEFAULT_SEED)?,
            samples: self.one_or("samples", DEFAULT_SAMPLES)?,
            out: self.get("out").filter(|s| !s.is_empty()).map(PathBuf::from),
            notes: Vec::new(),
        };
        for (name, empty) in [
            ("model", exp.models.is_empty()),
            ("alpha", exp.alphas.is_empty()),
            ("m", exp.ms.is_empty()),
            ("n_users", exp.n_users.is_empty()),
            ("theta", exp.thetas.is_empty()),
            ("beta", exp.betas.is_empty()),
            ("msp_mode", exp.msp_modes.is_empty()),
            ("direction", exp.directions.is_empty()),
        ] {
            if empty {
                return Err(CliError::config(format!("grid axis `{name}` is empty")));
            }
        }
        Ok(exp)
    }

    fn list_or<T: std::str::FromStr>(&self, key: &str, default: Vec<T>) -> Result<Vec<T>, CliError> {
        self.get(key)
            .map(|s| list(s, key))
            .transpose()
            .map(|v| v.unwrap_or(default))
    }

    fn one_or<T: std::str::FromStr>(&self, key: &str, default: T) -> Result<T, CliError> {
        self.get(key)
            .map(|s| one(s, key))
            .transpose()
            .map(|v| v.unwrap_or(default))
    }
}

fn split(s: &str) -> impl Iterator<Item = &str> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty())
}

fn one<T: std::str::FromStr>(s: &str, key: &str) -> Result<T, CliError> {
    s.parse()
        .map_err(|_| CliError::config(format!("bad value `{s}` for {key}")))
}

fn list<T: std::str::FromStr>(s: &str, key: &str) -> Result<Vec<T>, CliError> {
    split(s).map(|t| one(t, key)).collect()
}

fn parse_msp(s: &str) -> Result<MspMode, CliError> {
    match s {
        "first-term" | "first_term" => Ok(MspMode::FirstTerm),
        "unconditional" => Ok(MspMode::Unconditional),
        _ => Err(CliError::config(format!(
            "unknown msp mode `{s}` (first-term, unconditional)"
        ))),
    }
}

fn parse_direction(s: &str) -> Result<Direction, CliError> {
    match s {
        "uplink" => Ok(Direction::Uplink),
        "downlink" => Ok(Direction::Downlink),
        _ => Err(CliError::config(format!("unknown direction `{s}` (uplink, downlink)"))),
    }
}

/// `select` holds `;`-separated rank lists, each optionally prefixed by
/// its pool size (`3:1-3`). Without a prefix every `pool_size` entry is
/// used, or the largest rank when no pool size is given. A pool size alone
/// means nearest and farthest.
fn selections(select: Option<&str>, pools: &[usize]) -> Result<Vec<Selection>, CliError> {
    let Some(select) = select.filter(|s| !s.is_empty()) else {
        return Ok(pools
            .iter()
            .map(|&pool| Selection {
                pool,
                ranks: vec![1, pool],
            })
            .collect());
    };
    let mut out = Vec::new();
    for item in select.split(';').map(str::trim).filter(|t| !t.is_empty()) {
        let (pool, ranks) = match item.split_once(':') {
            Some((p, r)) => (Some(one::<usize>(p.trim(), "select")?), r),
            None => (None, item),
        };
        let ranks = parse_selection(ranks).map_err(CliError::Config)?;
        match pool {
            Some(pool) => out.push(Selection { pool, ranks }),
            None if pools.is_empty() => out.push(Selection {
                pool: ranks.iter().copied().max().unwrap_or(0),
                ranks,
            }),
            None => out.extend(pools.iter().map(|&pool| Selection {
                pool,
                ranks: ranks.clone(),
            })),
        }
    }
    Ok(out)
}
