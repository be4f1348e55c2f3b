//! Grid evaluation with rayon: grid points and Monte Carlo blocks run in
//! parallel, rows come back in grid order.

use std::time::Instant;

use noma_accuracy_core::analytic::{accuracy, accuracy_pairing_general, McFallback};
use noma_accuracy_core::coverage::{
    coverage_block, CoverageConfig, CoverageCounts, CoverageOutcome, CoverageResult, Direction, Ranking,
};
use noma_accuracy_core::mc::{accuracy_block, block_count, check_samples, DistanceSource, McEstimate, BLOCK_LEN};
use noma_accuracy_core::{ClusterSpec, DistanceModel, Error, FadingModel, Method, Pairing};
use rayon::prelude::*;

use crate::config::{Experiment, Kind, ModelChoice, Selection};
use crate::output::{fmt_float, ResultRow, ERROR_METHOD};

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunOutput {
    pub comments: Vec<String>,
    pub rows: Vec<ResultRow>,
    /// Error rows caused by invalid parameters.
    pub config_failures: usize,
    /// Error rows caused by numerical failures.
    pub numerical_failures: usize,
}

impl RunOutput {
    pub fn extend(&mut self, other: RunOutput) {
        self.comments.extend(other.comments);
        self.rows.extend(other.rows);
        self.config_failures += other.config_failures;
        self.numerical_failures += other.numerical_failures;
    }

    /// 0 when every row succeeded, else 2 if any failure was numerical, else 1.
    pub fn exit_code(&self) -> u8 {
        if self.numerical_failures > 0 {
            2
        } else if self.config_failures > 0 {
            1
        } else {
            0
        }
    }
}

#[derive(Debug, Clone)]
enum Users {
    Random(usize),
    Paired(Selection),
}

#[derive(Debug, Clone)]
struct AccPoint {
    model: ModelChoice,
    alpha: f64,
    m: f64,
    users: Users,
}

#[derive(Debug, Clone)]
struct CovPoint {
    direction: Direction,
    model: ModelChoice,
    alpha: f64,
    m: f64,
    beta: f64,
    theta: f64,
}

#[derive(Debug, Clone)]
enum Point {
    Analytic(AccPoint),
    Mc(AccPoint),
    Coverage(CovPoint),
}

fn accuracy_points(exp: &Experiment) -> Vec<AccPoint> {
    let users: Vec<Users> = if exp.selections.is_empty() {
        exp.n_users.iter().map(|&n| Users::Random(n)).collect()
    } else {
        exp.selections.iter().cloned().map(Users::Paired).collect()
    };
    let mut out = Vec::new();
    for &model in &exp.models {
        for u in &users {
            for &m in &exp.ms {
                for &alpha in &exp.alphas {
                    out.push(AccPoint {
                        model,
                        alpha,
                        m,
                        users: u.clone(),
                    });
                }
            }
        }
    }
    out
}

fn points(exp: &Experiment) -> Vec<Point> {
    match exp.kind {
        Kind::Analytic => accuracy_points(exp).into_iter().map(Point::Analytic).collect(),
        Kind::Mc => accuracy_points(exp).into_iter().map(Point::Mc).collect(),
        Kind::Sweep => {
            let acc = accuracy_points(exp);
            let analytic = acc
                .iter()
                .filter(|p| p.model != ModelChoice::PppVoronoi)
                .cloned()
                .map(Point::Analytic);
            analytic.chain(acc.iter().cloned().map(Point::Mc)).collect()
        }
        Kind::Coverage => {
            let mut out = Vec::new();
            for &direction in &exp.directions {
                for &model in &exp.models {
                    for &m in &exp.ms {
                        for &alpha in &exp.alphas {
                            for &beta in &exp.betas {
                                for &theta in &exp.thetas {
                                    out.push(Point::Coverage(CovPoint {
                                        direction,
                                        model,
                                        alpha,
                                        m,
                                        beta,
                                        theta,
                                    }));
                                }
                            }
                        }
                    }
                }
            }
            out
        }
    }
}

fn distance_model(exp: &Experiment, model: ModelChoice) -> Result<DistanceModel, Error> {
    match model {
        ModelChoice::Ppp | ModelChoice::PppVoronoi => DistanceModel::ppp(exp.lambda),
        ModelChoice::Mcp => DistanceModel::mcp(exp.radius),
        ModelChoice::Tcp => DistanceModel::tcp(exp.sigma2),
    }
}

fn cluster_spec(exp: &Experiment, p: &AccPoint) -> Result<ClusterSpec, Error> {
    let model = distance_model(exp, p.model)?;
    let fading = FadingModel::nakagami(p.m)?;
    match &p.users {
        Users::Random(n) => ClusterSpec::new(model, p.alpha, fading, *n),
        Users::Paired(s) => ClusterSpec::new(model, p.alpha, fading, s.ranks.len())?
            .with_pairing(Pairing::new(s.pool, s.ranks.clone())?),
    }
}

fn base_row(kind: &str, p: &AccPoint) -> ResultRow {
    let (n_users, pool_size, selection) = match &p.users {
        Users::Random(n) => (*n, None, None),
        Users::Paired(s) => (s.ranks.len(), Some(s.pool), Some(s.ranks.clone())),
    };
    ResultRow {
        kind: kind.to_string(),
        model: Some(p.model.as_str().to_string()),
        alpha: Some(p.alpha),
        m: Some(p.m),
        n_users: Some(n_users),
        pool_size,
        selection,
        ..Default::default()
    }
}

struct Failure {
    numerical: bool,
}

fn error_row(mut row: ResultRow, err: &Error) -> (ResultRow, Failure) {
    row.method = ERROR_METHOD.to_string();
    row.message = Some(err.to_string());
    (
        row,
        Failure {
            numerical: err.is_numerical(),
        },
    )
}

/// Sums per-block hit counts in parallel; independent of thread count.
pub fn parallel_accuracy(spec: &ClusterSpec, source: &DistanceSource, n: u64, seed: u64) -> Result<McEstimate, Error> {
    check_samples(n)?;
    let hits = (0..block_count(n))
        .into_par_iter()
        .map(|b| accuracy_block(spec, source, seed, b, n))
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    Ok(McEstimate::from_counts(hits, n, seed))
}

/// Parallel counterpart of `coverage_mc`.
pub fn parallel_coverage(cfg: &CoverageConfig, n: u64, seed: u64) -> Result<CoverageOutcome, Error> {
    check_samples(n)?;
    cfg.validate()?;
    let counts = (0..block_count(n))
        .into_par_iter()
        .map(|b| coverage_block(cfg, seed, b, n))
        .try_reduce(CoverageCounts::default, |mut a, b| {
            a += b;
            Ok(a)
        })?;
    Ok(CoverageOutcome::from_counts(counts, cfg.msp_mode, seed))
}

fn eval_analytic(exp: &Experiment, p: &AccPoint) -> Result<ResultRow, Error> {
    if p.model == ModelChoice::PppVoronoi {
        return Err(Error::param("model", "ppp-voronoi is simulation only"));
    }
    let spec = cluster_spec(exp, p)?;
    let est = if spec.pairing.is_some() {
        accuracy_pairing_general(
            &spec,
            Some(McFallback {
                n_samples: exp.samples,
                seed: exp.seed,
            }),
        )?
    } else {
        accuracy(&spec)?
    };
    let mut row = base_row("accuracy-analytic", p);
    row.method = est.method.as_str().to_string();
    row.value = Some(est.value);
    row.error = Some(est.error_bound);
    if est.method == Method::MonteCarlo {
        row.n_samples = Some(exp.samples);
        row.seed = Some(exp.seed);
    }
    Ok(row)
}

fn eval_mc(exp: &Experiment, p: &AccPoint) -> Result<ResultRow, Error> {
    let spec = cluster_spec(exp, p)?;
    let source = if p.model == ModelChoice::PppVoronoi {
        DistanceSource::voronoi()
    } else {
        DistanceSource::Model
    };
    let est = parallel_accuracy(&spec, &source, exp.samples, exp.seed)?;
    let mut row = base_row("accuracy-mc", p);
    row.method = Method::MonteCarlo.as_str().to_string();
    row.value = Some(est.estimate);
    row.error = Some(est.stderr);
    row.n_samples = Some(est.n_samples);
    row.seed = Some(est.seed);
    Ok(row)
}

fn coverage_config(
    exp: &Experiment,
    p: &CovPoint,
    mode: noma_accuracy_core::coverage::MspMode,
) -> Result<CoverageConfig, Error> {
    if p.model == ModelChoice::PppVoronoi {
        return Err(Error::param("model", "coverage supports ppp, mcp and tcp"));
    }
    let fading = FadingModel::nakagami(p.m)?;
    let mut cfg = CoverageConfig::new(
        p.direction,
        distance_model(exp, p.model)?,
        p.alpha,
        fading,
        exp.lambda,
        p.theta,
        p.beta,
    )?;
    cfg.a1 = exp.a1;
    cfg.a2 = exp.a2;
    cfg.noise = exp.noise;
    cfg.p_tx = exp.p_tx;
    cfg.p_bs = exp.p_bs;
    cfg.msp_mode = mode;
    cfg.validate()?;
    Ok(cfg)
}

fn coverage_base(p: &CovPoint, user: &str) -> ResultRow {
    ResultRow {
        kind: format!("coverage-{}-{user}", p.direction.as_str()),
        model: Some(p.model.as_str().to_string()),
        alpha: Some(p.alpha),
        m: Some(p.m),
        n_users: Some(2),
        theta: Some(p.theta),
        beta: Some(p.beta),
        ..Default::default()
    }
}

fn eval_coverage(exp: &Experiment, p: &CovPoint) -> Result<Vec<ResultRow>, Error> {
    let cfg = coverage_config(exp, p, exp.msp_modes[0])?;
    let out = parallel_coverage(&cfg, exp.samples, exp.seed)?;
    let mut results: Vec<CoverageResult> = vec![out.isp];
    results.extend(
        exp.msp_modes
            .iter()
            .map(|&mode| out.counts.result(Ranking::Msp(mode), exp.seed)),
    );
    let mc = |mut row: ResultRow, ranking: Ranking, e: &McEstimate| {
        row.ranking = Some(ranking.as_str().to_string());
        row.method = Method::MonteCarlo.as_str().to_string();
        row.value = Some(e.estimate);
        row.error = Some(e.stderr);
        row.n_samples = Some(e.n_samples);
        row.seed = Some(e.seed);
        row
    };
    let mut rows = Vec::new();
    for r in &results {
        rows.push(mc(coverage_base(p, "near"), r.ranking, &r.p_cov_near));
    }
    for r in &results {
        rows.push(mc(coverage_base(p, "far"), r.ranking, &r.p_cov_far));
    }
    let weight = McEstimate::from_counts(out.counts.n_event, out.counts.n, exp.seed);
    rows.push(mc(coverage_base(p, "weight"), Ranking::Isp, &weight));
    Ok(rows)
}

fn eval(exp: &Experiment, point: &Point, timing: bool) -> (Vec<ResultRow>, Vec<Failure>) {
    let start = Instant::now();
    let (mut rows, failures) = match point {
        Point::Analytic(p) => match eval_analytic(exp, p) {
            Ok(r) => (vec![r], vec![]),
            Err(e) => {
                let (r, f) = error_row(base_row("accuracy-analytic", p), &e);
                (vec![r], vec![f])
            }
        },
        Point::Mc(p) => match eval_mc(exp, p) {
            Ok(r) => (vec![r], vec![]),
            Err(e) => {
                let (r, f) = error_row(base_row("accuracy-mc", p), &e);
                (vec![r], vec![f])
            }
        },
        Point::Coverage(p) => match eval_coverage(exp, p) {
            Ok(r) => (r, vec![]),
            Err(e) => {
                let (r, f) = error_row(coverage_base(p, "near"), &e);
                (vec![r], vec![f])
            }
        },
    };
    if timing {
        let ms = start.elapsed().as_secs_f64() * 1e3;
        for r in &mut rows {
            r.runtime_ms = Some(ms);
        }
    }
    (rows, failures)
}

fn header(exp: &Experiment) -> Vec<String> {
    let mut c = vec![format!("noma-accuracy {}", exp.kind.as_str())];
    c.extend(exp.notes.iter().cloned());
    c.push(format!(
        "seed={} samples={} block_len={}",
        exp.seed, exp.samples, BLOCK_LEN
    ));
    c.push(format!(
        "user models: ppp lambda={} c=1.25, mcp radius={}, tcp sigma2={}",
        fmt_float(exp.lambda),
        fmt_float(exp.radius),
        fmt_float(exp.sigma2)
    ));
    if exp.kind == Kind::Coverage {
        c.push(format!(
            "coverage: bs lambda={} a1={} a2={} noise={} p_tx={} p_bs={}",
            fmt_float(exp.lambda),
            fmt_float(exp.a1),
            fmt_float(exp.a2),
            fmt_float(exp.noise),
            fmt_float(exp.p_tx),
            fmt_float(exp.p_bs)
        ));
        c.push(
            "interference: bs ppp in guard <= |b| < 4/sqrt(lambda pi), guard 2R for mcp and 0 otherwise; \
             uplink has one active user per interfering bs placed by the user model"
                .to_string(),
        );
        c.push(
            "rows per point: near and far coverage per ranking, then weight = P(distance order matches power order)"
                .to_string(),
        );
    }
    c
}

/// Evaluates every grid point of `exp`.
pub fn run(exp: &Experiment, timing: bool) -> RunOutput {
    let pts = points(exp);
    let results: Vec<(Vec<ResultRow>, Vec<Failure>)> = pts.par_iter().map(|p| eval(exp, p, timing)).collect();
    let mut out = RunOutput {
        comments: header(exp),
        ..Default::default()
    };
    for (rows, failures) in results {
        out.rows.extend(rows);
        for f in failures {
            if f.numerical {
                out.numerical_failures += 1;
            } else {
                out.config_failures += 1;
            }
        }
    }
    out
}

/// Runs several experiments one after the other and concatenates output.
pub fn run_all(exps: &[Experiment], timing: bool) -> RunOutput {
    let mut out = RunOutput::default();
    for e in exps {
        out.extend(run(e, timing));
    }
    out
}
