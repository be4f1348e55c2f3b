use noma_accuracy_core::geometry::{sample_distance, sample_ordered};
use noma_accuracy_core::mc::block_rng;
use noma_accuracy_core::DistanceModel;

fn models() -> Vec<DistanceModel> {
    vec![
        DistanceModel::ppp(5e-4).unwrap(),
        DistanceModel::ppp_with_correction(1.0, 1.0).unwrap(),
        DistanceModel::mcp(20.0).unwrap(),
        DistanceModel::tcp(3.0).unwrap(),
    ]
}

#[test]
fn samplers_pass_kolmogorov_smirnov() {
    let n = 100_000;
    for (i, model) in models().into_iter().enumerate() {
        let mut rng = block_rng(60 + i as u64, 0);
        let mut x: Vec<f64> = (0..n).map(|_| sample_distance(&model, &mut rng)).collect();
        x.sort_by(f64::total_cmp);
        let d = x
            .iter()
            .enumerate()
            .map(|(k, &v)| {
                let f = model.cdf(v).unwrap();
                (f - k as f64 / n as f64).max((k + 1) as f64 / n as f64 - f)
            })
            .fold(0.0, f64::max);
        assert!(d < 1.628 / (n as f64).sqrt(), "{model:?}: {d}");
    }
}

fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

/// CDF of the i-th smallest of n uniforms (1-based).
fn order_cdf(n: usize, i: usize, u: f64) -> f64 {
    (i..=n)
        .map(|j| binom(n, j) * u.powi(j as i32) * (1.0 - u).powi((n - j) as i32))
        .sum()
}

#[test]
fn ordered_marginals_match_order_statistics() {
    let (n_users, draws, bins) = (3, 60_000, 20);
    for (k, model) in models().into_iter().enumerate() {
        let edges: Vec<f64> = (1..bins)
            .map(|b| model.inverse_cdf(b as f64 / bins as f64).unwrap())
            .collect();
        let mut hist = vec![vec![0u64; bins]; n_users];
        let mut rng = block_rng(70 + k as u64, 0);
        for _ in 0..draws {
            let d = sample_ordered(&model, n_users, &mut rng).unwrap();
            for (i, &r) in d.as_slice().iter().enumerate() {
                hist[i][edges.partition_point(|&e| e <= r)] += 1;
            }
        }
        for (i, h) in hist.iter().enumerate() {
            let chi2: f64 = (0..bins)
                .map(|b| {
                    let p = order_cdf(n_users, i + 1, (b + 1) as f64 / bins as f64)
                        - order_cdf(n_users, i + 1, b as f64 / bins as f64);
                    let e = p * draws as f64;
                    (h[b] as f64 - e).powi(2) / e
                })
                .sum();
            // 1% critical value of chi-square with 19 degrees of freedom
            assert!(chi2 < 36.19, "{model:?} rank {}: {chi2}", i + 1);
        }
    }
}

#[test]
fn draws_scale_with_model_parameter() {
    let pairs = [
        (DistanceModel::mcp(1.0).unwrap(), DistanceModel::mcp(7.0).unwrap(), 7.0),
        (DistanceModel::tcp(1.0).unwrap(), DistanceModel::tcp(49.0).unwrap(), 7.0),
        (DistanceModel::ppp(49.0).unwrap(), DistanceModel::ppp(1.0).unwrap(), 7.0),
    ];
    for (a, b, factor) in pairs {
        let (mut r1, mut r2) = (block_rng(3, 0), block_rng(3, 0));
        for _ in 0..1000 {
            let (x, y) = (sample_distance(&a, &mut r1), sample_distance(&b, &mut r2));
            assert!((y - factor * x).abs() <= 1e-12 * y, "{a:?}: {x} {y}");
        }
    }
}
