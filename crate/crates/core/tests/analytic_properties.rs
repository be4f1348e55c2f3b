use noma_accuracy_core::analytic::{
    accuracy, accuracy_nakagami_2ue, accuracy_nakagami_3ue, accuracy_rayleigh_2ue, accuracy_rayleigh_3ue,
    accuracy_rayleigh_general,
};
use noma_accuracy_core::mc::estimate_accuracy;
use noma_accuracy_core::{ClusterSpec, DistanceModel, FadingModel, Method, Pairing};
use proptest::prelude::*;

fn models() -> [DistanceModel; 3] {
    [
        DistanceModel::ppp(5e-4).unwrap(),
        DistanceModel::mcp(20.0).unwrap(),
        DistanceModel::tcp(100.0).unwrap(),
    ]
}

fn value(model: DistanceModel, alpha: f64, m: f64, n: usize) -> f64 {
    let spec = ClusterSpec::new(model, alpha, FadingModel::nakagami(m).unwrap(), n).unwrap();
    accuracy(&spec).unwrap().value
}

#[test]
fn increasing_in_alpha() {
    for model in models() {
        for n in [2, 3, 4] {
            let v: Vec<f64> = [2.5, 3.0, 4.0, 5.0, 6.0]
                .iter()
                .map(|&a| value(model, a, 1.0, n))
                .collect();
            assert!(v.windows(2).all(|w| w[1] > w[0]), "{model:?} N={n}: {v:?}");
        }
        for m in [0.5, 2.0] {
            for n in [2, 3] {
                let v: Vec<f64> = [2.5, 3.0, 4.0, 5.0, 6.0]
                    .iter()
                    .map(|&a| value(model, a, m, n))
                    .collect();
                assert!(v.windows(2).all(|w| w[1] > w[0]), "{model:?} m={m} N={n}: {v:?}");
            }
        }
    }
}

#[test]
fn decreasing_in_users() {
    for model in models() {
        for alpha in [2.5, 4.0, 6.0] {
            let v: Vec<f64> = [2, 3, 4].iter().map(|&n| value(model, alpha, 1.0, n)).collect();
            assert!(v.windows(2).all(|w| w[1] < w[0]), "{model:?} alpha={alpha}: {v:?}");
        }
    }
}

#[test]
fn increasing_in_m() {
    for model in models() {
        for n in [2, 3] {
            let v: Vec<f64> = [0.5, 1.0, 2.0, 4.0].iter().map(|&m| value(model, 4.0, m, n)).collect();
            assert!(v.windows(2).all(|w| w[1] > w[0]), "{model:?} N={n}: {v:?}");
        }
    }
}

#[test]
fn nakagami_reduces_to_rayleigh() {
    for model in models() {
        for alpha in [2.5, 4.0, 6.0] {
            let a = accuracy_nakagami_2ue(&model, alpha, 1.0).unwrap().value;
            let b = accuracy_rayleigh_2ue(&model, alpha).unwrap().value;
            assert!((a - b).abs() < 1e-4, "{model:?} {alpha}: {a} {b}");
            let a = accuracy_nakagami_3ue(&model, alpha, 1.0).unwrap().value;
            let b = accuracy_rayleigh_3ue(&model, alpha).unwrap().value;
            assert!((a - b).abs() < 0.01, "{model:?} {alpha}: {a} {b}");
        }
    }
}

#[test]
fn analytic_methods_are_labelled() {
    let rule = |spec: ClusterSpec| accuracy(&spec).unwrap().method;
    let ray = FadingModel::rayleigh();
    let mcp = DistanceModel::mcp(1.0).unwrap();
    assert_eq!(rule(ClusterSpec::new(mcp, 4.0, ray, 2).unwrap()), Method::Series);
    assert_eq!(
        rule(ClusterSpec::new(mcp, 4.0, ray, 3).unwrap()),
        Method::TensorQuadrature
    );
    let nak = FadingModel::nakagami(2.0).unwrap();
    assert_eq!(rule(ClusterSpec::new(mcp, 4.0, nak, 2).unwrap()), Method::Quadrature2F1);
}

#[test]
fn analytic_agrees_with_monte_carlo() {
    let n = 400_000;
    let mut seed = 100;
    for model in models() {
        for (m, users) in [(1.0, 2), (1.0, 3), (1.0, 4), (0.5, 2), (2.0, 3)] {
            let spec = ClusterSpec::new(model, 4.0, FadingModel::nakagami(m).unwrap(), users).unwrap();
            let a = accuracy(&spec).unwrap().value;
            let mc = estimate_accuracy(&spec, n, seed, false).unwrap();
            seed += 1;
            // 4 sigma: 15 comparisons in this loop
            assert!(
                (a - mc.estimate).abs() < 4.0 * mc.stderr + 1e-4,
                "{model:?} m={m} N={users}: {a} vs {mc:?}"
            );
        }
    }
}

#[test]
fn pairing_agrees_with_monte_carlo() {
    let cases = [(3, vec![1, 3]), (4, vec![1, 4]), (4, vec![2, 3]), (5, vec![1, 3, 5])];
    for (i, (pool, ranks)) in cases.into_iter().enumerate() {
        let n_users = ranks.len();
        let spec = ClusterSpec::new(DistanceModel::tcp(4.0).unwrap(), 4.0, FadingModel::rayleigh(), n_users)
            .unwrap()
            .with_pairing(Pairing::new(pool, ranks).unwrap())
            .unwrap();
        let a = accuracy(&spec).unwrap().value;
        let mc = estimate_accuracy(&spec, 400_000, 300 + i as u64, false).unwrap();
        assert!((a - mc.estimate).abs() < 4.0 * mc.stderr + 1e-4, "{a} vs {mc:?}");
    }
}

#[test]
fn general_evaluator_matches_special_cases() {
    for model in models() {
        let g2 = accuracy_rayleigh_general(&model, 4.0, 2).unwrap().value;
        let g3 = accuracy_rayleigh_general(&model, 4.0, 3).unwrap().value;
        assert!((g2 - accuracy_rayleigh_2ue(&model, 4.0).unwrap().value).abs() < 1e-4);
        assert!((g3 - accuracy_rayleigh_3ue(&model, 4.0).unwrap().value).abs() < 1e-4);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn scale_free(
        alpha in 2.2f64..7.0,
        m in prop::sample::select(vec![0.5, 1.0, 2.5]),
        n in 2usize..4,
        kind in 0usize..3,
        scale in -3.0f64..3.0,
    ) {
        let s = 10f64.powf(scale);
        let (a, b) = match kind {
            0 => (DistanceModel::ppp(1e-3).unwrap(), DistanceModel::ppp(1e-3 * s).unwrap()),
            1 => (DistanceModel::mcp(1.0).unwrap(), DistanceModel::mcp(s).unwrap()),
            _ => (DistanceModel::tcp(1.0).unwrap(), DistanceModel::tcp(s).unwrap()),
        };
        let (x, y) = (value(a, alpha, m, n), value(b, alpha, m, n));
        prop_assert!((x - y).abs() < 1e-12, "{} {}", x, y);
    }

    #[test]
    fn analytic_values_are_probabilities(
        alpha in 2.05f64..10.0,
        m in 0.5f64..6.0,
        n in 2usize..4,
        kind in 0usize..3,
    ) {
        let model = models()[kind];
        let est = accuracy(&ClusterSpec::new(model, alpha, FadingModel::nakagami(m).unwrap(), n).unwrap()).unwrap();
        prop_assert!((0.0..=1.0).contains(&est.value));
        prop_assert!(est.error_bound >= 0.0 && est.error_bound.is_finite());
    }
}
