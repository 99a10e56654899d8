use proptest::prelude::*;
use qamplify_core::explain::{lime_explain, shapley_exact, LimeConfig, Method};
use qamplify_core::hybrid::HybridModel;
use qamplify_core::Execution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (i, &head) in items.iter().enumerate() {
        let rest: Vec<usize> = items.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, &v)| v).collect();
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

fn permutation_shapley(f: &dyn Fn(&[f64]) -> f64, x: &[f64], mu: &[f64]) -> Vec<f64> {
    let m = x.len();
    let orders = permutations(&(0..m).collect::<Vec<_>>());
    let mut phi = vec![0.0; m];
    for order in &orders {
        let mut z = mu.to_vec();
        let mut before = f(&z);
        for &j in order {
            z[j] = x[j];
            let after = f(&z);
            phi[j] += after - before;
            before = after;
        }
    }
    phi.iter().map(|p| p / orders.len() as f64).collect()
}

#[test]
fn lookup_table_models_match_permutation_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..50 {
        let table: Vec<f64> = (0..16).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let x: Vec<f64> = (0..4).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let mu: Vec<f64> = x.iter().map(|v| v + rng.gen_range(0.5..1.5)).collect();
        let f = |z: &[f64]| {
            let idx = (0..4).fold(0, |acc, j| acc | (usize::from(z[j] == x[j]) << j));
            table[idx]
        };
        let attr = shapley_exact(f, &x, &mu, None, Execution::default()).unwrap();
        let oracle = permutation_shapley(&f, &x, &mu);
        for (a, b) in attr.values().iter().zip(&oracle) {
            assert!((a - b).abs() < 1e-10);
        }
        let total: f64 = attr.values().iter().sum();
        assert!((attr.base_value + total - f(&x)).abs() < 1e-9);
        assert_eq!(attr.base_value, f(&mu));
    }
}

#[test]
fn hybrid_model_attributions_match_oracle_and_are_efficient() {
    let model = HybridModel::qamplifynet(3);
    let f = |z: &[f64]| model.forward(z).unwrap()[1];
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..5 {
        let x: Vec<f64> = (0..4).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let mu = [0.0; 4];
        let attr = shapley_exact(f, &x, &mu, None, Execution::default()).unwrap();
        let oracle = permutation_shapley(&f, &x, &mu);
        for (a, b) in attr.values().iter().zip(&oracle) {
            assert!((a - b).abs() < 1e-10);
        }
        assert!((attr.base_value + attr.values().iter().sum::<f64>() - attr.prediction).abs() < 1e-9);
    }
}

#[test]
fn five_feature_models_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let a: Vec<f64> = (0..5).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let f = |z: &[f64]| (z.iter().zip(&a).map(|(z, a)| z * a).sum::<f64>() + z[0] * z[3]).tanh();
    let x = [0.4, -1.0, 2.0, 0.7, -0.3];
    let mu = [0.1; 5];
    let attr = shapley_exact(f, &x, &mu, None, Execution::Sequential).unwrap();
    let oracle = permutation_shapley(&f, &x, &mu);
    for (a, b) in attr.values().iter().zip(&oracle) {
        assert!((a - b).abs() < 1e-10);
    }
}

#[test]
fn lime_recovers_linear_coefficients() {
    let truth = [2.0, 3.0, 0.0, 0.0];
    let f = |z: &[f64]| z.iter().zip(&truth).map(|(a, b)| a * b).sum::<f64>() + 0.5;
    let config = LimeConfig { n_samples: 5000, seed: 11, ..LimeConfig::default() };
    let attr = lime_explain(f, &[0.3, -0.7, 1.1, 0.0], &config, None, Execution::default()).unwrap();
    assert_eq!(attr.method, Method::Lime);
    let v = attr.values();
    assert!((v[0] - 2.0).abs() <= 0.05 * 2.0);
    assert!((v[1] - 3.0).abs() <= 0.05 * 3.0);
    assert!(v[2].abs() < 1e-8 && v[3].abs() < 1e-8);
    assert!((attr.base_value - 0.5).abs() < 1e-8);
}

#[test]
fn lime_is_bit_deterministic_across_modes() {
    let model = HybridModel::qamplifynet(5);
    let f = |z: &[f64]| model.forward(z).unwrap()[1];
    let config = LimeConfig { n_samples: 800, seed: 3, ..LimeConfig::default() };
    let x = [0.2, 0.1, -0.4, 1.0];
    let a = lime_explain(f, &x, &config, None, Execution::Sequential).unwrap();
    let b = lime_explain(f, &x, &config, None, Execution::default()).unwrap();
    assert_eq!(a, b);
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn lime_ignored_features_stay_within_sampling_noise() {
    let f = |z: &[f64]| 1.0 / (1.0 + (-(z[0] - 0.5 * z[1] * z[1])).exp());
    let x = [0.3, 0.8, -0.2, 1.5];
    let runs: Vec<Vec<f64>> = (0..30)
        .map(|seed| {
            let config = LimeConfig { n_samples: 2000, seed, ..LimeConfig::default() };
            lime_explain(f, &x, &config, None, Execution::Sequential).unwrap().values()
        })
        .collect();
    for j in [2, 3] {
        let c: Vec<f64> = runs.iter().map(|r| r[j]).collect();
        let mean = c.iter().sum::<f64>() / c.len() as f64;
        let sd = (c.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (c.len() - 1) as f64).sqrt();
        assert!(mean.abs() < 3.0 * sd / (c.len() as f64).sqrt(), "feature {j}: {mean} ± {sd}");
        assert!(c.iter().all(|v| v.abs() < 3.0 * sd.max(1e-12) + mean.abs()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn shapley_axioms_hold(
        a in prop::collection::vec(-2.0f64..2.0, 4),
        x in prop::collection::vec(-2.0f64..2.0, 4),
        mu in prop::collection::vec(-1.0f64..1.0, 4),
    ) {
        // features 0 and 1 enter symmetrically, feature 3 is ignored
        let f = |z: &[f64]| (a[0] * (z[0] + z[1]) + a[1] * z[0] * z[1] + a[2] * z[2]).sin();
        let xs = [x[0], x[0], x[2], x[3]];
        let mus = [mu[0], mu[0], mu[2], mu[3]];
        let attr = shapley_exact(f, &xs, &mus, None, Execution::Sequential).unwrap();
        let v = attr.values();
        prop_assert!((v[0] - v[1]).abs() < 1e-12);
        prop_assert!(v[3].abs() < 1e-12);
        prop_assert!((attr.base_value + v.iter().sum::<f64>() - f(&xs)).abs() < 1e-9);
    }

    #[test]
    fn additive_models_attribute_weighted_offsets(
        a in prop::collection::vec(-3.0f64..3.0, 1..8),
        seed in 0u64..1000,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x: Vec<f64> = a.iter().map(|_| rng.gen_range(-2.0..2.0)).collect();
        let mu: Vec<f64> = a.iter().map(|_| rng.gen_range(-2.0..2.0)).collect();
        let f = |z: &[f64]| z.iter().zip(&a).map(|(z, a)| z * a).sum::<f64>();
        let attr = shapley_exact(f, &x, &mu, None, Execution::Sequential).unwrap();
        for (j, v) in attr.values().iter().enumerate() {
            prop_assert!((v - a[j] * (x[j] - mu[j])).abs() < 1e-12);
        }
    }
}
