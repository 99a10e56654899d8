mod common;

use qamplify_core::hybrid::{
    logistic_regression, train, HybridModel, LogisticRegression, LogregConfig, TrainConfig,
};
use qamplify_core::Samples;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn smoothed(values: &[f64], window: usize) -> Vec<f64> {
    values
        .windows(window)
        .map(|w| w.iter().sum::<f64>() / window as f64)
        .collect()
}

#[test]
fn separable_set_trains_to_high_accuracy() {
    let data = common::separable_set(200, 11);
    let model = HybridModel::qamplifynet(42);
    let (trained, history) = train(&model, &data, &TrainConfig::default()).unwrap();
    let best = history.best_epoch - 1;
    assert!(history.train_acc[best] >= 0.95, "{}", history.to_csv());
    let frozen_before = serde_json::to_vec(model.frozen_layers()).unwrap();
    let frozen_after = serde_json::to_vec(trained.frozen_layers()).unwrap();
    assert_eq!(frozen_before, frozen_after);

    let up_to_best = &history.train_loss[..history.best_epoch];
    let s = smoothed(up_to_best, 3);
    for w in s.windows(2) {
        assert!(w[1] <= w[0] + 1e-12, "{}", history.to_csv());
    }
}

#[test]
fn trained_model_scores_the_held_out_cluster() {
    let data = common::separable_set(200, 11);
    let test = common::separable_set(100, 99);
    let (trained, _) = train(&HybridModel::qamplifynet(42), &data, &TrainConfig::default()).unwrap();
    let (labels, _) = logistic_regression(&data, &test.features, LogregConfig::default()).unwrap();
    let correct = test
        .features
        .iter()
        .zip(&test.labels)
        .filter(|(x, &y)| u8::from(trained.forward(x).unwrap()[1] >= 0.5) == y)
        .count();
    assert!(correct as f64 / test.len() as f64 >= 0.95);
    assert_eq!(labels, test.labels);
}

#[test]
fn logistic_recovers_generating_weights() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let n = 10_000;
    let mut features = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for _ in 0..n {
        let x: Vec<f64> = (0..2)
            .map(|_| rng.sample::<f64, _>(rand_distr::StandardNormal))
            .collect();
        let p = 1.0 / (1.0 + (-(2.0 * x[0] - 3.0 * x[1])).exp());
        labels.push(u8::from(rng.gen::<f64>() < p));
        features.push(x);
    }
    let data = Samples::new(features, labels).unwrap();
    let model = LogisticRegression::fit(&data, LogregConfig::default()).unwrap();
    assert!((model.weights[0] - 2.0).abs() <= 0.15);
    assert!((model.weights[1] + 3.0).abs() <= 0.15);
}
