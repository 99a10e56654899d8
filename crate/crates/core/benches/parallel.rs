use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qamplify_core::explain::shapley_exact;
use qamplify_core::hybrid::{loss_and_gradient, HybridModel, LogregConfig};
use qamplify_core::metrics::{crossval_compare, LogisticSpec, RandomGuessSpec};
use qamplify_core::pipeline::{clean, nearmiss_select, read_raw_csv, synthetic_raw_csv};
use qamplify_core::{Execution, Samples};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn rows(n: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| (0..4).map(|_| rng.gen_range(-2.0..2.0)).collect())
        .collect()
}

fn predict(c: &mut Criterion) {
    let model = HybridModel::qamplifynet(1);
    let data = rows(1000, 2);
    let mut group = c.benchmark_group("predict_proba_1000");
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| model.predict_proba(&data, exec).unwrap()));
    }
    group.finish();
}

fn gradients(c: &mut Criterion) {
    let model = HybridModel::qamplifynet(1);
    let q: Vec<Vec<f64>> = rows(256, 3)
        .iter()
        .map(|r| model.quantum_input(r).unwrap().0)
        .collect();
    let mut group = c.benchmark_group("param_shift_gradients");
    for batch in [5, 256] {
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, batch), &batch, |b, &n| {
                b.iter(|| {
                    exec.map_range(n, |i| loss_and_gradient(&model, &q[i], (i % 2) as u8).unwrap())
                })
            });
        }
    }
    group.finish();
}

fn nearmiss(c: &mut Criterion) {
    let csv = synthetic_raw_csv(6000, 600, 4);
    let frame = clean(&read_raw_csv(csv.as_bytes()).unwrap(), None).unwrap();
    let keep = frame.class_counts()[1];
    let mut group = c.benchmark_group("nearmiss_k3");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| nearmiss_select(&frame, 0, keep, 3, exec).unwrap())
        });
    }
    group.finish();
}

fn shapley(c: &mut Criterion) {
    let weights: Vec<f64> = (0..12).map(|j| (j as f64 * 0.7).sin()).collect();
    let f = |z: &[f64]| {
        let s: f64 = z.iter().zip(&weights).map(|(a, b)| a * b).sum();
        (s + z[0] * z[5]).tanh()
    };
    let x = vec![0.5; 12];
    let mu = vec![0.0; 12];
    let mut group = c.benchmark_group("shapley_exact_m12");
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| shapley_exact(f, &x, &mu, None, exec).unwrap()));
    }
    group.finish();
}

fn crossval(c: &mut Criterion) {
    let features = rows(2000, 5);
    let labels = features.iter().map(|r| u8::from(r[0] + r[1] > 0.0)).collect();
    let data = Samples::new(features, labels).unwrap();
    let lr = LogisticSpec(LogregConfig::default());
    let mut group = c.benchmark_group("crossval_logreg_10fold");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| crossval_compare(&lr, &RandomGuessSpec, &data, 10, 1, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, predict, gradients, nearmiss, shapley, crossval);
criterion_main!(benches);
