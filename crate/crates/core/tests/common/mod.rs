#![allow(dead_code)]

use qamplify_core::Samples;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Two clusters at `±1.5·𝟙` with bounded uniform jitter in `[-1, 1]^4`.
/// Projected on `𝟙/2` the classes sit at `±3 ± 2`, so they are linearly
/// separable with margin 1.
pub fn separable_set(n: usize, seed: u64) -> Samples {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut features = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for i in 0..n {
        let y = (i % 2) as u8;
        let centre = if y == 1 { -1.5 } else { 1.5 };
        features.push((0..4).map(|_| centre + rng.gen_range(-1.0..1.0)).collect());
        labels.push(y);
    }
    Samples::new(features, labels).unwrap()
}
