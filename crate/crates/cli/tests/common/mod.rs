#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use qamplify_core::hybrid::HybridModel;
use qamplify_core::pipeline::FeatureFrame;

pub fn qamplify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qamplify"))
        .args(args)
        .env_remove("QAMPLIFY_SEED")
        .output()
        .expect("binary runs")
}

pub fn qamplify_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qamplify"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

pub fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

pub fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[track_caller]
pub fn ok(out: Output) -> Output {
    assert_eq!(code(&out), 0, "stdout:\n{}\nstderr:\n{}", stdout(&out), stderr(&out));
    out
}

pub fn path(dir: &Path, name: &str) -> PathBuf {
    dir.join(name)
}

pub fn s(p: &Path) -> &str {
    p.to_str().expect("utf-8 temp path")
}

/// Deterministic jitter in `[-1, 1)` without an RNG dependency.
fn jitter(i: usize, j: usize) -> f64 {
    let x = ((i * 7 + j * 13) as f64 * 12.9898).sin() * 43758.5453;
    2.0 * (x - x.floor()) - 1.0
}

/// Two clusters at `±1.5·𝟙` with jitter in `[-1, 1]^4`; linearly separable.
pub fn separable_frame(n: usize) -> FeatureFrame {
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let centre = if i % 2 == 1 { -1.5 } else { 1.5 };
            (0..4).map(|j| centre + jitter(i, j)).collect()
        })
        .collect();
    let labels = (0..n).map(|i| (i % 2) as u8).collect();
    let names = (1..=4).map(|i| format!("pc{i}")).collect();
    FeatureFrame::new(names, vec![false; 4], rows, labels).unwrap()
}

/// A model whose frozen stack is the identity, with zero circuit angles and
/// a head mapping `⟨Z₀⟩ = +1` to class 0 and `⟨Z₀⟩ = −1` to class 1.
///
/// Input `e₁ = [1,0,0,0]` embeds as `|00⟩` (predicted 0); `e₄ = [0,0,0,1]`
/// embeds as `|11⟩`, which the CNOT ring maps to `|10⟩` (predicted 1).
pub fn engineered_model_json() -> String {
    let mut file = HybridModel::with_hidden(4, &[4, 4], 0).to_file();
    for i in 0..3 {
        let d = file.dense_weights.get_mut(&format!("dense_{i}")).unwrap();
        for o in 0..4 {
            for k in 0..4 {
                d.weights[o * 4 + k] = if o == k { 1.0 } else { 0.0 };
            }
        }
        d.bias.iter_mut().for_each(|b| *b = 0.0);
    }
    file.quantum_weights.as_mut_slice().iter_mut().for_each(|a| *a = 0.0);
    let head = file.dense_weights.get_mut("dense_3").unwrap();
    head.weights = vec![5.0, 0.0, -5.0, 0.0];
    head.bias = vec![0.0, 0.0];
    HybridModel::from_file(file.clone()).unwrap();
    serde_json::to_string_pretty(&file).unwrap()
}

/// 200 negatives and 27 positives at `e₁`, 40 positives at `e₄`:
/// confusion `tp 40, tn 200, fp 0, fn 27` under the engineered model.
pub fn engineered_frame() -> FeatureFrame {
    let e1 = vec![1.0, 0.0, 0.0, 0.0];
    let e4 = vec![0.0, 0.0, 0.0, 1.0];
    let mut rows = vec![e1.clone(); 227];
    rows.extend(vec![e4; 40]);
    let mut labels = vec![0u8; 200];
    labels.extend(vec![1u8; 67]);
    let names = (1..=4).map(|i| format!("pc{i}")).collect();
    FeatureFrame::new(names, vec![false; 4], rows, labels).unwrap()
}
