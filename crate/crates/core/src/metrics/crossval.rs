use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::report::evaluate_predictions;
use super::roc::roc_auc;
use super::ttest::{paired_ttest, StatTestResult};
use crate::data::Samples;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::hybrid::{train_with, HybridModel, LogisticRegression, LogregConfig, TrainConfig};

/// A model recipe that can be fitted on one fold and scored on another.
pub trait FoldClassifier: Sync {
    fn name(&self) -> String;

    /// Fits on `train` and returns `P(backorder)` for each row of `test`.
    fn fit_predict(&self, train: &Samples, test: &[Vec<f64>], seed: u64) -> Result<Vec<f64>>;
}

/// The hybrid model, freshly initialised from the fold seed.
#[derive(Debug, Clone)]
pub struct QAmplifyNetSpec {
    pub train: TrainConfig,
    pub hidden: Vec<usize>,
    pub exec: Execution,
}

impl Default for QAmplifyNetSpec {
    fn default() -> Self {
        Self {
            train: TrainConfig::default(),
            hidden: vec![512, 256],
            exec: Execution::Sequential,
        }
    }
}

impl FoldClassifier for QAmplifyNetSpec {
    fn name(&self) -> String {
        "qamplifynet".into()
    }

    fn fit_predict(&self, train: &Samples, test: &[Vec<f64>], seed: u64) -> Result<Vec<f64>> {
        let model = HybridModel::with_hidden(train.dim(), &self.hidden, seed);
        let config = TrainConfig {
            seed,
            ..self.train.clone()
        };
        let (trained, _) = train_with(&model, train, &config, self.exec)?;
        Ok(trained
            .predict_proba(test, self.exec)?
            .into_iter()
            .map(|p| p[1])
            .collect())
    }
}

#[derive(Debug, Clone, Default)]
pub struct LogisticSpec(pub LogregConfig);

impl FoldClassifier for LogisticSpec {
    fn name(&self) -> String {
        "logreg".into()
    }

    fn fit_predict(&self, train: &Samples, test: &[Vec<f64>], _seed: u64) -> Result<Vec<f64>> {
        let model = LogisticRegression::fit(train, self.0)?;
        Ok(test.iter().map(|x| model.predict_proba(x)).collect())
    }
}

/// Uniform random scores that ignore the features.
#[derive(Debug, Clone, Copy, Default)]
pub struct RandomGuessSpec;

impl FoldClassifier for RandomGuessSpec {
    fn name(&self) -> String {
        "random".into()
    }

    fn fit_predict(&self, _train: &Samples, test: &[Vec<f64>], seed: u64) -> Result<Vec<f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x005e_ed0f_9a55);
        Ok(test.iter().map(|_| rng.gen::<f64>()).collect())
    }
}

/// Fold index for every sample: each class is shuffled and dealt
/// round-robin, so fold sizes per class differ by at most one.
pub fn stratified_folds(labels: &[u8], folds: usize, seed: u64) -> Result<Vec<usize>> {
    if folds < 2 {
        return Err(Error::Config(format!("cross-validation needs at least 2 folds, got {folds}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut assignment = vec![0; labels.len()];
    for class in [0u8, 1] {
        let mut members: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == class).collect();
        if members.len() < folds {
            return Err(Error::DegenerateData(format!(
                "class {class} has {} samples; every one of {folds} folds needs both classes",
                members.len()
            )));
        }
        members.shuffle(&mut rng);
        for (k, i) in members.into_iter().enumerate() {
            assignment[i] = k % folds;
        }
    }
    Ok(assignment)
}

/// Per-fold scores of both models on one metric and their paired test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricComparison {
    pub metric: String,
    pub scores_a: Vec<f64>,
    pub scores_b: Vec<f64>,
    pub test: Option<StatTestResult>,
    pub zero_variance: bool,
}

impl MetricComparison {
    fn new(metric: &str, scores_a: Vec<f64>, scores_b: Vec<f64>) -> Result<Self> {
        let (test, zero_variance) = match paired_ttest(&scores_a, &scores_b) {
            Ok(t) => (Some(t), false),
            Err(Error::ZeroVariance) => (None, true),
            Err(e) => return Err(e),
        };
        Ok(Self {
            metric: metric.into(),
            scores_a,
            scores_b,
            test,
            zero_variance,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossValReport {
    pub model_a: String,
    pub model_b: String,
    pub folds: usize,
    pub seed: u64,
    pub fold_assignment: Vec<usize>,
    pub accuracy: MetricComparison,
    pub roc_auc: MetricComparison,
}

/// Seeded stratified k-fold comparison. Both models see identical folds and
/// the same per-fold seed; folds are evaluated independently.
pub fn crossval_compare(
    model_a: &dyn FoldClassifier,
    model_b: &dyn FoldClassifier,
    data: &Samples,
    folds: usize,
    seed: u64,
    exec: Execution,
) -> Result<CrossValReport> {
    let assignment = stratified_folds(&data.labels, folds, seed)?;
    log::debug!("fold assignment: {assignment:?}");
    let per_fold = exec.try_map(&(0..folds).collect::<Vec<_>>(), |&fold| {
        let test_idx: Vec<usize> = (0..data.len()).filter(|&i| assignment[i] == fold).collect();
        let train_idx: Vec<usize> = (0..data.len()).filter(|&i| assignment[i] != fold).collect();
        let train = data.subset(&train_idx);
        let test = data.subset(&test_idx);
        let fold_seed = seed.wrapping_add(fold as u64 + 1);
        let mut scores = Vec::with_capacity(2);
        for model in [model_a, model_b] {
            let p = model.fit_predict(&train, &test.features, fold_seed)?;
            let report = evaluate_predictions(&test.labels, &p, super::report::DEFAULT_IBA_ALPHA)?;
            scores.push((report.accuracy, roc_auc(&test.labels, &p)?));
        }
        Ok::<_, Error>(scores)
    })?;
    let column = |model: usize, pick: fn(&(f64, f64)) -> f64| -> Vec<f64> {
        per_fold.iter().map(|s| pick(&s[model])).collect()
    };
    Ok(CrossValReport {
        model_a: model_a.name(),
        model_b: model_b.name(),
        folds,
        seed,
        accuracy: MetricComparison::new("accuracy", column(0, |s| s.0), column(1, |s| s.0))?,
        roc_auc: MetricComparison::new("roc_auc", column(0, |s| s.1), column(1, |s| s.1))?,
        fold_assignment: assignment,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn folds_are_stratified() {
        let labels: Vec<u8> = (0..53).map(|i| u8::from(i % 4 == 0)).collect();
        let a = stratified_folds(&labels, 5, 1).unwrap();
        for f in 0..5 {
            let pos = (0..53).filter(|&i| a[i] == f && labels[i] == 1).count();
            let neg = (0..53).filter(|&i| a[i] == f && labels[i] == 0).count();
            assert!((2..=3).contains(&pos) && (7..=8).contains(&neg), "fold {f}: {pos}/{neg}");
        }
        assert_eq!(a, stratified_folds(&labels, 5, 1).unwrap());
    }

    #[test]
    fn fold_count_validated() {
        assert!(matches!(stratified_folds(&[0, 1, 0, 1], 1, 0), Err(Error::Config(_))));
        assert!(matches!(stratified_folds(&[0, 1, 0, 0], 2, 0), Err(Error::DegenerateData(_))));
    }
}
