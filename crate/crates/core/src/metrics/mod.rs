//! Imbalanced binary-classification metrics, ROC analysis and the
//! cross-validated paired t-test.

mod confusion;
mod crossval;
mod report;
mod roc;
pub mod special;
mod ttest;

pub use confusion::{confusion, ConfusionMatrix};
pub use crossval::{
    crossval_compare, stratified_folds, CrossValReport, FoldClassifier, LogisticSpec,
    MetricComparison, QAmplifyNetSpec, RandomGuessSpec,
};
pub use report::{classification_metrics, evaluate_predictions, ClassMetrics, MetricsReport, DEFAULT_IBA_ALPHA};
pub use roc::{roc_auc, roc_points, trapezoid_area};
pub use ttest::{paired_ttest, StatTestResult};
