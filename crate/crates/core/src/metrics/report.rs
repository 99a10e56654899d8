use serde::{Deserialize, Serialize};

use super::confusion::{confusion, ConfusionMatrix};
use super::roc::roc_auc;
use crate::error::{Error, Result};

pub const DEFAULT_IBA_ALPHA: f64 = 0.1;

/// One row of per-class scores.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassMetrics {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub specificity: f64,
    pub gmean: f64,
    pub iba: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub confusion: ConfusionMatrix,
    pub accuracy: f64,
    pub class_0: ClassMetrics,
    pub class_1: ClassMetrics,
    pub macro_avg: ClassMetrics,
    pub roc_auc: Option<f64>,
    pub iba_alpha: f64,
    /// Metrics whose denominator was zero; reported as 0.
    pub undefined: Vec<String>,
}

fn ratio(num: u64, den: u64, name: &str, undefined: &mut Vec<String>) -> f64 {
    if den == 0 {
        undefined.push(name.to_owned());
        0.0
    } else {
        num as f64 / den as f64
    }
}

fn class_row(cm: &ConfusionMatrix, class: u8, alpha: f64, undefined: &mut Vec<String>) -> ClassMetrics {
    let tag = |m: &str| format!("{m}_{class}");
    let precision = ratio(cm.tp, cm.tp + cm.fp, &tag("precision"), undefined);
    let recall = ratio(cm.tp, cm.tp + cm.fn_, &tag("recall"), undefined);
    let specificity = ratio(cm.tn, cm.tn + cm.fp, &tag("specificity"), undefined);
    let f1 = if precision + recall == 0.0 {
        undefined.push(tag("f1"));
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    };
    let gmean = (recall * specificity).sqrt();
    let iba = (1.0 + alpha * (recall - specificity)) * gmean * gmean;
    ClassMetrics {
        precision,
        recall,
        f1,
        specificity,
        gmean,
        iba,
    }
}

/// Accuracy plus per-class and macro-averaged precision, recall, F1,
/// specificity, geometric mean `√(recall·specificity)` and
/// `IBA = (1 + α·(recall − specificity))·gmean²`.
pub fn classification_metrics(cm: &ConfusionMatrix, alpha: f64) -> Result<MetricsReport> {
    if cm.total() == 0 {
        return Err(Error::DegenerateData("empty confusion matrix".into()));
    }
    let mut undefined = Vec::new();
    let class_1 = class_row(cm, 1, alpha, &mut undefined);
    let class_0 = class_row(&cm.swapped(), 0, alpha, &mut undefined);
    let avg = |f: fn(&ClassMetrics) -> f64| (f(&class_0) + f(&class_1)) / 2.0;
    let macro_avg = ClassMetrics {
        precision: avg(|m| m.precision),
        recall: avg(|m| m.recall),
        f1: avg(|m| m.f1),
        specificity: avg(|m| m.specificity),
        gmean: avg(|m| m.gmean),
        iba: avg(|m| m.iba),
    };
    undefined.sort();
    Ok(MetricsReport {
        confusion: *cm,
        accuracy: (cm.tp + cm.tn) as f64 / cm.total() as f64,
        class_0,
        class_1,
        macro_avg,
        roc_auc: None,
        iba_alpha: alpha,
        undefined,
    })
}

/// Full report from labels and `P(backorder)` scores. Hard labels use
/// `p ≥ 0.5`; AUC is omitted (with a warning) when only one class is present.
pub fn evaluate_predictions(labels: &[u8], p_backorder: &[f64], alpha: f64) -> Result<MetricsReport> {
    let preds: Vec<u8> = p_backorder.iter().map(|&p| u8::from(p >= 0.5)).collect();
    let cm = confusion(labels, &preds)?;
    let mut report = classification_metrics(&cm, alpha)?;
    report.roc_auc = match roc_auc(labels, p_backorder) {
        Ok(auc) => Some(auc),
        Err(Error::DegenerateData(msg)) => {
            log::warn!("ROC-AUC omitted: {msg}");
            None
        }
        Err(e) => return Err(e),
    };
    Ok(report)
}
