use qamplify_core::metrics::{
    crossval_compare, CrossValReport, FoldClassifier, LogisticSpec, MetricComparison,
    QAmplifyNetSpec, RandomGuessSpec,
};
use qamplify_core::hybrid::TrainConfig;
use qamplify_core::Execution;
use serde::Serialize;

use crate::args::{Baseline, CrossvalArgs};
use crate::commands::load_train_config;
use crate::error::{CliError, CliResult};
use crate::io::{read_bytes, read_frame, resolve_seed, write_json, Provenance};

#[derive(Serialize)]
struct CrossValDocument {
    #[serde(flatten)]
    report: CrossValReport,
    provenance: Provenance,
}

fn summary(m: &MetricComparison) -> String {
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let head = format!(
        "{:<9} mean {:.4} vs {:.4}",
        m.metric,
        mean(&m.scores_a),
        mean(&m.scores_b)
    );
    match &m.test {
        Some(t) => format!("{head}  t = {:.4}, dof = {}, p = {:.3e}", t.t_statistic, t.degrees_of_freedom, t.p_value),
        None => format!("{head}  zero variance in fold differences; no test"),
    }
}

pub fn run(args: CrossvalArgs, exec: Execution) -> CliResult<()> {
    if args.folds < 2 {
        return Err(CliError::usage(format!("--folds must be at least 2, got {}", args.folds)));
    }
    let data_bytes = read_bytes(&args.data)?;
    let (config, config_bytes) = load_train_config(args.config.as_deref())?;
    let seed = resolve_seed(args.seed, config_bytes.as_ref().map(|_| config.seed))?;
    let frame = read_frame(&args.data, &data_bytes)?;
    let data = frame.to_samples();

    let hybrid = QAmplifyNetSpec {
        train: TrainConfig { seed, ..config },
        ..QAmplifyNetSpec::default()
    };
    let baseline: Box<dyn FoldClassifier> = match args.against {
        Baseline::Logreg => Box::new(LogisticSpec::default()),
        Baseline::SelfModel => Box::new(hybrid.clone()),
        Baseline::Random => Box::new(RandomGuessSpec),
    };
    let report = crossval_compare(&hybrid, baseline.as_ref(), &data, args.folds, seed, exec)?;

    let mut inputs: Vec<(&str, &[u8])> = vec![("data", &data_bytes)];
    if let Some(bytes) = &config_bytes {
        inputs.push(("config", bytes));
    }
    println!("{} vs {} over {} folds", report.model_a, report.model_b, report.folds);
    println!("{}", summary(&report.accuracy));
    println!("{}", summary(&report.roc_auc));
    write_json(
        &args.out,
        &CrossValDocument {
            report,
            provenance: Provenance::new(seed, &inputs),
        },
    )
}
