use qamplify_core::metrics::{evaluate_predictions, roc_points, ClassMetrics, MetricsReport};
use qamplify_core::{Error, Execution};

use crate::args::EvaluateArgs;
use crate::error::{CliError, CliResult};
use crate::io::{read_bytes, read_frame, read_model, write, write_json, Document, Provenance};

pub fn run(args: EvaluateArgs, exec: Execution) -> CliResult<()> {
    let model_bytes = read_bytes(&args.model)?;
    let data_bytes = read_bytes(&args.data)?;
    let model = read_model(&args.model, &model_bytes)?;
    let frame = read_frame(&args.data, &data_bytes)?;
    if frame.n_cols() != model.input_dim() {
        return Err(CliError::from(Error::DimensionMismatch {
            expected: model.input_dim(),
            got: frame.n_cols(),
        })
        .context(&args.data));
    }

    let probs = model.predict_proba(&frame.rows, exec)?;
    let p_backorder: Vec<f64> = probs.iter().map(|p| p[1]).collect();
    let report = evaluate_predictions(&frame.labels, &p_backorder, args.iba_alpha)?;

    let mut roc = String::from("fpr,tpr\n");
    match roc_points(&frame.labels, &p_backorder) {
        Ok(points) => {
            for (fpr, tpr) in points {
                roc.push_str(&format!("{fpr},{tpr}\n"));
            }
        }
        Err(Error::DegenerateData(msg)) => log::warn!("ROC curve omitted: {msg}"),
        Err(e) => return Err(e.into()),
    }
    write(&args.roc, roc.as_bytes())?;
    write_json(
        &args.report,
        &Document::<MetricsReport> {
            body: report.clone(),
            provenance: Some(Provenance::new(
                model.seed(),
                &[("model", &model_bytes), ("data", &data_bytes)],
            )),
        },
    )?;

    let cm = &report.confusion;
    println!("confusion: tp {} tn {} fp {} fn {}", cm.tp, cm.tn, cm.fp, cm.fn_);
    println!("accuracy   {:.4}", report.accuracy);
    match report.roc_auc {
        Some(auc) => println!("roc_auc    {auc:.4}"),
        None => println!("roc_auc    n/a"),
    }
    println!("{:<14}{:>10}{:>10}{:>10}", "", "class 0", "class 1", "macro");
    type Pick = fn(&ClassMetrics) -> f64;
    let rows: [(&str, Pick); 6] = [
        ("precision", |m| m.precision),
        ("recall", |m| m.recall),
        ("f1", |m| m.f1),
        ("specificity", |m| m.specificity),
        ("gmean", |m| m.gmean),
        ("iba", |m| m.iba),
    ];
    for (name, pick) in rows {
        println!(
            "{name:<14}{:>10.4}{:>10.4}{:>10.4}",
            pick(&report.class_0),
            pick(&report.class_1),
            pick(&report.macro_avg)
        );
    }
    if !report.undefined.is_empty() {
        println!("undefined (reported as 0): {}", report.undefined.join(", "));
    }
    Ok(())
}
