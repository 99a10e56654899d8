use qamplify_core::explain::{lime_explain, shapley_exact, Attribution, LimeConfig, Method};
use qamplify_core::{Error, Execution};
use serde::Serialize;

use crate::args::{ExplainArgs, ExplainMethod};
use crate::error::{CliError, CliResult};
use crate::io::{read_bytes, read_frame, read_model, resolve_seed, write, write_json, Provenance};

/// Largest tolerated gap between `base + Σ φ` and the model output.
const EFFICIENCY_TOLERANCE: f64 = 1e-9;

#[derive(Serialize)]
struct ExplanationDocument {
    #[serde(flatten)]
    attribution: Attribution,
    row: usize,
    provenance: Provenance,
}

pub fn run(args: ExplainArgs, exec: Execution) -> CliResult<()> {
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
    let instance = frame.rows.get(args.row).ok_or_else(|| {
        CliError::usage(format!("--row {} is out of range for {} rows", args.row, frame.n_rows()))
    })?;
    let seed = resolve_seed(args.seed, None)?;
    let f = |z: &[f64]| model.forward(z).map_or(f64::NAN, |p| p[1]);

    let attribution = match args.method {
        ExplainMethod::Shap => {
            let background = match &model.background {
                Some(bg) => bg.clone(),
                None => {
                    log::warn!("model has no stored background; using the data file's feature means");
                    frame.to_samples().feature_means()
                }
            };
            let attr = shapley_exact(f, instance, &background, Some(&frame.column_names), exec)?;
            let total = attr.base_value + attr.values().iter().sum::<f64>();
            if (total - attr.prediction).abs() > EFFICIENCY_TOLERANCE {
                return Err(CliError::numeric(format!(
                    "Shapley values do not add up: base + sum = {total}, model output = {}",
                    attr.prediction
                )));
            }
            attr
        }
        ExplainMethod::Lime => {
            let config = LimeConfig {
                n_samples: args.samples,
                kernel_width: args.kernel_width,
                seed,
            };
            lime_explain(f, instance, &config, Some(&frame.column_names), exec)?
        }
    };

    write_json(
        &args.out,
        &ExplanationDocument {
            attribution: attribution.clone(),
            row: args.row,
            provenance: Provenance::new(seed, &[("model", &model_bytes), ("data", &data_bytes)]),
        },
    )?;
    if let Some(path) = &args.csv {
        write(path, attribution.to_csv().as_bytes())?;
    }

    let label = match attribution.method {
        Method::ShapExact => "base value",
        Method::Lime => "intercept",
    };
    println!(
        "row {}: p_backorder {:.6}, {label} {:.6}",
        args.row, attribution.prediction, attribution.base_value
    );
    print!("{}", attribution.render_bars(40));
    Ok(())
}
