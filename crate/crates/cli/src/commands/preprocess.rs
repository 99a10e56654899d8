use std::path::{Path, PathBuf};

use qamplify_core::pipeline::{
    clean, feature_notation, preprocess, read_raw_csv, PreprocessArtifacts, SamplingConfig,
};
use qamplify_core::Execution;
use serde::Serialize;

use crate::args::PreprocessArgs;
use crate::error::{CliError, CliResult};
use crate::io::{parse_json, read_bytes, resolve_seed, write, write_json, Provenance};

#[derive(Serialize)]
struct ArtifactsDocument {
    #[serde(flatten)]
    artifacts: PreprocessArtifacts,
    train_rows: usize,
    test_rows: usize,
    provenance: Provenance,
}

fn default_test_path(train: &Path) -> PathBuf {
    let stem = train.file_stem().map_or_else(|| "data".into(), |s| s.to_string_lossy());
    let ext = train.extension().map_or_else(|| "csv".into(), |s| s.to_string_lossy());
    train.with_file_name(format!("{stem}_test.{ext}"))
}

pub fn run(args: PreprocessArgs, exec: Execution) -> CliResult<()> {
    if args.vif_threshold.is_nan() || args.vif_threshold < 1.0 {
        return Err(CliError::usage(format!(
            "--vif-threshold must be at least 1, got {}",
            args.vif_threshold
        )));
    }
    let input = read_bytes(&args.input)?;
    let mut inputs: Vec<(&str, &[u8])> = vec![("input", &input)];
    let sampling_bytes = args.sampling.as_deref().map(read_bytes).transpose()?;
    let mut sampling: SamplingConfig = match (&args.sampling, &sampling_bytes) {
        (Some(path), Some(bytes)) => parse_json(path, bytes)?,
        _ => SamplingConfig::default(),
    };
    if let Some(bytes) = &sampling_bytes {
        inputs.push(("sampling", bytes));
    }
    let config_seed = sampling_bytes.as_ref().map(|_| sampling.seed);
    sampling.seed = resolve_seed(args.seed, config_seed)?;

    let raw = read_raw_csv(input.as_slice()).map_err(|e| CliError::from(e).context(&args.input))?;
    let cleaned = clean(&raw, args.label_column.as_deref())
        .map_err(|e| CliError::from(e).context(&args.input))?;
    let [neg, pos] = cleaned.class_counts();
    println!("cleaned: {} rows ({neg} not-backorder / {pos} backorder)", cleaned.n_rows());

    let out = preprocess(&cleaned, &sampling, args.vif_threshold, exec)?;
    let test_path = args.out_test.clone().unwrap_or_else(|| default_test_path(&args.out_data));
    write(&args.out_data, out.train.to_csv().as_bytes())?;
    write(&test_path, out.test.to_csv().as_bytes())?;
    write_json(
        &args.out_artifacts,
        &ArtifactsDocument {
            train_rows: out.train.n_rows(),
            test_rows: out.test.n_rows(),
            artifacts: out.artifacts.clone(),
            provenance: Provenance::new(sampling.seed, &inputs),
        },
    )?;

    for (name, frame) in [("train", &out.train), ("test", &out.test)] {
        let [n, p] = frame.class_counts();
        println!("{name}: {} rows ({n} not-backorder / {p} backorder)", frame.n_rows());
    }
    let survivors: Vec<String> = out
        .artifacts
        .kept_columns
        .iter()
        .map(|c| match feature_notation(c) {
            Some(x) => format!("{c} ({x})"),
            None => c.clone(),
        })
        .collect();
    println!("VIF survivors ({}): {}", survivors.len(), survivors.join(", "));
    println!("train data: {}", args.out_data.display());
    println!("test data: {}", test_path.display());
    Ok(())
}
