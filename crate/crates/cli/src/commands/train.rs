use qamplify_core::hybrid::{train_with, HybridModel, ModelFile, TrainConfig};
use qamplify_core::pipeline::PCA_COMPONENTS;
use qamplify_core::{Error, Execution};

use crate::args::TrainArgs;
use crate::commands::load_train_config;
use crate::error::{CliError, CliResult};
use crate::io::{read_bytes, read_frame, resolve_seed, sha256, write, write_json, Document, Provenance};

pub fn run(args: TrainArgs, exec: Execution) -> CliResult<()> {
    let data_bytes = read_bytes(&args.data)?;
    let (config, config_bytes) = load_train_config(args.config.as_deref())?;
    let seed = resolve_seed(args.seed, config_bytes.as_ref().map(|_| config.seed))?;
    let config = TrainConfig { seed, ..config };
    let artifacts = args.artifacts.as_deref().map(read_bytes).transpose()?;

    let frame = read_frame(&args.data, &data_bytes)?;
    if frame.n_cols() != PCA_COMPONENTS {
        return Err(CliError::from(Error::DimensionMismatch {
            expected: PCA_COMPONENTS,
            got: frame.n_cols(),
        })
        .context(&args.data));
    }
    let data = frame.to_samples();
    let model = HybridModel::qamplifynet(seed);
    let (mut trained, history) = train_with(&model, &data, &config, exec)?;
    trained.background = Some(data.feature_means());
    trained.preprocessing_artifact_ref = artifacts.as_deref().map(sha256);

    let mut inputs: Vec<(&str, &[u8])> = vec![("data", &data_bytes)];
    if let Some(bytes) = &config_bytes {
        inputs.push(("config", bytes));
    }
    if let Some(bytes) = &artifacts {
        inputs.push(("artifacts", bytes));
    }
    write_json(
        &args.model,
        &Document::<ModelFile> {
            body: trained.to_file(),
            provenance: Some(Provenance::new(seed, &inputs)),
        },
    )?;
    write(&args.history, history.to_csv().as_bytes())?;

    let best = history.best_epoch;
    println!("stopped after epoch {}", history.stopped_epoch);
    println!(
        "best epoch {best}: val_loss {:.6}, train_acc {:.4}, val_acc {:.4}",
        history.best_val_loss().unwrap_or(f64::NAN),
        history.train_acc[best - 1],
        history.val_acc[best - 1],
    );
    Ok(())
}
