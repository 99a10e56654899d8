pub mod circuit;
pub mod crossval;
pub mod evaluate;
pub mod explain;
pub mod preprocess;
pub mod synth;
pub mod train;

use qamplify_core::hybrid::TrainConfig;

use crate::error::CliResult;
use crate::io::{parse_json, read_bytes};
use std::path::Path;

/// Training configuration and its raw bytes (for hashing), or the defaults.
pub(crate) fn load_train_config(path: Option<&Path>) -> CliResult<(TrainConfig, Option<Vec<u8>>)> {
    let Some(path) = path else {
        return Ok((TrainConfig::default(), None));
    };
    let bytes = read_bytes(path)?;
    let config: TrainConfig = parse_json(path, &bytes)?;
    config.validate()?;
    Ok((config, Some(bytes)))
}
