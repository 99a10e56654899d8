use qamplify_core::pipeline::synthetic_raw_csv;

use crate::args::SynthArgs;
use crate::error::{CliError, CliResult};
use crate::io::{resolve_seed, write};

pub fn run(args: SynthArgs) -> CliResult<()> {
    if args.backorders > args.rows {
        return Err(CliError::usage(format!(
            "--backorders ({}) exceeds --rows ({})",
            args.backorders, args.rows
        )));
    }
    let seed = resolve_seed(args.seed, None)?;
    write(&args.out, synthetic_raw_csv(args.rows, args.backorders, seed).as_bytes())?;
    println!("{} rows ({} backorder) -> {}", args.rows, args.backorders, args.out.display());
    Ok(())
}
