use qamplify_core::hybrid::{QUANTUM_LAYERS, QUANTUM_QUBITS};
use qamplify_core::quantum::{class_probabilities, quantum_layer_expectations, SelWeights};

use crate::args::CircuitArgs;
use crate::error::{CliError, CliResult};
use crate::io::{parse_json, read_bytes};

fn parse_input(raw: &str) -> CliResult<Vec<f64>> {
    let values = raw
        .split(',')
        .map(|s| {
            let s = s.trim();
            s.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| CliError::usage(format!("--input: `{s}` is not a finite number")))
        })
        .collect::<CliResult<Vec<f64>>>()?;
    let dim = 1 << QUANTUM_QUBITS;
    if values.len() != dim {
        return Err(CliError::usage(format!(
            "--input needs {dim} comma-separated values, got {}",
            values.len()
        )));
    }
    if values.iter().all(|&v| v == 0.0) {
        return Err(CliError::usage("--input is the zero vector, which cannot be embedded"));
    }
    Ok(values)
}

fn load_weights(args: &CircuitArgs) -> CliResult<SelWeights> {
    let Some(path) = &args.weights else {
        return Ok(SelWeights::zeros(QUANTUM_LAYERS, QUANTUM_QUBITS));
    };
    let bytes = read_bytes(path)?;
    let mut value: serde_json::Value = parse_json(path, &bytes)?;
    if let Some(inner) = value.get_mut("quantum_weights") {
        value = inner.take();
    }
    serde_json::from_value(value).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

pub fn run(args: CircuitArgs) -> CliResult<()> {
    let inputs = parse_input(&args.input)?;
    let weights = load_weights(&args)?;
    let (embedded, evolved, z) = quantum_layer_expectations(&inputs, &weights)?;
    let probs = class_probabilities(z[0])?;

    println!("embedded state:");
    print!("{embedded}");
    println!("after {} strongly-entangling layer(s):", weights.layers());
    print!("{evolved}");
    let zs: Vec<String> = z.iter().map(|v| format!("{v:.12}")).collect();
    println!("<Z>: [{}]", zs.join(", "));
    println!("p_not_backorder: {:.12}", probs.p_not_backorder);
    println!("p_backorder: {:.12}", probs.p_backorder);
    Ok(())
}
