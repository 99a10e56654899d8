use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::layers::softmax;
use super::model::HybridModel;
use super::optim::{adam_step, AdamState};
use crate::data::Samples;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::quantum::{param_shift_jacobian, quantum_layer_forward};

/// Probabilities are clipped to `[PROBABILITY_CLIP, 1 − PROBABILITY_CLIP]` before the log.
pub const PROBABILITY_CLIP: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TrainConfig {
    pub learning_rate: f64,
    pub batch_size: usize,
    pub max_epochs: usize,
    pub patience: usize,
    pub validation_fraction: f64,
    pub seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            learning_rate: 0.01,
            batch_size: 5,
            max_epochs: 100,
            patience: 5,
            validation_fraction: 0.2,
            seed: 42,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return Err(Error::Config(format!("learning_rate must be > 0, got {}", self.learning_rate)));
        }
        if !(self.validation_fraction > 0.0 && self.validation_fraction < 1.0) {
            return Err(Error::Config(format!(
                "validation_fraction must lie in (0, 1), got {}",
                self.validation_fraction
            )));
        }
        if self.batch_size == 0 {
            return Err(Error::Config("batch_size must be at least 1".into()));
        }
        if self.max_epochs == 0 {
            return Err(Error::Config("max_epochs must be at least 1".into()));
        }
        if self.patience == 0 {
            return Err(Error::Config("patience must be at least 1".into()));
        }
        Ok(())
    }
}

/// Per-epoch curves. `stopped_epoch` is the number of epochs actually run;
/// `best_epoch` the (1-based) epoch whose weights were restored.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct TrainHistory {
    pub train_loss: Vec<f64>,
    pub val_loss: Vec<f64>,
    pub train_acc: Vec<f64>,
    pub val_acc: Vec<f64>,
    pub stopped_epoch: usize,
    pub best_epoch: usize,
}

impl TrainHistory {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("epoch,train_loss,val_loss,train_acc,val_acc\n");
        for i in 0..self.train_loss.len() {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                i + 1,
                self.train_loss[i],
                self.val_loss[i],
                self.train_acc[i],
                self.val_acc[i]
            ));
        }
        out
    }

    pub fn best_val_loss(&self) -> Option<f64> {
        self.best_epoch
            .checked_sub(1)
            .and_then(|i| self.val_loss.get(i).copied())
    }
}

/// Validation-loss monitor: stops after `patience` epochs without strict
/// improvement.
#[derive(Debug, Clone)]
pub struct EarlyStopping {
    patience: usize,
    best: f64,
    best_epoch: usize,
    wait: usize,
}

impl EarlyStopping {
    pub fn new(patience: usize) -> Self {
        Self {
            patience,
            best: f64::INFINITY,
            best_epoch: 0,
            wait: 0,
        }
    }

    /// Records the loss of `epoch`; returns `(improved, stop)`.
    pub fn update(&mut self, epoch: usize, loss: f64) -> (bool, bool) {
        if loss < self.best {
            self.best = loss;
            self.best_epoch = epoch;
            self.wait = 0;
            (true, false)
        } else {
            self.wait += 1;
            (false, self.wait >= self.patience)
        }
    }

    pub fn best_epoch(&self) -> usize {
        self.best_epoch
    }
}

/// Mean categorical cross-entropy of the true class.
pub fn bce_loss(predicted: &[[f64; 2]], labels: &[u8]) -> Result<f64> {
    if predicted.len() != labels.len() {
        return Err(Error::DimensionMismatch {
            expected: labels.len(),
            got: predicted.len(),
        });
    }
    if predicted.is_empty() {
        return Err(Error::DegenerateData("loss over zero samples".into()));
    }
    let total: f64 = predicted
        .iter()
        .zip(labels)
        .map(|(p, &y)| {
            -p[y as usize]
                .clamp(PROBABILITY_CLIP, 1.0 - PROBABILITY_CLIP)
                .ln()
        })
        .sum();
    Ok(total / labels.len() as f64)
}

/// Loss of one sample and its gradient with respect to
/// [`HybridModel::trainable_params`], chaining the parameter-shift Jacobian
/// of the quantum layer through the dense head.
pub fn loss_and_gradient(
    model: &HybridModel,
    q_input: &[f64],
    label: u8,
) -> Result<(f64, Vec<f64>)> {
    let weights = model.quantum_weights();
    let head = model.head();
    let z = quantum_layer_forward(q_input, weights)?;
    let p = softmax(&head.forward(&z))?;
    let y = label as usize;
    let clipped = p[y].clamp(PROBABILITY_CLIP, 1.0 - PROBABILITY_CLIP);
    let loss = -clipped.ln();

    let mut grad = vec![0.0; model.trainable_count()];
    if clipped != p[y] {
        return Ok((loss, grad));
    }
    // ∂L/∂logit_k = p_k − [k = y]
    let dlogit: Vec<f64> = (0..p.len())
        .map(|k| p[k] - if k == y { 1.0 } else { 0.0 })
        .collect();
    let nq = weights.param_count();
    let n_in = head.in_dim;
    let dz: Vec<f64> = (0..n_in)
        .map(|q| (0..head.out_dim).map(|k| dlogit[k] * head.weights[k * n_in + q]).sum())
        .collect();
    let jac = param_shift_jacobian(q_input, weights)?;
    for (k, g) in grad[..nq].iter_mut().enumerate() {
        *g = (0..n_in).map(|q| dz[q] * jac[q][k]).sum();
    }
    for k in 0..head.out_dim {
        for q in 0..n_in {
            grad[nq + k * n_in + q] = dlogit[k] * z[q];
        }
        grad[nq + head.weights.len() + k] = dlogit[k];
    }
    Ok((loss, grad))
}

/// Stratified hold-out of exactly `⌈fraction·N⌉` indices.
///
/// Per-class quotas follow largest-remainder apportionment (ties to class 0);
/// every class keeps at least one training sample.
pub fn stratified_validation_split<R: rand::Rng>(
    labels: &[u8],
    fraction: f64,
    rng: &mut R,
) -> Result<(Vec<usize>, Vec<usize>)> {
    let n = labels.len();
    let mut by_class: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    for (i, &y) in labels.iter().enumerate() {
        by_class[y as usize].push(i);
    }
    let total = ((fraction * n as f64) - 1e-9).ceil().max(0.0) as usize;
    let exact: Vec<f64> = by_class
        .iter()
        .map(|c| c.len() as f64 * total as f64 / n as f64)
        .collect();
    let mut quota: Vec<usize> = exact.iter().map(|e| e.floor() as usize).collect();
    let mut order = [0usize, 1];
    order.sort_by(|&a, &b| {
        (exact[b] - exact[b].floor())
            .partial_cmp(&(exact[a] - exact[a].floor()))
            .unwrap()
    });
    let mut remaining = total - quota.iter().sum::<usize>();
    for &c in order.iter().cycle().take(4) {
        if remaining == 0 {
            break;
        }
        if quota[c] + 1 < by_class[c].len() {
            quota[c] += 1;
            remaining -= 1;
        }
    }
    if remaining > 0 || quota.iter().zip(&by_class).any(|(q, c)| *q >= c.len()) {
        return Err(Error::InsufficientSamples(format!(
            "cannot hold out {total} of {n} samples while keeping both classes in training"
        )));
    }
    let mut train = Vec::with_capacity(n - total);
    let mut val = Vec::with_capacity(total);
    for (c, members) in by_class.iter_mut().enumerate() {
        members.shuffle(rng);
        val.extend_from_slice(&members[..quota[c]]);
        train.extend_from_slice(&members[quota[c]..]);
    }
    train.sort_unstable();
    val.sort_unstable();
    Ok((train, val))
}

fn evaluate(
    model: &HybridModel,
    q_inputs: &[Vec<f64>],
    labels: &[u8],
    indices: &[usize],
    exec: Execution,
) -> Result<(f64, f64)> {
    let probs = exec.try_map(indices, |&i| model.forward_from_quantum_input(&q_inputs[i]))?;
    let ys: Vec<u8> = indices.iter().map(|&i| labels[i]).collect();
    let loss = bce_loss(&probs, &ys)?;
    let correct = probs
        .iter()
        .zip(&ys)
        .filter(|(p, &y)| u8::from(p[1] >= 0.5) == y)
        .count();
    Ok((loss, correct as f64 / ys.len() as f64))
}

/// [`train_with`] using the default execution mode.
pub fn train(
    model: &HybridModel,
    data: &Samples,
    config: &TrainConfig,
) -> Result<(HybridModel, TrainHistory)> {
    train_with(model, data, config, Execution::default())
}

/// Mini-batch Adam on the SEL angles and the dense head, with the frozen
/// stack evaluated once up front. Stops on validation-loss patience and
/// restores the best epoch's weights.
pub fn train_with(
    model: &HybridModel,
    data: &Samples,
    config: &TrainConfig,
    exec: Execution,
) -> Result<(HybridModel, TrainHistory)> {
    config.validate()?;
    if data.dim() != model.input_dim() {
        return Err(Error::DimensionMismatch {
            expected: model.input_dim(),
            got: data.dim(),
        });
    }
    let counts = data.class_counts();
    if counts.iter().any(|&c| c < 2) {
        return Err(Error::DegenerateData(format!(
            "training needs at least 2 samples per class, got {counts:?}"
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let (train_idx, val_idx) =
        stratified_validation_split(&data.labels, config.validation_fraction, &mut rng)?;

    let cached = exec.try_map(&data.features, |row| model.quantum_input(row))?;
    let dead = cached.iter().filter(|(_, d)| *d).count();
    if dead > 0 {
        log::warn!("{dead} of {} samples have an all-zero quantum input", data.len());
    }
    let q_inputs: Vec<Vec<f64>> = cached.into_iter().map(|(q, _)| q).collect();

    let mut current = model.clone();
    let mut params = current.trainable_params();
    let mut best_params = params.clone();
    let mut adam = AdamState::new(params.len());
    let mut monitor = EarlyStopping::new(config.patience);
    let mut history = TrainHistory::default();
    let mut order = train_idx.clone();

    for epoch in 1..=config.max_epochs {
        order.shuffle(&mut rng);
        for batch in order.chunks(config.batch_size) {
            let per_sample = exec.try_map(batch, |&i| {
                loss_and_gradient(&current, &q_inputs[i], data.labels[i])
            })?;
            let mut grad = vec![0.0; params.len()];
            for (loss, g) in &per_sample {
                if !loss.is_finite() {
                    return Err(Error::NonFinite(format!("training loss at epoch {epoch}")));
                }
                grad.iter_mut().zip(g).for_each(|(a, b)| *a += b);
            }
            let scale = 1.0 / batch.len() as f64;
            grad.iter_mut().for_each(|g| *g *= scale);
            adam_step(&mut params, &grad, &mut adam, config.learning_rate)?;
            current.set_trainable_params(&params)?;
        }

        let (train_loss, train_acc) = evaluate(&current, &q_inputs, &data.labels, &train_idx, exec)?;
        let (val_loss, val_acc) = evaluate(&current, &q_inputs, &data.labels, &val_idx, exec)?;
        if !train_loss.is_finite() || !val_loss.is_finite() {
            return Err(Error::NonFinite(format!("epoch {epoch} loss")));
        }
        history.train_loss.push(train_loss);
        history.val_loss.push(val_loss);
        history.train_acc.push(train_acc);
        history.val_acc.push(val_acc);
        history.stopped_epoch = epoch;
        log::debug!("epoch {epoch}: loss {train_loss:.5} val_loss {val_loss:.5} acc {train_acc:.4} val_acc {val_acc:.4}");

        let (improved, stop) = monitor.update(epoch, val_loss);
        if improved {
            best_params.clone_from(&params);
        }
        if stop {
            break;
        }
    }
    history.best_epoch = monitor.best_epoch();
    current.set_trainable_params(&best_params)?;
    Ok((current, history))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loss_examples() {
        let perfect = bce_loss(&[[0.0, 1.0]], &[1]).unwrap();
        assert!((perfect - (1.0 / (1.0 - 1e-7f64)).ln()).abs() < 1e-15);
        assert!((perfect - 1e-7).abs() < 1e-13);
        let half = bce_loss(&[[0.5, 0.5]; 3], &[0, 1, 1]).unwrap();
        assert!((half - std::f64::consts::LN_2).abs() < 1e-15);
        let single = bce_loss(&[[0.9, 0.1]], &[0]).unwrap();
        assert!((single - 0.10536051565782628).abs() < 1e-15);
        assert!(bce_loss(&[[0.5, 0.5]], &[0, 1]).is_err());
    }

    #[test]
    fn patience_one_stops_after_second_epoch() {
        let mut es = EarlyStopping::new(1);
        let losses = [1.0, 1.1, 1.2, 1.3];
        let mut stopped = None;
        for (i, &l) in losses.iter().enumerate() {
            if es.update(i + 1, l).1 {
                stopped = Some(i + 1);
                break;
            }
        }
        assert_eq!(stopped, Some(2));
        assert_eq!(es.best_epoch(), 1);
    }

    #[test]
    fn patience_resets_on_improvement() {
        let mut es = EarlyStopping::new(2);
        assert_eq!(es.update(1, 1.0), (true, false));
        assert_eq!(es.update(2, 1.0), (false, false));
        assert_eq!(es.update(3, 0.9), (true, false));
        assert_eq!(es.update(4, 0.95), (false, false));
        assert_eq!(es.update(5, 0.95), (false, true));
    }

    #[test]
    fn validation_split_is_exact_and_stratified() {
        let labels: Vec<u8> = (0..203).map(|i| u8::from(i % 3 == 0)).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let (train, val) = stratified_validation_split(&labels, 0.2, &mut rng).unwrap();
        assert_eq!(val.len(), 41); // ⌈0.2·203⌉
        assert_eq!(train.len() + val.len(), 203);
        let pos_val = val.iter().filter(|&&i| labels[i] == 1).count();
        // 68 positives → 68·41/203 = 13.73
        assert!(pos_val == 13 || pos_val == 14);
        let mut all: Vec<_> = train.iter().chain(&val).copied().collect();
        all.sort_unstable();
        assert_eq!(all, (0..203).collect::<Vec<_>>());
    }

    #[test]
    fn config_validation() {
        assert!(TrainConfig::default().validate().is_ok());
        for bad in [
            TrainConfig { learning_rate: 0.0, ..Default::default() },
            TrainConfig { validation_fraction: 1.0, ..Default::default() },
            TrainConfig { batch_size: 0, ..Default::default() },
            TrainConfig { patience: 0, ..Default::default() },
        ] {
            assert!(bad.validate().is_err());
        }
    }

    #[test]
    fn single_class_data_rejected() {
        let data = Samples::new(vec![vec![1.0; 4]; 10], vec![0; 10]).unwrap();
        assert!(matches!(
            train(&HybridModel::qamplifynet(1), &data, &TrainConfig::default()),
            Err(Error::DegenerateData(_))
        ));
    }
}
