//! Hybrid classifier: frozen dense stack → quantum layer → trainable softmax head.

mod layers;
mod logreg;
mod model;
mod optim;
mod train;

pub use layers::{relu, softmax, DenseLayer, LayerKind, LayerSpec};
pub use logreg::{logistic_regression, LogisticRegression, LogregConfig};
pub use model::{HybridModel, ModelFile, QUANTUM_LAYERS, QUANTUM_QUBITS};
pub use optim::{adam_step, AdamState, ADAM_BETA1, ADAM_BETA2, ADAM_EPSILON};
pub use train::{
    bce_loss, loss_and_gradient, stratified_validation_split, train, train_with, EarlyStopping,
    TrainConfig, TrainHistory, PROBABILITY_CLIP,
};
