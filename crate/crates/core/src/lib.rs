//! Hybrid quantum-classical classifier for supply-chain backorder prediction.
//!
//! The crate is organised around the stages of the workflow:
//!
//! - [`quantum`]: exact dense-statevector simulation of the amplitude-embedded,
//!   strongly-entangling variational circuit, with parameter-shift gradients.
//! - [`hybrid`]: the frozen dense stack → quantum layer → softmax head model,
//!   its Adam training loop with early stopping, and a logistic-regression baseline.
//! - [`pipeline`]: CSV ingestion, cleaning, signed-log/standard scaling, VIF
//!   feature elimination, NearMiss undersampling, splitting and PCA.
//! - [`metrics`]: imbalanced-classification metrics, ROC-AUC and the
//!   cross-validated paired t-test.
//! - [`explain`]: exact Shapley attribution and LIME surrogates.
//!
//! Data-parallel loops (batched inference, per-sample gradients, NearMiss
//! distances, cross-validation folds, explainer sampling) run on rayon when the
//! `parallel` feature is enabled and fall back to plain iterators otherwise.
//! Reductions are always performed in index order, so both paths produce
//! bit-identical results.

pub mod data;
pub mod error;
pub mod exec;
pub mod explain;
pub mod hybrid;
pub mod metrics;
pub mod pipeline;
pub mod quantum;

pub use data::Samples;
pub use error::{Error, Result};
pub use exec::Execution;
