//! Ingestion and preprocessing: clean → signed log → standard scale → VIF
//! selection → NearMiss undersampling / splitting → PCA to four components.

mod artifacts;
mod clean;
mod frame;
mod linalg;
mod nearmiss;
mod pca;
mod splits;
mod synthetic;
mod transform;
mod vif;

pub use artifacts::{preprocess, PreprocessArtifacts, PreprocessOutput, PCA_COMPONENTS};
pub use clean::{clean, read_raw_csv, RawTable, LABEL_ALIASES, MISSING_MARKERS};
pub use frame::FeatureFrame;
pub use nearmiss::{nearmiss_select, nearmiss_undersample};
pub use pca::{pca_fit_transform, Pca};
pub use splits::{build_splits, SamplingConfig};
pub use synthetic::{synthetic_raw_csv, RAW_COLUMNS};
pub use transform::{signed_log, signed_log_transform, standard_scale, ScalerStats};
pub use vif::{compute_vif, vif_select, VIF_CAP};

/// Short notation (`x0`…`x21`) of the backorder dataset columns.
pub fn feature_notation(column: &str) -> Option<&'static str> {
    Some(match column {
        "sku" => "x0",
        "national_inv" => "x1",
        "lead_time" => "x2",
        "in_transit_qty" => "x3",
        "forecast_3_month" => "x4",
        "forecast_6_month" => "x5",
        "forecast_9_month" => "x6",
        "sales_1_month" => "x7",
        "sales_3_month" => "x8",
        "sales_6_month" => "x9",
        "sales_9_month" => "x10",
        "min_bank" => "x11",
        "potential_issue" => "x12",
        "pieces_past_due" => "x13",
        "perf_6_month_avg" => "x14",
        "perf_12_month_avg" => "x15",
        "local_bo_qty" => "x16",
        "ppap_risk" => "x17",
        "deck_risk" => "x18",
        "stop_auto_buy" => "x19",
        "oe_constraint" => "x20",
        "rev_stop" => "x21",
        _ => return None,
    })
}
