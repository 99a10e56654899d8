//! Post-hoc attributions of `P(backorder)`.

mod lime;
mod shapley;

use serde::{Deserialize, Serialize};

pub use lime::{lime_explain, LimeConfig};
pub use shapley::{shapley_exact, MAX_SHAPLEY_FEATURES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "shap_exact")]
    ShapExact,
    #[serde(rename = "lime")]
    Lime,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureValue {
    pub name: String,
    pub value: f64,
}

/// Signed per-feature contributions.
///
/// For exact Shapley values `base_value` is the model output at the
/// background point and `base_value + Σ values` equals `prediction`. For
/// LIME the values are the local surrogate's slopes and `base_value` is its
/// intercept.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Attribution {
    pub method: Method,
    pub base_value: f64,
    pub prediction: f64,
    pub features: Vec<FeatureValue>,
}

impl Attribution {
    pub(crate) fn new(
        method: Method,
        base_value: f64,
        prediction: f64,
        names: Option<&[String]>,
        values: &[f64],
    ) -> Self {
        let features = values
            .iter()
            .enumerate()
            .map(|(j, &value)| FeatureValue {
                name: names
                    .and_then(|n| n.get(j).cloned())
                    .unwrap_or_else(|| format!("x{j}")),
                value,
            })
            .collect();
        Self {
            method,
            base_value,
            prediction,
            features,
        }
    }

    pub fn values(&self) -> Vec<f64> {
        self.features.iter().map(|f| f.value).collect()
    }

    /// Text bar chart, one feature per line, scaled to the largest magnitude.
    pub fn render_bars(&self, width: usize) -> String {
        let max = self
            .features
            .iter()
            .fold(0.0f64, |m, f| m.max(f.value.abs()));
        let name_w = self.features.iter().map(|f| f.name.len()).max().unwrap_or(0);
        let mut out = String::new();
        for f in &self.features {
            let len = if max > 0.0 {
                ((f.value.abs() / max) * width as f64).round() as usize
            } else {
                0
            };
            let bar = if f.value < 0.0 { "-" } else { "+" }.repeat(len);
            out.push_str(&format!("{:<name_w$} {:>+.6} {}\n", f.name, f.value, bar));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("feature,value\n");
        for f in &self.features {
            out.push_str(&format!("{},{}\n", f.name, f.value));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bars_and_json() {
        let a = Attribution::new(
            Method::ShapExact,
            0.25,
            0.5,
            Some(&["pc1".to_string(), "pc2".to_string()]),
            &[0.2, -0.05],
        );
        let bars = a.render_bars(8);
        assert_eq!(bars.lines().next().unwrap(), "pc1 +0.200000 ++++++++");
        assert_eq!(bars.lines().nth(1).unwrap(), "pc2 -0.050000 --");
        let json = serde_json::to_value(&a).unwrap();
        assert_eq!(json["method"], "shap_exact");
        assert_eq!(json["features"][1]["name"], "pc2");
    }
}
