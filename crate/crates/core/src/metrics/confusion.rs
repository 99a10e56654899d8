use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Binary confusion counts with backorder (label 1) as the positive class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub tp: u64,
    pub tn: u64,
    pub fp: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
}

impl ConfusionMatrix {
    pub fn new(tp: u64, tn: u64, fp: u64, fn_: u64) -> Self {
        Self { tp, tn, fp, fn_ }
    }

    pub fn total(&self) -> u64 {
        self.tp + self.tn + self.fp + self.fn_
    }

    /// The same counts with class 0 treated as positive.
    pub fn swapped(&self) -> Self {
        Self {
            tp: self.tn,
            tn: self.tp,
            fp: self.fn_,
            fn_: self.fp,
        }
    }
}

pub fn confusion(labels: &[u8], predictions: &[u8]) -> Result<ConfusionMatrix> {
    if labels.len() != predictions.len() {
        return Err(Error::DimensionMismatch {
            expected: labels.len(),
            got: predictions.len(),
        });
    }
    let mut cm = ConfusionMatrix::default();
    for (&y, &p) in labels.iter().zip(predictions) {
        match (y, p) {
            (1, 1) => cm.tp += 1,
            (0, 0) => cm.tn += 1,
            (0, 1) => cm.fp += 1,
            (1, 0) => cm.fn_ += 1,
            _ => {
                return Err(Error::DegenerateData(format!(
                    "non-binary label/prediction pair ({y}, {p})"
                )))
            }
        }
    }
    Ok(cm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(confusion(&[1, 0], &[1, 0]).unwrap(), ConfusionMatrix::new(1, 1, 0, 0));
        let cm = confusion(&[1, 1, 0, 0, 0], &[0, 0, 1, 1, 1]).unwrap();
        assert_eq!((cm.tp, cm.tn), (0, 0));
        assert_eq!(cm.total(), 5);
        assert!(confusion(&[1], &[1, 0]).is_err());
        assert!(confusion(&[2], &[1]).is_err());
    }

    #[test]
    fn json_uses_fn_key() {
        let json = serde_json::to_string(&ConfusionMatrix::new(40, 200, 0, 27)).unwrap();
        assert_eq!(json, r#"{"tp":40,"tn":200,"fp":0,"fn":27}"#);
    }
}
