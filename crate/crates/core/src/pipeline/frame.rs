use std::io::Read;

use crate::data::Samples;
use crate::error::{Error, Result};

/// Named numeric columns plus a binary label (1 = went on backorder).
///
/// `row_ids` carry each row's position in the source file so that subsets
/// can be compared by identity; `binary` marks 0/1 flag columns, which skip
/// the log transform and scaling.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureFrame {
    pub column_names: Vec<String>,
    pub binary: Vec<bool>,
    pub rows: Vec<Vec<f64>>,
    pub labels: Vec<u8>,
    pub row_ids: Vec<usize>,
}

impl FeatureFrame {
    pub fn new(
        column_names: Vec<String>,
        binary: Vec<bool>,
        rows: Vec<Vec<f64>>,
        labels: Vec<u8>,
    ) -> Result<Self> {
        let row_ids = (0..rows.len()).collect();
        let frame = Self {
            column_names,
            binary,
            rows,
            labels,
            row_ids,
        };
        frame.validate()?;
        Ok(frame)
    }

    /// Builds a frame of continuous columns named `c0`, `c1`, ….
    pub fn from_columns(columns: &[Vec<f64>], labels: Vec<u8>) -> Result<Self> {
        let n = labels.len();
        let names = (0..columns.len()).map(|i| format!("c{i}")).collect();
        let rows = (0..n).map(|r| columns.iter().map(|c| c[r]).collect()).collect();
        Self::new(names, vec![false; columns.len()], rows, labels)
    }

    pub fn validate(&self) -> Result<()> {
        let width = self.column_names.len();
        if self.binary.len() != width {
            return Err(Error::DimensionMismatch {
                expected: width,
                got: self.binary.len(),
            });
        }
        if self.labels.len() != self.rows.len() || self.row_ids.len() != self.rows.len() {
            return Err(Error::DimensionMismatch {
                expected: self.rows.len(),
                got: self.labels.len(),
            });
        }
        if let Some(row) = self.rows.iter().find(|r| r.len() != width) {
            return Err(Error::DimensionMismatch {
                expected: width,
                got: row.len(),
            });
        }
        if self.labels.iter().any(|&y| y > 1) {
            return Err(Error::DegenerateData("labels must be 0 or 1".into()));
        }
        Ok(())
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.column_names.len()
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.column_names.iter().position(|c| c == name)
    }

    /// `[negatives, positives]`.
    pub fn class_counts(&self) -> [usize; 2] {
        let pos = self.labels.iter().filter(|&&y| y == 1).count();
        [self.n_rows() - pos, pos]
    }

    /// Rows at `indices`, in the given order.
    pub fn select_rows(&self, indices: &[usize]) -> FeatureFrame {
        FeatureFrame {
            column_names: self.column_names.clone(),
            binary: self.binary.clone(),
            rows: indices.iter().map(|&i| self.rows[i].clone()).collect(),
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
            row_ids: indices.iter().map(|&i| self.row_ids[i]).collect(),
        }
    }

    pub fn retain_rows<F: FnMut(&[f64]) -> bool>(&mut self, mut keep: F) -> usize {
        let mask: Vec<bool> = self.rows.iter().map(|r| keep(r)).collect();
        let before = self.n_rows();
        let kept: Vec<usize> = (0..before).filter(|&i| mask[i]).collect();
        *self = self.select_rows(&kept);
        before - self.n_rows()
    }

    /// Columns at `indices`, in the given order.
    pub fn select_columns(&self, indices: &[usize]) -> FeatureFrame {
        FeatureFrame {
            column_names: indices.iter().map(|&j| self.column_names[j].clone()).collect(),
            binary: indices.iter().map(|&j| self.binary[j]).collect(),
            rows: self
                .rows
                .iter()
                .map(|r| indices.iter().map(|&j| r[j]).collect())
                .collect(),
            labels: self.labels.clone(),
            row_ids: self.row_ids.clone(),
        }
    }

    pub fn to_samples(&self) -> Samples {
        Samples {
            features: self.rows.clone(),
            labels: self.labels.clone(),
        }
    }

    /// Reads the format written by [`FeatureFrame::to_csv`]: numeric feature
    /// columns plus a 0/1 `label` column, which may appear anywhere.
    pub fn read_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let headers: Vec<String> = rdr.headers()?.iter().map(str::to_owned).collect();
        let label_idx = headers
            .iter()
            .position(|h| h == "label")
            .ok_or_else(|| Error::MissingColumn("label".into()))?;
        let column_names: Vec<String> = headers
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != label_idx)
            .map(|(_, h)| h.clone())
            .collect();
        let mut rows = Vec::new();
        let mut labels = Vec::new();
        for (r, record) in rdr.records().enumerate() {
            let record = record?;
            if record.len() != headers.len() {
                return Err(Error::DimensionMismatch {
                    expected: headers.len(),
                    got: record.len(),
                });
            }
            let parse_err = |j: usize| Error::Parse {
                column: headers[j].clone(),
                row: r + 1,
                value: record[j].to_owned(),
            };
            let mut row = Vec::with_capacity(column_names.len());
            for j in (0..headers.len()).filter(|&j| j != label_idx) {
                let v: f64 = record[j].parse().map_err(|_| parse_err(j))?;
                if !v.is_finite() {
                    return Err(parse_err(j));
                }
                row.push(v);
            }
            labels.push(match &record[label_idx] {
                "0" => 0,
                "1" => 1,
                _ => return Err(parse_err(label_idx)),
            });
            rows.push(row);
        }
        let width = column_names.len();
        Self::new(column_names, vec![false; width], rows, labels)
    }

    /// CSV with the feature columns followed by a `label` column.
    pub fn to_csv(&self) -> String {
        let mut out = self.column_names.join(",");
        out.push_str(",label\n");
        for (row, y) in self.rows.iter().zip(&self.labels) {
            for v in row {
                out.push_str(&v.to_string());
                out.push(',');
            }
            out.push_str(&y.to_string());
            out.push('\n');
        }
        out
    }
}
