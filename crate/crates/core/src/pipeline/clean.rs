use std::io::Read;

use super::frame::FeatureFrame;
use crate::error::{Error, Result};

/// Cell values treated as missing (compared after trimming, case-insensitively).
pub const MISSING_MARKERS: &[&str] = &["", "?", "na", "nan", "null"];

/// Accepted names for the target column, in lookup order.
pub const LABEL_ALIASES: &[&str] = &["went_on_backorder", "went_to_backorder"];

const IDENTIFIER_COLUMN: &str = "sku";
const PERFORMANCE_COLUMNS: &[&str] = &[
    "perf_6_month_avg",
    "perf_12_month_avg",
    "perf_6_months_avg",
    "perf_12_months_avg",
];

/// Unparsed CSV contents.
#[derive(Debug, Clone, PartialEq)]
pub struct RawTable {
    pub headers: Vec<String>,
    pub records: Vec<Vec<String>>,
}

/// Reads a header-first CSV. Short records are kept and padded with empty
/// cells so they are dropped as missing during cleaning.
pub fn read_raw_csv<R: Read>(reader: R) -> Result<RawTable> {
    let mut rdr = csv::ReaderBuilder::new()
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers: Vec<String> = rdr.headers()?.iter().map(str::to_owned).collect();
    let mut records = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let mut cells: Vec<String> = rec.iter().map(str::to_owned).collect();
        cells.resize(headers.len(), String::new());
        records.push(cells);
    }
    Ok(RawTable { headers, records })
}

fn is_missing(cell: &str) -> bool {
    let t = cell.trim();
    MISSING_MARKERS.iter().any(|m| t.eq_ignore_ascii_case(m))
}

fn yes_no(cell: &str) -> Option<f64> {
    let t = cell.trim();
    if t.eq_ignore_ascii_case("yes") {
        Some(1.0)
    } else if t.eq_ignore_ascii_case("no") {
        Some(0.0)
    } else {
        None
    }
}

fn parse_label(cell: &str, row: usize, column: &str) -> Result<u8> {
    if let Some(v) = yes_no(cell) {
        return Ok(v as u8);
    }
    match cell.trim().parse::<f64>() {
        Ok(0.0) => Ok(0),
        Ok(1.0) => Ok(1),
        _ => Err(Error::Parse {
            column: column.to_owned(),
            row,
            value: cell.to_owned(),
        }),
    }
}

/// Turns the raw table into a numeric frame.
///
/// Drops the `sku` identifier, rows holding any missing marker or a
/// non-finite number, and rows with a negative performance average. Yes/No
/// columns become 0/1 flags.
pub fn clean(raw: &RawTable, label_column: Option<&str>) -> Result<FeatureFrame> {
    let label_idx = match label_column {
        Some(name) => raw
            .headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::MissingColumn(name.to_owned()))?,
        None => LABEL_ALIASES
            .iter()
            .find_map(|alias| raw.headers.iter().position(|h| h == alias))
            .ok_or_else(|| Error::MissingColumn(LABEL_ALIASES[0].to_owned()))?,
    };
    let feature_idx: Vec<usize> = (0..raw.headers.len())
        .filter(|&j| j != label_idx && raw.headers[j] != IDENTIFIER_COLUMN)
        .collect();

    let complete: Vec<(usize, &Vec<String>)> = raw
        .records
        .iter()
        .enumerate()
        .filter(|(_, rec)| {
            !is_missing(&rec[label_idx]) && feature_idx.iter().all(|&j| !is_missing(&rec[j]))
        })
        .collect();

    let binary: Vec<bool> = feature_idx
        .iter()
        .map(|&j| {
            complete.iter().any(|(_, rec)| yes_no(&rec[j]).is_some())
        })
        .collect();

    let mut rows = Vec::with_capacity(complete.len());
    let mut labels = Vec::with_capacity(complete.len());
    let mut row_ids = Vec::with_capacity(complete.len());
    for (r, rec) in &complete {
        let mut values = Vec::with_capacity(feature_idx.len());
        let mut finite = true;
        for (&j, &is_flag) in feature_idx.iter().zip(&binary) {
            let cell = &rec[j];
            let parse_err = || Error::Parse {
                column: raw.headers[j].clone(),
                row: r + 1,
                value: cell.clone(),
            };
            let v = if is_flag {
                yes_no(cell).ok_or_else(parse_err)?
            } else {
                cell.trim().parse::<f64>().map_err(|_| parse_err())?
            };
            finite &= v.is_finite();
            values.push(v);
        }
        if !finite {
            continue;
        }
        labels.push(parse_label(&rec[label_idx], r + 1, &raw.headers[label_idx])?);
        rows.push(values);
        row_ids.push(*r);
    }

    let mut frame = FeatureFrame {
        column_names: feature_idx.iter().map(|&j| raw.headers[j].clone()).collect(),
        binary,
        rows,
        labels,
        row_ids,
    };
    let perf: Vec<usize> = PERFORMANCE_COLUMNS
        .iter()
        .filter_map(|c| frame.column_index(c))
        .collect();
    let dropped = frame.retain_rows(|row| perf.iter().all(|&j| row[j] >= 0.0));
    log::info!(
        "cleaning kept {} of {} rows ({} with negative performance averages)",
        frame.n_rows(),
        raw.records.len(),
        dropped
    );
    Ok(frame)
}
