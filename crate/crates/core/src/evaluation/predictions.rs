//! Prediction exchange format: CSV, one row per test instance with one
//! confidence value per label in label declaration order. A leading header
//! row (any non-numeric field) is skipped.

use std::io::{Read, Write};

use crate::error::{Error, ParseError, Result};
use crate::evaluation::metrics::PredictionSet;
use crate::formats::arff::format_number;

pub fn read_predictions_csv<R: Read>(reader: R, num_labels: usize, threshold: f64) -> Result<PredictionSet> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut rows = Vec::new();
    for (k, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            Error::Parse(ParseError::new(line, 0, e.to_string()))
        })?;
        let line = record.position().map_or(k + 1, |p| p.line() as usize);
        let parsed: Vec<Option<f64>> = record.iter().map(|f| f.parse().ok()).collect();
        if k == 0 && parsed.iter().any(Option::is_none) {
            continue;
        }
        if record.len() != num_labels {
            return Err(ParseError::new(
                line,
                0,
                format!("row has {} values, expected {num_labels} (one per label)", record.len()),
            )
            .into());
        }
        let mut row = Vec::with_capacity(num_labels);
        for (col, (value, field)) in parsed.into_iter().zip(record.iter()).enumerate() {
            match value {
                Some(v) if (0.0..=1.0).contains(&v) => row.push(v),
                _ => {
                    return Err(ParseError::new(
                        line,
                        col + 1,
                        format!("'{field}' is not a confidence value in [0, 1]"),
                    )
                    .into())
                }
            }
        }
        rows.push(row);
    }
    PredictionSet::from_scores(&rows, num_labels, threshold)
}

pub fn write_predictions_csv<W: Write, S: AsRef<str>>(
    out: W,
    label_names: &[S],
    pred: &PredictionSet,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::InvalidArgument(format!("writing predictions: {e}"));
    w.write_record(label_names.iter().map(|s| s.as_ref())).map_err(io)?;
    for i in 0..pred.rows() {
        w.write_record(pred.score_row(i).iter().map(|&s| format_number(s)))
            .map_err(io)?;
    }
    w.flush()
        .map_err(|e| Error::InvalidArgument(format!("writing predictions: {e}")))
}
