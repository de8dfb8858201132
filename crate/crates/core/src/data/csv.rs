//! Strict CSV ingestion and emission.
//!
//! The accepted dialect is deliberately narrow: UTF-8, comma-separated,
//! one header row, one designated label column holding exactly `0` or `1`,
//! every other column a finite numeric literal. There is no quoting; a row
//! with embedded commas simply has the wrong column count and is rejected.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::data::Dataset;
use crate::error::DataError;

/// Load a dataset from a CSV file, taking labels from `label_column`.
///
/// Feature columns keep their header order. Line numbers in errors are
/// 1-based and count the header.
pub fn load_csv(path: &Path, label_column: &str) -> Result<Dataset, DataError> {
    let display = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|e| DataError::Io {
        path: display.clone(),
        reason: e.to_string(),
    })?;

    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| DataError::EmptyBody {
        path: display.clone(),
    })?;
    let columns: Vec<String> = header
        .trim_end_matches('\r')
        .split(',')
        .map(|c| c.trim().to_string())
        .collect();

    let label_positions: Vec<usize> = columns
        .iter()
        .enumerate()
        .filter(|(_, c)| c.as_str() == label_column)
        .map(|(j, _)| j)
        .collect();
    let label_idx = match label_positions.len() {
        0 => {
            return Err(DataError::MissingLabelColumn {
                path: display,
                name: label_column.to_string(),
            })
        }
        1 => label_positions[0],
        _ => {
            return Err(DataError::DuplicateLabelColumn {
                path: display,
                name: label_column.to_string(),
            })
        }
    };

    let feature_names: Vec<String> = columns
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != label_idx)
        .map(|(_, c)| c.clone())
        .collect();
    for (j, name) in feature_names.iter().enumerate() {
        if feature_names[..j].contains(name) {
            return Err(DataError::DuplicateFeatureName {
                path: display,
                name: name.clone(),
            });
        }
    }

    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut labels: Vec<u8> = Vec::new();
    for (idx, raw) in lines {
        let line_no = idx + 1; // enumerate is 0-based, humans count from 1
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != columns.len() {
            return Err(DataError::ColumnCount {
                path: display,
                line: line_no,
                expected: columns.len(),
                found: cells.len(),
            });
        }
        let mut row = Vec::with_capacity(feature_names.len());
        for (j, cell) in cells.iter().enumerate() {
            let cell = cell.trim();
            if j == label_idx {
                // Labels must be literally "0" or "1"; no coercion.
                match cell {
                    "0" => labels.push(0),
                    "1" => labels.push(1),
                    _ => {
                        return Err(DataError::BadLabel {
                            path: display,
                            line: line_no,
                            value: cell.to_string(),
                        })
                    }
                }
            } else {
                let value: f64 = cell.parse().map_err(|_| DataError::BadCell {
                    path: display.clone(),
                    line: line_no,
                    column: columns[j].clone(),
                    value: cell.to_string(),
                })?;
                if !value.is_finite() {
                    return Err(DataError::BadCell {
                        path: display,
                        line: line_no,
                        column: columns[j].clone(),
                        value: cell.to_string(),
                    });
                }
                row.push(value);
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(DataError::EmptyBody { path: display });
    }

    Dataset::new(rows, labels, feature_names)
}

/// Write a dataset as CSV with the label in a trailing column named
/// `label_column`. Floats use the shortest representation that round-trips,
/// so `load_csv` recovers the dataset exactly.
pub fn write_csv(ds: &Dataset, path: &Path, label_column: &str) -> Result<(), DataError> {
    let display = path.display().to_string();
    let io_err = |e: std::io::Error| DataError::Io {
        path: display.clone(),
        reason: e.to_string(),
    };
    let mut out = Vec::new();
    let mut header: Vec<&str> = ds.feature_names().iter().map(|s| s.as_str()).collect();
    header.push(label_column);
    writeln!(out, "{}", header.join(",")).map_err(io_err)?;
    for i in 0..ds.n_rows() {
        let mut cells: Vec<String> = ds.row(i).iter().map(|v| format!("{v}")).collect();
        cells.push(ds.labels()[i].to_string());
        writeln!(out, "{}", cells.join(",")).map_err(io_err)?;
    }
    fs::write(path, out).map_err(io_err)
}
