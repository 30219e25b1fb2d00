//! Density-matrix JSON files:
//!
//! ```text
//! {"n_qubits": N, "matrix": [[[re, im], ...], ...]}
//! ```
//!
//! `matrix` holds 2^N rows of 2^N `[re, im]` pairs in row-major order.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use serde::Deserialize;
use thiserror::Error;

use crate::linalg::ComplexMatrix;
use crate::states::{DensityMatrix, StateError, MAX_QUBITS};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON at byte offset {offset} (line {line}, column {column}): {message}")]
    Syntax {
        offset: usize,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("n_qubits = {0} is outside 1..={MAX_QUBITS}")]
    QubitCount(usize),
    #[error("matrix has {found} rows, expected 2^{n_qubits} = {expected}")]
    RowCount {
        n_qubits: usize,
        expected: usize,
        found: usize,
    },
    #[error("matrix row {row} has {found} entries, expected {expected}")]
    RowLength {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("non-finite value at row {row}, column {col}")]
    NonFinite { row: usize, col: usize },
    #[error(transparent)]
    Invalid(#[from] StateError),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDensityFile {
    n_qubits: usize,
    matrix: Vec<Vec<[f64; 2]>>,
}

fn byte_offset(input: &str, line: usize, column: usize) -> usize {
    let line_start: usize = input
        .split_inclusive('\n')
        .take(line.saturating_sub(1))
        .map(str::len)
        .sum();
    (line_start + column.saturating_sub(1)).min(input.len())
}

/// Parses and validates a density-matrix document.
pub fn parse_density_matrix(input: &str) -> Result<DensityMatrix, FormatError> {
    let raw: RawDensityFile = serde_json::from_str(input).map_err(|e| FormatError::Syntax {
        offset: byte_offset(input, e.line(), e.column()),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let n = raw.n_qubits;
    if n == 0 || n > MAX_QUBITS {
        return Err(FormatError::QubitCount(n));
    }
    let dim = 1usize << n;
    if raw.matrix.len() != dim {
        return Err(FormatError::RowCount {
            n_qubits: n,
            expected: dim,
            found: raw.matrix.len(),
        });
    }
    let mut data = Vec::with_capacity(dim * dim);
    for (row, entries) in raw.matrix.iter().enumerate() {
        if entries.len() != dim {
            return Err(FormatError::RowLength {
                row,
                expected: dim,
                found: entries.len(),
            });
        }
        for (col, [re, im]) in entries.iter().copied().enumerate() {
            if !(re.is_finite() && im.is_finite()) {
                return Err(FormatError::NonFinite { row, col });
            }
            data.push(Complex64::new(re, im));
        }
    }
    let matrix = ComplexMatrix::from_row_major(data).expect("dim² entries");
    Ok(DensityMatrix::new(n, matrix)?)
}

pub fn read_density_matrix(path: &Path) -> Result<DensityMatrix, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_density_matrix(&text)
}

/// Serializes with one matrix row per line. Floats use the shortest
/// representation that round-trips.
pub fn to_json_string(rho: &DensityMatrix) -> String {
    let m = rho.matrix();
    let mut out = String::new();
    writeln!(out, "{{\"n_qubits\": {}, \"matrix\": [", rho.n_qubits()).unwrap();
    for i in 0..m.dim() {
        let pairs: Vec<[f64; 2]> = m.row(i).iter().map(|z| [z.re, z.im]).collect();
        let sep = if i + 1 < m.dim() { "," } else { "" };
        writeln!(
            out,
            "  {}{sep}",
            serde_json::to_string(&pairs).expect("finite floats serialize")
        )
        .unwrap();
    }
    out.push_str("]}\n");
    out
}
