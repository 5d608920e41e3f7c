//! JSON matrices: an array of rows, each entry `[re, im]` (a bare number is
//! read as a real entry).

use std::path::Path;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::numeric::{c, CMatrix, C64};

#[derive(Deserialize)]
#[serde(untagged)]
enum Entry {
    Pair([f64; 2]),
    Real(f64),
}

impl Entry {
    fn value(&self) -> C64 {
        match *self {
            Entry::Pair([re, im]) => c(re, im),
            Entry::Real(re) => c(re, 0.0),
        }
    }
}

/// 1-based line and column of the opening bracket of row `row`.
fn row_position(text: &str, row: usize) -> (usize, usize) {
    let (mut line, mut col, mut depth, mut seen) = (1, 0, 0usize, 0usize);
    for ch in text.chars() {
        col += 1;
        match ch {
            '\n' => {
                line += 1;
                col = 0;
            }
            '[' => {
                depth += 1;
                if depth == 2 {
                    if seen == row {
                        return (line, col);
                    }
                    seen += 1;
                }
            }
            ']' => depth = depth.saturating_sub(1),
            _ => {}
        }
    }
    (line, col.max(1))
}

pub fn parse_matrix(text: &str) -> Result<CMatrix> {
    let rows: Vec<Vec<Entry>> = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let n = rows.len();
    if n == 0 {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: "empty matrix".into(),
        });
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            let (line, column) = row_position(text, i);
            return Err(Error::Parse {
                line,
                column,
                message: format!("row {} has {} entries; a square {n}×{n} matrix is expected", i + 1, row.len()),
            });
        }
    }
    Ok(CMatrix::from_fn(n, n, |i, j| rows[i][j].value()))
}

pub fn read_matrix(path: &Path) -> Result<CMatrix> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    parse_matrix(&text)
}

pub fn matrix_to_json(m: &CMatrix) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| Value::Array((0..m.ncols()).map(|j| json!([m[(i, j)].re, m[(i, j)].im])).collect()))
            .collect(),
    )
}

pub fn write_matrix(m: &CMatrix) -> String {
    matrix_to_json(m).to_string()
}
