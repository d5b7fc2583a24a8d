//! Matrix documents: `{"n": 2, "rows": [[[re, im], [re, im]], ...]}`.

use std::path::Path;

use serde::{Deserialize, Serialize};
use specball::{CMatrix, C64};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDocument {
    pub n: usize,
    pub rows: Vec<Vec<[f64; 2]>>,
}

impl MatrixDocument {
    pub fn to_matrix(&self) -> Result<CMatrix, CliError> {
        let n = self.n;
        if n == 0 {
            return Err(CliError::Parse("n must be at least 1".into()));
        }
        if self.rows.len() != n {
            return Err(CliError::Parse(format!(
                "rows: expected {n} rows, found {}",
                self.rows.len()
            )));
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in self.rows.iter().enumerate() {
            if row.len() != n {
                return Err(CliError::Parse(format!(
                    "rows[{i}]: expected {n} entries, found {}",
                    row.len()
                )));
            }
            for (j, &[re, im]) in row.iter().enumerate() {
                if !re.is_finite() || !im.is_finite() {
                    return Err(CliError::Parse(format!("rows[{i}][{j}]: non-finite entry")));
                }
                entries.push(C64::new(re, im));
            }
        }
        CMatrix::from_rows(n, &entries).map_err(|e| CliError::Parse(e.to_string()))
    }
}

pub fn emit_matrix(a: &CMatrix) -> MatrixDocument {
    let n = a.dim();
    let rows = (0..n)
        .map(|i| (0..n).map(|j| [a[(i, j)].re, a[(i, j)].im]).collect())
        .collect();
    MatrixDocument { n, rows }
}

pub fn parse_matrix(text: &str) -> Result<CMatrix, CliError> {
    let doc: MatrixDocument =
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    doc.to_matrix()
}

/// Reads a matrix document from a file, or from standard input for `-`.
pub fn read_matrix(path: &Path) -> Result<CMatrix, CliError> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
    .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse_matrix(&text).map_err(|e| match e {
        CliError::Parse(msg) => CliError::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}
