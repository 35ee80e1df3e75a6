//! JSON and text forms of matrices.

use nilcommute_core::algebra::{MultiPoly, PrimeField, Variables};
use nilcommute_core::matrix::Matrix;
use nilcommute_core::upsilon::{IndexPair, IntPoly};
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, HarnessResult};

/// Row-major integer polynomial matrix with canonical entry text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyMatrixJson {
    pub ring: String,
    pub vars: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl PolyMatrixJson {
    pub fn from_matrix(vars: &Variables, m: &Matrix<IntPoly>) -> Self {
        PolyMatrixJson {
            ring: "Z".into(),
            vars: vars.names().to_vec(),
            rows: m.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect(),
        }
    }

    pub fn to_matrix(&self) -> HarnessResult<Matrix<IntPoly>> {
        if self.ring != "Z" {
            return Err(HarnessError::Usage(format!("expected ring Z, found {:?}", self.ring)));
        }
        let vars = Variables::new(self.vars.clone());
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|s| MultiPoly::parse(vars.clone(), s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| HarnessError::Usage(e.to_string()))?;
        Matrix::from_rows(rows).map_err(|e| HarnessError::Usage(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> HarnessResult<Self> {
        serde_json::from_str(text).map_err(|e| HarnessError::Usage(e.to_string()))
    }
}

/// Row-major matrix over `F_p`, entries in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldMatrixJson {
    pub ring: String,
    pub rows: Vec<Vec<u64>>,
}

impl FieldMatrixJson {
    pub fn from_matrix(field: &PrimeField, m: &Matrix<u64>) -> Self {
        FieldMatrixJson { ring: format!("F_{}", field.modulus()), rows: m.to_rows() }
    }

    pub fn to_matrix(&self, field: &PrimeField) -> HarnessResult<Matrix<u64>> {
        if self.ring != format!("F_{}", field.modulus()) {
            return Err(HarnessError::Usage(format!("ring {:?} does not match F_{}", self.ring, field.modulus())));
        }
        if self.rows.iter().flatten().any(|&x| x >= field.modulus()) {
            return Err(HarnessError::Usage("entry outside [0, p)".into()));
        }
        Matrix::from_rows(self.rows.clone()).map_err(|e| HarnessError::Usage(e.to_string()))
    }
}

/// Column-aligned text, one matrix row per line, with an optional header
/// line of column labels.
pub fn paper_layout(m: &Matrix<IntPoly>, labels: Option<&[IndexPair]>) -> String {
    let mut cells: Vec<Vec<String>> = Vec::new();
    if let Some(l) = labels {
        cells.push(l.iter().map(ToString::to_string).collect());
    }
    cells.extend(m.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()));
    let widths: Vec<usize> =
        (0..m.cols()).map(|c| cells.iter().map(|r| r[c].chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in &cells {
        let line: Vec<String> = r.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}
