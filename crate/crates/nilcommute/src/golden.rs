//! Stored matrices that computed results must reproduce byte for byte.

use nilcommute_core::matrix::Matrix;
use nilcommute_core::upsilon::{build_phi, build_psi, IntPoly};
use serde::Serialize;

use crate::error::HarnessResult;
use crate::formats::PolyMatrixJson;

pub const PHI_7_3: &str = include_str!("../golden/phi_7_3.json");
pub const PSI_7_4: &str = include_str!("../golden/psi_7_4.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub row: usize,
    pub col: usize,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoldenCheck {
    pub name: String,
    /// The rendered computed matrix equals the stored file.
    pub byte_exact: bool,
    /// The parsed stored matrix equals the computed one.
    pub symbolic: bool,
    pub mismatches: Vec<Mismatch>,
}

impl GoldenCheck {
    pub fn passed(&self) -> bool {
        self.byte_exact && self.symbolic
    }
}

pub fn compare(name: &str, golden: &str, computed: &Matrix<IntPoly>) -> HarnessResult<GoldenCheck> {
    let stored = PolyMatrixJson::from_json(golden)?;
    let expected = stored.to_matrix()?;
    let vars = expected.get(0, 0).vars().clone();
    let computed = computed.try_map(|e| e.embed(&vars))?;
    let rendered = PolyMatrixJson::from_matrix(&vars, &computed);
    let mut mismatches = Vec::new();
    if expected.rows() == computed.rows() && expected.cols() == computed.cols() {
        for r in 0..expected.rows() {
            for c in 0..expected.cols() {
                if expected.get(r, c) != computed.get(r, c) {
                    mismatches.push(Mismatch {
                        row: r + 1,
                        col: c + 1,
                        expected: expected.get(r, c).to_string(),
                        actual: computed.get(r, c).to_string(),
                    });
                }
            }
        }
    }
    Ok(GoldenCheck {
        name: name.to_string(),
        byte_exact: rendered.to_json() == golden,
        symbolic: expected == computed,
        mismatches,
    })
}

pub fn check_phi_7_3() -> HarnessResult<GoldenCheck> {
    compare("phi(7,3)", PHI_7_3, &build_phi(7, 3)?)
}

pub fn check_psi_7_4() -> HarnessResult<GoldenCheck> {
    compare("psi(7,4)", PSI_7_4, &build_psi(7, 4)?)
}
