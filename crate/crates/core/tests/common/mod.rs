#![allow(dead_code)]

use hcplx::linalg::RationalMatrix;
use hcplx_oracle::Mat;

/// Rows of a matrix in the oracle's representation.
pub fn to_oracle(m: &RationalMatrix) -> Mat {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}
