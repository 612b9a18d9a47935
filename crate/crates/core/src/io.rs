//! Serde helpers for complex matrices, shared by the file formats and the
//! report serializers.

use crate::{CMatrix, Complex};
use serde::{Deserialize, Serialize};

/// A complex matrix split into real and imaginary entry grids.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl From<&CMatrix> for MatrixJson {
    fn from(m: &CMatrix) -> Self {
        let (rows, cols) = m.shape();
        let mut re = vec![vec![0.0; cols]; rows];
        let mut im = vec![vec![0.0; cols]; rows];
        for i in 0..rows {
            for j in 0..cols {
                re[i][j] = m[(i, j)].re;
                im[i][j] = m[(i, j)].im;
            }
        }
        Self { re, im }
    }
}

impl MatrixJson {
    /// Rebuilds the dense matrix; `im` may be omitted row-wise for real input.
    pub fn to_matrix(&self) -> Option<CMatrix> {
        let rows = self.re.len();
        if rows == 0 || self.im.len() != rows {
            return None;
        }
        let cols = self.re[0].len();
        if self.re.iter().any(|r| r.len() != cols) || self.im.iter().any(|r| r.len() != cols) {
            return None;
        }
        Some(CMatrix::from_fn(rows, cols, |i, j| {
            Complex::new(self.re[i][j], self.im[i][j])
        }))
    }
}
