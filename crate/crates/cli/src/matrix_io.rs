//! JSON file formats for Hermitian matrices and fiducial vectors.

use anyhow::{bail, Context, Result};
use choquetq_core::{CMatrix, CVector, Complex, FiducialVector, MatrixJson};
use serde::{Deserialize, Serialize};
use std::path::Path;

/// On-disk Hermitian matrix: dimension plus real/imaginary entry grids.
/// Assembly symmetrizes and reports the largest asymmetry found.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixFile {
    pub d: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl MatrixFile {
    pub fn from_matrix(m: &CMatrix) -> Self {
        let json = MatrixJson::from(m);
        Self {
            d: m.nrows(),
            re: json.re,
            im: json.im,
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading matrix file {}", path.display()))?;
        let file: MatrixFile =
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        file.validate()?;
        Ok(file)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, serde_json::to_string_pretty(self)?)
            .with_context(|| format!("writing {}", path.display()))?;
        Ok(())
    }

    fn validate(&self) -> Result<()> {
        if self.re.len() != self.d
            || self.im.len() != self.d
            || self.re.iter().any(|r| r.len() != self.d)
            || self.im.iter().any(|r| r.len() != self.d)
        {
            bail!("matrix file claims d = {} but grids disagree", self.d);
        }
        Ok(())
    }

    /// The raw (possibly slightly asymmetric) matrix.
    pub fn matrix(&self) -> CMatrix {
        CMatrix::from_fn(self.d, self.d, |i, j| Complex::new(self.re[i][j], self.im[i][j]))
    }

    /// Symmetrized matrix plus the largest asymmetry |m - m†| encountered.
    pub fn hermitian_matrix(&self) -> (CMatrix, f64) {
        let m = self.matrix();
        let asymmetry = (&m - m.adjoint()).camax();
        let sym = (&m + m.adjoint()) * Complex::new(0.5, 0.0);
        (sym, asymmetry)
    }
}

/// On-disk fiducial vector: {"d": 3, "re": [...], "im": [...]}.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FiducialFile {
    pub d: usize,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl FiducialFile {
    pub fn from_fiducial(eta: &FiducialVector) -> Self {
        Self {
            d: eta.d(),
            re: eta.entries().iter().map(|c| c.re).collect(),
            im: eta.entries().iter().map(|c| c.im).collect(),
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading fiducial file {}", path.display()))?;
        let file: FiducialFile =
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        if file.re.len() != file.d || file.im.len() != file.d {
            bail!("fiducial file claims d = {} but has {} entries", file.d, file.re.len());
        }
        Ok(file)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, serde_json::to_string_pretty(self)?)
            .with_context(|| format!("writing {}", path.display()))?;
        Ok(())
    }

    /// Normalizes on ingest; rejects the zero vector.
    pub fn fiducial(&self) -> Result<FiducialVector> {
        let v = CVector::from_fn(self.d, |i, _| Complex::new(self.re[i], self.im[i]));
        Ok(FiducialVector::normalized(v)?)
    }
}
