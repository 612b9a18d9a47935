//! Ground-eigenspace extraction for Hermitian Hamiltonians.

use anyhow::{bail, Result};
use choquetq_core::phase_space::HermitianPsd;
use choquetq_core::{CMatrix, Complex};

/// Ground eigenspace of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct GroundState {
    /// All eigenvalues, ascending.
    pub eigenvalues: Vec<f64>,
    /// Projector onto the eigenspace of eigenvalues within `degeneracy_tol`
    /// of the minimum.
    pub projector: CMatrix,
    /// Dimension k of that eigenspace.
    pub multiplicity: usize,
    /// Ground eigenvector when the ground level is simple.
    pub vector: Option<choquetq_core::CVector>,
}

impl GroundState {
    /// (1/k)·P, the trace-one operator used for phase-space analysis of a
    /// k-fold degenerate ground level.
    pub fn analysis_operator(&self) -> HermitianPsd {
        let scaled = &self.projector * Complex::new(1.0 / self.multiplicity as f64, 0.0);
        HermitianPsd::new(scaled).expect("scaled projector is PSD")
    }
}

/// Diagonalizes H and projects onto the (possibly degenerate) ground level.
pub fn ground_projector(hamiltonian: &CMatrix, degeneracy_tol: f64) -> Result<GroundState> {
    let scale = hamiltonian.norm().max(1.0);
    if (hamiltonian - hamiltonian.adjoint()).norm() > 1e-10 * scale {
        bail!("ground_projector requires a Hermitian matrix");
    }
    let eig = hamiltonian.clone().symmetric_eigen();
    let d = hamiltonian.nrows();
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eigenvalues: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();

    let ground = eigenvalues[0];
    let mut projector = CMatrix::zeros(d, d);
    let mut multiplicity = 0;
    for &k in &order {
        if eig.eigenvalues[k] - ground <= degeneracy_tol {
            let col = eig.eigenvectors.column(k);
            projector += col * col.adjoint();
            multiplicity += 1;
        }
    }
    let vector = if multiplicity == 1 {
        Some(eig.eigenvectors.column(order[0]).into_owned())
    } else {
        None
    };
    Ok(GroundState {
        eigenvalues,
        projector,
        multiplicity,
        vector,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenarios::degenerate_hamiltonian;

    #[test]
    fn diagonal_matrix_ground_projector() {
        let h = CMatrix::from_fn(3, 3, |i, j| {
            if i == j {
                Complex::new([1.0, 2.0, 3.0][i], 0.0)
            } else {
                Complex::new(0.0, 0.0)
            }
        });
        let g = ground_projector(&h, 1e-6).unwrap();
        assert_eq!(g.multiplicity, 1);
        let mut expected = CMatrix::zeros(3, 3);
        expected[(0, 0)] = Complex::new(1.0, 0.0);
        assert!((g.projector - expected).norm() < 1e-12);
        assert!(g.vector.is_some());
    }

    #[test]
    fn degenerate_level_detected_at_zero_coupling() {
        let g = ground_projector(&degenerate_hamiltonian(Complex::new(0.0, 0.0)), 1e-6).unwrap();
        assert_eq!(g.multiplicity, 2);
        assert!((g.eigenvalues[0] - 0.5).abs() < 5e-3);
        assert!((g.eigenvalues[1] - 0.5).abs() < 5e-3);
        assert!((g.eigenvalues[2] - 6.5).abs() < 5e-3);
        // rank-2 projector, trace-one analysis operator
        assert!((g.projector.trace().re - 2.0).abs() < 1e-10);
        assert!((g.analysis_operator().trace() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn degeneracy_split_at_small_coupling() {
        let g = ground_projector(&degenerate_hamiltonian(Complex::new(0.01, 0.0)), 1e-6).unwrap();
        assert_eq!(g.multiplicity, 1);
        assert!((g.eigenvalues[0] - 0.490).abs() < 5e-3);
        assert!((g.eigenvalues[1] - 0.505).abs() < 5e-3);
        assert!((g.eigenvalues[2] - 6.505).abs() < 5e-3);
    }

    #[test]
    fn non_hermitian_rejected() {
        let mut h = degenerate_hamiltonian(Complex::new(0.0, 0.0));
        h[(0, 1)] += Complex::new(0.5, 0.0);
        assert!(ground_projector(&h, 1e-6).is_err());
    }
}
