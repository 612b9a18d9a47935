//! The bundled benchmark operators and capacities used by the reproduction
//! subcommands and the acceptance suite.

use choquetq_core::capacity::Capacity;
use choquetq_core::{CMatrix, Complex};
use num_rational::Rational64;

fn cm(rows: [[(f64, f64); 3]; 3]) -> CMatrix {
    CMatrix::from_fn(3, 3, |i, j| Complex::new(rows[i][j].0, rows[i][j].1))
}

/// Base operator of the noise robustness study (all r_i = 0).
pub fn noise_base() -> CMatrix {
    cm([
        [(8.0, 0.0), (1.0, 0.0), (-5.0, 0.0)],
        [(1.0, 0.0), (4.0, 0.0), (2.0, 0.0)],
        [(-5.0, 0.0), (2.0, 0.0), (7.0, 0.0)],
    ])
}

/// Operator of the partition-function worked example (complex off-diagonal).
pub fn section8_matrix() -> CMatrix {
    cm([
        [(8.0, 0.0), (1.0, 1.0), (-5.0, 0.0)],
        [(1.0, -1.0), (4.0, 0.0), (2.0, 0.0)],
        [(-5.0, 0.0), (2.0, 0.0), (7.0, 0.0)],
    ])
}

/// The affine pair (free part, interaction part) of the crossing study.
pub fn crossing_pair() -> (CMatrix, CMatrix) {
    (
        cm([
            [(6.0, 0.0), (0.0, 0.0), (0.0, 1.0)],
            [(0.0, 0.0), (12.0, 0.0), (0.0, 0.0)],
            [(0.0, -1.0), (0.0, 0.0), (15.0, 0.0)],
        ]),
        cm([
            [(7.0, 0.0), (3.0, 0.0), (6.0, 0.0)],
            [(3.0, 0.0), (7.0, 0.0), (0.0, 0.0)],
            [(6.0, 0.0), (0.0, 0.0), (7.0, 0.0)],
        ]),
    )
}

/// Nondegenerate ground-state Hamiltonian, nonlinear in the coupling λ.
pub fn ground_state_hamiltonian(lambda: f64) -> CMatrix {
    let l2 = lambda * lambda;
    cm([
        [(7.0, 0.0), (l2, 3.0 * lambda), (2.0 * l2, 6.0 * lambda)],
        [(l2, -3.0 * lambda), (9.0, 0.0), (5.0 * lambda + 4.0 * l2, 0.0)],
        [
            (2.0 * l2, -6.0 * lambda),
            (5.0 * lambda + 4.0 * l2, 0.0),
            (11.0, 0.0),
        ],
    ])
}

/// Hamiltonian with a two-fold ground degeneracy at λ = 0; the coupling may
/// be complex (it enters the (0,1) entry, conjugated below the diagonal).
///
/// The off-diagonal magnitudes are exactly √2, √3, √6 so that the λ = 0
/// matrix is 0.5·1 + v·vᵀ with v = (1, √2, √3); its spectrum is then exactly
/// {0.5, 0.5, 6.5}.
pub fn degenerate_hamiltonian(lambda: Complex) -> CMatrix {
    let s2 = 2.0_f64.sqrt();
    let s3 = 3.0_f64.sqrt();
    let s6 = 6.0_f64.sqrt();
    let top = Complex::new(s2, 0.0) + lambda;
    CMatrix::from_fn(3, 3, |i, j| match (i, j) {
        (0, 0) => Complex::new(1.5, 0.0),
        (1, 1) => Complex::new(2.5, 0.0),
        (2, 2) => Complex::new(3.5, 0.0),
        (0, 1) => top,
        (1, 0) => top.conj(),
        (0, 2) | (2, 0) => Complex::new(s3, 0.0),
        (1, 2) | (2, 1) => Complex::new(s6, 0.0),
        _ => unreachable!(),
    })
}

/// Marks of the four assessment candidates over the three modules.
pub fn assessment_marks() -> [[Rational64; 3]; 4] {
    let r = |x: i64| Rational64::from_integer(x);
    [
        [r(70), r(70), r(30)],
        [r(90), r(50), r(80)],
        [r(50), r(90), r(70)],
        [r(70), r(60), r(50)],
    ]
}

/// The assessment capacity: μ(1)=μ(2)=0.3, μ(3)=0.2, μ(12)=1,
/// μ(13)=μ(23)=0.4.
pub fn assessment_capacity() -> Capacity<Rational64> {
    let r = Rational64::new;
    let mut v = vec![Rational64::from_integer(0); 8];
    v[0b001] = r(3, 10);
    v[0b010] = r(3, 10);
    v[0b100] = r(1, 5);
    v[0b011] = r(1, 1);
    v[0b101] = r(2, 5);
    v[0b110] = r(2, 5);
    v[0b111] = r(1, 1);
    Capacity::new(3, v).expect("assessment capacity is monotone")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_hamiltonian_spectrum_at_zero() {
        let h = degenerate_hamiltonian(Complex::new(0.0, 0.0));
        let mut ev: Vec<f64> = h.symmetric_eigenvalues().iter().cloned().collect();
        ev.sort_by(f64::total_cmp);
        assert!((ev[0] - 0.5).abs() < 1e-12);
        assert!((ev[1] - 0.5).abs() < 1e-12);
        assert!((ev[2] - 6.5).abs() < 1e-12);
    }

    #[test]
    fn hamiltonians_are_hermitian() {
        for l in [-0.3, 0.0, 0.8] {
            let h = ground_state_hamiltonian(l);
            assert!((&h - h.adjoint()).norm() < 1e-14);
        }
        for l in [Complex::new(0.01, 0.0), Complex::new(0.0, 0.01)] {
            let h = degenerate_hamiltonian(l);
            assert!((&h - h.adjoint()).norm() < 1e-14);
        }
    }
}
