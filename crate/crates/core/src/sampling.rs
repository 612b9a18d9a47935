//! Seeded random inputs for stress tests and demo harnesses.

use crate::capacity::Capacity;
use crate::phase_space::HermitianPsd;
use crate::{CMatrix, Complex};
use rand::Rng;

/// Random complex matrix with entries uniform in the given half-open range.
pub fn random_complex_matrix(rng: &mut impl Rng, d: usize, range: std::ops::Range<f64>) -> CMatrix {
    CMatrix::from_fn(d, d, |_, _| {
        Complex::new(
            rng.random_range(range.clone()),
            rng.random_range(range.clone()),
        )
    })
}

/// Random PSD operator A·A† with A uniform in [-1, 1).
pub fn random_psd(rng: &mut impl Rng, d: usize) -> HermitianPsd {
    let a = random_complex_matrix(rng, d, -1.0..1.0);
    HermitianPsd::new(&a * a.adjoint()).expect("A A† is PSD")
}

/// Random Hermitian (not necessarily PSD) matrix, entries O(1).
pub fn random_hermitian(rng: &mut impl Rng, d: usize) -> CMatrix {
    let a = random_complex_matrix(rng, d, -1.0..1.0);
    let mut h = &a + a.adjoint();
    h *= Complex::new(0.5, 0.0);
    h
}

/// Random monotone capacity: each subset gains a uniform share of its
/// remaining headroom above the largest contained subset.
pub fn random_capacity(rng: &mut impl Rng, n: usize) -> Capacity<f64> {
    let size = 1usize << n;
    let mut values = vec![0.0f64; size];
    for mask in 1..size {
        let mut floor: f64 = 0.0;
        for i in 0..n {
            let bit = 1usize << i;
            if mask & bit != 0 {
                floor = floor.max(values[mask ^ bit]);
            }
        }
        values[mask] = floor + rng.random_range(0.0..1.0) * (1.0 - floor);
    }
    values[size - 1] = 1.0;
    Capacity::new(n, values).expect("construction is monotone")
}
