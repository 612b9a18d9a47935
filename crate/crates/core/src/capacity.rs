//! Classical capacities on a finite ground set, Möbius transforms, rank- and
//! Möbius-based Choquet integrals, and comonotonicity of functions.
//!
//! Everything here is generic over the scalar: `f64` for numeric work and
//! `num_rational::Rational64` when exact arithmetic is wanted (see the
//! `CapacityF64` / `CapacityRational` aliases at the crate root). Subsets of
//! the ground set {1..N} are bitmasks, with element i mapped to bit i-1.

use crate::error::{Error, Result};
use num_traits::Signed;

/// Scalar requirements for capacity arithmetic: a signed ring with ordering.
pub trait CapacityScalar: Signed + PartialOrd + Clone {}
impl<T: Signed + PartialOrd + Clone> CapacityScalar for T {}

/// Largest supported ground set (2^N enumeration).
pub const MAX_GROUND_SET: usize = 20;

/// A monotone set function with μ(∅) = 0 and μ(Ω) = 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Capacity<T> {
    n: usize,
    values: Vec<T>,
}

impl<T: CapacityScalar> Capacity<T> {
    /// Validates μ(∅) = 0, μ(Ω) = 1 and monotonicity (exhaustive for N ≤ 16).
    pub fn new(n: usize, values: Vec<T>) -> Result<Self> {
        if n == 0 || n > MAX_GROUND_SET {
            return Err(Error::GroundSetTooLarge(n));
        }
        let size = 1usize << n;
        if values.len() != size {
            return Err(Error::InvalidCapacity(format!(
                "expected {size} subset values, got {}",
                values.len()
            )));
        }
        if !values[0].is_zero() {
            return Err(Error::InvalidCapacity("mu(empty) != 0".into()));
        }
        if !values[size - 1].is_one() {
            return Err(Error::InvalidCapacity("mu(ground set) != 1".into()));
        }
        if n <= 16 {
            #[allow(clippy::needless_range_loop)]
            for mask in 1..size {
                for i in 0..n {
                    let bit = 1usize << i;
                    if mask & bit != 0 && values[mask] < values[mask ^ bit] {
                        return Err(Error::InvalidCapacity(format!(
                            "not monotone at subset {mask:#b} removing element {}",
                            i + 1
                        )));
                    }
                }
            }
        }
        Ok(Self { n, values })
    }

    /// Additive capacity from singleton weights (must sum to 1).
    pub fn additive(weights: &[T]) -> Result<Self> {
        let n = weights.len();
        if n == 0 || n > MAX_GROUND_SET {
            return Err(Error::GroundSetTooLarge(n));
        }
        let size = 1usize << n;
        let mut values = vec![T::zero(); size];
        for (mask, slot) in values.iter_mut().enumerate().skip(1) {
            let mut s = T::zero();
            for (i, w) in weights.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    s = s + w.clone();
                }
            }
            *slot = s;
        }
        Self::new(n, values)
    }

    pub fn ground_set_size(&self) -> usize {
        self.n
    }

    pub fn value(&self, subset: usize) -> &T {
        &self.values[subset]
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Möbius transform 𝔡(A) = Σ_{B⊆A} (-1)^{|A|-|B|} μ(B).
    pub fn mobius_transform(&self) -> MobiusCoefficients<T> {
        let mut values = self.values.clone();
        // In-place subset Möbius transform: one difference pass per element.
        for i in 0..self.n {
            let bit = 1usize << i;
            for mask in 0..values.len() {
                if mask & bit != 0 {
                    let lower = values[mask ^ bit].clone();
                    values[mask] = values[mask].clone() - lower;
                }
            }
        }
        MobiusCoefficients { n: self.n, values }
    }

    /// δ(A,B) = μ(A∪B) − μ(A) − μ(B) + μ(A∩B); zero for probabilities.
    pub fn additivity_defect(&self, a: usize, b: usize) -> T {
        self.values[a | b].clone() - self.values[a].clone() - self.values[b].clone()
            + self.values[a & b].clone()
    }
}

/// Möbius coefficients 𝔡(A) of a capacity.
#[derive(Debug, Clone, PartialEq)]
pub struct MobiusCoefficients<T> {
    n: usize,
    values: Vec<T>,
}

impl<T: CapacityScalar> MobiusCoefficients<T> {
    pub fn from_values(n: usize, values: Vec<T>) -> Result<Self> {
        if n == 0 || n > MAX_GROUND_SET {
            return Err(Error::GroundSetTooLarge(n));
        }
        if values.len() != 1 << n {
            return Err(Error::InvalidCapacity(format!(
                "expected {} subset values, got {}",
                1usize << n,
                values.len()
            )));
        }
        Ok(Self { n, values })
    }

    pub fn ground_set_size(&self) -> usize {
        self.n
    }

    pub fn value(&self, subset: usize) -> &T {
        &self.values[subset]
    }

    /// Inverse Möbius transform μ(A) = Σ_{B⊆A} 𝔡(B) (the subset zeta
    /// transform), returned as raw subset values.
    pub fn inverse_values(&self) -> Vec<T> {
        let mut values = self.values.clone();
        for i in 0..self.n {
            let bit = 1usize << i;
            for mask in 0..values.len() {
                if mask & bit != 0 {
                    let lower = values[mask ^ bit].clone();
                    values[mask] = values[mask].clone() + lower;
                }
            }
        }
        values
    }

    /// Inverse transform packaged (and re-validated) as a capacity.
    pub fn inverse(&self) -> Result<Capacity<T>> {
        Capacity::new(self.n, self.inverse_values())
    }

    /// Σ over nonempty subsets; equals 1 for coefficients of a capacity.
    pub fn total(&self) -> T {
        let mut s = T::zero();
        for v in &self.values[1..] {
            s = s + v.clone();
        }
        s
    }
}

/// Ranking permutation of f (ascending), ties broken by index.
fn rank_ascending<T: CapacityScalar>(f: &[T]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..f.len()).collect();
    idx.sort_by(|&a, &b| {
        f[a].partial_cmp(&f[b])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    idx
}

/// Rank-based Choquet integral: Σ f[σ(i)]·ν(i) with ν the discrete derivative
/// of the complementary cumulative capacity.
pub fn choquet<T: CapacityScalar>(f: &[T], mu: &Capacity<T>) -> Result<T> {
    let n = mu.ground_set_size();
    if f.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: f.len(),
        });
    }
    let sigma = rank_ascending(f);
    // tail_mask(i) = {σ(i), ..., σ(N)}
    let mut tail_mask = (1usize << n) - 1;
    let mut acc = T::zero();
    for (i, &s) in sigma.iter().enumerate() {
        let upper = mu.value(tail_mask).clone();
        let next_mask = tail_mask & !(1usize << s);
        let nu = if i + 1 < n {
            upper - mu.value(next_mask).clone()
        } else {
            upper
        };
        acc = acc + f[s].clone() * nu;
        tail_mask = next_mask;
    }
    Ok(acc)
}

/// The per-rank weights ν_f(i) (indexed by element, not rank) used by the
/// rank-based integral; they sum to 1.
pub fn choquet_weights<T: CapacityScalar>(f: &[T], mu: &Capacity<T>) -> Result<Vec<T>> {
    let n = mu.ground_set_size();
    if f.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: f.len(),
        });
    }
    let sigma = rank_ascending(f);
    let mut tail_mask = (1usize << n) - 1;
    let mut weights = vec![T::zero(); n];
    for (i, &s) in sigma.iter().enumerate() {
        let upper = mu.value(tail_mask).clone();
        let next_mask = tail_mask & !(1usize << s);
        weights[s] = if i + 1 < n {
            upper - mu.value(next_mask).clone()
        } else {
            upper
        };
        tail_mask = next_mask;
    }
    Ok(weights)
}

/// Möbius-route Choquet integral: Σ_A 𝔡(A)·min f(A).
pub fn choquet_via_mobius<T: CapacityScalar>(
    f: &[T],
    coeffs: &MobiusCoefficients<T>,
) -> Result<T> {
    let n = coeffs.ground_set_size();
    if f.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: f.len(),
        });
    }
    let mut acc = T::zero();
    for mask in 1usize..(1 << n) {
        let mut min: Option<&T> = None;
        for (i, v) in f.iter().enumerate() {
            if mask & (1 << i) != 0 && min.is_none_or(|m| v < m) {
                min = Some(v);
            }
        }
        acc = acc + coeffs.value(mask).clone() * min.expect("nonempty subset").clone();
    }
    Ok(acc)
}

/// Layer decomposition of the Möbius route: element k is the contribution of
/// all subsets of cardinality k+1.
pub fn choquet_mobius_layers<T: CapacityScalar>(
    f: &[T],
    coeffs: &MobiusCoefficients<T>,
) -> Result<Vec<T>> {
    let n = coeffs.ground_set_size();
    if f.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: f.len(),
        });
    }
    let mut layers = vec![T::zero(); n];
    for mask in 1usize..(1 << n) {
        let k = mask.count_ones() as usize;
        let mut min: Option<&T> = None;
        for (i, v) in f.iter().enumerate() {
            if mask & (1 << i) != 0 && min.is_none_or(|m| v < m) {
                min = Some(v);
            }
        }
        layers[k - 1] =
            layers[k - 1].clone() + coeffs.value(mask).clone() * min.expect("nonempty").clone();
    }
    Ok(layers)
}

/// Comonotonicity test: [f(i)−f(j)]·[g(i)−g(j)] ≥ 0 for all pairs.
pub fn comonotonic<T: CapacityScalar>(f: &[T], g: &[T]) -> bool {
    if f.len() != g.len() {
        return false;
    }
    for i in 0..f.len() {
        for j in (i + 1)..f.len() {
            let df = f[i].clone() - f[j].clone();
            let dg = g[i].clone() - g[j].clone();
            if (df.clone() * dg.clone()).is_negative() {
                return false;
            }
        }
    }
    true
}
