//! Q- and P-functions of Hermitian PSD operators, Wehrl entropy, the ranking
//! permutation and the dominance ratio.

use crate::error::{Error, Result};
use crate::hilbert::{hermitize, CoherentFamily, PhasePoint};
use crate::{tol, CMatrix, Complex};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

/// A validated Hermitian positive semidefinite operator.
///
/// Ingestion symmetrizes the matrix (rejecting asymmetry beyond
/// [`tol::HERMITICITY`] relative to the matrix scale) and checks the smallest
/// eigenvalue against -[`tol::PSD_RELATIVE`]·‖θ‖.
#[derive(Debug, Clone)]
pub struct HermitianPsd {
    matrix: CMatrix,
    min_eigenvalue: f64,
}

impl HermitianPsd {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        let (r, c) = matrix.shape();
        if r != c {
            return Err(Error::DimensionMismatch {
                expected: r,
                found: c,
            });
        }
        let scale = matrix.norm().max(1.0);
        let asymmetry = (&matrix - matrix.adjoint()).norm();
        if asymmetry > tol::HERMITICITY * scale {
            return Err(Error::NotHermitian { asymmetry });
        }
        let mut m = matrix;
        hermitize(&mut m);
        let eigenvalues = m.clone().symmetric_eigenvalues();
        let min_eigenvalue = eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
        if min_eigenvalue < -tol::PSD_RELATIVE * scale {
            return Err(Error::NotPositiveSemidefinite {
                eigenvalue: min_eigenvalue,
            });
        }
        Ok(Self {
            matrix: m,
            min_eigenvalue,
        })
    }

    /// ρ = |ψ⟩⟨ψ| for a (normalized) state vector.
    pub fn pure(state: &crate::CVector) -> Result<Self> {
        Self::new(state * state.adjoint())
    }

    pub fn identity(d: usize) -> Self {
        Self {
            matrix: CMatrix::identity(d, d),
            min_eigenvalue: 1.0,
        }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn d(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.min_eigenvalue
    }

    /// θ + λ·I for λ ≥ 0 (stays PSD).
    pub fn shifted(&self, lambda: f64) -> Self {
        let d = self.d();
        Self {
            matrix: &self.matrix + CMatrix::identity(d, d) * Complex::new(lambda, 0.0),
            min_eigenvalue: self.min_eigenvalue + lambda,
        }
    }

    /// a·θ for a ≥ 0 (stays PSD).
    pub fn scaled(&self, a: f64) -> Self {
        Self {
            matrix: &self.matrix * Complex::new(a, 0.0),
            min_eigenvalue: self.min_eigenvalue * a,
        }
    }
}

/// The map (α,β) ↦ Q(α,β|θ) with its trace and ranking permutation.
///
/// The ranking lists flat indices in ascending Q order; values closer than
/// [`tol::RANKING_TIE`] (relative to the trace) count as tied and are ordered
/// lexicographically by (α, β). Tie groups are kept as metadata.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QFunction {
    d: usize,
    values: Vec<f64>,
    trace: f64,
    ranking: Vec<usize>,
    /// Half-open rank ranges [start, end) of groups of tied values.
    tie_groups: Vec<(usize, usize)>,
}

impl QFunction {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn value(&self, p: PhasePoint) -> f64 {
        self.values[p.index(self.d)]
    }

    pub fn value_by_index(&self, idx: usize) -> f64 {
        self.values[idx]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Σ Q = Tr θ.
    pub fn trace(&self) -> f64 {
        self.trace
    }

    /// Flat indices in ascending Q order.
    pub fn ranking(&self) -> &[usize] {
        &self.ranking
    }

    pub fn tie_groups(&self) -> &[(usize, usize)] {
        &self.tie_groups
    }

    pub fn point(&self, idx: usize) -> PhasePoint {
        PhasePoint::from_index(idx, self.d)
    }

    /// The d top-ranked phase points, descending.
    pub fn dominant_points(&self) -> Vec<PhasePoint> {
        let n = self.ranking.len();
        self.ranking[n - self.d..]
            .iter()
            .rev()
            .map(|&i| self.point(i))
            .collect()
    }

    /// The d largest Q values, descending.
    pub fn dominant_values(&self) -> Vec<f64> {
        let n = self.ranking.len();
        self.ranking[n - self.d..]
            .iter()
            .rev()
            .map(|&i| self.values[i])
            .collect()
    }

    pub fn dominant_sum(&self) -> f64 {
        self.dominant_values().iter().sum()
    }

    /// Absolute tolerance below which two values rank as tied.
    pub fn tie_tolerance(&self) -> f64 {
        tol::RANKING_TIE * self.trace.abs().max(1.0)
    }

    /// True when the d dominant values are pairwise distinct (the operator
    /// lies in the strict class M').
    pub fn dominant_values_strict(&self) -> bool {
        let v = self.dominant_values();
        let tie = self.tie_tolerance();
        v.windows(2).all(|w| (w[0] - w[1]).abs() > tie)
    }

    fn build(d: usize, values: Vec<f64>, trace: f64) -> Self {
        let tie = tol::RANKING_TIE * trace.abs().max(1.0);
        let mut ranking: Vec<usize> = (0..values.len()).collect();
        ranking.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        // Group ties (chained within `tie`), then order each group
        // lexicographically by flat index.
        let mut tie_groups = Vec::new();
        let mut start = 0;
        while start < ranking.len() {
            let mut end = start;
            while end + 1 < ranking.len()
                && values[ranking[end + 1]] - values[ranking[end]] <= tie
            {
                end += 1;
            }
            if end > start {
                ranking[start..=end].sort_unstable();
                tie_groups.push((start, end + 1));
            }
            start = end + 1;
        }
        Self {
            d,
            values,
            trace,
            ranking,
            tie_groups,
        }
    }
}

/// Q(α,β|θ) = (1/d)·Tr[Π(α,β)θ] over all d² phase points.
pub fn q_function(family: &CoherentFamily, theta: &HermitianPsd) -> Result<QFunction> {
    q_function_of_hermitian(family, theta.matrix())
}

/// Q-function of a Hermitian (not necessarily PSD) matrix; values may then
/// be negative. Used for Hamiltonians and noise studies where only the
/// ranking matters.
pub fn q_function_of_hermitian(family: &CoherentFamily, matrix: &CMatrix) -> Result<QFunction> {
    let d = family.d();
    if matrix.nrows() != d || matrix.ncols() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: matrix.nrows(),
        });
    }
    let scale = matrix.norm().max(1.0);
    let asymmetry = (matrix - matrix.adjoint()).norm();
    if asymmetry > tol::HERMITICITY * scale {
        return Err(Error::NotHermitian { asymmetry });
    }
    let values: Vec<f64> = (0..d * d)
        .map(|i| {
            let state = family.state(PhasePoint::from_index(i, d));
            // Tr[Πθ] = ⟨C|θ|C⟩
            (state.adjoint() * matrix * state)[(0, 0)].re / d as f64
        })
        .collect();
    let trace = matrix.trace().re;
    Ok(QFunction::build(d, values, trace))
}

/// Weights P(α,β) with θ = Σ P(α,β)·Π(α,β), solved in the least-squares sense.
#[derive(Debug, Clone, Serialize)]
pub struct PFunction {
    d: usize,
    values: Vec<f64>,
    /// Condition number of the d²×d² representation kernel.
    pub condition_number: f64,
    /// Frobenius residual ‖θ − Σ P·Π‖.
    pub residual: f64,
}

impl PFunction {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn value(&self, p: PhasePoint) -> f64 {
        self.values[p.index(self.d)]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }
}

/// Coordinates of a Hermitian matrix in a real orthonormal basis of the
/// Hermitian d×d matrices (Frobenius inner product).
fn hermitian_coordinates(m: &CMatrix) -> Vec<f64> {
    let d = m.nrows();
    let s = std::f64::consts::SQRT_2;
    let mut out = Vec::with_capacity(d * d);
    for i in 0..d {
        out.push(m[(i, i)].re);
    }
    for i in 0..d {
        for j in (i + 1)..d {
            out.push(m[(i, j)].re * s);
            out.push(m[(i, j)].im * s);
        }
    }
    out
}

/// Solves θ = Σ P(α,β)·Π(α,β) for the real weights P.
///
/// The kernel is fiducial-dependent; its condition number is reported and
/// values beyond 1e12 are rejected as singular.
pub fn p_function(family: &CoherentFamily, theta: &HermitianPsd) -> Result<PFunction> {
    let d = family.d();
    if theta.d() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: theta.d(),
        });
    }
    let n = d * d;
    let mut kernel = DMatrix::<f64>::zeros(n, n);
    for (col, p) in family.points().enumerate() {
        let coords = hermitian_coordinates(family.projector(p));
        for (row, v) in coords.into_iter().enumerate() {
            kernel[(row, col)] = v;
        }
    }
    let rhs = nalgebra::DVector::from_vec(hermitian_coordinates(theta.matrix()));

    let svd = kernel.svd(true, true);
    let smax = svd.singular_values[0];
    let smin = svd
        .singular_values
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min);
    let condition_number = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    if condition_number > 1e12 {
        return Err(Error::IllConditionedKernel {
            cond: condition_number,
        });
    }
    let solution = svd
        .solve(&rhs, 0.0)
        .map_err(|_| Error::IllConditionedKernel {
            cond: condition_number,
        })?;
    let values: Vec<f64> = solution.iter().cloned().collect();

    let mut reconstructed = CMatrix::zeros(d, d);
    for (i, p) in family.points().enumerate() {
        reconstructed += family.projector(p) * Complex::new(values[i], 0.0);
    }
    let residual = (theta.matrix() - reconstructed).norm();
    Ok(PFunction {
        d,
        values,
        condition_number,
        residual,
    })
}

/// Wehrl entropy −Σ Q̃ ln Q̃ (nats) of the trace-normalized Q distribution.
pub fn wehrl_entropy(q: &QFunction) -> Result<f64> {
    if q.trace() <= 0.0 {
        return Err(Error::ZeroTrace);
    }
    let t = q.trace();
    let mut e = 0.0;
    for &v in q.values() {
        let p = v / t;
        if p > 0.0 {
            e -= p * p.ln();
        }
    }
    Ok(e)
}

/// Dominance ratio r(θ) = (Σ of the d largest Q)/(Σ of all Q), in [1/d, 1).
pub fn dominance_ratio(q: &QFunction) -> Result<f64> {
    if q.trace() <= 0.0 {
        return Err(Error::ZeroTrace);
    }
    Ok(q.dominant_sum() / q.trace())
}

/// Rows `alpha,beta,q` in flat-index order.
pub fn q_function_csv(q: &QFunction) -> String {
    let mut out = String::from("alpha,beta,q\n");
    for (i, v) in q.values().iter().enumerate() {
        let p = q.point(i);
        out.push_str(&format!("{},{},{}\n", p.alpha(), p.beta(), v));
    }
    out
}
