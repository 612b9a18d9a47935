//! Inequality checkers: trace/expectation/product bounds of the Choquet
//! trace, subadditivity/convexity, and partition-function bounds.

use crate::choquet::trace_choquet;
use crate::comonotone::comonotonic_operators;
use crate::error::{Error, Result};
use crate::hilbert::{hermitize, CoherentFamily};
use crate::phase_space::{q_function, HermitianPsd};
use crate::{tol, CMatrix, Complex};
use serde::Serialize;

/// One checked inequality lhs ≤ rhs.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub quantity: String,
    pub lhs: f64,
    pub rhs: f64,
    pub satisfied: bool,
    /// rhs − lhs.
    pub slack: f64,
}

impl BoundReport {
    fn new(quantity: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        let slack = rhs - lhs;
        Self {
            quantity: quantity.into(),
            lhs,
            rhs,
            satisfied: lhs <= rhs + tol::PREORDER * rhs.abs().max(1.0),
            slack,
        }
    }
}

/// The two-sided trace bound (1/d)·Tr C_Q(θ) < Tr θ ≤ Tr C_Q(θ).
#[derive(Debug, Clone, Serialize)]
pub struct TraceBounds {
    /// Strict left inequality; `slack` carries the margin.
    pub lower: BoundReport,
    /// Non-strict right inequality.
    pub upper: BoundReport,
    /// True when the right side is an equality (θ proportional to 1).
    pub right_tight: bool,
}

/// Checks (1/d)·Tr C_Q(θ) < Tr θ ≤ Tr C_Q(θ) for nonzero PSD θ.
pub fn trace_bounds(family: &CoherentFamily, theta: &HermitianPsd) -> Result<TraceBounds> {
    let q = q_function(family, theta)?;
    if q.trace() <= 0.0 {
        return Err(Error::ZeroTrace);
    }
    let tc = trace_choquet(&q);
    let d = family.d() as f64;
    let lower = BoundReport::new("trace_choquet/d < trace", tc / d, q.trace());
    let upper = BoundReport::new("trace <= trace_choquet", q.trace(), tc);
    let right_tight = (q.trace() - tc).abs() <= tol::PREORDER * tc.abs().max(1.0);
    Ok(TraceBounds {
        lower,
        upper,
        right_tight,
    })
}

/// Tr(ρθ) ≤ Tr C_Q(θ) for a density matrix ρ.
pub fn expectation_bound(
    family: &CoherentFamily,
    rho: &HermitianPsd,
    theta: &HermitianPsd,
) -> Result<BoundReport> {
    if (rho.trace() - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidDensityMatrix(format!(
            "trace {} != 1",
            rho.trace()
        )));
    }
    let q = q_function(family, theta)?;
    let expectation = (rho.matrix() * theta.matrix()).trace().re;
    Ok(BoundReport::new(
        "trace(rho theta) <= trace_choquet(theta)",
        expectation,
        trace_choquet(&q),
    ))
}

/// Tr(θφ) ≤ Tr C_Q(θ)·Tr C_Q(φ).
pub fn product_bound(
    family: &CoherentFamily,
    theta: &HermitianPsd,
    phi: &HermitianPsd,
) -> Result<BoundReport> {
    let qa = q_function(family, theta)?;
    let qb = q_function(family, phi)?;
    let product = (theta.matrix() * phi.matrix()).trace().re;
    Ok(BoundReport::new(
        "trace(theta phi) <= trace_choquet(theta) trace_choquet(phi)",
        product,
        trace_choquet(&qa) * trace_choquet(&qb),
    ))
}

/// Subadditivity and convexity of the Choquet trace.
#[derive(Debug, Clone, Serialize)]
pub struct SubadditivityReport {
    /// Tr C_Q(θ+φ) ≤ Tr C_Q(θ) + Tr C_Q(φ).
    pub subadditivity: BoundReport,
    /// Tr C_Q(aθ+(1−a)φ) ≤ a·Tr C_Q(θ) + (1−a)·Tr C_Q(φ).
    pub convexity: BoundReport,
}

pub fn subadditivity_convexity(
    family: &CoherentFamily,
    theta: &HermitianPsd,
    phi: &HermitianPsd,
    a: f64,
) -> Result<SubadditivityReport> {
    assert!((0.0..=1.0).contains(&a), "mixing weight must lie in [0,1]");
    let tc = |op: &HermitianPsd| -> Result<f64> { Ok(trace_choquet(&q_function(family, op)?)) };
    let t_theta = tc(theta)?;
    let t_phi = tc(phi)?;

    let sum = HermitianPsd::new(theta.matrix() + phi.matrix())?;
    let subadditivity = BoundReport::new(
        "trace_choquet(theta+phi) <= trace_choquet(theta) + trace_choquet(phi)",
        tc(&sum)?,
        t_theta + t_phi,
    );

    let mix = HermitianPsd::new(
        theta.matrix() * Complex::new(a, 0.0) + phi.matrix() * Complex::new(1.0 - a, 0.0),
    )?;
    let convexity = BoundReport::new(
        "trace_choquet(a theta + (1-a) phi) <= a trace_choquet(theta) + (1-a) trace_choquet(phi)",
        tc(&mix)?,
        a * t_theta + (1.0 - a) * t_phi,
    );
    Ok(SubadditivityReport {
        subadditivity,
        convexity,
    })
}

/// exp(scale·H) of a Hermitian matrix via eigendecomposition.
pub fn hermitian_exp(h: &CMatrix, scale: f64) -> CMatrix {
    let eig = h.clone().symmetric_eigen();
    let d = h.nrows();
    let mut out = CMatrix::zeros(d, d);
    for k in 0..d {
        let col = eig.eigenvectors.column(k);
        out += col * col.adjoint() * Complex::new((scale * eig.eigenvalues[k]).exp(), 0.0);
    }
    hermitize(&mut out);
    out
}

/// Partition function Z = Tr exp(−λH) with its Choquet upper bound and the
/// two lower bounds.
#[derive(Debug, Clone, Serialize)]
pub struct PartitionBounds {
    pub lambda: f64,
    /// Tr exp(−λH).
    pub z: f64,
    /// Tr C_Q(exp(−λH)) ≥ Z.
    pub choquet_upper: f64,
    /// (1/d)·Tr C_Q(exp(−λH)) ≤ Z.
    pub choquet_lower: f64,
    /// (1/d)·Σ exp(−dλ·Q(α,β|H)) ≤ Z.
    pub q_exp_lower: f64,
    /// max of the two lower bounds.
    pub best_lower: f64,
    pub upper_holds: bool,
    pub lower_holds: bool,
    /// min over phase points of d·Q(α,β|exp(−λH)) − exp(−dλ·Q(α,β|H)).
    pub bogoliubov_min_slack: f64,
}

/// Computes Z and its bounds for a Hermitian Hamiltonian (not necessarily
/// PSD; the exponential is). Requires λ ≥ 0.
pub fn partition_bounds(
    family: &CoherentFamily,
    hamiltonian: &CMatrix,
    lambda: f64,
) -> Result<PartitionBounds> {
    if lambda < 0.0 {
        return Err(Error::NegativeInverseTemperature(lambda));
    }
    let scale = hamiltonian.norm().max(1.0);
    let asymmetry = (hamiltonian - hamiltonian.adjoint()).norm();
    if asymmetry > tol::HERMITICITY * scale {
        return Err(Error::NotHermitian { asymmetry });
    }
    let d = family.d() as f64;
    let gibbs = HermitianPsd::new(hermitian_exp(hamiltonian, -lambda))?;
    let z = gibbs.trace();
    let q_exp = q_function(family, &gibbs)?;
    let choquet_upper = trace_choquet(&q_exp);
    let choquet_lower = choquet_upper / d;

    // The Q-function of H itself; H need not be PSD, only Hermitian.
    let q_h = crate::phase_space::q_function_of_hermitian(family, hamiltonian)?;
    let q_exp_lower = q_h
        .values()
        .iter()
        .map(|&q| (-d * lambda * q).exp())
        .sum::<f64>()
        / d;

    let bogoliubov_min_slack = family
        .points()
        .map(|p| d * q_exp.value(p) - (-d * lambda * q_h.value(p)).exp())
        .fold(f64::INFINITY, f64::min);

    let slack = tol::PREORDER * z.abs().max(1.0);
    let best_lower = choquet_lower.max(q_exp_lower);
    Ok(PartitionBounds {
        lambda,
        z,
        choquet_upper,
        choquet_lower,
        q_exp_lower,
        best_lower,
        upper_holds: choquet_upper >= z - slack,
        lower_holds: best_lower <= z + slack,
        bogoliubov_min_slack,
    })
}

/// Applicability-gated operator bound C_Q(exp(−λθ)) ≥ exp(−λ·C_Q(θ)).
#[derive(Debug, Clone, Serialize)]
pub enum ExpBoundStatus {
    /// θ and exp(−λθ) are comonotonic; the smallest eigenvalue of the
    /// difference is reported (PSD when ≥ −1e−8).
    Applicable {
        min_eigenvalue: f64,
        satisfied: bool,
    },
    /// The comonotonicity precondition fails for this pair.
    NotApplicable,
}

/// Checks the operator inequality when its comonotonicity precondition
/// holds. Since x ↦ exp(−λx) reverses rankings, the precondition is only
/// met by flat-Q operators (multiples of 1) or λ = 0; the gate reports
/// NotApplicable otherwise instead of asserting a vacuous bound.
pub fn operator_exp_bound(
    family: &CoherentFamily,
    theta: &HermitianPsd,
    lambda: f64,
) -> Result<ExpBoundStatus> {
    if lambda < 0.0 {
        return Err(Error::NegativeInverseTemperature(lambda));
    }
    let gibbs = HermitianPsd::new(hermitian_exp(theta.matrix(), -lambda))?;
    let check = comonotonic_operators(family, theta, &gibbs)?;
    if !check.comonotonic {
        return Ok(ExpBoundStatus::NotApplicable);
    }
    let lhs = crate::choquet::choquet_integral_unchecked(family, &gibbs)?;
    let c_theta = crate::choquet::choquet_integral_unchecked(family, theta)?;
    // exp(−λ·C_Q(θ)) straight from the eigen presentation.
    let d = family.d();
    let mut rhs = CMatrix::zeros(d, d);
    for (value, projector) in c_theta.eigen_pairs() {
        rhs += projector * Complex::new((-lambda * value).exp(), 0.0);
    }
    let mut diff = lhs.operator() - rhs;
    hermitize(&mut diff);
    let min_eigenvalue = diff
        .symmetric_eigenvalues()
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min);
    Ok(ExpBoundStatus::Applicable {
        min_eigenvalue,
        satisfied: min_eigenvalue >= -1e-8,
    })
}
