//! Operator comonotonicity, the trace-Choquet preorder, λ-interval scanning
//! with Q-crossing detection, and equivalence-class counting.

use crate::choquet::{choquet_integral_unchecked, trace_choquet};
use crate::error::{Error, Result};
use crate::hilbert::{CoherentFamily, PhasePoint};
use crate::phase_space::{q_function, HermitianPsd, QFunction};
use crate::{tol, CMatrix};
use num_bigint::BigUint;
use serde::Serialize;

/// Outcome of the comonotonicity test for a pair of operators.
#[derive(Debug, Clone)]
pub struct ComonotonicityCheck {
    pub comonotonic: bool,
    /// A pair of phase points violating the product condition, if any.
    pub witness: Option<(PhasePoint, PhasePoint)>,
    /// ‖[C_Q(θ), C_Q(φ)]‖, evaluated when the pair is comonotonic.
    pub commutator_norm: Option<f64>,
    /// Max ‖ϖ_θ(i) − ϖ_φ(i)‖ over the dominant block; evaluated when both
    /// rankings are strict there (tied blocks permute freely).
    pub projector_residual: Option<f64>,
}

fn dominant_union(qa: &QFunction, qb: &QFunction) -> Vec<usize> {
    let d = qa.d();
    let n = d * d;
    let mut members: Vec<usize> = qa.ranking()[n - d..]
        .iter()
        .chain(qb.ranking()[n - d..].iter())
        .cloned()
        .collect();
    members.sort_unstable();
    members.dedup();
    members
}

/// Product condition over the union of the two dominant point sets;
/// differences below the ranking tie tolerance count as ties.
fn product_condition(qa: &QFunction, qb: &QFunction) -> Option<(PhasePoint, PhasePoint)> {
    let union = dominant_union(qa, qb);
    let tie_a = qa.tie_tolerance();
    let tie_b = qb.tie_tolerance();
    for (k, &i) in union.iter().enumerate() {
        for &j in &union[k + 1..] {
            let da = qa.value_by_index(i) - qa.value_by_index(j);
            let db = qb.value_by_index(i) - qb.value_by_index(j);
            if da.abs() > tie_a && db.abs() > tie_b && da * db < 0.0 {
                return Some((qa.point(i), qa.point(j)));
            }
        }
    }
    None
}

/// Tests whether θ and φ share the ranking of their dominant Q values.
///
/// For a comonotonic pair the commutator of the two Choquet integrals is
/// evaluated; when both dominant rankings are strict the difference
/// projectors are compared one by one as well.
pub fn comonotonic_operators(
    family: &CoherentFamily,
    theta: &HermitianPsd,
    phi: &HermitianPsd,
) -> Result<ComonotonicityCheck> {
    let qa = q_function(family, theta)?;
    let qb = q_function(family, phi)?;
    if let Some(witness) = product_condition(&qa, &qb) {
        return Ok(ComonotonicityCheck {
            comonotonic: false,
            witness: Some(witness),
            commutator_norm: None,
            projector_residual: None,
        });
    }

    let ca = choquet_integral_unchecked(family, theta)?;
    let cb = choquet_integral_unchecked(family, phi)?;
    let commutator_norm =
        (ca.operator() * cb.operator() - cb.operator() * ca.operator()).norm();

    let projector_residual = if qa.dominant_values_strict() && qb.dominant_values_strict() {
        let chain_a = crate::choquet::projector_chain(family, qa.ranking())?;
        let chain_b = crate::choquet::projector_chain(family, qb.ranking())?;
        let n = family.d() * family.d();
        let mut worst: f64 = 0.0;
        for i in (n - family.d())..n {
            worst = worst.max((chain_a.difference(i) - chain_b.difference(i)).norm());
        }
        Some(worst)
    } else {
        None
    };

    Ok(ComonotonicityCheck {
        comonotonic: true,
        witness: None,
        commutator_norm: Some(commutator_norm),
        projector_residual,
    })
}

/// Result of the additivity check C_Q(aθ + bφ) = a·C_Q(θ) + b·C_Q(φ).
#[derive(Debug, Clone)]
pub enum AdditivityStatus {
    Checked { residual: f64 },
    SkippedNonComonotonic,
}

/// Verifies weak additivity on a comonotonic pair; skipped (with explicit
/// status) otherwise, since the identity may fail for general pairs.
pub fn comonotonic_additivity_check(
    family: &CoherentFamily,
    theta: &HermitianPsd,
    phi: &HermitianPsd,
    a: f64,
    b: f64,
) -> Result<AdditivityStatus> {
    assert!(a >= 0.0 && b >= 0.0, "coefficients must be nonnegative");
    let check = comonotonic_operators(family, theta, phi)?;
    if !check.comonotonic {
        return Ok(AdditivityStatus::SkippedNonComonotonic);
    }
    Ok(AdditivityStatus::Checked {
        residual: additivity_residual(family, theta, phi, a, b)?,
    })
}

/// ‖C_Q(aθ + bφ) − a·C_Q(θ) − b·C_Q(φ)‖ without any comonotonicity gate.
pub fn additivity_residual(
    family: &CoherentFamily,
    theta: &HermitianPsd,
    phi: &HermitianPsd,
    a: f64,
    b: f64,
) -> Result<f64> {
    let combined = HermitianPsd::new(
        theta.matrix() * crate::Complex::new(a, 0.0) + phi.matrix() * crate::Complex::new(b, 0.0),
    )?;
    let c_sum = choquet_integral_unchecked(family, &combined)?;
    let ca = choquet_integral_unchecked(family, theta)?;
    let cb = choquet_integral_unchecked(family, phi)?;
    Ok((c_sum.operator()
        - ca.operator() * crate::Complex::new(a, 0.0)
        - cb.operator() * crate::Complex::new(b, 0.0))
    .norm())
}

/// Total preorder by Tr C_Q comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PreorderRelation {
    /// Tr C_Q(θ) > Tr C_Q(φ).
    Succeeds,
    /// Tr C_Q(θ) < Tr C_Q(φ).
    Precedes,
    /// Equal within tolerance.
    Equivalent,
}

/// Compares θ and φ in the trace-Choquet preorder (tolerance
/// [`tol::PREORDER`] on the trace difference).
pub fn preorder_compare(
    family: &CoherentFamily,
    theta: &HermitianPsd,
    phi: &HermitianPsd,
) -> Result<PreorderRelation> {
    let ta = trace_choquet(&q_function(family, theta)?);
    let tb = trace_choquet(&q_function(family, phi)?);
    let scale = ta.abs().max(tb.abs()).max(1.0);
    Ok(if (ta - tb).abs() <= tol::PREORDER * scale {
        PreorderRelation::Equivalent
    } else if ta > tb {
        PreorderRelation::Succeeds
    } else {
        PreorderRelation::Precedes
    })
}

/// A one-parameter operator family θ(λ) on [λ_min, λ_max].
pub struct OperatorPath {
    form: PathForm,
    lambda_min: f64,
    lambda_max: f64,
    grid_size: usize,
}

enum PathForm {
    Affine { base: CMatrix, direction: CMatrix },
    Sampled(Box<dyn Fn(f64) -> CMatrix + Send + Sync>),
}

impl OperatorPath {
    /// θ(λ) = θ₁ + λ·θ₂.
    pub fn affine(
        base: CMatrix,
        direction: CMatrix,
        lambda_range: (f64, f64),
        grid_size: usize,
    ) -> Self {
        Self {
            form: PathForm::Affine { base, direction },
            lambda_min: lambda_range.0,
            lambda_max: lambda_range.1,
            grid_size,
        }
    }

    /// θ(λ) via an arbitrary callback.
    pub fn sampled(
        f: impl Fn(f64) -> CMatrix + Send + Sync + 'static,
        lambda_range: (f64, f64),
        grid_size: usize,
    ) -> Self {
        Self {
            form: PathForm::Sampled(Box::new(f)),
            lambda_min: lambda_range.0,
            lambda_max: lambda_range.1,
            grid_size,
        }
    }

    pub fn is_affine(&self) -> bool {
        matches!(self.form, PathForm::Affine { .. })
    }

    pub fn lambda_range(&self) -> (f64, f64) {
        (self.lambda_min, self.lambda_max)
    }

    pub fn grid_size(&self) -> usize {
        self.grid_size
    }

    pub fn matrix_at(&self, lambda: f64) -> CMatrix {
        match &self.form {
            PathForm::Affine { base, direction } => {
                base + direction * crate::Complex::new(lambda, 0.0)
            }
            PathForm::Sampled(f) => f(lambda),
        }
    }

    /// Validated PSD operator at λ; PSD violations surface the offending λ.
    pub fn at(&self, lambda: f64) -> Result<HermitianPsd> {
        HermitianPsd::new(self.matrix_at(lambda)).map_err(|e| match e {
            Error::NotPositiveSemidefinite { eigenvalue } => Error::PathNotPsd {
                lambda,
                eigenvalue,
            },
            other => other,
        })
    }
}

/// A crossing of two dominant Q-values.
#[derive(Debug, Clone, Serialize)]
pub struct Crossing {
    pub lambda: f64,
    pub points: (PhasePoint, PhasePoint),
}

/// One comonotonicity interval with its dominant ordering (descending).
#[derive(Debug, Clone, Serialize)]
pub struct IntervalReport {
    pub lambda_lo: f64,
    pub lambda_hi: f64,
    pub dominant: Vec<PhasePoint>,
}

/// Scan result: intervals partition the range; crossings list the boundaries.
#[derive(Debug, Clone, Serialize)]
pub struct ComonotonicityReport {
    pub intervals: Vec<IntervalReport>,
    pub crossings: Vec<Crossing>,
    pub warnings: Vec<String>,
}

struct GridSample {
    lambda: f64,
    q: QFunction,
}

fn crossing_pairs(qa: &QFunction, qb: &QFunction) -> Vec<(usize, usize)> {
    let union = dominant_union(qa, qb);
    let tie_a = qa.tie_tolerance();
    let tie_b = qb.tie_tolerance();
    let mut pairs = Vec::new();
    for (k, &i) in union.iter().enumerate() {
        for &j in &union[k + 1..] {
            let da = qa.value_by_index(i) - qa.value_by_index(j);
            let db = qb.value_by_index(i) - qb.value_by_index(j);
            if da.abs() > tie_a && db.abs() > tie_b && da * db < 0.0 {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

/// Locates the sign change of λ ↦ Q_i(λ) − Q_j(λ) inside [lo, hi].
fn bisect_crossing(
    family: &CoherentFamily,
    path: &OperatorPath,
    pair: (usize, usize),
    mut lo: f64,
    mut hi: f64,
    refine_tol: f64,
) -> Result<f64> {
    let diff = |lambda: f64| -> Result<f64> {
        let q = q_function(family, &path.at(lambda)?)?;
        Ok(q.value_by_index(pair.0) - q.value_by_index(pair.1))
    };
    let mut f_lo = diff(lo)?;
    for _ in 0..200 {
        if hi - lo <= refine_tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let f_mid = diff(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if (f_lo < 0.0) == (f_mid < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Scans θ(λ) over the grid, refines every dominant-value crossing by
/// bisection, and reports the comonotonicity intervals.
///
/// Cells containing several crossings trigger a grid-too-coarse warning and
/// are subdivided until each fragment isolates at most one crossing.
pub fn scan_intervals(
    family: &CoherentFamily,
    path: &OperatorPath,
    refine_tol: f64,
) -> Result<ComonotonicityReport> {
    if path.grid_size() < 2 {
        return Err(Error::GridTooSmall);
    }
    let (lo, hi) = path.lambda_range();
    let n = path.grid_size();
    let step = (hi - lo) / (n - 1) as f64;

    let mut samples = Vec::with_capacity(n);
    for k in 0..n {
        let lambda = if k + 1 == n { hi } else { lo + k as f64 * step };
        let q = q_function(family, &path.at(lambda)?)?;
        samples.push(GridSample { lambda, q });
    }

    let mut crossings: Vec<Crossing> = Vec::new();
    let mut warnings = Vec::new();
    for w in samples.windows(2) {
        scan_cell(
            family,
            path,
            &w[0],
            &w[1],
            refine_tol,
            0,
            &mut crossings,
            &mut warnings,
        )?;
    }
    crossings.sort_by(|a, b| a.lambda.total_cmp(&b.lambda));
    crossings.dedup_by(|a, b| (a.lambda - b.lambda).abs() <= refine_tol);

    // Intervals between consecutive crossings, signatures read at midpoints.
    let mut boundaries = vec![lo];
    boundaries.extend(crossings.iter().map(|c| c.lambda));
    boundaries.push(hi);
    let mut intervals = Vec::new();
    for w in boundaries.windows(2) {
        let mid = 0.5 * (w[0] + w[1]);
        let q = q_function(family, &path.at(mid)?)?;
        intervals.push(IntervalReport {
            lambda_lo: w[0],
            lambda_hi: w[1],
            dominant: q.dominant_points(),
        });
    }

    // Cor. c2 precondition: inside each interval the endpoint operators of an
    // affine path must be comonotonic.
    if path.is_affine() {
        for iv in &intervals {
            let margin = refine_tol.max(1e-9) * 4.0;
            let (a, b) = (iv.lambda_lo + margin, iv.lambda_hi - margin);
            if a >= b {
                continue;
            }
            let check = comonotonic_operators(family, &path.at(a)?, &path.at(b)?)?;
            if !check.comonotonic {
                warnings.push(format!(
                    "interval [{:.6}, {:.6}] endpoints not comonotonic (witness {:?})",
                    iv.lambda_lo, iv.lambda_hi, check.witness
                ));
            }
        }
    }

    Ok(ComonotonicityReport {
        intervals,
        crossings,
        warnings,
    })
}

#[allow(clippy::too_many_arguments)]
fn scan_cell(
    family: &CoherentFamily,
    path: &OperatorPath,
    left: &GridSample,
    right: &GridSample,
    refine_tol: f64,
    depth: usize,
    crossings: &mut Vec<Crossing>,
    warnings: &mut Vec<String>,
) -> Result<()> {
    let pairs = crossing_pairs(&left.q, &right.q);
    match pairs.len() {
        0 => Ok(()),
        1 => {
            let lambda = bisect_crossing(
                family,
                path,
                pairs[0],
                left.lambda,
                right.lambda,
                refine_tol,
            )?;
            crossings.push(Crossing {
                lambda,
                points: (
                    PhasePoint::from_index(pairs[0].0, family.d()),
                    PhasePoint::from_index(pairs[0].1, family.d()),
                ),
            });
            Ok(())
        }
        _ => {
            if depth == 0 {
                warnings.push(format!(
                    "grid too coarse in [{:.6}, {:.6}]: {} dominant crossings in one cell; refining",
                    left.lambda,
                    right.lambda,
                    pairs.len()
                ));
            }
            if right.lambda - left.lambda <= refine_tol || depth >= 40 {
                // Unresolvably close crossings: refine each pair on the cell.
                for pair in pairs {
                    let lambda = bisect_crossing(
                        family,
                        path,
                        pair,
                        left.lambda,
                        right.lambda,
                        refine_tol,
                    )?;
                    crossings.push(Crossing {
                        lambda,
                        points: (
                            PhasePoint::from_index(pair.0, family.d()),
                            PhasePoint::from_index(pair.1, family.d()),
                        ),
                    });
                }
                return Ok(());
            }
            let mid_lambda = 0.5 * (left.lambda + right.lambda);
            let mid = GridSample {
                lambda: mid_lambda,
                q: q_function(family, &path.at(mid_lambda)?)?,
            };
            scan_cell(family, path, left, &mid, refine_tol, depth + 1, crossings, warnings)?;
            scan_cell(family, path, &mid, right, refine_tol, depth + 1, crossings, warnings)
        }
    }
}

/// Number of comonotonicity equivalence classes, d²·(d²−1)···(d²−d+1).
pub fn class_count(d: u64) -> BigUint {
    let n = d * d;
    let mut acc = BigUint::from(1u32);
    for k in 0..d {
        acc *= BigUint::from(n - k);
    }
    acc
}

/// Trace bound check along one comonotonicity interval (Cor. c2 style).
#[derive(Debug, Clone, Serialize)]
pub struct BoundedFamilyReport {
    pub lambda_lo: f64,
    pub lambda_hi: f64,
    pub trace_lo: f64,
    pub trace_hi: f64,
    /// (λ, Tr C_Q(θ(λ))) at the interior samples.
    pub samples: Vec<(f64, f64)>,
    pub bounded: bool,
    /// True when the path is not affine and the bound came from the
    /// small-subinterval heuristic.
    pub approximate: bool,
}

/// Verifies that Tr C_Q(θ(λ)) stays between the endpoint values for interior
/// λ. Requires comonotonic endpoints. Affine paths use the corollary
/// directly; non-affine paths are treated by subdividing into per-sample
/// subintervals and labelled approximate.
pub fn bounded_family_check(
    family: &CoherentFamily,
    path: &OperatorPath,
    lambda_lo: f64,
    lambda_hi: f64,
    interior_samples: usize,
) -> Result<BoundedFamilyReport> {
    if lambda_hi < lambda_lo {
        return Err(Error::GridTooSmall);
    }
    let theta_lo = path.at(lambda_lo)?;
    let theta_hi = path.at(lambda_hi)?;
    let check = comonotonic_operators(family, &theta_lo, &theta_hi)?;
    if !check.comonotonic {
        return Err(Error::EndpointsNotComonotonic);
    }
    let trace_lo = trace_choquet(&q_function(family, &theta_lo)?);
    let trace_hi = trace_choquet(&q_function(family, &theta_hi)?);
    let (low, high) = if trace_lo <= trace_hi {
        (trace_lo, trace_hi)
    } else {
        (trace_hi, trace_lo)
    };
    let slack = tol::PREORDER * high.abs().max(1.0);

    let mut samples = Vec::with_capacity(interior_samples);
    let mut bounded = true;
    for k in 1..=interior_samples {
        let t = k as f64 / (interior_samples + 1) as f64;
        let lambda = lambda_lo + t * (lambda_hi - lambda_lo);
        let trace = trace_choquet(&q_function(family, &path.at(lambda)?)?);
        if trace < low - slack || trace > high + slack {
            bounded = false;
        }
        samples.push((lambda, trace));
    }
    Ok(BoundedFamilyReport {
        lambda_lo,
        lambda_hi,
        trace_lo,
        trace_hi,
        samples,
        bounded,
        approximate: !path.is_affine(),
    })
}
