//! Ranked cumulative projector chains, the operator Choquet integral C_Q(θ),
//! Möbius operators over the subset lattice of coherent states, and the weak
//! resolution of the identity.

use crate::error::{Error, Result};
use crate::hilbert::{hermitize, CoherentFamily, PhasePoint};
use crate::io::MatrixJson;
use crate::phase_space::{dominance_ratio, q_function, HermitianPsd, QFunction};
use crate::{tol, CMatrix, Complex};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// The cumulative projectors Π(i;...;d²) along a ranking, together with their
/// stepwise differences ϖ(i|i+1,...,d²).
///
/// Entry `i` refers to rank position `i` (0-based, ascending Q order), so the
/// dominant block sits at the tail. For a generic family exactly d of the
/// differences are nonzero; they form an orthogonal, complete set of rank-1
/// projectors.
#[derive(Debug, Clone)]
pub struct ProjectorChain {
    d: usize,
    ordering: Vec<usize>,
    cumulative: Vec<CMatrix>,
    differences: Vec<CMatrix>,
    nonzero: Vec<usize>,
}

impl ProjectorChain {
    pub fn d(&self) -> usize {
        self.d
    }

    /// The ranking this chain was built along (flat indices, ascending).
    pub fn ordering(&self) -> &[usize] {
        &self.ordering
    }

    /// Π(rank i; ...; rank d²-1): projector onto the span of the states
    /// ranked at position i and above.
    pub fn cumulative(&self, i: usize) -> &CMatrix {
        &self.cumulative[i]
    }

    /// ϖ(rank i | ranks above i).
    pub fn difference(&self, i: usize) -> &CMatrix {
        &self.differences[i]
    }

    /// Rank positions with nonzero difference projector.
    pub fn nonzero_positions(&self) -> &[usize] {
        &self.nonzero
    }
}

/// Builds the chain from the top rank downwards (Gram-Schmidt step per state,
/// expressed with projectors). A step whose perpendicular overlap
/// Tr[Π⊥ Π(i)] falls below [`tol::CHAIN_DEPENDENT`] contributes a zero
/// difference projector.
pub fn projector_chain(family: &CoherentFamily, ranking: &[usize]) -> Result<ProjectorChain> {
    let d = family.d();
    let n = d * d;
    if ranking.len() != n || {
        let mut seen = vec![false; n];
        ranking.iter().any(|&i| {
            if i >= n || seen[i] {
                true
            } else {
                seen[i] = true;
                false
            }
        })
    } {
        return Err(Error::InvalidRanking { expected: n });
    }

    let identity = CMatrix::identity(d, d);
    let mut cum = CMatrix::zeros(d, d);
    let mut cumulative = vec![CMatrix::zeros(d, d); n];
    let mut differences = vec![CMatrix::zeros(d, d); n];
    let mut nonzero = Vec::with_capacity(d);

    for i in (0..n).rev() {
        let proj = family.projector_by_index(ranking[i]);
        let perp = &identity - &cum;
        let overlap = (&perp * proj).trace().re;
        if overlap >= tol::CHAIN_DEPENDENT {
            let mut diff = (&perp * proj * &perp) / Complex::new(overlap, 0.0);
            hermitize(&mut diff);
            let idem = (&diff * &diff - &diff).norm();
            if idem > 1e-8 {
                return Err(Error::ChainRankAnomaly {
                    step: i,
                    detail: format!("difference projector not idempotent: residual {idem:.3e}"),
                });
            }
            cum += &diff;
            differences[i] = diff;
            nonzero.push(i);
        }
        cumulative[i] = cum.clone();
    }
    nonzero.reverse();

    let completeness = (&cum - &identity).norm();
    if completeness > 1e-8 {
        return Err(Error::ChainRankAnomaly {
            step: 0,
            detail: format!("chain does not resolve the identity: residual {completeness:.3e}"),
        });
    }
    Ok(ProjectorChain {
        d,
        ordering: ranking.to_vec(),
        cumulative,
        differences,
        nonzero,
    })
}

/// The Choquet integral of θ as a Hermitian PSD operator with its eigen
/// presentation.
#[derive(Debug, Clone)]
pub struct ChoquetResult {
    operator: CMatrix,
    eigen_pairs: Vec<(f64, CMatrix)>,
    trace: f64,
    dominance_ratio: Option<f64>,
    dominant_points: Vec<PhasePoint>,
}

impl ChoquetResult {
    pub fn operator(&self) -> &CMatrix {
        &self.operator
    }

    /// The pairs (d·Q(i|θ), ϖ_i) over nonzero difference projectors,
    /// eigenvalues descending.
    pub fn eigen_pairs(&self) -> &[(f64, CMatrix)] {
        &self.eigen_pairs
    }

    pub fn trace(&self) -> f64 {
        self.trace
    }

    /// None only for the zero operator.
    pub fn dominance_ratio(&self) -> Option<f64> {
        self.dominance_ratio
    }

    /// The d dominant phase points, descending by Q value.
    pub fn dominant_points(&self) -> &[PhasePoint] {
        &self.dominant_points
    }

    pub fn to_json(&self) -> ChoquetResultJson {
        ChoquetResultJson {
            operator: MatrixJson::from(&self.operator),
            eigen_pairs: self
                .eigen_pairs
                .iter()
                .map(|(v, p)| EigenPairJson {
                    eigenvalue: *v,
                    projector: MatrixJson::from(p),
                })
                .collect(),
            trace: self.trace,
            dominance_ratio: self.dominance_ratio,
            dominant_points: self
                .dominant_points
                .iter()
                .map(|p| (p.alpha(), p.beta()))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EigenPairJson {
    pub eigenvalue: f64,
    pub projector: MatrixJson,
}

#[derive(Debug, Clone, Serialize)]
pub struct ChoquetResultJson {
    pub operator: MatrixJson,
    pub eigen_pairs: Vec<EigenPairJson>,
    pub trace: f64,
    pub dominance_ratio: Option<f64>,
    pub dominant_points: Vec<(usize, usize)>,
}

/// Assembles Σ d·Q(i|θ)·ϖ_i over the nonzero chain positions.
pub fn choquet_from_chain(q: &QFunction, chain: &ProjectorChain) -> CMatrix {
    let d = q.d();
    let mut op = CMatrix::zeros(d, d);
    for &i in chain.nonzero_positions() {
        let value = d as f64 * q.value_by_index(chain.ordering()[i]);
        op += chain.difference(i) * Complex::new(value, 0.0);
    }
    hermitize(&mut op);
    op
}

/// C_Q(θ) for a generic coherent family. Rejects families whose genericity
/// check failed; use [`choquet_integral_unchecked`] to override.
pub fn choquet_integral(family: &CoherentFamily, theta: &HermitianPsd) -> Result<ChoquetResult> {
    if !family.genericity().generic {
        return Err(Error::NonGenericFamily {
            witness: family.genericity().witness.clone(),
        });
    }
    choquet_integral_unchecked(family, theta)
}

/// C_Q(θ) without the genericity gate. Linearly dependent prefixes simply
/// contribute zero difference projectors, as in the defining recursion.
pub fn choquet_integral_unchecked(
    family: &CoherentFamily,
    theta: &HermitianPsd,
) -> Result<ChoquetResult> {
    let q = q_function(family, theta)?;
    let chain = projector_chain(family, q.ranking())?;
    let operator = choquet_from_chain(&q, &chain);
    let mut eigen_pairs: Vec<(f64, CMatrix)> = chain
        .nonzero_positions()
        .iter()
        .map(|&i| {
            (
                family.d() as f64 * q.value_by_index(chain.ordering()[i]),
                chain.difference(i).clone(),
            )
        })
        .collect();
    eigen_pairs.sort_by(|a, b| b.0.total_cmp(&a.0));
    let trace = operator.trace().re;
    Ok(ChoquetResult {
        operator,
        eigen_pairs,
        trace,
        dominance_ratio: dominance_ratio(&q).ok(),
        dominant_points: q.dominant_points(),
    })
}

/// Tr C_Q(θ) = d·(sum of the d largest Q values); needs no projectors.
pub fn trace_choquet(q: &QFunction) -> f64 {
    q.d() as f64 * q.dominant_sum()
}

/// All 2^(d²) span projectors Π(A) and Möbius operators 𝔇(A) for d = 3.
///
/// Subsets are bitmasks over flat phase-point indices (bit i ↔ index i).
#[derive(Debug, Clone)]
pub struct MobiusOperatorTable {
    d: usize,
    span: Vec<CMatrix>,
    mobius: Vec<CMatrix>,
}

impl MobiusOperatorTable {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn subsets(&self) -> usize {
        self.span.len()
    }

    /// Π(A): orthogonal projector onto the span of the states in `mask`.
    pub fn span_projector(&self, mask: usize) -> &CMatrix {
        &self.span[mask]
    }

    /// 𝔇(A) = Σ_{B⊆A} (-1)^(|A|-|B|) Π(B).
    pub fn mobius(&self, mask: usize) -> &CMatrix {
        &self.mobius[mask]
    }
}

/// Builds the full subset table (d = 3 only: 512 subsets). For larger d use
/// [`mobius_of_subset`], which handles individual small subsets.
pub fn mobius_operators(family: &CoherentFamily) -> Result<MobiusOperatorTable> {
    let d = family.d();
    if d != 3 {
        return Err(Error::UnsupportedDimension {
            d,
            what: "full Möbius operator table",
        });
    }
    let n = d * d;
    let size = 1usize << n;
    let mut span = Vec::with_capacity(size);
    let mut points = Vec::with_capacity(n);
    for mask in 0..size {
        points.clear();
        for i in 0..n {
            if mask & (1 << i) != 0 {
                points.push(PhasePoint::from_index(i, d));
            }
        }
        span.push(family.span_projector(&points));
    }
    // In-place subset Möbius transform over matrix entries.
    let mut mobius = span.clone();
    for i in 0..n {
        let bit = 1usize << i;
        for mask in 0..size {
            if mask & bit != 0 {
                let lower = mobius[mask ^ bit].clone();
                mobius[mask] -= lower;
            }
        }
    }
    Ok(MobiusOperatorTable { d, span, mobius })
}

/// 𝔇(A) for one explicit subset of phase points, by direct alternating sum.
/// Works at any odd d for small |A| (2^|A| span projectors).
pub fn mobius_of_subset(family: &CoherentFamily, points: &[PhasePoint]) -> CMatrix {
    let k = points.len();
    let d = family.d();
    let mut acc = CMatrix::zeros(d, d);
    let mut sub = Vec::with_capacity(k);
    for mask in 0usize..(1 << k) {
        sub.clear();
        for (i, p) in points.iter().enumerate() {
            if mask & (1 << i) != 0 {
                sub.push(*p);
            }
        }
        let sign = if (k - sub.len()).is_multiple_of(2) { 1.0 } else { -1.0 };
        acc += family.span_projector(&sub) * Complex::new(sign, 0.0);
    }
    acc
}

/// 𝔇 of a pair, Π(1,2) − Π(1) − Π(2).
pub fn mobius_pair(family: &CoherentFamily, p1: PhasePoint, p2: PhasePoint) -> CMatrix {
    mobius_of_subset(family, &[p1, p2])
}

/// C_Q(θ) reassembled from the Möbius side: Σ_k d·Σ_{|A|=k} 𝔇(A)·min_{i∈A} Q(i|θ).
pub fn choquet_via_mobius_ops(family: &CoherentFamily, theta: &HermitianPsd) -> Result<CMatrix> {
    let table = mobius_operators(family)?;
    choquet_via_mobius_ops_with(&table, family, theta)
}

/// Same as [`choquet_via_mobius_ops`] with a prebuilt table.
pub fn choquet_via_mobius_ops_with(
    table: &MobiusOperatorTable,
    family: &CoherentFamily,
    theta: &HermitianPsd,
) -> Result<CMatrix> {
    let d = family.d();
    if table.d() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: table.d(),
        });
    }
    let q = q_function(family, theta)?;
    let n = d * d;
    let mut op = CMatrix::zeros(d, d);
    for mask in 1usize..(1 << n) {
        let mut min = f64::INFINITY;
        for i in 0..n {
            if mask & (1 << i) != 0 {
                min = min.min(q.value_by_index(i));
            }
        }
        op += table.mobius(mask) * Complex::new(d as f64 * min, 0.0);
    }
    hermitize(&mut op);
    Ok(op)
}

/// Residuals of the weak resolution of the identity.
#[derive(Debug, Clone, Serialize)]
pub struct WeakResolutionReport {
    /// ‖Σ over nonempty A of 𝔇(A) − I‖ over the full lattice.
    pub full_residual: f64,
    /// ‖Σ over |A| ≥ 2 of 𝔇(A) − (1−d)·I‖.
    pub higher_order_residual: f64,
    /// Per sampled d-subset: ‖Σ_{B⊆A, B≠∅} 𝔇(B) − I‖.
    pub sampled_subset_residuals: Vec<f64>,
}

/// Checks the full-lattice identity, the higher-order sum, and the d-subset
/// identity on `samples` random d-subsets.
pub fn weak_resolution_residual(
    table: &MobiusOperatorTable,
    samples: usize,
    seed: u64,
) -> WeakResolutionReport {
    let d = table.d();
    let n = d * d;
    let identity = CMatrix::identity(d, d);
    let mut full = CMatrix::zeros(d, d);
    let mut higher = CMatrix::zeros(d, d);
    for mask in 1usize..table.subsets() {
        full += table.mobius(mask);
        if mask.count_ones() >= 2 {
            higher += table.mobius(mask);
        }
    }
    let full_residual = (&full - &identity).norm();
    let higher_order_residual =
        (&higher - &identity * Complex::new(1.0 - d as f64, 0.0)).norm();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sampled_subset_residuals = Vec::with_capacity(samples);
    for _ in 0..samples {
        let idx = sample(&mut rng, n, d).into_vec();
        let mask: usize = idx.iter().map(|&i| 1usize << i).sum();
        let mut acc = CMatrix::zeros(d, d);
        let mut sub = mask;
        while sub > 0 {
            acc += table.mobius(sub);
            sub = (sub - 1) & mask;
        }
        sampled_subset_residuals.push((&acc - &identity).norm());
    }
    WeakResolutionReport {
        full_residual,
        higher_order_residual,
        sampled_subset_residuals,
    }
}
