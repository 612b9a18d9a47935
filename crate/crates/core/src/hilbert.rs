//! Finite Hilbert-space machinery: modular phase space, Fourier/clock/shift
//! operators, displacement operators, coherent-state families and genericity
//! checks.
//!
//! Dimensions are restricted to odd d >= 3 so that 2⁻¹ exists in Z(d) and the
//! displacement phase ω(-2⁻¹αβ) is well defined.

use crate::error::{Error, Result};
use crate::{tol, CMatrix, CVector, Complex};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// A point (α, β) of the Z(d) × Z(d) phase space, stored reduced mod d.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PhasePoint {
    alpha: usize,
    beta: usize,
}

impl PhasePoint {
    /// Reduces both components mod d.
    pub fn new(alpha: i64, beta: i64, d: usize) -> Self {
        let m = d as i64;
        Self {
            alpha: alpha.rem_euclid(m) as usize,
            beta: beta.rem_euclid(m) as usize,
        }
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn beta(&self) -> usize {
        self.beta
    }

    /// Flat index α·d + β; lexicographic in (α, β).
    pub fn index(&self, d: usize) -> usize {
        self.alpha * d + self.beta
    }

    pub fn from_index(idx: usize, d: usize) -> Self {
        Self {
            alpha: idx / d,
            beta: idx % d,
        }
    }

    /// Componentwise sum mod d.
    pub fn offset(&self, other: PhasePoint, d: usize) -> Self {
        Self {
            alpha: (self.alpha + other.alpha) % d,
            beta: (self.beta + other.beta) % d,
        }
    }
}

impl std::fmt::Display for PhasePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.alpha, self.beta)
    }
}

/// Dimension, roots of unity and the basic unitaries of a finite quantum
/// system with variables in Z(d).
#[derive(Debug, Clone)]
pub struct HilbertContext {
    d: usize,
    half_inverse: usize,
    omega: Vec<Complex>,
    fourier: CMatrix,
    clock: CMatrix,
    shift: CMatrix,
}

impl HilbertContext {
    /// Builds the context for an odd dimension d >= 3.
    pub fn new(d: usize) -> Result<Self> {
        if d < 3 || d.is_multiple_of(2) {
            return Err(Error::OddDimensionRequired(d));
        }
        let omega: Vec<Complex> = (0..d)
            .map(|k| {
                let t = 2.0 * std::f64::consts::PI * k as f64 / d as f64;
                Complex::new(t.cos(), t.sin())
            })
            .collect();
        let half_inverse = d.div_ceil(2);

        let norm = Complex::new(1.0 / (d as f64).sqrt(), 0.0);
        let fourier = CMatrix::from_fn(d, d, |n, m| norm * omega[(n * m) % d]);
        let clock = CMatrix::from_fn(d, d, |n, m| {
            if n == m {
                omega[n]
            } else {
                Complex::new(0.0, 0.0)
            }
        });
        let shift = CMatrix::from_fn(d, d, |n, m| {
            if n == (m + 1) % d {
                Complex::new(1.0, 0.0)
            } else {
                Complex::new(0.0, 0.0)
            }
        });

        Ok(Self {
            d,
            half_inverse,
            omega,
            fourier,
            clock,
            shift,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// 2⁻¹ as an element of Z(d).
    pub fn half_inverse(&self) -> usize {
        self.half_inverse
    }

    /// ω(k) = exp(i2πk/d), k reduced mod d.
    pub fn omega(&self, k: i64) -> Complex {
        self.omega[k.rem_euclid(self.d as i64) as usize]
    }

    pub fn fourier(&self) -> &CMatrix {
        &self.fourier
    }

    pub fn clock(&self) -> &CMatrix {
        &self.clock
    }

    pub fn shift(&self) -> &CMatrix {
        &self.shift
    }

    /// Displacement D(α,β) = Z^α X^β ω(-2⁻¹αβ).
    ///
    /// Assembled entrywise: D(α,β)|n⟩ = ω(αn + 2⁻¹αβ)|n+β⟩.
    pub fn displacement(&self, p: PhasePoint) -> CMatrix {
        let d = self.d;
        let mut m = CMatrix::zeros(d, d);
        for n in 0..d {
            let row = (n + p.beta) % d;
            let exponent = (p.alpha * n + self.half_inverse * p.alpha * p.beta) % d;
            m[(row, n)] = self.omega[exponent];
        }
        m
    }

    /// All d² phase-space points in flat-index order.
    pub fn points(&self) -> impl Iterator<Item = PhasePoint> + '_ {
        let d = self.d;
        (0..d * d).map(move |i| PhasePoint::from_index(i, d))
    }
}

/// Normalized fiducial vector in the position basis.
#[derive(Debug, Clone)]
pub struct FiducialVector {
    entries: CVector,
}

impl FiducialVector {
    /// Accepts a vector that is already unit norm (within 1e-12).
    pub fn new(entries: CVector) -> Result<Self> {
        let deviation = (entries.norm() - 1.0).abs();
        if deviation > 1e-12 {
            return Err(Error::FiducialNotNormalized { deviation });
        }
        Ok(Self { entries })
    }

    /// Normalizes the vector before accepting it; rejects the zero vector.
    pub fn normalized(entries: CVector) -> Result<Self> {
        let norm = entries.norm();
        if norm == 0.0 {
            return Err(Error::FiducialNotNormalized { deviation: 1.0 });
        }
        Ok(Self {
            entries: entries / Complex::new(norm, 0.0),
        })
    }

    /// The generic fiducial (1, 2, 3)/√14 used by every built-in d = 3
    /// scenario.
    pub fn default_for(d: usize) -> Result<Self> {
        if d != 3 {
            return Err(Error::NoDefaultFiducial(d));
        }
        let s = 14.0_f64.sqrt();
        Ok(Self {
            entries: CVector::from_vec(vec![
                Complex::new(1.0 / s, 0.0),
                Complex::new(2.0 / s, 0.0),
                Complex::new(3.0 / s, 0.0),
            ]),
        })
    }

    pub fn entries(&self) -> &CVector {
        &self.entries
    }

    pub fn d(&self) -> usize {
        self.entries.len()
    }
}

/// Outcome of the d-subset linear-independence check.
#[derive(Debug, Clone, Serialize)]
pub struct GenericityReport {
    pub generic: bool,
    /// First rank-deficient d-subset found, if any.
    pub witness: Option<Vec<PhasePoint>>,
    pub subsets_tested: usize,
    /// True when all C(d², d) subsets were tested (d = 3), false for sampled
    /// checks at larger d.
    pub exhaustive: bool,
}

/// The d² coherent states D(α,β)|η⟩ with their rank-1 projectors and cached
/// displacement matrices.
#[derive(Debug, Clone)]
pub struct CoherentFamily {
    context: HilbertContext,
    fiducial: FiducialVector,
    states: Vec<CVector>,
    projectors: Vec<CMatrix>,
    displacements: Vec<CMatrix>,
    genericity: GenericityReport,
}

/// Number of random d-subsets probed by the genericity check when exhaustive
/// enumeration is out of reach (d >= 5).
pub const DEFAULT_GENERICITY_SAMPLES: usize = 200;

impl CoherentFamily {
    pub fn new(context: HilbertContext, fiducial: FiducialVector) -> Result<Self> {
        Self::with_genericity_samples(context, fiducial, DEFAULT_GENERICITY_SAMPLES)
    }

    pub fn with_genericity_samples(
        context: HilbertContext,
        fiducial: FiducialVector,
        samples: usize,
    ) -> Result<Self> {
        let d = context.d();
        if fiducial.d() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: fiducial.d(),
            });
        }
        let mut states = Vec::with_capacity(d * d);
        let mut projectors = Vec::with_capacity(d * d);
        let mut displacements = Vec::with_capacity(d * d);
        for p in context.points() {
            let disp = context.displacement(p);
            let state = &disp * fiducial.entries();
            let proj = &state * state.adjoint();
            states.push(state);
            projectors.push(proj);
            displacements.push(disp);
        }
        let genericity = check_generic_states(&states, d, samples);
        Ok(Self {
            context,
            fiducial,
            states,
            projectors,
            displacements,
            genericity,
        })
    }

    pub fn context(&self) -> &HilbertContext {
        &self.context
    }

    pub fn fiducial(&self) -> &FiducialVector {
        &self.fiducial
    }

    pub fn d(&self) -> usize {
        self.context.d()
    }

    /// Number of coherent states, d².
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn state(&self, p: PhasePoint) -> &CVector {
        &self.states[p.index(self.d())]
    }

    pub fn projector(&self, p: PhasePoint) -> &CMatrix {
        &self.projectors[p.index(self.d())]
    }

    pub fn projector_by_index(&self, idx: usize) -> &CMatrix {
        &self.projectors[idx]
    }

    pub fn displacement(&self, p: PhasePoint) -> &CMatrix {
        &self.displacements[p.index(self.d())]
    }

    pub fn genericity(&self) -> &GenericityReport {
        &self.genericity
    }

    pub fn points(&self) -> impl Iterator<Item = PhasePoint> + '_ {
        self.context.points()
    }

    /// Orthogonal projector onto the span of the coherent states at `points`
    /// (rank decided by a relative singular-value cutoff).
    pub fn span_projector(&self, points: &[PhasePoint]) -> CMatrix {
        let d = self.d();
        if points.is_empty() {
            return CMatrix::zeros(d, d);
        }
        let mut m = CMatrix::zeros(d, points.len());
        for (j, p) in points.iter().enumerate() {
            m.set_column(j, self.state(*p));
        }
        let svd = m.svd(true, false);
        let u = svd.u.expect("svd requested u");
        let smax = svd.singular_values[0];
        let mut proj = CMatrix::zeros(d, d);
        for (k, &s) in svd.singular_values.iter().enumerate() {
            if s > tol::RANK_CUTOFF * smax {
                let col = u.column(k);
                proj += col * col.adjoint();
            }
        }
        hermitize(&mut proj);
        proj
    }
}

/// Re-runs the genericity check of an existing family.
pub fn check_generic(family: &CoherentFamily, samples: usize) -> GenericityReport {
    check_generic_states(&family.states, family.d(), samples)
}

fn check_generic_states(states: &[CVector], d: usize, samples: usize) -> GenericityReport {
    let n = states.len();
    if d == 3 {
        // 84 triples; exhaustive.
        let mut tested = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    tested += 1;
                    if !subset_full_rank(states, &[i, j, k], d) {
                        return GenericityReport {
                            generic: false,
                            witness: Some(
                                [i, j, k].iter().map(|&x| PhasePoint::from_index(x, d)).collect(),
                            ),
                            subsets_tested: tested,
                            exhaustive: true,
                        };
                    }
                }
            }
        }
        GenericityReport {
            generic: true,
            witness: None,
            subsets_tested: tested,
            exhaustive: true,
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x0c0a_ede2_u64 ^ d as u64);
        for t in 0..samples {
            let idx: Vec<usize> = sample(&mut rng, n, d).into_vec();
            if !subset_full_rank(states, &idx, d) {
                return GenericityReport {
                    generic: false,
                    witness: Some(idx.iter().map(|&x| PhasePoint::from_index(x, d)).collect()),
                    subsets_tested: t + 1,
                    exhaustive: false,
                };
            }
        }
        GenericityReport {
            generic: true,
            witness: None,
            subsets_tested: samples,
            exhaustive: false,
        }
    }
}

fn subset_full_rank(states: &[CVector], idx: &[usize], d: usize) -> bool {
    let mut m = CMatrix::zeros(d, idx.len());
    for (j, &i) in idx.iter().enumerate() {
        m.set_column(j, &states[i]);
    }
    let sv = m.singular_values();
    sv[sv.len() - 1] > tol::RANK_CUTOFF * sv[0]
}

/// Symmetrizes a matrix in place: M <- (M + M†)/2.
pub(crate) fn hermitize(m: &mut CMatrix) {
    let adj = m.adjoint();
    *m += adj;
    *m *= Complex::new(0.5, 0.0);
}
