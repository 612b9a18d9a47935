//! Numerical thresholds shared across the crate.
//!
//! These are fixed by the contracts of the individual operations; they are not
//! user-tunable knobs. All of them were chosen for dense complex arithmetic in
//! dimensions d <= 9.

/// Two Q-values closer than this (relative to the operator trace) are ranked
/// as a tie and ordered lexicographically by phase-space point.
pub const RANKING_TIE: f64 = 1e-12;

/// Relative singular-value cutoff used for rank decisions (genericity checks
/// and span projectors).
pub const RANK_CUTOFF: f64 = 1e-8;

/// A chain step with Tr[Π⊥ Π(i)] below this declares the state linearly
/// dependent on the ones already consumed, and emits a zero difference
/// projector.
pub const CHAIN_DEPENDENT: f64 = 1e-10;

/// Largest tolerated Hermitian asymmetry, relative to the matrix scale.
pub const HERMITICITY: f64 = 1e-10;

/// An operator is accepted as positive semidefinite when its smallest
/// eigenvalue is above -PSD_RELATIVE times its norm.
pub const PSD_RELATIVE: f64 = 1e-8;

/// Trace comparisons in the Choquet preorder treat differences below this as
/// equivalence.
pub const PREORDER: f64 = 1e-9;

/// Default λ-resolution for crossing refinement in interval scans.
pub const CROSSING_REFINE: f64 = 1e-6;
