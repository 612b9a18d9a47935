//! Choquet integrals of Hermitian positive semidefinite operators over the
//! discrete coherent-state families of odd-dimensional finite quantum systems.
//!
//! The crate is organised around the pipeline
//!
//! ```text
//! HilbertContext -> CoherentFamily -> QFunction -> ProjectorChain -> ChoquetResult
//! ```
//!
//! with side branches for Möbius-operator decompositions ([`choquet`]),
//! comonotonicity analysis and λ-interval scanning ([`comonotone`]), and
//! operator/partition-function bounds ([`bounds`]). The [`capacity`] module
//! carries the classical (set-function) counterpart of the machinery and
//! doubles as an oracle for the operator-valued constructions.

pub mod bounds;
pub mod capacity;
pub mod choquet;
pub mod comonotone;
pub mod error;
pub mod hilbert;
pub mod phase_space;
pub mod sampling;
pub mod tol;

mod io;

pub use error::{Error, Result};

/// Scalar type used by the quantum modules.
pub type Real = f64;
/// Complex scalar used by the quantum modules.
pub type Complex = num_complex::Complex64;
/// Dense complex matrix.
pub type CMatrix = nalgebra::DMatrix<Complex>;
/// Dense complex vector.
pub type CVector = nalgebra::DVector<Complex>;

/// Classical capacity over f64 values.
pub type CapacityF64 = capacity::Capacity<f64>;
/// Classical capacity over exact rationals.
pub type CapacityRational = capacity::Capacity<num_rational::Rational64>;

pub use hilbert::{CoherentFamily, FiducialVector, GenericityReport, HilbertContext, PhasePoint};
pub use phase_space::{dominance_ratio, p_function, q_function, wehrl_entropy};
pub use phase_space::{HermitianPsd, PFunction, QFunction};

pub use choquet::{choquet_integral, projector_chain, trace_choquet};
pub use choquet::{ChoquetResult, MobiusOperatorTable, ProjectorChain};

pub use io::MatrixJson;
