//! Matrix/fiducial file formats, the seeded noise harness, ground-state
//! utilities and the bundled reproduction scenarios behind the `choquetq`
//! binary.

pub mod ground;
pub mod matrix_io;
pub mod noise;
pub mod reproduce;
pub mod scenarios;

/// Default absolute tolerance for matching three-decimal reference cells.
pub const DEFAULT_CELL_TOL: f64 = 0.005;

/// Cell tolerance after applying the `CHOQUETQ_TOL` environment override.
pub fn cell_tolerance(default: f64) -> f64 {
    match std::env::var("CHOQUETQ_TOL") {
        Ok(value) => value.parse().unwrap_or(default),
        Err(_) => default,
    }
}
