//! Floating-point counterparts of the exact machinery: elements as real
//! orthogonal matrices, SVD ranks, and the explicit quotient maps of a
//! torus on `C^n` and of the circle on the quaternions.

mod lab;
mod materialize;
mod maps;

pub use lab::{lab_suite, random_element, rng_for, verify_suite, CheckReport};
pub use materialize::{blown_up_gram, float_rank, materialize, orthogonality_defect, FloatMatrix};
pub use maps::{quaternion_map, tor_quotient_map, torus_orbit_distance};

/// Algebraic identities.
pub const ALGEBRAIC_TOL: f64 = 1e-9;
/// Singular values above this count towards the rank.
pub const RANK_THRESHOLD: f64 = 1e-7;
/// Statistical orbit separation.
pub const SEPARATION_TOL: f64 = 1e-3;
/// Quaternion identities, which involve no cancellation.
pub const QUATERNION_TOL: f64 = 1e-12;
