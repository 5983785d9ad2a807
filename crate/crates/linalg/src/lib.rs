//! Exact linear algebra over `Q` and `Z`.
//!
//! Everything here works on arbitrary-precision values. Rationals are kept in
//! lowest terms with a positive denominator, so structural equality is
//! mathematical equality.

mod congruence;
mod integer;
mod matrix;
mod rat;

pub use congruence::{solve_mod_one, Congruence};
pub use integer::{
    hermite_normal_form, in_subtorus, integer_kernel, smith_normal_form, IntMatrix, Lattice, Snf,
};
pub use matrix::{kernel_basis, rank, rref, RatMatrix};
pub use rat::{frac, parse_rat, rat, rat_to_string, Rat};

pub use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("lattice is not saturated")]
    NotSaturated,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("cannot parse rational {0:?}")]
    BadRational(String),
}
