//! Representations `V = W_0 + ... + W_{n-1} + V0` of a compact group whose
//! identity component is a torus, described by weights and monomial
//! generators, together with the exact group computations on them.

mod element;
mod feasibility;
mod group;
mod omega;
mod spec;

pub use element::MonomialElement;
pub use feasibility::{coset_meets_omega, MeetsOmega, MAX_LINEAR_CYCLES};
pub use group::{
    component_group, cosets_generate, factors_over_partition, restrict, weight_annihilator, Block, ComponentGroup,
    Coset,
};
pub use omega::{fixed_dim_on_lines, fixed_dim_on_v0, omega_invariants, validate, AdInfo};
pub use spec::{Caps, Generator, RepSpec, DEFAULT_GROUP_ORDER_CAP, DEFAULT_IV_TRIALS};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepError {
    #[error("malformed spec: {0}")]
    BadShape(String),
    #[error("line {0} has zero weight; zero-weight directions belong to V0")]
    ZeroWeight(usize),
    #[error("weights do not span the character space")]
    WeightsDontSpan,
    #[error("no matrix A with A lambda_j = s_j lambda_perm(j)")]
    InconsistentAd,
    #[error("generator {0}: no matrix A with A lambda_j = s_j lambda_perm(j)")]
    InconsistentAdAt(usize),
    #[error("generator {0}: v0_block is not orthogonal for the Gram form")]
    NotOrthogonal(usize),
    #[error("v0_gram is not symmetric positive definite")]
    GramNotPositiveDefinite,
    #[error("component group exceeds the cap of {cap} cosets")]
    CapExceeded { cap: usize },
    #[error("{0} linear cycles exceed the feasibility cap")]
    TooManyLinearCycles(usize),
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
}
