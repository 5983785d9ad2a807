use num_traits::Zero;
use orbispace_linalg::{rank, RatMatrix};

use crate::element::MonomialElement;
use crate::spec::RepSpec;
use crate::RepError;

/// Ranks attached to an element: `omega = rk(E - g) - rk(E - A)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdInfo {
    pub a: RatMatrix,
    pub rk_e_minus_a: usize,
    pub dim_ker_e_minus_g: usize,
    pub rk_e_minus_g: usize,
    pub omega: i64,
    pub in_omega: bool,
}

/// Real dimension of the fixed space of `g` on the lines.
pub fn fixed_dim_on_lines(g: &MonomialElement) -> usize {
    g.cycles()
        .iter()
        .map(|c| {
            if g.cycle_conj_count(c) % 2 == 1 {
                1
            } else if g.cycle_rotation(c).is_zero() {
                2
            } else {
                0
            }
        })
        .sum()
}

pub fn fixed_dim_on_v0(b: &RatMatrix) -> usize {
    let n = b.rows();
    n - rank(&RatMatrix::identity(n).sub(b))
}

pub fn omega_invariants(g: &MonomialElement, spec: &RepSpec) -> Result<AdInfo, RepError> {
    let a = spec.ad_matrix(g)?;
    Ok(omega_with_ad(g, spec, a))
}

pub(crate) fn omega_with_ad(g: &MonomialElement, spec: &RepSpec, a: RatMatrix) -> AdInfo {
    let m = a.rows();
    let rk_e_minus_a = rank(&RatMatrix::identity(m).sub(&a));
    let dim_ker = fixed_dim_on_lines(g) + fixed_dim_on_v0(&g.v0_block);
    let rk_e_minus_g = spec.real_dim() - dim_ker;
    let omega = rk_e_minus_g as i64 - rk_e_minus_a as i64;
    AdInfo { a, rk_e_minus_a, dim_ker_e_minus_g: dim_ker, rk_e_minus_g, omega, in_omega: omega == 0 || omega == 2 }
}

/// Checks every generator and returns its invariants.
pub fn validate(spec: &RepSpec) -> Result<Vec<AdInfo>, RepError> {
    spec.check_shape()?;
    spec.generators
        .iter()
        .enumerate()
        .map(|(k, gen)| {
            let g = &gen.element;
            let a = spec.ad_matrix(g).map_err(|e| match e {
                RepError::InconsistentAd => RepError::InconsistentAdAt(k),
                other => other,
            })?;
            if !spec.is_orthogonal(&g.v0_block) {
                return Err(RepError::NotOrthogonal(k));
            }
            Ok(omega_with_ad(g, spec, a))
        })
        .collect()
}
