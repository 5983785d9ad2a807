//! Eliminates non-singleton equivalence classes of the weights.
//!
//! For a class `N` the lines `V_N` are replaced by the quotient of `V_N` by
//! the subtorus acting only there: `|N| - 1` real moment coordinates (a
//! sum-zero hyperplane, added to `V0`) and one complex coordinate
//! `prod c_{s_j}(z_j)^{a_j}` carrying the character `sum a_j s_j lambda_j`.
//! The torus shrinks accordingly. Repeating this ends with 2-stable weights.

mod planes;
mod step;

pub use step::reduce_step;

use orbispace_repmodel::{RepError, RepSpec};
use orbispace_weightset::{is_q_stable, ClassRelation, WeightError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReduceError {
    #[error("weight set is not 1-stable")]
    Not1Stable,
    #[error("no equivalence class with two or more elements")]
    NoReducibleClass,
    #[error("generator {generator} conjugates class {class:?} non-uniformly")]
    MixedConjugationOnClass { generator: usize, class: Vec<usize> },
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepDims {
    pub m_before: usize,
    pub m_after: usize,
    pub v0_before: usize,
    pub v0_after: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    /// Orbit of the eliminated class under the generators, in line indices
    /// of the spec before the step.
    pub class_orbit: Vec<Vec<usize>>,
    pub relations: Vec<ClassRelation>,
    /// Character of each new coordinate in the reduced torus coordinates;
    /// zero when the coordinate went to `V0`.
    pub new_weights: Vec<Vec<i64>>,
    pub dims: StepDims,
    pub group_propagated: bool,
    pub warning: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    pub final_spec: RepSpec,
}

pub fn reduce_to_2stable(spec: &RepSpec) -> Result<ReductionTrace, ReduceError> {
    if !is_q_stable(&spec.weights, 1)? {
        return Err(ReduceError::Not1Stable);
    }
    let mut current = spec.clone();
    let mut steps = Vec::new();
    while !is_q_stable(&current.weights, 2)? {
        let (next, step) = reduce_step(&current)?;
        if next.real_dim() >= current.real_dim() {
            return Err(ReduceError::InternalContradiction("reduction did not shrink V".into()));
        }
        current = next;
        steps.push(step);
    }
    Ok(ReductionTrace { steps, final_spec: current })
}
