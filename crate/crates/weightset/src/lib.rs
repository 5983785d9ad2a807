//! Finite multisets of integer weights and their linear-dependence calculus:
//! q-stability, indecomposable components, the equivalence relation on items
//! and the positive relation carried by an equivalence class.
//!
//! Items are identified by their position in the list, so duplicated weights
//! are distinct items.

mod classes;
mod decompose;
mod stability;

pub use classes::{class_relation, equivalence_classes, two_stable_via_crit, ClassRelation};
pub use decompose::{indecomposable_components, Decomposition};
pub use stability::{is_q_stable, is_q_stable_capped, DEFAULT_MAX_NONZERO};

use orbispace_linalg::{kernel_basis, rank, Rat, RatMatrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeightError {
    #[error("weight {index} has length {got}, expected {expected}")]
    BadLength { index: usize, expected: usize, got: usize },
    #[error("{nonzero} nonzero weights exceed the cap of {cap}")]
    CapExceeded { nonzero: usize, cap: usize },
    #[error("weight set is not 1-stable")]
    Not1Stable,
    #[error("index set is not an equivalence class")]
    NotAClass,
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightMultiset {
    m: usize,
    items: Vec<Vec<i64>>,
}

impl WeightMultiset {
    pub fn new(m: usize, items: Vec<Vec<i64>>) -> Result<Self, WeightError> {
        for (index, w) in items.iter().enumerate() {
            if w.len() != m {
                return Err(WeightError::BadLength { index, expected: m, got: w.len() });
            }
        }
        Ok(WeightMultiset { m, items })
    }

    /// Convenience constructor for tests and examples; panics on ragged input.
    pub fn from_slices(m: usize, items: &[&[i64]]) -> Self {
        Self::new(m, items.iter().map(|w| w.to_vec()).collect()).expect("ragged weights")
    }

    pub fn torus_dim(&self) -> usize {
        self.m
    }

    pub fn items(&self) -> &[Vec<i64>] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn is_zero_item(&self, i: usize) -> bool {
        self.items[i].iter().all(|&x| x == 0)
    }

    pub fn nonzero_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.is_zero_item(i)).collect()
    }

    /// `m x k` matrix whose columns are the chosen items.
    pub fn column_matrix(&self, indices: &[usize]) -> RatMatrix {
        let cols: Vec<Vec<Rat>> = indices
            .iter()
            .map(|&i| self.items[i].iter().map(|&x| Rat::from_integer(x.into())).collect())
            .collect();
        RatMatrix::from_columns(&cols, self.m)
    }

    pub fn rank_of(&self, indices: &[usize]) -> usize {
        if indices.is_empty() || self.m == 0 {
            return 0;
        }
        rank(&self.column_matrix(indices))
    }

    pub fn span_dim(&self) -> usize {
        self.rank_of(&(0..self.len()).collect::<Vec<_>>())
    }

    /// Pivot-normalized basis of the linear relations among all items.
    pub fn relation_space(&self) -> Vec<Vec<Rat>> {
        let all: Vec<usize> = (0..self.len()).collect();
        kernel_basis(&self.column_matrix(&all))
    }

    pub fn subset(&self, indices: &[usize]) -> WeightMultiset {
        WeightMultiset { m: self.m, items: indices.iter().map(|&i| self.items[i].clone()).collect() }
    }
}
