use num_traits::{Signed, Zero};
use orbispace_linalg::{rank, Rat, RatMatrix};
use orbispace_weightset::WeightMultiset;

use crate::element::MonomialElement;
use crate::RepError;

pub const DEFAULT_GROUP_ORDER_CAP: usize = 20_000;
pub const DEFAULT_IV_TRIALS: usize = 2_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Caps {
    pub group_order_cap: usize,
    pub iv_trials: usize,
    pub seed: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { group_order_cap: DEFAULT_GROUP_ORDER_CAP, iv_trials: DEFAULT_IV_TRIALS, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: Option<String>,
    pub element: MonomialElement,
}

/// `V = W_0 + ... + W_{n-1} + V0`: one complex line per weight, and a real
/// space `V0` on which the torus acts trivially.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepSpec {
    pub weights: WeightMultiset,
    pub v0_dim: usize,
    pub v0_gram: RatMatrix,
    pub generators: Vec<Generator>,
    pub caps: Caps,
}

impl RepSpec {
    /// Spec with identity Gram form and default caps.
    pub fn new(weights: WeightMultiset, v0_dim: usize, generators: Vec<MonomialElement>) -> Self {
        RepSpec {
            weights,
            v0_dim,
            v0_gram: RatMatrix::identity(v0_dim),
            generators: generators.into_iter().map(|element| Generator { name: None, element }).collect(),
            caps: Caps::default(),
        }
    }

    pub fn m(&self) -> usize {
        self.weights.torus_dim()
    }

    pub fn lines(&self) -> usize {
        self.weights.len()
    }

    /// Real dimension of `V`.
    pub fn real_dim(&self) -> usize {
        2 * self.lines() + self.v0_dim
    }

    pub fn identity(&self) -> MonomialElement {
        MonomialElement::identity(self.lines(), self.v0_dim)
    }

    pub fn generator_elements(&self) -> Vec<MonomialElement> {
        self.generators.iter().map(|g| g.element.clone()).collect()
    }

    fn weight(&self, j: usize) -> Vec<Rat> {
        self.weights.items()[j].iter().map(|&x| Rat::from_integer(x.into())).collect()
    }

    /// Solves `A lambda_j = s_j lambda_{perm(j)}` for all lines.
    pub fn ad_matrix(&self, g: &MonomialElement) -> Result<RatMatrix, RepError> {
        let m = self.m();
        let n = self.lines();
        if m == 0 {
            return Ok(RatMatrix::zeros(0, 0));
        }
        // A L = L' with L the weight columns; A^T solves L^T A^T = L'^T.
        let cols: Vec<Vec<Rat>> = (0..n).map(|j| self.weight(j)).collect();
        let targets: Vec<Vec<Rat>> = (0..n)
            .map(|j| {
                let w = self.weight(g.perm[j]);
                if g.conj[j] {
                    w.into_iter().map(|x| -x).collect()
                } else {
                    w
                }
            })
            .collect();
        let l = RatMatrix::from_columns(&cols, m);
        let (_, pivots) = orbispace_linalg::rref(&l);
        if pivots.len() < m {
            return Err(RepError::WeightsDontSpan);
        }
        let basis = RatMatrix::from_columns(&pivots.iter().map(|&p| cols[p].clone()).collect::<Vec<_>>(), m);
        let image = RatMatrix::from_columns(&pivots.iter().map(|&p| targets[p].clone()).collect::<Vec<_>>(), m);
        let a = &image * &basis.inverse().expect("pivot columns are independent");
        for j in 0..n {
            if a.mul_vec(&cols[j]) != targets[j] {
                return Err(RepError::InconsistentAd);
            }
        }
        if rank(&a) < m {
            return Err(RepError::InconsistentAd);
        }
        Ok(a)
    }

    pub fn is_orthogonal(&self, b: &RatMatrix) -> bool {
        b.rows() == self.v0_dim && b.cols() == self.v0_dim && &(&b.transpose() * &self.v0_gram) * b == self.v0_gram
    }

    /// Structural checks on the spec itself, independent of generators.
    pub fn check_shape(&self) -> Result<(), RepError> {
        if let Some(i) = (0..self.lines()).find(|&i| self.weights.is_zero_item(i)) {
            return Err(RepError::ZeroWeight(i));
        }
        if self.weights.rank_of(&(0..self.lines()).collect::<Vec<_>>()) < self.m() {
            return Err(RepError::WeightsDontSpan);
        }
        let g = &self.v0_gram;
        if g.rows() != self.v0_dim || g.cols() != self.v0_dim {
            return Err(RepError::BadShape("v0_gram size differs from v0_dim".into()));
        }
        if *g != g.transpose() || !positive_definite(g) {
            return Err(RepError::GramNotPositiveDefinite);
        }
        for (k, gen) in self.generators.iter().enumerate() {
            let e = &gen.element;
            let n = self.lines();
            let mut seen = vec![false; n];
            let perm_ok = e.perm.len() == n
                && e.perm.iter().all(|&p| p < n && !std::mem::replace(&mut seen[p], true));
            if !perm_ok || e.conj.len() != n || e.rot.len() != n {
                return Err(RepError::BadShape(format!("generator {k}: perm/conj/rot must describe {n} lines")));
            }
            if e.v0_block.rows() != self.v0_dim || e.v0_block.cols() != self.v0_dim {
                return Err(RepError::BadShape(format!("generator {k}: v0_block must be {0}x{0}", self.v0_dim)));
            }
        }
        Ok(())
    }
}

/// Symmetric Gaussian elimination without pivoting; all pivots positive.
fn positive_definite(g: &RatMatrix) -> bool {
    let n = g.rows();
    let mut a = g.clone();
    for k in 0..n {
        let p = a[(k, k)].clone();
        if !p.is_positive() {
            return false;
        }
        for i in k + 1..n {
            let f = &a[(i, k)] / &p;
            if f.is_zero() {
                continue;
            }
            for j in k..n {
                let v = &f * &a[(k, j)];
                a[(i, j)] -= v;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use orbispace_linalg::rat;

    fn perm_only(perm: Vec<usize>, conj: Vec<bool>) -> MonomialElement {
        let n = perm.len();
        MonomialElement::new(perm, conj, vec![Rat::zero(); n], RatMatrix::identity(0))
    }

    #[test]
    fn ad_examples() {
        let ones = RepSpec::new(WeightMultiset::from_slices(1, &[&[1], &[1], &[1]]), 0, vec![]);
        let a = ones.ad_matrix(&MonomialElement::conjugate_all(3, 0)).unwrap();
        assert_eq!(a, RatMatrix::from_i64(&[vec![-1]]));
        let a = ones.ad_matrix(&perm_only(vec![1, 2, 0], vec![false; 3])).unwrap();
        assert_eq!(a, RatMatrix::from_i64(&[vec![1]]));

        let plane = RepSpec::new(WeightMultiset::from_slices(2, &[&[1, 0], &[0, 1]]), 0, vec![]);
        let a = plane.ad_matrix(&perm_only(vec![1, 0], vec![false; 2])).unwrap();
        assert_eq!(a, RatMatrix::from_i64(&[vec![0, 1], vec![1, 0]]));

        // A = ((0,1/2),(2,0)) is forced and permutes the weights
        let skew = RepSpec::new(WeightMultiset::from_slices(2, &[&[1, 0], &[0, 2]]), 0, vec![]);
        let a = skew.ad_matrix(&perm_only(vec![1, 0], vec![false; 2])).unwrap();
        assert_eq!(a, RatMatrix::from_rows(vec![vec![rat(0, 1), rat(1, 2)], vec![rat(2, 1), rat(0, 1)]], 2));

        let three = RepSpec::new(WeightMultiset::from_slices(2, &[&[1, 0], &[0, 1], &[1, 1]]), 0, vec![]);
        assert_eq!(
            three.ad_matrix(&perm_only(vec![1, 0, 2], vec![true, false, false])),
            Err(RepError::InconsistentAd)
        );
    }

    #[test]
    fn gram_checks() {
        let mut s = RepSpec::new(WeightMultiset::new(0, vec![]).unwrap(), 2, vec![]);
        assert!(s.check_shape().is_ok());
        s.v0_gram = RatMatrix::from_i64(&[vec![1, 2], vec![2, 1]]);
        assert_eq!(s.check_shape(), Err(RepError::GramNotPositiveDefinite));
        s.v0_gram = RatMatrix::from_i64(&[vec![2, -1], vec![-1, 2]]);
        assert!(s.check_shape().is_ok());
        // the swap is orthogonal for this form, a rotation by 90 degrees is not
        assert!(s.is_orthogonal(&RatMatrix::from_i64(&[vec![0, 1], vec![1, 0]])));
        assert!(!s.is_orthogonal(&RatMatrix::from_i64(&[vec![0, -1], vec![1, 0]])));
    }
}
