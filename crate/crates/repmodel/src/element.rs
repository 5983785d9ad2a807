//! Monomial elements and their algebra.
//!
//! An element maps line `j` to line `perm[j]` by `z -> exp(2 pi i rot[j]) * c_j(z)`
//! where `c_j` is complex conjugation when `conj[j]` is set. Elements act on
//! the left: `g.compose(h)` is "apply `h`, then `g`". With that convention
//!
//! ```text
//! perm(gh)    = perm(g) . perm(h)
//! conj(gh)[j] = conj(g)[perm(h)[j]] xor conj(h)[j]
//! rot(gh)[j]  = rot(g)[perm(h)[j]] + s * rot(h)[j],  s = -1 iff conj(g)[perm(h)[j]]
//! ```
//!
//! and `v0_block(gh) = v0_block(g) * v0_block(h)`.

use num_traits::{One, Zero};
use orbispace_linalg::{frac, Rat, RatMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialElement {
    pub perm: Vec<usize>,
    pub conj: Vec<bool>,
    /// Rotation numbers, always reduced into `[0, 1)`.
    pub rot: Vec<Rat>,
    pub v0_block: RatMatrix,
}

fn sign(c: bool) -> Rat {
    if c {
        -Rat::one()
    } else {
        Rat::one()
    }
}

impl MonomialElement {
    pub fn new(perm: Vec<usize>, conj: Vec<bool>, rot: Vec<Rat>, v0_block: RatMatrix) -> Self {
        let rot = rot.iter().map(frac).collect();
        MonomialElement { perm, conj, rot, v0_block }
    }

    pub fn identity(lines: usize, v0_dim: usize) -> Self {
        MonomialElement {
            perm: (0..lines).collect(),
            conj: vec![false; lines],
            rot: vec![Rat::zero(); lines],
            v0_block: RatMatrix::identity(v0_dim),
        }
    }

    /// Diagonal rotation by `delta`, trivial on `V0`.
    pub fn diagonal(delta: &[Rat], v0_dim: usize) -> Self {
        let n = delta.len();
        Self::new((0..n).collect(), vec![false; n], delta.to_vec(), RatMatrix::identity(v0_dim))
    }

    /// Complex conjugation on every line.
    pub fn conjugate_all(lines: usize, v0_dim: usize) -> Self {
        let mut g = Self::identity(lines, v0_dim);
        g.conj = vec![true; lines];
        g
    }

    pub fn lines(&self) -> usize {
        self.perm.len()
    }

    pub fn v0_dim(&self) -> usize {
        self.v0_block.rows()
    }

    pub fn compose(&self, h: &MonomialElement) -> MonomialElement {
        assert_eq!(self.lines(), h.lines(), "line count mismatch");
        let n = self.lines();
        let mut perm = vec![0; n];
        let mut conj = vec![false; n];
        let mut rot = vec![Rat::zero(); n];
        for j in 0..n {
            let k = h.perm[j];
            perm[j] = self.perm[k];
            conj[j] = self.conj[k] ^ h.conj[j];
            rot[j] = &self.rot[k] + sign(self.conj[k]) * &h.rot[j];
        }
        Self::new(perm, conj, rot, &self.v0_block * &h.v0_block)
    }

    /// `None` when the `V0` block is singular.
    pub fn inverse(&self) -> Option<MonomialElement> {
        let n = self.lines();
        let mut perm = vec![0; n];
        let mut conj = vec![false; n];
        let mut rot = vec![Rat::zero(); n];
        for j in 0..n {
            let k = self.perm[j];
            perm[k] = j;
            conj[k] = self.conj[j];
            rot[k] = -(sign(self.conj[j]) * &self.rot[j]);
        }
        Some(Self::new(perm, conj, rot, self.v0_block.inverse()?))
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.lines(), self.v0_dim())
    }

    pub fn is_antilinear_anywhere(&self) -> bool {
        self.conj.iter().any(|&c| c)
    }

    /// Cycles of `perm`, each starting at its smallest line and listed in
    /// the order `j, perm[j], perm[perm[j]], ...`.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.lines();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut j = self.perm[s];
            while j != s {
                seen[j] = true;
                c.push(j);
                j = self.perm[j];
            }
            out.push(c);
        }
        out
    }

    /// Rotation of the return map of a cycle, as signed coefficients on the
    /// rotation numbers of the cycle's lines: the return map is
    /// `z -> exp(2 pi i sum_k coeff[k] rot[cycle[k]]) c(z)`.
    pub fn cycle_rotation_coeffs(&self, cycle: &[usize]) -> Vec<i64> {
        // acc <- rot[j] + s_j * acc, applied along the cycle
        let mut coeffs = vec![0i64; cycle.len()];
        for (k, &j) in cycle.iter().enumerate() {
            if self.conj[j] {
                for c in coeffs.iter_mut().take(k) {
                    *c = -*c;
                }
            }
            coeffs[k] = 1;
        }
        coeffs
    }

    /// Signed rotation sum of a cycle, in `[0, 1)`.
    pub fn cycle_rotation(&self, cycle: &[usize]) -> Rat {
        let c = self.cycle_rotation_coeffs(cycle);
        let s = cycle.iter().zip(&c).fold(Rat::zero(), |a, (&j, &k)| a + Rat::from_integer(k.into()) * &self.rot[j]);
        frac(&s)
    }

    pub fn cycle_conj_count(&self, cycle: &[usize]) -> usize {
        cycle.iter().filter(|&&j| self.conj[j]).count()
    }

    /// Rotations indexed by target line: `u[perm[j]] = rot[j]`. Left
    /// multiplication by a diagonal element adds to this vector.
    pub fn target_rotations(&self) -> Vec<Rat> {
        let mut u = vec![Rat::zero(); self.lines()];
        for j in 0..self.lines() {
            u[self.perm[j]] = self.rot[j].clone();
        }
        u
    }
}
