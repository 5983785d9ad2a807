//! Exact real models of a torus-trivial complex line folded into `V0`.
//!
//! `z -> exp(2 pi i theta) c(z)` is rational in the basis `(1, i)` when
//! `4 theta` is an integer and in the basis `(1, omega)`, `omega = exp(2 pi i/3)`,
//! when `6 theta` is.

use orbispace_linalg::{frac, rat, Rat, RatMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlaneBasis {
    Square,
    Hexagonal,
}

impl PlaneBasis {
    /// Smallest basis in which every given rotation is rational.
    pub fn for_rotations<'a>(rots: impl IntoIterator<Item = &'a Rat> + Clone) -> Option<Self> {
        let fits = |k: i64| rots.clone().into_iter().all(|t| (t * Rat::from_integer(k.into())).is_integer());
        if fits(4) {
            Some(PlaneBasis::Square)
        } else if fits(6) {
            Some(PlaneBasis::Hexagonal)
        } else {
            None
        }
    }

    pub fn gram(self) -> RatMatrix {
        match self {
            PlaneBasis::Square => RatMatrix::identity(2),
            PlaneBasis::Hexagonal => {
                RatMatrix::from_rows(vec![vec![rat(1, 1), rat(-1, 2)], vec![rat(-1, 2), rat(1, 1)]], 2)
            }
        }
    }

    /// Matrix of `z -> exp(2 pi i theta) c(z)`; `theta` must fit the basis.
    pub fn matrix(self, theta: &Rat, conj: bool) -> RatMatrix {
        let (step, unit) = match self {
            PlaneBasis::Square => (RatMatrix::from_i64(&[vec![0, -1], vec![1, 0]]), 4),
            // multiplication by exp(i pi/3) = 1 + omega
            PlaneBasis::Hexagonal => (RatMatrix::from_i64(&[vec![1, -1], vec![1, 0]]), 6),
        };
        let k = (frac(theta) * Rat::from_integer(unit.into())).to_integer();
        let mut r = RatMatrix::identity(2);
        let mut i = orbispace_linalg::BigInt::from(0);
        while i < k {
            r = &step * &r;
            i += 1;
        }
        if conj {
            let c = match self {
                PlaneBasis::Square => RatMatrix::from_i64(&[vec![1, 0], vec![0, -1]]),
                PlaneBasis::Hexagonal => RatMatrix::from_i64(&[vec![1, -1], vec![0, -1]]),
            };
            r = &r * &c;
        }
        r
    }
}
