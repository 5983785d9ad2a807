//! Linear congruences `M x = b (mod 1)` with integer `M`, rational `b`, and
//! real unknowns read modulo `Z^n`.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::integer::{smith_normal_form, IntMatrix};
use crate::rat::{frac, is_integer, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Congruence {
    Infeasible,
    /// All solutions modulo `Z^n`, each entry in `[0, 1)`.
    Finite(Vec<Vec<Rat>>),
    /// The solution set has positive dimension.
    Infinite,
    /// Finitely many solutions, but more than the cap.
    TooMany(BigInt),
}

impl Congruence {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, Congruence::Infeasible)
    }
}

pub fn solve_mod_one(m: &IntMatrix, b: &[Rat], cap: usize) -> Congruence {
    assert_eq!(m.rows, b.len());
    let n = m.cols;
    let snf = smith_normal_form(m);
    let r = snf.rank();
    let c: Vec<Rat> = (0..m.rows)
        .map(|i| snf.u.row(i).iter().zip(b).fold(Rat::zero(), |s, (u, x)| s + Rat::from_integer(u.clone()) * x))
        .collect();
    if c[r..].iter().any(|x| !is_integer(x)) {
        return Congruence::Infeasible;
    }
    if r < n {
        return Congruence::Infinite;
    }
    let d: Vec<BigInt> = (0..r).map(|i| snf.s.get(i, i).clone()).collect();
    let count = d.iter().fold(BigInt::from(1), |p, x| p * x);
    match count.to_usize() {
        Some(k) if k <= cap => {}
        _ => return Congruence::TooMany(count),
    }
    let mut out = Vec::new();
    let mut ks = vec![BigInt::zero(); n];
    loop {
        let y: Vec<Rat> =
            (0..n).map(|i| (&c[i] + Rat::from_integer(ks[i].clone())) / Rat::from_integer(d[i].clone())).collect();
        let x: Vec<Rat> = (0..n)
            .map(|i| frac(&(0..n).fold(Rat::zero(), |s, j| s + Rat::from_integer(snf.v.get(i, j).clone()) * &y[j])))
            .collect();
        out.push(x);
        let mut i = 0;
        loop {
            if i == n {
                return Congruence::Finite(out);
            }
            ks[i] += 1;
            if ks[i] < d[i] {
                break;
            }
            ks[i] = BigInt::zero();
            i += 1;
        }
    }
}
