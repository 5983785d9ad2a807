//! Does a coset `G0 g` meet `Omega`?
//!
//! Translating by `t = exp(x)` shifts the return-map rotation of every
//! linear cycle `C` by an integer linear form `mu_C . x`. Antilinear cycles
//! and `V0` have translate-independent fixed spaces, so `omega(t g)` only
//! depends on which linear cycles end up with rotation `0 mod 1`. For every
//! subset `S` of linear cycles of the right size we solve
//! `mu_C . x = -phi_C (mod 1), C in S` through a Smith form and then look for
//! a point where the remaining cycles stay nonzero.

use num_traits::{ToPrimitive, Zero};
use orbispace_linalg::{frac, rank, smith_normal_form, BigInt, IntMatrix, Rat, RatMatrix};

use crate::element::MonomialElement;
use crate::omega::{fixed_dim_on_v0, omega_with_ad};
use crate::spec::RepSpec;
use crate::RepError;

pub const MAX_LINEAR_CYCLES: usize = 16;
const MAX_BRANCHES: u64 = 100_000;
const GENERIC_PRIMES: [i64; 12] = [101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MeetsOmega {
    /// A translate of the representative with `omega` in `{0, 2}`.
    Yes(MonomialElement),
    No,
    Unknown,
}

impl MeetsOmega {
    pub fn is_yes(&self) -> bool {
        matches!(self, MeetsOmega::Yes(_))
    }
}

struct LinearCycle {
    phi: Rat,
    mu: Vec<BigInt>,
}

pub fn coset_meets_omega(rep: &MonomialElement, spec: &RepSpec) -> Result<MeetsOmega, RepError> {
    let a = spec.ad_matrix(rep)?;
    let m = spec.m();
    let rk_a = rank(&RatMatrix::identity(m).sub(&a));
    let mut fixed = fixed_dim_on_v0(&rep.v0_block);
    let mut linear = Vec::new();
    for c in rep.cycles() {
        if rep.cycle_conj_count(&c) % 2 == 1 {
            fixed += 1;
            continue;
        }
        let coeffs = rep.cycle_rotation_coeffs(&c);
        let mut mu = vec![BigInt::zero(); m];
        for (k, &j) in c.iter().enumerate() {
            let target = &spec.weights.items()[rep.perm[j]];
            for (x, &l) in mu.iter_mut().zip(target) {
                *x += BigInt::from(coeffs[k] * l);
            }
        }
        linear.push(LinearCycle { phi: rep.cycle_rotation(&c), mu });
    }
    if linear.len() > MAX_LINEAR_CYCLES {
        return Err(RepError::TooManyLinearCycles(linear.len()));
    }
    // omega = real_dim - fixed - 2|S| - rk_a
    let base = spec.real_dim() as i64 - fixed as i64 - rk_a as i64;
    let mut unknown = false;
    for mask in 0u32..1 << linear.len() {
        let size = mask.count_ones() as i64;
        let omega = base - 2 * size;
        if omega != 0 && omega != 2 {
            continue;
        }
        let chosen: Vec<&LinearCycle> = (0..linear.len()).filter(|i| mask >> i & 1 == 1).map(|i| &linear[i]).collect();
        let others: Vec<&LinearCycle> = (0..linear.len()).filter(|i| mask >> i & 1 == 0).map(|i| &linear[i]).collect();
        match solve_exact(&chosen, &others, m) {
            Solve::Found(x) => {
                let delta: Vec<Rat> = spec
                    .weights
                    .items()
                    .iter()
                    .map(|l| l.iter().zip(&x).fold(Rat::zero(), |s, (&w, xi)| s + Rat::from_integer(w.into()) * xi))
                    .collect();
                let w = MonomialElement::diagonal(&delta, spec.v0_dim).compose(rep);
                let info = omega_with_ad(&w, spec, a.clone());
                if !info.in_omega {
                    return Err(RepError::InternalContradiction(format!(
                        "feasibility witness has omega {}",
                        info.omega
                    )));
                }
                return Ok(MeetsOmega::Yes(w));
            }
            Solve::Infeasible => {}
            Solve::TooLarge => unknown = true,
        }
    }
    Ok(if unknown { MeetsOmega::Unknown } else { MeetsOmega::No })
}

enum Solve {
    Found(Vec<Rat>),
    Infeasible,
    TooLarge,
}

fn dot(a: &[BigInt], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |s, (x, y)| s + Rat::from_integer(x.clone()) * y)
}

/// A point `x` with `mu_C . x + phi_C = 0 mod 1` exactly for the chosen cycles.
fn solve_exact(chosen: &[&LinearCycle], others: &[&LinearCycle], m: usize) -> Solve {
    let rows: Vec<Vec<BigInt>> = chosen.iter().map(|c| c.mu.clone()).collect();
    let mat = IntMatrix::from_rows(&rows, m);
    let snf = smith_normal_form(&mat);
    let r = snf.rank();
    // U M V = D, x = V y, D y = U b with b = -phi
    let b: Vec<Rat> = chosen.iter().map(|c| -c.phi.clone()).collect();
    let ub: Vec<Rat> = (0..chosen.len()).map(|i| dot(snf.u.row(i), &b)).collect();
    if ub[r..].iter().any(|c| !c.is_integer()) {
        return Solve::Infeasible;
    }
    let d: Vec<BigInt> = (0..r).map(|i| snf.s.get(i, i).clone()).collect();
    let mut branches: u64 = 1;
    for di in &d {
        branches = branches.saturating_mul(di.to_u64().unwrap_or(u64::MAX));
    }
    if branches > MAX_BRANCHES {
        return Solve::TooLarge;
    }
    // columns of V, for mapping y back to x
    let v_cols: Vec<Vec<BigInt>> = (0..m).map(|j| (0..m).map(|i| snf.v.get(i, j).clone()).collect()).collect();
    let w_of: Vec<Vec<BigInt>> = others
        .iter()
        .map(|c| v_cols.iter().map(|col| c.mu.iter().zip(col).fold(BigInt::zero(), |s, (a, b)| s + a * b)).collect())
        .collect();
    let free: Vec<usize> = (r..m).collect();

    let mut k = vec![0u64; r];
    loop {
        let y_fixed: Vec<Rat> =
            (0..r).map(|i| (&ub[i] + Rat::from_integer(k[i].into())) / Rat::from_integer(d[i].clone())).collect();
        let mut ok = true;
        for (c, w) in others.iter().zip(&w_of) {
            if free.iter().all(|&i| w[i].is_zero()) {
                let val = &c.phi + dot(&w[..r], &y_fixed);
                if frac(&val).is_zero() {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            for trial in 0..GENERIC_PRIMES.len() {
                let mut y = y_fixed.clone();
                for (t, _) in free.iter().enumerate() {
                    let p = GENERIC_PRIMES[(trial + t) % GENERIC_PRIMES.len()];
                    y.push(Rat::new(BigInt::from(t as i64 + 1), BigInt::from(p.pow(1 + (t as u32 % 2)))));
                }
                if others.iter().zip(&w_of).all(|(c, w)| !frac(&(&c.phi + dot(w, &y))).is_zero()) {
                    let x: Vec<Rat> = (0..m)
                        .map(|i| (0..m).fold(Rat::zero(), |s, j| s + Rat::from_integer(snf.v.get(i, j).clone()) * &y[j]))
                        .collect();
                    return Solve::Found(x);
                }
            }
        }
        // next branch
        let mut i = 0;
        loop {
            if i == r {
                return Solve::Infeasible;
            }
            k[i] += 1;
            if BigInt::from(k[i]) < d[i] {
                break;
            }
            k[i] = 0;
            i += 1;
        }
    }
}
