//! Exact finite stabilizers and a sampler for counterexamples to
//! `G_v = <G_v ∩ Omega>`.

use std::collections::{HashSet, VecDeque};

use num_integer::Integer;
use num_traits::{One, Zero};
use orbispace_linalg::{rat, solve_mod_one, BigInt, Congruence, IntMatrix, Rat};
use orbispace_repmodel::{omega_invariants, ComponentGroup, MonomialElement};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SOLUTION_CAP: usize = 100_000;

/// A point of the lines: `z_j = modulus_j * exp(2 pi i phase_j)`; modulus
/// `0` is the zero coordinate. `V0` coordinates are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleVector {
    pub modulus: Vec<u32>,
    pub phase: Vec<Rat>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub vector: SampleVector,
    pub stabilizer_order: usize,
    pub omega_generated_order: usize,
}

/// The stabilizer of `v`, or `None` when it is infinite or too large to list.
pub fn stabilizer(group: &ComponentGroup, v: &SampleVector) -> Option<Vec<MonomialElement>> {
    let spec = group.spec();
    let weights = spec.weights.items();
    let support: Vec<usize> = (0..spec.lines()).filter(|&j| v.modulus[j] > 0).collect();
    if spec.weights.rank_of(&support) < spec.m() {
        return None;
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for coset in &group.cosets {
        let g = &coset.representative;
        if (0..spec.lines()).any(|j| v.modulus[g.perm[j]] != v.modulus[j]) {
            continue;
        }
        let rows: Vec<Vec<BigInt>> =
            support.iter().map(|&j| weights[g.perm[j]].iter().map(|&x| BigInt::from(x)).collect()).collect();
        let b: Vec<Rat> = support
            .iter()
            .map(|&j| {
                let own = if g.conj[j] { -&v.phase[j] } else { v.phase[j].clone() };
                &v.phase[g.perm[j]] - &g.rot[j] - own
            })
            .collect();
        let sols = match solve_mod_one(&IntMatrix::from_rows(&rows, spec.m()), &b, SOLUTION_CAP) {
            Congruence::Infeasible => continue,
            Congruence::Finite(s) => s,
            Congruence::Infinite | Congruence::TooMany(_) => return None,
        };
        for t in sols {
            let delta: Vec<Rat> = weights
                .iter()
                .map(|w| w.iter().zip(&t).fold(Rat::zero(), |s, (&x, y)| s + Rat::from_integer(x.into()) * y))
                .collect();
            let h = MonomialElement::diagonal(&delta, spec.v0_dim).compose(g);
            if seen.insert(h.clone()) {
                out.push(h);
            }
        }
    }
    Some(out)
}

/// Order of the group generated by `gens`.
pub(crate) fn generated_order(gens: &[MonomialElement], identity: MonomialElement) -> usize {
    let mut seen = HashSet::from([identity.clone()]);
    let mut queue = VecDeque::from([identity]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.compose(&x);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen.len()
}

/// Checks `G_v = <G_v ∩ Omega>` at one point with finite stabilizer.
pub(crate) fn check_point(group: &ComponentGroup, v: &SampleVector) -> Option<Counterexample> {
    let stab = stabilizer(group, v)?;
    let spec = group.spec();
    let omega: Vec<MonomialElement> = stab
        .iter()
        .filter(|h| omega_invariants(h, spec).map(|a| a.in_omega).unwrap_or(false))
        .cloned()
        .collect();
    let generated = generated_order(&omega, spec.identity());
    (generated < stab.len()).then(|| Counterexample {
        vector: v.clone(),
        stabilizer_order: stab.len(),
        omega_generated_order: generated,
    })
}

/// Grid step: twice the lcm of the rotation denominators of the cosets.
pub(crate) fn grid_size(group: &ComponentGroup) -> BigInt {
    let l = group
        .cosets
        .iter()
        .flat_map(|c| c.representative.rot.iter())
        .fold(BigInt::one(), |l, r| l.lcm(r.denom()));
    l * 2
}

fn sample(rng: &mut ChaCha8Rng, lines: usize, grid: i64, on_grid: bool) -> SampleVector {
    let modulus = (0..lines).map(|_| [0u32, 1, 1, 1, 1, 2][rng.gen_range(0..6)]).collect();
    let phase = (0..lines)
        .map(|_| {
            if on_grid {
                rat(rng.gen_range(0..grid), grid)
            } else {
                let q = rng.gen_range(1..=24);
                rat(rng.gen_range(0..q), q)
            }
        })
        .collect();
    SampleVector { modulus, phase }
}

/// Searches for a point whose finite stabilizer is not generated by its
/// `Omega` part. Trial `k` draws from a generator keyed by `(seed, k)`;
/// even trials use the rotation grid, odd trials random small rationals.
pub fn sample_condition_iv(group: &ComponentGroup, seed: u64, trials: usize) -> Option<Counterexample> {
    let grid = i64::try_from(grid_size(group)).unwrap_or(i64::MAX / 2).min(1 << 20);
    let lines = group.spec().lines();
    (0..trials).find_map(|k| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(k as u64);
        check_point(group, &sample(&mut rng, lines, grid, k % 2 == 0))
    })
}
