//! Sampled checks with reproducible randomness: trial `k` of a run with
//! seed `s` draws from ChaCha8 seeded by `s` on stream `k`.

use nalgebra::Quaternion;
use num_complex::Complex64;
use orbispace_linalg::{rat, Rat};
use orbispace_repmodel::{omega_invariants, MonomialElement, RepSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::{
    blown_up_gram, float_rank, materialize, orthogonality_defect, quaternion_map, tor_quotient_map,
    torus_orbit_distance, FloatMatrix, ALGEBRAIC_TOL, QUATERNION_TOL, RANK_THRESHOLD, SEPARATION_TOL,
};

const TORUS_DENOMINATOR: i64 = 720;
const ORBIT_GRID: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub trials: usize,
    pub max_defect: f64,
    pub pass: bool,
}

impl CheckReport {
    fn new(check: &str, trials: usize, max_defect: f64, tol: f64) -> Self {
        CheckReport { check: check.to_string(), trials, max_defect, pass: max_defect < tol }
    }
}

pub fn rng_for(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// A random word of length at most 6 in the generators, times a torus
/// element with rotations in `(1/720) Z`.
pub fn random_element(rng: &mut ChaCha8Rng, spec: &RepSpec) -> MonomialElement {
    let mut g = spec.identity();
    if !spec.generators.is_empty() {
        for _ in 0..rng.gen_range(0..=6) {
            g = spec.generators[rng.gen_range(0..spec.generators.len())].element.compose(&g);
        }
    }
    let t: Vec<Rat> = (0..spec.m()).map(|_| rat(rng.gen_range(0..TORUS_DENOMINATOR), TORUS_DENOMINATOR)).collect();
    let delta: Vec<Rat> = spec
        .weights
        .items()
        .iter()
        .map(|w| w.iter().zip(&t).fold(rat(0, 1), |s, (&x, y)| s + Rat::from_integer(x.into()) * y))
        .collect();
    MonomialElement::diagonal(&delta, spec.v0_dim).compose(&g)
}

fn random_vector(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

/// A `G`-invariant of `v`: sorted squared moduli of the lines, then the
/// Gram norm of the `V0` part.
fn invariant(v: &[f64], spec: &RepSpec, gram: &FloatMatrix) -> Vec<f64> {
    let n = spec.lines();
    let mut out: Vec<f64> = (0..n).map(|j| v[2 * j] * v[2 * j] + v[2 * j + 1] * v[2 * j + 1]).collect();
    out.sort_by(f64::total_cmp);
    let y = FloatMatrix::from_column_slice(spec.v0_dim, 1, &v[2 * n..]);
    let g0 = gram.view((2 * n, 2 * n), (spec.v0_dim, spec.v0_dim));
    out.push((y.transpose() * g0 * &y)[(0, 0)]);
    out
}

/// Orthogonality, homomorphism, exact-vs-float rank and invariance checks
/// for the group of `spec`.
pub fn verify_suite(spec: &RepSpec, seed: u64, trials: usize) -> Vec<CheckReport> {
    let gram = blown_up_gram(spec);
    let dim = spec.real_dim();
    let eye = FloatMatrix::identity(dim, dim);

    let ortho = spec
        .generators
        .iter()
        .map(|g| orthogonality_defect(&materialize(&g.element, spec), &gram))
        .fold(0.0, f64::max);

    let (mut hom, mut rank, mut orbit) = (0.0f64, 0.0f64, 0.0f64);
    for k in 0..trials {
        let mut rng = rng_for(seed, k);
        let g = random_element(&mut rng, spec);
        let h = random_element(&mut rng, spec);
        let (mg, mh) = (materialize(&g, spec), materialize(&h, spec));
        hom = hom.max((materialize(&g.compose(&h), spec) - &mg * &mh).amax());

        if let Ok(info) = omega_invariants(&g, spec) {
            let float = float_rank(&(&eye - &mg), RANK_THRESHOLD);
            rank = rank.max((info.rk_e_minus_g as f64 - float as f64).abs());
        }

        let v = random_vector(&mut rng, dim);
        let gv: Vec<f64> = (&mg * FloatMatrix::from_column_slice(dim, 1, &v)).iter().copied().collect();
        let (a, b) = (invariant(&v, spec, &gram), invariant(&gv, spec, &gram));
        orbit = orbit.max(a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max));
    }
    vec![
        CheckReport::new("orthogonality", spec.generators.len(), ortho, ALGEBRAIC_TOL),
        CheckReport::new("homomorphism", trials, hom, ALGEBRAIC_TOL),
        CheckReport::new("rank", trials, rank, 0.5),
        CheckReport::new("orbit_invariance", trials, orbit, ALGEBRAIC_TOL),
    ]
}

fn complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Point in the unit disk.
fn disk(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(rng.gen::<f64>().sqrt(), std::f64::consts::TAU * rng.gen::<f64>())
}

fn map_distance(p: &(Vec<f64>, Complex64), q: &(Vec<f64>, Complex64)) -> f64 {
    p.0.iter().zip(&q.0).map(|(x, y)| (x - y).abs()).fold((p.1 - q.1).norm(), f64::max)
}

/// Quotient-map checks: torus invariance, quaternion identities, and orbit
/// separation on fibers.
pub fn lab_suite(seed: u64, trials: usize) -> Vec<CheckReport> {
    let (mut inv, mut re, mut norm, mut sep) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let mut fibers_ok = true;
    for k in 0..trials {
        let mut rng = rng_for(seed, k);

        let n = rng.gen_range(2..=5);
        let a: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
        let z: Vec<Complex64> = (0..n).map(|_| complex(&mut rng)).collect();
        let mut theta: Vec<f64> = (0..n - 1).map(|_| rng.gen::<f64>()).collect();
        let partial: f64 = theta.iter().zip(&a).map(|(t, &x)| t * x as f64).sum();
        theta.push(-partial / a[n - 1] as f64);
        let hz: Vec<Complex64> =
            z.iter().zip(&theta).map(|(c, t)| Complex64::from_polar(1.0, std::f64::consts::TAU * t) * c).collect();
        inv = inv.max(map_distance(&tor_quotient_map(&z, &a), &tor_quotient_map(&hz, &a)));

        let v = Quaternion::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let q = quaternion_map(v);
        re = re.max(q.w.abs());
        norm = norm.max((q.norm() - v.norm_squared()).abs());

        let pair = [[1, 1], [1, 2], [2, 1]][rng.gen_range(0..3)];
        let z2 = [disk(&mut rng), disk(&mut rng)];
        let s = std::f64::consts::TAU * rng.gen::<f64>();
        let zp = [Complex64::from_polar(1.0, -(pair[1] as f64) * s) * z2[0], Complex64::from_polar(1.0, pair[0] as f64 * s) * z2[1]];
        fibers_ok &= map_distance(&tor_quotient_map(&z2, &pair), &tor_quotient_map(&zp, &pair)) < 1e-10;
        sep = sep.max(torus_orbit_distance(&z2, &zp, pair, ORBIT_GRID));
    }
    let mut separation = CheckReport::new("tor_separation", trials, sep, SEPARATION_TOL);
    separation.pass &= fibers_ok;
    vec![
        CheckReport::new("tor_invariance", trials, inv, ALGEBRAIC_TOL),
        CheckReport::new("quaternion_real_part", trials, re, QUATERNION_TOL),
        CheckReport::new("quaternion_norm", trials, norm, QUATERNION_TOL),
        separation,
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use orbispace_linalg::RatMatrix;
    use orbispace_weightset::WeightMultiset;

    fn g23() -> RepSpec {
        let z = || rat(0, 1);
        RepSpec::new(
            WeightMultiset::from_slices(1, &[&[1], &[1], &[1]]),
            0,
            vec![
                MonomialElement::new(vec![1, 2, 0], vec![false; 3], vec![z(), z(), z()], RatMatrix::identity(0)),
                MonomialElement::new(vec![0, 1, 2], vec![false; 3], vec![rat(1, 2), z(), z()], RatMatrix::identity(0)),
                MonomialElement::new(vec![0, 2, 1], vec![true; 3], vec![z(), z(), z()], RatMatrix::identity(0)),
            ],
        )
    }

    #[test]
    fn trivial_spec_has_zero_defects() {
        let s = RepSpec::new(WeightMultiset::new(0, vec![]).unwrap(), 2, vec![]);
        for r in verify_suite(&s, 0, 20) {
            assert_eq!(r.max_defect, 0.0, "{}", r.check);
            assert!(r.pass);
        }
    }

    #[test]
    fn g23_passes() {
        for r in verify_suite(&g23(), 1, 200) {
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn corrupted_v0_block_is_flagged() {
        let mut s = RepSpec::new(WeightMultiset::from_slices(1, &[&[1], &[1]]), 2, vec![]);
        let mut g = s.identity();
        g.v0_block = RatMatrix::from_i64(&[vec![2, 0], vec![0, 1]]);
        s.generators.push(orbispace_repmodel::Generator { name: None, element: g });
        let reports = verify_suite(&s, 0, 50);
        let ortho = reports.iter().find(|r| r.check == "orthogonality").unwrap();
        assert!(ortho.max_defect > 1e-3 && !ortho.pass);
        assert!(reports.iter().find(|r| r.check == "orbit_invariance").unwrap().max_defect > 1e-3);
    }

    #[test]
    fn lab_is_deterministic_and_passes() {
        let a = lab_suite(5, 100);
        assert_eq!(a, lab_suite(5, 100));
        assert!(a.iter().all(|r| r.pass), "{a:?}");
    }
}
