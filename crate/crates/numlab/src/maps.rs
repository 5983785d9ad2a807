use nalgebra::Quaternion;
use num_complex::Complex64;

/// `(|z|^2 projected to the sum-zero hyperplane, prod z_j^{a_j})`.
pub fn tor_quotient_map(z: &[Complex64], a: &[u32]) -> (Vec<f64>, Complex64) {
    assert!(z.len() >= 2 && z.len() == a.len());
    let x: Vec<f64> = z.iter().map(|c| c.norm_sqr()).collect();
    let mean = x.iter().sum::<f64>() / x.len() as f64;
    let w = z.iter().zip(a).fold(Complex64::new(1.0, 0.0), |w, (c, &k)| w * c.powu(k));
    (x.iter().map(|v| v - mean).collect(), w)
}

/// `v -> v i conj(v)`.
pub fn quaternion_map(v: Quaternion<f64>) -> Quaternion<f64> {
    v * Quaternion::new(0.0, 1.0, 0.0, 0.0) * v.conjugate()
}

/// `min_s |z - h(s) z'|` over `s = k / samples`, where `h(s)` runs through
/// the circle `(e(a_1 s), e(-a_0 s))` that preserves `z_0^{a_0} z_1^{a_1}`.
pub fn torus_orbit_distance(z: &[Complex64; 2], zp: &[Complex64; 2], a: [u32; 2], samples: usize) -> f64 {
    (0..samples)
        .map(|k| {
            let s = std::f64::consts::TAU * k as f64 / samples as f64;
            let h0 = Complex64::from_polar(1.0, a[1] as f64 * s);
            let h1 = Complex64::from_polar(1.0, -(a[0] as f64) * s);
            ((z[0] - h0 * zp[0]).norm_sqr() + (z[1] - h1 * zp[1]).norm_sqr()).sqrt()
        })
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{ALGEBRAIC_TOL, QUATERNION_TOL};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn tor_examples() {
        let (r, w) = tor_quotient_map(&[c(1.0, 0.0), c(0.0, 0.0)], &[1, 1]);
        assert!((r[0] - 0.5).abs() < ALGEBRAIC_TOL && (r[1] + 0.5).abs() < ALGEBRAIC_TOL);
        assert!(w.norm() < ALGEBRAIC_TOL);
        let (r, w) = tor_quotient_map(&[c(1.0, 0.0), c(1.0, 0.0)], &[1, 1]);
        assert!(r.iter().all(|x| x.abs() < ALGEBRAIC_TOL));
        assert!((w - c(1.0, 0.0)).norm() < ALGEBRAIC_TOL);
    }

    #[test]
    fn quaternion_examples() {
        let i = quaternion_map(Quaternion::new(1.0, 0.0, 0.0, 0.0));
        assert!((i - Quaternion::new(0.0, 1.0, 0.0, 0.0)).norm() < QUATERNION_TOL);
        // j i conj(j) = (j i)(-j) = (-k)(-j) = k j = -i
        let r = quaternion_map(Quaternion::new(0.0, 0.0, 1.0, 0.0));
        assert!((r - Quaternion::new(0.0, -1.0, 0.0, 0.0)).norm() < QUATERNION_TOL);
    }

    #[test]
    fn orbit_distance_of_a_translate() {
        let z = [c(0.3, -0.4), c(1.1, 0.2)];
        let s = std::f64::consts::TAU * 0.25;
        let zp = [Complex64::from_polar(1.0, -s) * z[0], Complex64::from_polar(1.0, s) * z[1]];
        assert!(torus_orbit_distance(&z, &zp, [1, 1], 400) < 1e-9);
    }
}
