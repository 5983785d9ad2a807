use nalgebra::DMatrix;
use num_traits::ToPrimitive;
use orbispace_linalg::{Rat, RatMatrix};
use orbispace_repmodel::{MonomialElement, RepSpec};

pub type FloatMatrix = DMatrix<f64>;

fn f(x: &Rat) -> f64 {
    x.to_f64().expect("finite rational")
}

fn to_float(m: &RatMatrix) -> FloatMatrix {
    FloatMatrix::from_fn(m.rows(), m.cols(), |i, j| f(&m[(i, j)]))
}

/// Real matrix of `g` in the coordinates `(Re z_0, Im z_0, ..., V0)`.
pub fn materialize(g: &MonomialElement, spec: &RepSpec) -> FloatMatrix {
    let n = g.lines();
    let dim = 2 * n + spec.v0_dim;
    let mut m = FloatMatrix::zeros(dim, dim);
    for j in 0..n {
        let (s, c) = (std::f64::consts::TAU * f(&g.rot[j])).sin_cos();
        let k = if g.conj[j] { -1.0 } else { 1.0 };
        let t = 2 * g.perm[j];
        m[(t, 2 * j)] = c;
        m[(t, 2 * j + 1)] = -s * k;
        m[(t + 1, 2 * j)] = s;
        m[(t + 1, 2 * j + 1)] = c * k;
    }
    m.view_mut((2 * n, 2 * n), (spec.v0_dim, spec.v0_dim)).copy_from(&to_float(&g.v0_block));
    m
}

/// Identity on the lines, the Gram form on `V0`.
pub fn blown_up_gram(spec: &RepSpec) -> FloatMatrix {
    let n = 2 * spec.lines();
    let mut g = FloatMatrix::identity(n + spec.v0_dim, n + spec.v0_dim);
    g.view_mut((n, n), (spec.v0_dim, spec.v0_dim)).copy_from(&to_float(&spec.v0_gram));
    g
}

/// `max |M^T G M - G|`.
pub fn orthogonality_defect(m: &FloatMatrix, gram: &FloatMatrix) -> f64 {
    (m.transpose() * gram * m - gram).amax()
}

pub fn float_rank(m: &FloatMatrix, threshold: f64) -> usize {
    if m.is_empty() {
        return 0;
    }
    m.clone().svd(false, false).singular_values.iter().filter(|&&s| s > threshold).count()
}
