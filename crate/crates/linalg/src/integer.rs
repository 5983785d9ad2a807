use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rat::{is_integer, Rat};
use crate::LinalgError;

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<BigInt>], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r.iter().cloned());
        }
        IntMatrix { rows: rows.len(), cols, data }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let rows: Vec<Vec<BigInt>> =
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Self::from_rows(&rows, cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    fn at(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.at(j, i) = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k).clone();
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    *out.at(i, j) += &a * rhs.get(k, j);
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += f * row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(src, j) * f;
            *self.at(dst, j) += v;
        }
    }

    /// col[dst] += f * col[src]
    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, src) * f;
            *self.at(i, dst) += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j).clone();
            *self.at(i, j) = v;
        }
    }
}

/// `U * M * V = S`.
#[derive(Debug, Clone)]
pub struct Snf {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    /// Diagonal of `S`, including trailing zeros up to `min(rows, cols)`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols)).map(|i| self.s.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().iter().filter(|d| !d.is_zero()).count()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let mut s = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut v = IntMatrix::identity(m.cols);
    let n = m.rows.min(m.cols);

    for t in 0..n {
        loop {
            // smallest nonzero entry of the trailing block goes to (t,t)
            let mut best: Option<(usize, usize)> = None;
            for i in t..s.rows {
                for j in t..s.cols {
                    let x = s.get(i, j);
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < s.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            s.swap_rows(t, bi);
            u.swap_rows(t, bi);
            s.swap_cols(t, bj);
            v.swap_cols(t, bj);

            let mut clean = true;
            for i in t + 1..s.rows {
                if s.get(i, t).is_zero() {
                    continue;
                }
                let q = -s.get(i, t).div_floor(s.get(t, t));
                s.add_row(i, t, &q);
                u.add_row(i, t, &q);
                clean &= s.get(i, t).is_zero();
            }
            for j in t + 1..s.cols {
                if s.get(t, j).is_zero() {
                    continue;
                }
                let q = -s.get(t, j).div_floor(s.get(t, t));
                s.add_col(j, t, &q);
                v.add_col(j, t, &q);
                clean &= s.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility of the remaining block
            let piv = s.get(t, t).clone();
            let bad = (t + 1..s.rows)
                .find(|&i| (t + 1..s.cols).any(|j| !s.get(i, j).is_multiple_of(&piv)));
            match bad {
                Some(i) => {
                    s.add_row(t, i, &BigInt::one());
                    u.add_row(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    Snf { u, s, v }
}

/// Row-style Hermite normal form of the lattice spanned by `rows`: upper
/// echelon, positive pivots, entries above each pivot reduced into
/// `[0, pivot)`, zero rows dropped.
pub fn hermite_normal_form(rows: &[Vec<BigInt>], dim: usize) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut out_rows = 0;
    for c in 0..dim {
        // Euclid on column c among rows out_rows..
        loop {
            let nz: Vec<usize> = (out_rows..a.len()).filter(|&i| !a[i][c].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| a[i][c].abs()).unwrap();
            a.swap(out_rows, p);
            let mut done = true;
            for i in out_rows + 1..a.len() {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[out_rows][c]);
                let pivot_row = a[out_rows].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
                done &= a[i][c].is_zero();
            }
            if done {
                break;
            }
        }
        if out_rows < a.len() && !a[out_rows][c].is_zero() {
            if a[out_rows][c].is_negative() {
                for x in a[out_rows].iter_mut() {
                    *x = -x.clone();
                }
            }
            let pivot_row = a[out_rows].clone();
            for i in 0..out_rows {
                let q = a[i][c].div_floor(&pivot_row[c]);
                if q.is_zero() {
                    continue;
                }
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
            }
            out_rows += 1;
        }
    }
    a.truncate(out_rows);
    a
}

/// Integer lattice in `Z^ambient_dim`, basis kept in Hermite normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    pub ambient_dim: usize,
    pub basis: Vec<Vec<BigInt>>,
    pub saturated: bool,
}

impl Lattice {
    /// Lattice spanned by arbitrary integer vectors; saturation is computed.
    pub fn spanned_by(vectors: &[Vec<BigInt>], ambient_dim: usize) -> Self {
        let basis = hermite_normal_form(vectors, ambient_dim);
        let saturated = is_saturated(&basis, ambient_dim);
        Lattice { ambient_dim, basis, saturated }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

fn is_saturated(basis: &[Vec<BigInt>], dim: usize) -> bool {
    if basis.is_empty() {
        return true;
    }
    let snf = smith_normal_form(&IntMatrix::from_rows(basis, dim));
    snf.invariant_factors().iter().all(One::is_one)
}

/// Saturated lattice `{d : d^T M = 0}`; `M` has one row per coordinate of `d`.
pub fn integer_kernel(m: &IntMatrix) -> Lattice {
    // M^T d = 0. With U M^T V = S, d = V y and y vanishes on the rank part.
    let mt = m.transpose();
    let snf = smith_normal_form(&mt);
    let r = snf.rank();
    let n = m.rows;
    let gens: Vec<Vec<BigInt>> =
        (r..n).map(|j| (0..n).map(|i| snf.v.get(i, j).clone()).collect()).collect();
    let basis = hermite_normal_form(&gens, n);
    Lattice { ambient_dim: n, basis, saturated: true }
}

/// Whether `delta` (read mod 1) is annihilated by every element of `d`.
pub fn in_subtorus(delta: &[Rat], d: &Lattice) -> Result<bool, LinalgError> {
    if !d.saturated {
        return Err(LinalgError::NotSaturated);
    }
    if delta.len() != d.ambient_dim {
        return Err(LinalgError::DimensionMismatch { expected: d.ambient_dim, got: delta.len() });
    }
    Ok(d.basis.iter().all(|b| {
        let s = b.iter().zip(delta).fold(Rat::zero(), |acc, (x, y)| acc + Rat::from_integer(x.clone()) * y);
        is_integer(&s)
    }))
}
