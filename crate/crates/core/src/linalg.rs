//! Dense exact linear algebra over Q(lambda).
//!
//! Matrices double as linear maps: an m-by-n matrix sends a length-n
//! coordinate column to a length-m column (`matrix * vector`). Gaussian
//! elimination uses a fixed pivot rule (leftmost nonzero column, topmost
//! nonzero row) so kernel bases and solutions are reproducible.

use crate::scalar::Scalar;
use std::fmt;

pub type Vector = Vec<Scalar>;

pub fn vec_zero(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn vec_is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vector {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vector {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(c: &Scalar, v: &[Scalar]) -> Vector {
    v.iter().map(|x| c * x).collect()
}

/// Standard basis column e_i of length n.
pub fn std_basis(n: usize, i: usize) -> Vector {
    let mut v = vec_zero(n);
    v[i] = Scalar::one();
    v
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vector>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vector]) -> Matrix {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        Matrix::from_fn(r, c, |i, j| cols[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn col(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vector {
        (0..self.cols).map(|j| self.at(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Matrix::identity(self.rows)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j) + rhs.at(i, j))
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j) - rhs.at(i, j))
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| c * self.at(i, j))
    }

    pub fn mul_mat(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = Scalar::zero();
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                acc = &acc + &(a * rhs.at(k, j));
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for k in 0..self.cols {
                    let a = self.at(i, k);
                    if a.is_zero() || v[k].is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * &v[k]);
                }
                acc
            })
            .collect()
    }

    /// Stack `[self | rhs]` side by side.
    pub fn hstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.rows, rhs.rows);
        Matrix::from_fn(self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols { self.at(i, j).clone() } else { rhs.at(i, j - self.cols).clone() }
        })
    }

    /// 2x2 block matrix; dimensions must be consistent.
    pub fn block(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Matrix {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        Matrix::from_fn(a.rows + c.rows, a.cols + b.cols, |i, j| {
            match (i < a.rows, j < a.cols) {
                (true, true) => a.at(i, j).clone(),
                (true, false) => b.at(i, j - a.cols).clone(),
                (false, true) => c.at(i - a.rows, j).clone(),
                (false, false) => d.at(i - a.rows, j - a.cols).clone(),
            }
        })
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !m.at(i, col).is_zero()) else {
                continue;
            };
            for j in 0..m.cols {
                let tmp = m.at(row, j).clone();
                m.set(row, j, m.at(p, j).clone());
                m.set(p, j, tmp);
            }
            let inv = m.at(row, col).inv("rref pivot").expect("pivot nonzero");
            for j in 0..m.cols {
                m.set(row, j, &inv * m.at(row, j));
            }
            for i in 0..m.rows {
                if i == row || m.at(i, col).is_zero() {
                    continue;
                }
                let factor = m.at(i, col).clone();
                for j in 0..m.cols {
                    let v = m.at(i, j) - &(&factor * m.at(row, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space, one vector per free column, in column order.
    /// Each basis vector has a 1 in its free column.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec_zero(self.cols);
            v[free] = Scalar::one();
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = -r.at(prow, free);
            }
            basis.push(v);
        }
        basis
    }

    /// Solve `self * x = rhs` exactly. Returns None when inconsistent;
    /// free variables, if any, are set to zero.
    pub fn solve(&self, rhs: &[Scalar]) -> Option<Vector> {
        assert_eq!(self.rows, rhs.len());
        let aug = self.hstack(&Matrix::from_cols(&[rhs.to_vec()]));
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec_zero(self.cols);
        for (prow, &pcol) in pivots.iter().enumerate() {
            x[pcol] = r.at(prow, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let aug = self.hstack(&Matrix::identity(self.rows));
        let (r, pivots) = aug.rref();
        if pivots.len() != self.rows || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        Some(Matrix::from_fn(self.rows, self.cols, |i, j| r.at(i, self.cols + j).clone()))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Structure-constant tensor for a bilinear map: `T[i][j][k]` is the k-th
/// output coordinate on the basis pair (i, j).
#[derive(Clone, PartialEq, Eq)]
pub struct Tensor3 {
    d0: usize,
    d1: usize,
    d2: usize,
    data: Vec<Scalar>,
}

impl Tensor3 {
    pub fn zeros(d0: usize, d1: usize, d2: usize) -> Tensor3 {
        Tensor3 { d0, d1, d2, data: vec![Scalar::zero(); d0 * d1 * d2] }
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.d0, self.d1, self.d2)
    }

    pub fn at(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.data[(i * self.d1 + j) * self.d2 + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Scalar) {
        self.data[(i * self.d1 + j) * self.d2 + k] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Bilinear application: contract a length-d0 and a length-d1 vector.
    pub fn apply(&self, u: &[Scalar], v: &[Scalar]) -> Vector {
        assert_eq!(u.len(), self.d0, "tensor apply shape mismatch");
        assert_eq!(v.len(), self.d1, "tensor apply shape mismatch");
        let mut out = vec_zero(self.d2);
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, slot) in out.iter_mut().enumerate() {
                    let t = self.at(i, j, k);
                    if !t.is_zero() {
                        *slot = &*slot + &(&ab * t);
                    }
                }
            }
        }
        out
    }

    /// Output row on a basis pair, cheaper than `apply` with basis vectors.
    pub fn on_basis(&self, i: usize, j: usize) -> Vector {
        (0..self.d2).map(|k| self.at(i, j, k).clone()).collect()
    }
}

impl fmt::Debug for Tensor3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tensor3 {}x{}x{}", self.d0, self.d1, self.d2)?;
        for i in 0..self.d0 {
            for j in 0..self.d1 {
                for k in 0..self.d2 {
                    let v = self.at(i, j, k);
                    if !v.is_zero() {
                        write!(f, " [{i},{j},{k}]={v}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rint, Poly};

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn rref_solve_kernel() {
        // rho = [1 -3] over basis (e1, e2): kernel spanned by (3, 1).
        let rho = Matrix::from_rows(vec![vec![s(1), s(-3)]]);
        let ker = rho.kernel_basis();
        assert_eq!(ker, vec![vec![s(3), s(1)]]);

        let m = Matrix::from_rows(vec![vec![s(1), s(2)], vec![s(3), s(4)]]);
        let x = m.solve(&[s(5), s(6)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![s(5), s(6)]);
        let inv = m.inverse().unwrap();
        assert!(m.mul_mat(&inv).is_identity());

        let sing = Matrix::from_rows(vec![vec![s(1), s(2)], vec![s(2), s(4)]]);
        assert!(sing.inverse().is_none());
        assert!(sing.solve(&[s(0), s(1)]).is_none());
        assert_eq!(sing.rank(), 1);
    }

    #[test]
    fn symbolic_entries() {
        let lam = Scalar::lambda();
        let m = Matrix::from_rows(vec![
            vec![lam.clone(), s(1)],
            vec![s(1), lam.clone()],
        ]);
        let inv = m.inverse().unwrap();
        assert!(m.mul_mat(&inv).is_identity());
        // det = l^2 - 1; entries should carry the rational function.
        let expect = Scalar::ratio(
            Poly::lambda(),
            Poly::new(vec![rint(-1), rint(0), rint(1)]),
        )
        .unwrap();
        assert_eq!(inv.at(0, 0), &expect);
    }

    #[test]
    fn tensor_apply() {
        let mut t = Tensor3::zeros(2, 2, 2);
        t.set(0, 0, 0, s(1));
        t.set(0, 1, 1, s(2));
        let out = t.apply(&[s(1), s(0)], &[s(3), s(4)]);
        assert_eq!(out, vec![s(3), s(8)]);
        assert_eq!(t.on_basis(0, 1), vec![s(0), s(2)]);
    }
}
