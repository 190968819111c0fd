//! Dense square/rectangular matrices over a coefficient ring, plus the
//! series-matrix helpers the eigen and R-matrix recursions need.

use super::scalar::Ring;
use super::series::Series;
use crate::error::{Error, Result};
use std::fmt;

/// Row-major matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct Mat<T: Ring> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Ring> Mat<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut m = Self::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(rhs.data.iter())
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(rhs.data.iter())
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.neg()).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix dimension mismatch");
        let mut out = Self::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    out[(i, j)] = out[(i, j)].add(&a.mul(b));
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &T) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() && !v[j].is_zero() {
                        acc = acc.add(&self[(i, j)].mul(&v[j]));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn set_column(&mut self, j: usize, v: &[T]) {
        assert_eq!(v.len(), self.rows);
        for i in 0..self.rows {
            self[(i, j)] = v[i].clone();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self[(i, j)] == T::one()
                    } else {
                        self[(i, j)].is_zero()
                    }
                })
            })
    }

    /// Diagonal matrix from entries.
    pub fn diag(entries: &[T]) -> Self {
        let mut m = Self::zero(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Solve A x = b by Gaussian elimination; A square with invertible
    /// pivots available by row swaps. Errors when singular.
    pub fn solve(&self, b: &[T]) -> Result<Vec<T>> {
        assert!(self.is_square());
        assert_eq!(self.rows, b.len());
        let n = self.rows;
        let mut a = self.clone();
        let mut rhs = b.to_vec();
        for col in 0..n {
            let pivot_row = (col..n)
                .find(|&r| a[(r, col)].inv().is_some())
                .ok_or(Error::NonInvertibleConstantTerm)?;
            if pivot_row != col {
                for j in 0..n {
                    let tmp = a[(pivot_row, j)].clone();
                    a[(pivot_row, j)] = a[(col, j)].clone();
                    a[(col, j)] = tmp;
                }
                rhs.swap(pivot_row, col);
            }
            let pinv = a[(col, col)].inv().unwrap();
            for j in 0..n {
                a[(col, j)] = a[(col, j)].mul(&pinv);
            }
            rhs[col] = rhs[col].mul(&pinv);
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..n {
                    a[(r, j)] = a[(r, j)].sub(&f.mul(&a[(col, j)]));
                }
                rhs[r] = rhs[r].sub(&f.mul(&rhs[col]));
            }
        }
        Ok(rhs)
    }

    /// Inverse by Gaussian elimination over a field-like ring.
    pub fn inverse(&self) -> Result<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot_row = (col..n)
                .find(|&r| a[(r, col)].inv().is_some())
                .ok_or(Error::NonInvertibleConstantTerm)?;
            if pivot_row != col {
                for j in 0..n {
                    let tmp = a[(pivot_row, j)].clone();
                    a[(pivot_row, j)] = a[(col, j)].clone();
                    a[(col, j)] = tmp;
                    let tmp = inv[(pivot_row, j)].clone();
                    inv[(pivot_row, j)] = inv[(col, j)].clone();
                    inv[(col, j)] = tmp;
                }
            }
            let pinv = a[(col, col)].inv().unwrap();
            for j in 0..n {
                a[(col, j)] = a[(col, j)].mul(&pinv);
                inv[(col, j)] = inv[(col, j)].mul(&pinv);
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..n {
                    a[(r, j)] = a[(r, j)].sub(&f.mul(&a[(col, j)]));
                    inv[(r, j)] = inv[(r, j)].sub(&f.mul(&inv[(col, j)]));
                }
            }
        }
        Ok(inv)
    }
}

impl<T: Ring> std::ops::Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T: Ring> std::ops::IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Ring + fmt::Display> fmt::Display for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[ ")?;
            for j in 0..self.cols {
                write!(f, "{}{}", self[(i, j)], if j + 1 < self.cols { ", " } else { "" })?;
            }
            writeln!(f, " ]")?;
        }
        Ok(())
    }
}

// ---- series-valued matrices ----

/// The q^k coefficient matrix of a matrix whose entries are series.
pub fn mat_coeff<T: Ring>(m: &Mat<Series<T>>, k: usize) -> Mat<T> {
    m.map(|s| s.coeff(k))
}

/// Assemble a series-entried matrix from per-degree coefficient matrices.
pub fn mat_from_coeffs<T: Ring>(coeffs: &[Mat<T>], order: usize) -> Mat<Series<T>> {
    assert!(!coeffs.is_empty());
    let rows = coeffs[0].rows();
    let cols = coeffs[0].cols();
    Mat::from_fn(rows, cols, |i, j| {
        let mut s = Series::zero(order);
        for (k, c) in coeffs.iter().enumerate().take(order + 1) {
            s.set_coeff(k, c[(i, j)].clone());
        }
        s
    })
}

/// Inverse of a series-entried square matrix whose constant-term matrix is
/// invertible, computed degree by degree.
pub fn series_mat_inverse<T: Ring>(m: &Mat<Series<T>>, order: usize) -> Result<Mat<Series<T>>> {
    let n = m.rows();
    assert!(m.is_square());
    let a: Vec<Mat<T>> = (0..=order).map(|k| mat_coeff(m, k)).collect();
    let b0 = a[0].inverse()?;
    let mut b: Vec<Mat<T>> = vec![b0.clone()];
    for k in 1..=order {
        // B_k = -B_0 * sum_{j=1..k} A_j B_{k-j}
        let mut acc = Mat::zero(n, n);
        for j in 1..=k {
            acc = acc.add(&a[j].mul(&b[k - j]));
        }
        b.push(b0.mul(&acc).neg());
    }
    Ok(mat_from_coeffs(&b, order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{frac, Scalar};
    use crate::algebra::series::QSeries;

    #[test]
    fn inverse_small_scalar_matrix() {
        let t1 = Scalar::t1();
        let t2 = Scalar::t2();
        let m = Mat::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => t1.clone(),
            (0, 1) => frac(1, 1),
            (1, 0) => frac(0, 1),
            (1, 1) => t2.clone(),
            _ => unreachable!(),
        });
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inv.mul(&m).is_identity());
    }

    #[test]
    fn solve_matches_inverse() {
        let m = Mat::from_fn(3, 3, |i, j| frac((i + 2 * j + 1) as i64, 1 + (i == j) as i64));
        let b = vec![frac(1, 1), frac(0, 1), frac(2, 3)];
        let x = m.solve(&b).unwrap();
        let back = m.apply(&x);
        for (u, v) in back.iter().zip(b.iter()) {
            assert_eq!(u, v);
        }
    }

    #[test]
    fn series_matrix_inverse_roundtrip() {
        let order = 4;
        let q = QSeries::x(order);
        let one = QSeries::one(order);
        let m = Mat::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => one.clone(),
            (0, 1) => q.clone(),
            (1, 0) => q.mul(&q),
            (1, 1) => one.add(&q),
            _ => unreachable!(),
        });
        let inv = series_mat_inverse(&m, order).unwrap();
        let prod = m.mul(&inv);
        for i in 0..2 {
            for j in 0..2 {
                let want = if i == j {
                    QSeries::one(order)
                } else {
                    QSeries::zero(order)
                };
                assert_eq!(prod[(i, j)], want);
            }
        }
    }
}
