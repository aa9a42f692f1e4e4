//! Small dense square matrices.
//!
//! Everything in this crate lives in dimensions 2 through 16, so a plain
//! row-major `Vec` with `O(n^3)` products is the right tool.

use std::ops::{Index, IndexMut};

use crate::scalar::Real;

/// Dense square matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMat<T> {
    dim: usize,
    data: Vec<T>,
}

impl<T: Real> SquareMat<T> {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![T::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_diag(diag: &[T]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn diag(&self) -> Vec<T> {
        (0..self.dim).map(|i| self[(i, i)]).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)])
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == T::zero() {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }

    /// `S * self * S^T`.
    pub fn congruence(&self, s: &Self) -> Self {
        s.matmul(self).matmul(&s.transpose())
    }

    /// Congruence by a diagonal matrix: entry `(i, j)` scaled by `d[i] * d[j]`.
    pub fn diag_congruence(&self, d: &[T]) -> Self {
        assert_eq!(self.dim, d.len(), "dimension mismatch");
        Self::from_fn(self.dim, |i, j| d[i] * self[(i, j)] * d[j])
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        Self::from_fn(self.dim, |i, j| self[(i, j)] + rhs[(i, j)])
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        Self::from_fn(self.dim, |i, j| self[(i, j)] - rhs[(i, j)])
    }

    pub fn scale(&self, c: T) -> Self {
        Self::from_fn(self.dim, |i, j| c * self[(i, j)])
    }

    /// Block-diagonal concatenation.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.dim;
        let mut m = Self::zeros(n + other.dim);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = self[(i, j)];
            }
        }
        for i in 0..other.dim {
            for j in 0..other.dim {
                m[(n + i, n + j)] = other[(i, j)];
            }
        }
        m
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, &x| acc.max(x.abs()))
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|&x| x * x).sum::<T>().sqrt()
    }

    /// Largest relative asymmetry `|a_ij - a_ji| / max_abs`.
    pub fn symmetry_defect(&self) -> T {
        let scale = self.max_abs();
        if scale == T::zero() {
            return T::zero();
        }
        let mut worst = T::zero();
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        worst / scale
    }

    /// Replace with `(A + A^T) / 2`.
    pub fn symmetrize(&mut self) {
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                let avg = (self[(i, j)] + self[(j, i)]) * T::half();
                self[(i, j)] = avg;
                self[(j, i)] = avg;
            }
        }
    }

    /// Apply to a vector.
    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.dim, v.len(), "dimension mismatch");
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    /// Cast every entry through `f64` (used to instantiate fixtures at
    /// another precision).
    pub fn cast<U: Real>(&self) -> SquareMat<U> {
        SquareMat::from_fn(self.dim, |i, j| U::lit(self[(i, j)].to_f64().unwrap()))
    }
}

impl<T> Index<(usize, usize)> for SquareMat<T> {
    type Output = T;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.dim + j]
    }
}

impl<T> IndexMut<(usize, usize)> for SquareMat<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.dim + j]
    }
}

impl<T: Real, const N: usize> From<[[T; N]; N]> for SquareMat<T> {
    fn from(rows: [[T; N]; N]) -> Self {
        Self::from_fn(N, |i, j| rows[i][j])
    }
}
