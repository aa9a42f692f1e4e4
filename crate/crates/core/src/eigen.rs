//! Cyclic Jacobi eigensolver for small dense symmetric matrices.
//!
//! Jacobi is foolproof on symmetric input and, unlike QR on these
//! badly scaled covariance problems, computes small eigenvalues with high
//! relative accuracy. All matrices here are at most 16x16, where its
//! `O(n^3)` sweeps are effectively free.

use crate::error::{Error, Result};
use crate::mat::SquareMat;
use crate::scalar::Real;

/// Eigendecomposition `A = Q diag(values) Q^T` with orthonormal columns in
/// `vectors`, eigenvalues sorted ascending.
#[derive(Debug, Clone)]
pub struct SymEigen<T> {
    pub values: Vec<T>,
    pub vectors: SquareMat<T>,
}

const MAX_SWEEPS: usize = 64;

/// Diagonalize a symmetric matrix by cyclic Jacobi rotations.
///
/// The caller is responsible for symmetry; only the upper triangle drives
/// the rotations and the input is symmetrized defensively first.
pub fn sym_eigen<T: Real>(a: &SquareMat<T>) -> Result<SymEigen<T>> {
    let n = a.dim();
    let mut a = a.clone();
    a.symmetrize();
    let mut q = SquareMat::identity(n);

    let scale = a.frobenius_norm();
    if scale == T::zero() || n == 1 {
        return Ok(sorted(a.diag(), q));
    }
    let tol = T::epsilon() * scale;

    for _ in 0..MAX_SWEEPS {
        let mut off = T::zero();
        for p in 0..n - 1 {
            for qq in p + 1..n {
                off += a[(p, qq)] * a[(p, qq)];
            }
        }
        if off.sqrt() <= tol {
            return Ok(sorted(a.diag(), q));
        }

        for p in 0..n - 1 {
            for r in p + 1..n {
                let apq = a[(p, r)];
                if apq.abs() <= T::epsilon() * (a[(p, p)].abs() + a[(r, r)].abs()) {
                    a[(p, r)] = T::zero();
                    a[(r, p)] = T::zero();
                    continue;
                }
                // Rotation annihilating a_pr, Numerical Recipes form.
                let theta = (a[(r, r)] - a[(p, p)]) / (T::two() * apq);
                let t = if theta.abs() > T::one() / T::epsilon().sqrt() {
                    // Avoid theta^2 overflow; asymptotic root.
                    T::half() / theta
                } else {
                    let mag = T::one() / (theta.abs() + (T::one() + theta * theta).sqrt());
                    if theta < T::zero() {
                        -mag
                    } else {
                        mag
                    }
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = t * c;
                rotate(&mut a, &mut q, p, r, c, s);
            }
        }
    }

    // Report how far from diagonal we stalled.
    let mut off = T::zero();
    for p in 0..n - 1 {
        for r in p + 1..n {
            off += a[(p, r)] * a[(p, r)];
        }
    }
    Err(Error::ConvergenceFailure { residual: (off.sqrt() / scale).to_f64().unwrap_or(f64::NAN) })
}

/// Apply the rotation `G(p, r, c, s)` as `G^T A G` and accumulate `Q G`.
fn rotate<T: Real>(a: &mut SquareMat<T>, q: &mut SquareMat<T>, p: usize, r: usize, c: T, s: T) {
    let n = a.dim();
    let app = a[(p, p)];
    let arr = a[(r, r)];
    let apr = a[(p, r)];

    a[(p, p)] = c * c * app - T::two() * c * s * apr + s * s * arr;
    a[(r, r)] = s * s * app + T::two() * c * s * apr + c * c * arr;
    a[(p, r)] = T::zero();
    a[(r, p)] = T::zero();

    for k in 0..n {
        if k != p && k != r {
            let akp = a[(k, p)];
            let akr = a[(k, r)];
            a[(k, p)] = c * akp - s * akr;
            a[(p, k)] = a[(k, p)];
            a[(k, r)] = s * akp + c * akr;
            a[(r, k)] = a[(k, r)];
        }
        let qkp = q[(k, p)];
        let qkr = q[(k, r)];
        q[(k, p)] = c * qkp - s * qkr;
        q[(k, r)] = s * qkp + c * qkr;
    }
}

fn sorted<T: Real>(values: Vec<T>, vectors: SquareMat<T>) -> SymEigen<T> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).expect("non-NaN eigenvalues"));
    let sorted_values: Vec<T> = order.iter().map(|&i| values[i]).collect();
    let sorted_vectors = SquareMat::from_fn(n, |i, j| vectors[(i, order[j])]);
    SymEigen { values: sorted_values, vectors: sorted_vectors }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn reconstruct(e: &SymEigen<f64>) -> SquareMat<f64> {
        SquareMat::from_diag(&e.values).congruence(&e.vectors)
    }

    #[test]
    fn diagonal_input_passthrough() {
        let m = SquareMat::from_diag(&[3.0, -1.0, 2.0]);
        let e = sym_eigen(&m).unwrap();
        assert_eq!(e.values, vec![-1.0, 2.0, 3.0]);
    }

    #[test]
    fn known_two_by_two() {
        // Eigenvalues of [[2,1],[1,2]] are 1 and 3.
        let m = SquareMat::from([[2.0, 1.0], [1.0, 2.0]]);
        let e = sym_eigen(&m).unwrap();
        assert_relative_eq!(e.values[0], 1.0, max_relative = 1e-14);
        assert_relative_eq!(e.values[1], 3.0, max_relative = 1e-14);
    }

    #[test]
    fn reconstructs_badly_scaled_matrix() {
        // Entries spanning ~12 orders of magnitude.
        let m = SquareMat::from([
            [1e-6, 2e-3, 0.0, 1e-2],
            [2e-3, 1e6, 3.0, 0.0],
            [0.0, 3.0, 5e2, 1.0],
            [1e-2, 0.0, 1.0, 2e-4],
        ]);
        let e = sym_eigen(&m).unwrap();
        let r = reconstruct(&e);
        let defect = r.sub(&m).max_abs() / m.max_abs();
        assert!(defect < 1e-14, "defect {defect}");
        // Orthonormality of the accumulated rotations.
        let qtq = e.vectors.transpose().matmul(&e.vectors);
        let eye = SquareMat::identity(4);
        assert!(qtq.sub(&eye).max_abs() < 1e-14);
    }

    #[test]
    fn f32_instantiation() {
        let m: SquareMat<f32> = SquareMat::from([[2.0f32, 1.0], [1.0, 2.0]]);
        let e = sym_eigen(&m).unwrap();
        assert_relative_eq!(e.values[0], 1.0f32, max_relative = 1e-5);
        assert_relative_eq!(e.values[1], 3.0f32, max_relative = 1e-5);
    }
}
