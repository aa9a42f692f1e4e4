//! Covariance-matrix algebra for zero-mean Gaussian states: symplectic
//! forms and spectra, physicality, partial transposition, local scaling,
//! purity, logarithmic negativity, and Williamson decomposition.
//!
//! Mode ordering is fixed throughout: coordinates come in `(position,
//! momentum)` pairs per mode, `hbar = 1`, vacuum variance `1/2`. A single
//! beam/photon occupies two modes ordered `(x, q_x, y, q_y)`; in two-photon
//! matrices photon 1 precedes photon 2.

use crate::eigen::{sym_eigen, SymEigen};
use crate::error::{Error, Result};
use crate::mat::SquareMat;
use crate::scalar::Real;

/// Symmetric real `2n x 2n` matrix of second moments.
///
/// Entries carry SI units (`m^2` on position diagonals, `m^-2` on momentum
/// diagonals, dimensionless cross terms), which makes raw eigenproblems on
/// it catastrophically ill-conditioned; every spectral routine first applies
/// the per-mode symplectic balancing of [`CovMatrix::balance_scales`].
#[derive(Debug, Clone, PartialEq)]
pub struct CovMatrix<T> {
    n_modes: usize,
    mat: SquareMat<T>,
}

/// Moduli of the `+/- i nu` eigenvalue pairs of `Omega V`, ascending.
#[derive(Debug, Clone)]
pub struct SymplecticSpectrum<T> {
    /// One value per mode, sorted ascending, dimensionless.
    pub values: Vec<T>,
    /// Worst relative defect of the `+/- i nu` pairing (diagnostic).
    pub residual: T,
}

/// Williamson factorization `V = S diag(nu_1, nu_1, ..., nu_n, nu_n) S^T`
/// with `S` symplectic.
#[derive(Debug, Clone)]
pub struct WilliamsonFactors<T> {
    pub symplectic: SquareMat<T>,
    pub diag: Vec<T>,
}

/// Which photon of a two-photon state an operation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Party {
    Photon1,
    Photon2,
}

/// Direct sum of `n` copies of `[[0, 1], [-1, 0]]`.
pub fn symplectic_form<T: Real>(n_modes: usize) -> SquareMat<T> {
    assert!(n_modes >= 1, "n_modes must be positive");
    let mut omega = SquareMat::zeros(2 * n_modes);
    for k in 0..n_modes {
        omega[(2 * k, 2 * k + 1)] = T::one();
        omega[(2 * k + 1, 2 * k)] = -T::one();
    }
    omega
}

impl<T: Real> CovMatrix<T> {
    /// Validate and wrap a `2n x 2n` second-moment matrix.
    ///
    /// Symmetry must hold to the scalar's relative tolerance and every
    /// diagonal entry must be strictly positive. The stored matrix is
    /// exactly symmetrized.
    pub fn new(n_modes: usize, mat: SquareMat<T>) -> Result<Self> {
        if n_modes == 0 || mat.dim() != 2 * n_modes {
            return Err(Error::WrongDimension { expected: 2 * n_modes, got: mat.dim() });
        }
        let defect = mat.symmetry_defect();
        if defect > T::symmetry_tol() {
            return Err(Error::NotSymmetric { defect: defect.to_f64().unwrap_or(f64::NAN) });
        }
        for i in 0..mat.dim() {
            if mat[(i, i)] <= T::zero() {
                return Err(Error::NonPositiveDiagonal {
                    index: i,
                    value: mat[(i, i)].to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        let mut mat = mat;
        mat.symmetrize();
        Ok(Self { n_modes, mat })
    }

    /// Vacuum state: `diag(1/2, ..., 1/2)`.
    pub fn vacuum(n_modes: usize) -> Self {
        let dim = 2 * n_modes;
        Self { n_modes, mat: SquareMat::from_diag(&vec![T::half(); dim]) }
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn mat(&self) -> &SquareMat<T> {
        &self.mat
    }

    /// Per-coordinate diagonal `d` of the balancing congruence: position
    /// coordinate `k` is scaled by `(V_qq / V_xx)^(1/4)` and its momentum by
    /// the reciprocal, so both balanced diagonals become the geometric mean
    /// `sqrt(V_xx V_qq)`. Each mode factor is `diag(s, 1/s)`, a symplectic
    /// matrix, so symplectic spectra are unchanged.
    pub fn balance_scales(&self) -> Vec<T> {
        let mut d = vec![T::one(); self.dim()];
        for k in 0..self.n_modes {
            let x = self.mat[(2 * k, 2 * k)];
            let q = self.mat[(2 * k + 1, 2 * k + 1)];
            let s = (q / x).sqrt().sqrt();
            d[2 * k] = s;
            d[2 * k + 1] = T::one() / s;
        }
        d
    }

    fn balanced(&self) -> SquareMat<T> {
        let d = self.balance_scales();
        let mut w = self.mat.diag_congruence(&d);
        w.symmetrize();
        w
    }

    /// Symplectic spectrum of the state.
    ///
    /// Balances, checks positive definiteness, forms the antisymmetric
    /// `K = W^(1/2) Omega W^(1/2)` and reads the `+/- nu` eigenvalues of the
    /// Hermitian `iK` off its real symmetric embedding `[[0, -K], [K, 0]]`.
    /// This avoids squaring `K`, which would halve the attainable precision
    /// of the small eigenvalues.
    pub fn symplectic_spectrum(&self) -> Result<SymplecticSpectrum<T>> {
        let w = self.balanced();
        let root = spd_sqrt(&w)?;
        let k = root.matmul(&symplectic_form(self.n_modes)).matmul(&root);
        let dim = self.dim();

        // Real symmetric embedding of i K.
        let m = SquareMat::from_fn(2 * dim, |i, j| {
            if i < dim && j >= dim {
                -k[(i, j - dim)]
            } else if i >= dim && j < dim {
                k[(i - dim, j)]
            } else {
                T::zero()
            }
        });
        let eig = sym_eigen(&m)?;

        // |spectrum| holds each nu four times: twice from +nu, twice from -nu.
        let mut moduli: Vec<T> = eig.values.iter().map(|v| v.abs()).collect();
        moduli.sort_by(|a, b| a.partial_cmp(b).expect("non-NaN"));
        let scale = moduli.last().copied().unwrap_or(T::zero());

        let mut values = Vec::with_capacity(self.n_modes);
        let mut residual = T::zero();
        for chunk in moduli.chunks_exact(4) {
            let spread = chunk[3] - chunk[0];
            if scale > T::zero() {
                residual = residual.max(spread / scale);
            }
            let quarter = T::lit(0.25);
            values.push((chunk[0] + chunk[1] + chunk[2] + chunk[3]) * quarter);
        }
        if residual > T::pairing_tol() {
            return Err(Error::PairingDefect { residual: residual.to_f64().unwrap_or(f64::NAN) });
        }
        Ok(SymplecticSpectrum { values, residual })
    }

    /// `true` iff the state is a physical Gaussian state:
    /// `V > 0` and `V + (i/2) Omega >= 0`, i.e. `min nu >= 1/2 - tol`.
    pub fn is_physical(&self, tol: T) -> bool {
        match self.symplectic_spectrum() {
            Ok(spec) => spec.values[0] >= T::half() - tol,
            Err(_) => false,
        }
    }

    /// Purity `1 / (2^n sqrt(det V))`, in `(0, 1]` for physical states.
    ///
    /// The determinant is evaluated from the eigenvalues of the balanced
    /// matrix (the balancing has unit determinant) and in log space, so
    /// neither the unit mixing nor large mode numbers overflow.
    pub fn purity(&self) -> Result<T> {
        let eig = sym_eigen(&self.balanced())?;
        let min = eig.values[0];
        if min <= T::zero() {
            return Err(Error::NotPositiveDefinite {
                min_eigenvalue: min.to_f64().unwrap_or(f64::NAN),
            });
        }
        let log_det: T = eig.values.iter().map(|&v| v.ln()).sum();
        let n = T::from_usize(self.n_modes).unwrap();
        Ok((-n * T::LN_2() - T::half() * log_det).exp())
    }

    /// Partial transposition of a two-photon (4-mode) state: flips the sign
    /// of the chosen photon's momentum coordinates. Involutive.
    pub fn partial_transpose(&self, party: Party) -> Result<Self> {
        if self.n_modes != 4 {
            return Err(Error::WrongDimension { expected: 8, got: self.dim() });
        }
        let offset = match party {
            Party::Photon1 => 0,
            Party::Photon2 => 4,
        };
        let mut signs = vec![T::one(); 8];
        signs[offset + 1] = -T::one();
        signs[offset + 3] = -T::one();
        let mat = self.mat.diag_congruence(&signs);
        Ok(Self { n_modes: self.n_modes, mat })
    }

    /// Local scaling `S V S^T` with `S = diag(1/sqrt 2, sqrt 2)` on every
    /// mode. `S` is symplectic, so symplectic spectra are unchanged.
    pub fn local_scale(&self) -> Result<Self> {
        if self.n_modes != 4 {
            return Err(Error::WrongDimension { expected: 8, got: self.dim() });
        }
        let inv_sqrt2 = T::FRAC_1_SQRT_2();
        let sqrt2 = T::SQRT_2();
        let d: Vec<T> =
            (0..8).map(|i| if i % 2 == 0 { inv_sqrt2 } else { sqrt2 }).collect();
        Ok(Self { n_modes: self.n_modes, mat: self.mat.diag_congruence(&d) })
    }

    /// Logarithmic negativity `E_N = sum_j max(0, -ln(2 nu~_j))` over the
    /// partial-transpose symplectic spectrum; `0` for PPT states.
    pub fn log_negativity(&self) -> Result<T> {
        let pt = self.partial_transpose(Party::Photon2)?;
        let spec = pt.symplectic_spectrum()?;
        Ok(spec
            .values
            .iter()
            .map(|&nu| (-(T::two() * nu).ln()).max(T::zero()))
            .sum())
    }

    /// Williamson decomposition via symmetric square-root reduction.
    ///
    /// Works in the balanced frame: with `W = B V B`, the antisymmetric
    /// `K = W^(1/2) Omega W^(1/2)` is brought to its canonical form
    /// `Q^T K Q = directsum(nu_j omega)` by pairing eigenvectors of `-K^2`
    /// through `K` itself, and `S = B^-1 W^(1/2) Q D^(-1/2)` is symplectic
    /// with `S D S^T = V`.
    pub fn williamson(&self) -> Result<WilliamsonFactors<T>> {
        let d = self.balance_scales();
        let mut w = self.mat.diag_congruence(&d);
        w.symmetrize();
        let root = spd_sqrt(&w)?;
        let k = root.matmul(&symplectic_form(self.n_modes)).matmul(&root);

        // -K^2 is symmetric PSD with each nu_j^2 doubly degenerate.
        let mut ksq = k.matmul(&k).scale(-T::one());
        ksq.symmetrize();
        let eig = sym_eigen(&ksq)?;
        let (q, nus) = canonical_antisymmetric_basis(&k, &eig)?;

        // S~ = W^(1/2) Q D^(-1/2), then undo the balancing.
        let dim = self.dim();
        let mut stilde = root.matmul(&q);
        for (j, &nu) in nus.iter().enumerate() {
            let inv_sqrt = T::one() / nu.sqrt();
            for pair in 0..2 {
                let col = 2 * j + pair;
                for row in 0..dim {
                    stilde[(row, col)] *= inv_sqrt;
                }
            }
        }
        let mut symplectic = SquareMat::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                symplectic[(i, j)] = stilde[(i, j)] / d[i];
            }
        }

        let factors = WilliamsonFactors { symplectic, diag: nus };

        // Residuals, both in scale-robust form: reconstruction relative to
        // the input and symplecticity in the balanced frame.
        let rec = factors.reconstruct();
        let rec_residual = rec.sub(&self.mat).max_abs() / self.mat.max_abs();
        let omega = symplectic_form(self.n_modes);
        let symp_residual =
            omega.congruence(&stilde.transpose()).sub(&omega).max_abs();
        let worst = rec_residual.max(symp_residual);
        if worst > T::pairing_tol() {
            return Err(Error::ConvergenceFailure {
                residual: worst.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(factors)
    }
}

impl<T: Real> WilliamsonFactors<T> {
    /// `S diag(nu_1, nu_1, ...) S^T`.
    pub fn reconstruct(&self) -> SquareMat<T> {
        let dim = self.symplectic.dim();
        let mut dd = Vec::with_capacity(dim);
        for &nu in &self.diag {
            dd.push(nu);
            dd.push(nu);
        }
        let mut rec = SquareMat::from_diag(&dd).congruence(&self.symplectic);
        rec.symmetrize();
        rec
    }
}

/// Symmetric square root of a positive definite matrix.
fn spd_sqrt<T: Real>(w: &SquareMat<T>) -> Result<SquareMat<T>> {
    let eig = sym_eigen(w)?;
    let min = eig.values[0];
    if min <= T::zero() {
        return Err(Error::NotPositiveDefinite {
            min_eigenvalue: min.to_f64().unwrap_or(f64::NAN),
        });
    }
    let roots: Vec<T> = eig.values.iter().map(|&v| v.sqrt()).collect();
    let mut r = SquareMat::from_diag(&roots).congruence(&eig.vectors);
    r.symmetrize();
    Ok(r)
}

/// Orthogonal `Q` with `Q^T K Q = directsum(nu_j omega)`, `nu` ascending.
///
/// `eig` is the eigendecomposition of `-K^2`. Eigenvalues are grouped into
/// clusters that are degenerate up to roundoff; within a cluster the pair
/// partner of a vector `q` is `-K q / |K q|`, which lies in the same
/// eigenspace and is orthogonal to every previously built pair.
fn canonical_antisymmetric_basis<T: Real>(
    k: &SquareMat<T>,
    eig: &SymEigen<T>,
) -> Result<(SquareMat<T>, Vec<T>)> {
    let dim = k.dim();
    let n_modes = dim / 2;
    let scale = eig.values[dim - 1].abs();
    let cluster_gap = T::lit(1024.0) * T::epsilon() * scale;

    let mut q = SquareMat::zeros(dim);
    let mut nus = Vec::with_capacity(n_modes);
    let mut built = 0usize; // columns of q filled

    let mut start = 0usize;
    while start < dim {
        let mut end = start + 1;
        while end < dim && eig.values[end] - eig.values[end - 1] <= cluster_gap {
            end += 1;
        }
        // Odd-sized clusters cannot host whole (q, Kq) pairs; absorb the
        // next eigenvalue rather than fail on a borderline gap.
        if (end - start) % 2 == 1 && end < dim {
            end += 1;
        }

        let cluster_cols: Vec<usize> = (start..end).collect();
        let first_col = built;
        for &vcol in &cluster_cols {
            if built - first_col == cluster_cols.len() {
                break;
            }
            // Project the candidate against pairs already built here.
            let mut cand: Vec<T> = (0..dim).map(|r| eig.vectors[(r, vcol)]).collect();
            for col in first_col..built {
                let dot: T = (0..dim).map(|r| q[(r, col)] * cand[r]).sum();
                for r in 0..dim {
                    cand[r] -= dot * q[(r, col)];
                }
            }
            let norm = cand.iter().map(|&x| x * x).sum::<T>().sqrt();
            if norm < T::lit(0.3) {
                continue; // direction already consumed by a partner vector
            }
            for x in cand.iter_mut() {
                *x /= norm;
            }
            let kv = k.apply(&cand);
            let nu = kv.iter().map(|&x| x * x).sum::<T>().sqrt();
            if !(nu > T::zero()) {
                return Err(Error::NotPositiveDefinite { min_eigenvalue: 0.0 });
            }
            for r in 0..dim {
                q[(r, built)] = cand[r];
                q[(r, built + 1)] = -kv[r] / nu;
            }
            nus.push(nu);
            built += 2;
        }
        if built != first_col + cluster_cols.len() {
            return Err(Error::ConvergenceFailure { residual: f64::NAN });
        }
        start = end;
    }

    // Clusters come out ascending, but pairs inside a merged cluster may
    // not; sort whole pairs so `nus` matches the spectrum ordering.
    let mut order: Vec<usize> = (0..nus.len()).collect();
    order.sort_by(|&i, &j| nus[i].partial_cmp(&nus[j]).expect("non-NaN"));
    let sorted_nus: Vec<T> = order.iter().map(|&i| nus[i]).collect();
    let sorted_q = SquareMat::from_fn(dim, |r, c| q[(r, 2 * order[c / 2] + c % 2)]);
    Ok((sorted_q, sorted_nus))
}
