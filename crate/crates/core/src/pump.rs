//! Twisted Gaussian Schell-model pump beams: parameterization, covariance
//! construction, normalized (beta, t) coordinates, and incoherent-mixture
//! representations with deterministic Monte Carlo sampling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::cov::CovMatrix;
use crate::eigen::sym_eigen;
use crate::error::{Error, Result};
use crate::mat::SquareMat;
use crate::scalar::Real;

/// Physical description of a TGSM pump beam.
///
/// Infinite coherence length and infinite curvature radius are encoded
/// reciprocally (`inv_delta_sq = 0`, `inv_curvature = 0`) so no formula ever
/// touches a floating-point infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TgsmParams<T> {
    /// Beam waist `sigma`, m.
    sigma: T,
    /// `1 / delta^2`, m^-2; `0` encodes a fully coherent beam.
    inv_delta_sq: T,
    /// `1 / R`, m^-1; `0` encodes a flat phase front.
    inv_curvature: T,
    /// Twist phase `u`, m^-1, signed.
    twist: T,
    /// Pump wavenumber `k`, m^-1.
    wavenumber: T,
}

/// Dimensionless sweep coordinates: normalized coherence `beta` in `(0, 1]`
/// and normalized twist `t = |u| k delta^2` in `[0, 1]`, plus the twist sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizedPoint<T> {
    pub beta: T,
    pub t: T,
    pub twist_sign: T,
}

/// How to split a pump beam into a pure Gaussian component plus a classical
/// Gaussian ensemble of displaced copies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MixtureMode<T> {
    /// Round coherent component of fixed waist `sigma_0`; may be infeasible.
    SymmetricWaist(T),
    /// Component `(1/2) S S^T` from the Williamson factors of the pump CM;
    /// feasible for every physical beam.
    Williamson,
}

/// Second-moment mixture representation: `component_cm + ensemble_cov`
/// reproduces the pump covariance matrix.
#[derive(Debug, Clone)]
pub struct MixtureModel<T> {
    /// Pure two-mode Gaussian component.
    pub component_cm: CovMatrix<T>,
    /// PSD 4x4 covariance of the Gaussian ensemble of component means
    /// `(x0, q_x0, y0, q_y0)`.
    pub ensemble_cov: SquareMat<T>,
}

/// Normalized coherence `beta^2 = (1 + 4 sigma^2 / delta^2)^-1`; equals the
/// beam purity. `delta` may be infinite.
pub fn beta_squared<T: Real>(sigma: T, delta: T) -> T {
    let four = T::lit(4.0);
    let ratio = if delta.is_infinite() { T::zero() } else { (sigma / delta) * (sigma / delta) };
    T::one() / (T::one() + four * ratio)
}

/// Coherence length realizing a given `beta`: `delta = sqrt(4 sigma^2 beta^2
/// / (1 - beta^2))`, infinite at `beta = 1`.
pub fn delta_from_beta<T: Real>(beta: T, sigma: T) -> Result<T> {
    if !(beta > T::zero() && beta <= T::one()) {
        return Err(Error::OutOfRange { name: "beta", value: beta.to_f64().unwrap_or(f64::NAN) });
    }
    if beta == T::one() {
        return Ok(T::infinity());
    }
    let four = T::lit(4.0);
    Ok((four * sigma * sigma * beta * beta / (T::one() - beta * beta)).sqrt())
}

/// Positivity bound on the twist phase, `1 / (k delta^2)`; `0` for coherent
/// beams (no twist is admissible in that limit).
pub fn max_twist<T: Real>(wavenumber: T, delta: T) -> T {
    if delta.is_infinite() {
        return T::zero();
    }
    T::one() / (wavenumber * delta * delta)
}

impl<T: Real> TgsmParams<T> {
    /// Validated constructor. `delta` may be `infinity`.
    pub fn new(sigma: T, delta: T, inv_curvature: T, twist: T, wavenumber: T) -> Result<Self> {
        if !(sigma > T::zero()) || !sigma.is_finite() {
            return Err(Error::OutOfRange { name: "sigma", value: sigma.to_f64().unwrap_or(f64::NAN) });
        }
        if !(wavenumber > T::zero()) || !wavenumber.is_finite() {
            return Err(Error::OutOfRange {
                name: "wavenumber",
                value: wavenumber.to_f64().unwrap_or(f64::NAN),
            });
        }
        if !(delta > T::zero()) {
            return Err(Error::OutOfRange { name: "delta", value: delta.to_f64().unwrap_or(f64::NAN) });
        }
        if !inv_curvature.is_finite() {
            return Err(Error::OutOfRange {
                name: "inv_curvature",
                value: inv_curvature.to_f64().unwrap_or(f64::NAN),
            });
        }
        let inv_delta_sq =
            if delta.is_infinite() { T::zero() } else { T::one() / (delta * delta) };
        let params = Self { sigma, inv_delta_sq, inv_curvature, twist, wavenumber };
        let bound = params.max_twist();
        let slack = T::one() + T::lit(1e-12);
        if twist.abs() > bound * slack {
            return Err(Error::TwistBoundViolation {
                twist: twist.to_f64().unwrap_or(f64::NAN),
                bound: bound.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(params)
    }

    /// Constructor that skips the twist bound check, for probing unphysical
    /// beams just beyond it. Other domain checks still apply.
    pub fn new_unchecked_twist(
        sigma: T,
        delta: T,
        inv_curvature: T,
        twist: T,
        wavenumber: T,
    ) -> Result<Self> {
        let mut p = Self::new(sigma, delta, inv_curvature, T::zero(), wavenumber)?;
        p.twist = twist;
        Ok(p)
    }

    pub fn sigma(&self) -> T {
        self.sigma
    }

    /// Coherence length; `infinity` for a coherent beam.
    pub fn delta(&self) -> T {
        if self.inv_delta_sq == T::zero() {
            T::infinity()
        } else {
            T::one() / self.inv_delta_sq.sqrt()
        }
    }

    pub fn inv_delta_sq(&self) -> T {
        self.inv_delta_sq
    }

    pub fn inv_curvature(&self) -> T {
        self.inv_curvature
    }

    pub fn twist(&self) -> T {
        self.twist
    }

    pub fn wavenumber(&self) -> T {
        self.wavenumber
    }

    /// Wavevector variance `tau^2 = 1/delta^2 + 1/(4 sigma^2) + k^2 sigma^2
    /// (1/R^2 + u^2)`.
    pub fn tau_sq(&self) -> T {
        let s2 = self.sigma * self.sigma;
        let k2 = self.wavenumber * self.wavenumber;
        self.inv_delta_sq
            + T::one() / (T::lit(4.0) * s2)
            + k2 * s2 * (self.inv_curvature * self.inv_curvature + self.twist * self.twist)
    }

    /// `beta^2` of this beam.
    pub fn beta_sq(&self) -> T {
        let four = T::lit(4.0);
        T::one() / (T::one() + four * self.sigma * self.sigma * self.inv_delta_sq)
    }

    /// Twist bound `1 / (k delta^2)` for these parameters.
    pub fn max_twist(&self) -> T {
        self.inv_delta_sq / self.wavenumber
    }

    /// The 4x4 covariance matrix of the beam in `(x, q_x, y, q_y)` order.
    pub fn pump_cm(&self) -> Result<CovMatrix<T>> {
        let bound = self.max_twist();
        let slack = T::one() + T::lit(1e-12);
        if self.twist.abs() > bound * slack {
            return Err(Error::TwistBoundViolation {
                twist: self.twist.to_f64().unwrap_or(f64::NAN),
                bound: bound.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(self.pump_cm_unchecked())
    }

    /// The covariance matrix without the twist bound check; the result may
    /// be unphysical.
    pub fn pump_cm_unchecked(&self) -> CovMatrix<T> {
        let s2 = self.sigma * self.sigma;
        let tau2 = self.tau_sq();
        let curv = -self.wavenumber * s2 * self.inv_curvature;
        let tw = self.wavenumber * self.twist * s2;
        let z = T::zero();
        let mat = SquareMat::from([
            [s2, curv, z, tw],
            [curv, tau2, -tw, z],
            [z, -tw, s2, curv],
            [tw, z, curv, tau2],
        ]);
        CovMatrix::new(2, mat).expect("pump CM is symmetric with positive diagonal")
    }

    /// Beam orbital angular momentum `2 k u sigma^2` in units of `hbar`,
    /// read from the covariance matrix as `cov(x, q_y) - cov(y, q_x)`.
    pub fn pump_oam(&self) -> T {
        let cm = self.pump_cm_unchecked();
        cm.mat()[(0, 3)] - cm.mat()[(2, 1)]
    }
}

impl<T: Real> NormalizedPoint<T> {
    pub fn new(beta: T, t: T, twist_sign: T) -> Result<Self> {
        if !(beta > T::zero() && beta <= T::one()) {
            return Err(Error::OutOfRange { name: "beta", value: beta.to_f64().unwrap_or(f64::NAN) });
        }
        if !(t >= T::zero() && t <= T::one()) {
            return Err(Error::OutOfRange { name: "t", value: t.to_f64().unwrap_or(f64::NAN) });
        }
        if !(twist_sign == T::one() || twist_sign == -T::one()) {
            return Err(Error::OutOfRange {
                name: "twist_sign",
                value: twist_sign.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self { beta, t, twist_sign })
    }
}

/// Realize a normalized sweep point as physical parameters: `delta` from
/// `beta`, then `u = sign * t / (k delta^2)`, saturating the twist bound at
/// `t = 1`. At `beta = 1` the bound collapses and `u = 0`.
pub fn params_from_normalized<T: Real>(
    pt: &NormalizedPoint<T>,
    sigma: T,
    wavenumber: T,
    inv_curvature: T,
) -> Result<TgsmParams<T>> {
    let delta = delta_from_beta(pt.beta, sigma)?;
    let twist = pt.twist_sign * pt.t * max_twist(wavenumber, delta);
    TgsmParams::new(sigma, delta, inv_curvature, twist, wavenumber)
}

impl<T: Real> MixtureModel<T> {
    /// Draw `count` zero-mean Gaussian 4-vectors with covariance
    /// `ensemble_cov` from a ChaCha stream seeded with `seed`. The same seed
    /// always reproduces the same sequence.
    pub fn sample_means(&self, count: usize, seed: u64) -> Vec<[T; 4]>
    where
        StandardNormal: Distribution<T>,
    {
        let factor = psd_factor(&self.ensemble_cov);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            let z: Vec<T> = (0..4).map(|_| StandardNormal.sample(&mut rng)).collect();
            let x = factor.apply(&z);
            out.push([x[0], x[1], x[2], x[3]]);
        }
        out
    }
}

/// Split the pump beam into `component_cm + ensemble_cov`.
///
/// The symmetric-waist mode subtracts a round coherent beam of waist
/// `sigma_0` and fails with [`Error::InfeasibleWaist`] when the remainder is
/// not PSD (expected near the twist bound). The Williamson mode always
/// succeeds on physical beams: with `V = S D S^T`, the component is
/// `(1/2) S S^T` and the ensemble `S (D - I/2) S^T` is PSD by construction.
pub fn mixture_model<T: Real>(
    params: &TgsmParams<T>,
    mode: MixtureMode<T>,
) -> Result<MixtureModel<T>> {
    let pump = params.pump_cm()?;
    match mode {
        MixtureMode::SymmetricWaist(waist) => {
            if !(waist > T::zero()) || !waist.is_finite() {
                return Err(Error::OutOfRange {
                    name: "waist",
                    value: waist.to_f64().unwrap_or(f64::NAN),
                });
            }
            let w2 = waist * waist;
            let quarter = T::lit(0.25);
            let component =
                SquareMat::from_diag(&[w2, quarter / w2, w2, quarter / w2]);
            let remainder = pump.mat().sub(&component);

            // PSD test in the pump's balanced frame; the remainder's own
            // diagonal may be exactly zero, so it cannot be balanced itself.
            let d = pump.balance_scales();
            let mut balanced = remainder.diag_congruence(&d);
            balanced.symmetrize();
            let eig = sym_eigen(&balanced)?;
            let scale = balanced.max_abs().max(T::one());
            if eig.values[0] < -T::symmetry_tol() * scale {
                return Err(Error::InfeasibleWaist {
                    waist: waist.to_f64().unwrap_or(f64::NAN),
                    min_eigenvalue: eig.values[0].to_f64().unwrap_or(f64::NAN),
                });
            }
            Ok(MixtureModel {
                component_cm: CovMatrix::new(2, component)?,
                ensemble_cov: remainder,
            })
        }
        MixtureMode::Williamson => {
            let factors = pump.williamson()?;
            let s = &factors.symplectic;
            let half_sst = s.matmul(&s.transpose()).scale(T::half());
            let mut component = half_sst;
            component.symmetrize();

            let mut shifted = Vec::with_capacity(2 * factors.diag.len());
            for &nu in &factors.diag {
                let excess = (nu - T::half()).max(T::zero());
                shifted.push(excess);
                shifted.push(excess);
            }
            let mut ensemble = SquareMat::from_diag(&shifted).congruence(s);
            ensemble.symmetrize();
            Ok(MixtureModel { component_cm: CovMatrix::new(2, component)?, ensemble_cov: ensemble })
        }
    }
}

/// Feasibility of the symmetric-waist mixture over a log grid of `n_points`
/// component waists in `[sigma / 1000, sigma]`.
pub fn feasible_waist_scan<T: Real>(
    params: &TgsmParams<T>,
    n_points: usize,
) -> Result<Vec<(T, bool)>> {
    let n = n_points.max(2);
    let sigma = params.sigma();
    let lo = (sigma * T::lit(1e-3)).ln();
    let hi = sigma.ln();
    let step = (hi - lo) / T::from_usize(n - 1).unwrap();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let w = (lo + step * T::from_usize(i).unwrap()).exp();
        let ok = mixture_model(params, MixtureMode::SymmetricWaist(w)).is_ok();
        out.push((w, ok));
    }
    Ok(out)
}

/// Factor `F` with `F F^T = cov` for a PSD matrix, tolerant of zero rows and
/// roundoff-negative eigenvalues (clamped to zero).
fn psd_factor<T: Real>(cov: &SquareMat<T>) -> SquareMat<T> {
    let dim = cov.dim();
    // Row scaling keeps the eigenproblem well conditioned despite SI units.
    let scales: Vec<T> = (0..dim)
        .map(|i| {
            let v = cov[(i, i)];
            if v > T::zero() {
                T::one() / v.sqrt()
            } else {
                T::one()
            }
        })
        .collect();
    let mut normalized = cov.diag_congruence(&scales);
    normalized.symmetrize();
    let eig = sym_eigen(&normalized).expect("Jacobi converges on symmetric input");
    let roots: Vec<T> = eig.values.iter().map(|&v| v.max(T::zero()).sqrt()).collect();
    let ftilde = eig.vectors.matmul(&SquareMat::from_diag(&roots));
    SquareMat::from_fn(dim, |i, j| ftilde[(i, j)] / scales[i])
}
