//! Two-photon Gaussian description of SPDC pumped by a TGSM beam:
//! phase matching, global/per-photon covariance matrices, closed-form and
//! numerical entanglement quantities, and the assembled report.
//!
//! Down-converted photons are taken degenerate, `k_1 = k_2 = k / 2` with `k`
//! the pump wavenumber.

use crate::cov::{CovMatrix, Party, SymplecticSpectrum};
use crate::error::{Error, Result};
use crate::mat::SquareMat;
use crate::pump::TgsmParams;
use crate::scalar::Real;

/// Crystal phase matching in its double-Gaussian surrogate form, with
/// variances `sigma_-^2 = 9 L / (10 k)` and `Delta_-^2 = 3 k / (2 L)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseMatching<T> {
    length: T,
    wavenumber: T,
    sigma_minus_sq: T,
    delta_minus_sq: T,
}

impl<T: Real> PhaseMatching<T> {
    pub fn new(length: T, wavenumber: T) -> Result<Self> {
        if !(length > T::zero()) || !length.is_finite() {
            return Err(Error::OutOfRange {
                name: "length",
                value: length.to_f64().unwrap_or(f64::NAN),
            });
        }
        if !(wavenumber > T::zero()) || !wavenumber.is_finite() {
            return Err(Error::OutOfRange {
                name: "wavenumber",
                value: wavenumber.to_f64().unwrap_or(f64::NAN),
            });
        }
        let nine_tenths = T::lit(0.9);
        let three_halves = T::lit(1.5);
        Ok(Self {
            length,
            wavenumber,
            sigma_minus_sq: nine_tenths * length / wavenumber,
            delta_minus_sq: three_halves * wavenumber / length,
        })
    }

    pub fn length(&self) -> T {
        self.length
    }

    pub fn wavenumber(&self) -> T {
        self.wavenumber
    }

    pub fn sigma_minus_sq(&self) -> T {
        self.sigma_minus_sq
    }

    pub fn delta_minus_sq(&self) -> T {
        self.delta_minus_sq
    }

    /// `diag(sigma_-^2, Delta_-^2, sigma_-^2, Delta_-^2)` over
    /// `(x_-, q_-x, y_-, q_-y)`.
    pub fn phase_matching_cm(&self) -> CovMatrix<T> {
        let cm = SquareMat::from_diag(&[
            self.sigma_minus_sq,
            self.delta_minus_sq,
            self.sigma_minus_sq,
            self.delta_minus_sq,
        ]);
        CovMatrix::new(2, cm).expect("diagonal CM with positive entries")
    }
}

/// The constant 8x8 matrix mapping global coordinates
/// `(x_+, q_+x, y_+, q_+y, x_-, q_-x, y_-, q_-y)` to per-photon coordinates
/// `(x_1, q_1x, y_1, q_1y, x_2, q_2x, y_2, q_2y)`:
/// `r_j = r_+ +/- r_-`, `q_j = (q_+ +/- q_-) / 2`. Symplectic.
pub fn coordinate_transform<T: Real>() -> SquareMat<T> {
    let mut r = SquareMat::zeros(8);
    for (block, sign) in [(0usize, T::one()), (4usize, -T::one())] {
        for axis in 0..2 {
            let pos = 2 * axis; // x row, then y row
            let mom = 2 * axis + 1;
            r[(block + pos, pos)] = T::one();
            r[(block + pos, 4 + pos)] = sign;
            r[(block + mom, mom)] = T::half();
            r[(block + mom, 4 + mom)] = sign * T::half();
        }
    }
    r
}

/// Two-photon Gaussian state assembled from pump and phase matching.
///
/// `global_cm` is block-diagonal `(V_+, V_-)` in global coordinates;
/// `photon_cm = R global_cm R^T` is the single source of truth for every
/// per-photon moment.
#[derive(Debug, Clone)]
pub struct TwoPhotonState<T> {
    global_cm: CovMatrix<T>,
    photon_cm: CovMatrix<T>,
    pump: TgsmParams<T>,
    pm: PhaseMatching<T>,
}

/// Mancini-type standard-deviation products over global coordinates.
///
/// `sum_diff` pairs the summed position with the difference momentum
/// (`Delta x_+ Delta q_-x`), `diff_sum` the reverse; either falling below
/// `1/2` certifies entanglement. Each value is the minimum over the `x` and
/// `y` directions, which coincide for rotationally symmetric states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ManciniProducts<T> {
    pub sum_diff: T,
    pub diff_sum: T,
}

/// Closed-form partial-transpose symplectic eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormEigs<T> {
    pub lambda_minus: T,
    pub lambda_plus: T,
    pub a_plus: T,
    pub a_minus: T,
}

/// Everything the artifact knows about one parameter point.
#[derive(Debug, Clone)]
pub struct EntanglementReport<T> {
    pub lambda_minus: T,
    pub lambda_plus: T,
    pub a_plus: T,
    pub a_minus: T,
    pub npt_entangled: bool,
    pub log_negativity: T,
    pub mancini_products: ManciniProducts<T>,
    pub mancini_violated: bool,
    pub purity_two_photon: T,
    pub pump_oam: T,
    pub photon_oam: T,
    /// Cross moments `<x_1 q_y2>` and `<x_2 q_y1>`; the transform-derived
    /// state carries them symmetrically.
    pub cov_x1_qy2: T,
    pub cov_x2_qy1: T,
}

impl<T: Real> TwoPhotonState<T> {
    pub fn new(pump: TgsmParams<T>, pm: PhaseMatching<T>) -> Result<Self> {
        let v_plus = pump.pump_cm()?;
        let v_minus = pm.phase_matching_cm();
        let global = v_plus.mat().direct_sum(v_minus.mat());
        let r = coordinate_transform::<T>();
        let photon = global.congruence(&r);
        Ok(Self {
            global_cm: CovMatrix::new(4, global)?,
            photon_cm: CovMatrix::new(4, photon)?,
            pump,
            pm,
        })
    }

    pub fn global_cm(&self) -> &CovMatrix<T> {
        &self.global_cm
    }

    pub fn photon_cm(&self) -> &CovMatrix<T> {
        &self.photon_cm
    }

    pub fn pump(&self) -> &TgsmParams<T> {
        &self.pump
    }

    pub fn phase_matching(&self) -> &PhaseMatching<T> {
        &self.pm
    }

    /// Per-photon orbital angular momentum in `hbar` units, read off the
    /// photon CM as `cov(x_1, q_1y) - cov(y_1, q_1x)`.
    pub fn photon_oam(&self) -> T {
        self.photon_cm.mat()[(0, 3)] - self.photon_cm.mat()[(2, 1)]
    }

    /// Standard-deviation products of inequality-type entanglement criteria,
    /// read from the global CM.
    pub fn mancini_products(&self) -> ManciniProducts<T> {
        let g = self.global_cm.mat();
        let sum_diff_x = (g[(0, 0)] * g[(5, 5)]).sqrt();
        let sum_diff_y = (g[(2, 2)] * g[(7, 7)]).sqrt();
        let diff_sum_x = (g[(4, 4)] * g[(1, 1)]).sqrt();
        let diff_sum_y = (g[(6, 6)] * g[(3, 3)]).sqrt();
        ManciniProducts {
            sum_diff: sum_diff_x.min(sum_diff_y),
            diff_sum: diff_sum_x.min(diff_sum_y),
        }
    }

    /// Numerical symplectic spectrum of the partially transposed photon CM;
    /// independent of [`closed_form_eigs`], which it cross-checks.
    pub fn pt_spectrum(&self, party: Party) -> Result<SymplecticSpectrum<T>> {
        self.photon_cm.partial_transpose(party)?.symplectic_spectrum()
    }
}

/// Closed-form PT symplectic eigenvalues
/// `lambda_+- = sqrt((a_+ +- sqrt(disc)) / 2)` with
/// `a_+- = tau^2 sigma_-^2 +- Delta_-^2 sigma^2` and
/// `disc = 4 k^2 Delta_-^2 sigma_-^2 sigma^4 (u^2 + 1/R^2) + a_-^2`.
///
/// The `lambda_-` branch cancels catastrophically at small coherence, so it
/// is evaluated through the identity
/// `tau^2 - k^2 sigma^2 (u^2 + 1/R^2) = 1/delta^2 + 1/(4 sigma^2)`, giving
/// the cancellation-free form
/// `lambda_-^2 = 2 Delta_-^2 sigma_-^2 sigma^2 (1/delta^2 + 1/(4 sigma^2))
///  / (a_+ + sqrt(disc))`.
pub fn closed_form_eigs<T: Real>(
    pump: &TgsmParams<T>,
    pm: &PhaseMatching<T>,
) -> ClosedFormEigs<T> {
    let sigma_sq = pump.sigma() * pump.sigma();
    let tau_sq = pump.tau_sq();
    let sm2 = pm.sigma_minus_sq();
    let dm2 = pm.delta_minus_sq();
    let a_plus = tau_sq * sm2 + dm2 * sigma_sq;
    let a_minus = tau_sq * sm2 - dm2 * sigma_sq;

    let k_sq = pump.wavenumber() * pump.wavenumber();
    let spread = pump.twist() * pump.twist() + pump.inv_curvature() * pump.inv_curvature();
    let disc = T::lit(4.0) * k_sq * dm2 * sm2 * sigma_sq * sigma_sq * spread + a_minus * a_minus;
    let root = disc.sqrt();

    let lambda_plus = ((a_plus + root) * T::half()).sqrt();
    let coherence_term = pump.inv_delta_sq() + T::one() / (T::lit(4.0) * sigma_sq);
    let lambda_minus =
        (T::two() * dm2 * sm2 * sigma_sq * coherence_term / (a_plus + root)).sqrt();
    ClosedFormEigs { lambda_minus, lambda_plus, a_plus, a_minus }
}

/// Two-photon purity `mu_12 = beta^2 mu_-`, the product of pump coherence
/// and phase-matching purity.
pub fn two_photon_purity<T: Real>(pump: &TgsmParams<T>, pm: &PhaseMatching<T>) -> Result<T> {
    let mu_minus = pm.phase_matching_cm().purity()?;
    Ok(pump.beta_sq() * mu_minus)
}

/// Assemble the full entanglement report for one parameter point.
///
/// `lambda_+-` come from the stable closed form, the log-negativity from
/// the numerical PT spectrum; the NPT flag uses an absolute `1e-9` margin
/// on the `lambda_- < 1/2` threshold.
pub fn entanglement_report<T: Real>(
    pump: &TgsmParams<T>,
    pm: &PhaseMatching<T>,
) -> Result<EntanglementReport<T>> {
    let state = TwoPhotonState::new(*pump, *pm)?;
    let closed = closed_form_eigs(pump, pm);
    let pt = state.pt_spectrum(Party::Photon2)?;
    let log_negativity = pt
        .values
        .iter()
        .map(|&nu| (-(T::two() * nu).ln()).max(T::zero()))
        .sum();

    let margin = T::spectral_tol();
    let threshold = T::half() - margin;
    let products = state.mancini_products();
    let photon_mat = state.photon_cm().mat();

    Ok(EntanglementReport {
        lambda_minus: closed.lambda_minus,
        lambda_plus: closed.lambda_plus,
        a_plus: closed.a_plus,
        a_minus: closed.a_minus,
        npt_entangled: closed.lambda_minus < threshold,
        log_negativity,
        mancini_products: products,
        mancini_violated: products.sum_diff.min(products.diff_sum) < threshold,
        purity_two_photon: two_photon_purity(pump, pm)?,
        pump_oam: pump.pump_oam(),
        photon_oam: state.photon_oam(),
        cov_x1_qy2: photon_mat[(0, 7)],
        cov_x2_qy1: photon_mat[(4, 3)],
    })
}
