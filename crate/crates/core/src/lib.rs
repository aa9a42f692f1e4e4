//! Gaussian model of spatial entanglement from SPDC pumped by twisted
//! Gaussian Schell-model (TGSM) beams.
//!
//! The crate works entirely at the level of covariance matrices: the pump
//! beam ([`pump::TgsmParams`]) and the crystal phase matching
//! ([`spdc::PhaseMatching`]) each contribute a block of the global
//! two-photon covariance matrix, a fixed symplectic transform rewrites it in
//! per-photon coordinates, and [`cov`] supplies the symplectic machinery
//! (spectra, physicality, partial transposition, purity, log-negativity,
//! Williamson factorization) used to quantify the entanglement.
//!
//! All numerics are generic over the scalar type through [`scalar::Real`]
//! (`f32` or `f64`); the `*64` aliases below pick the double-precision
//! instantiation used by the command-line tools.

// Domain checks are written as `!(x > 0)` so NaN inputs fall into the
// rejecting branch; `x <= 0` would silently accept them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cov;
pub mod eigen;
pub mod error;
pub mod mat;
pub mod pump;
pub mod scalar;
pub mod spdc;

pub use cov::{symplectic_form, CovMatrix, Party, SymplecticSpectrum, WilliamsonFactors};
pub use error::{Error, Result};
pub use mat::SquareMat;
pub use pump::{
    beta_squared, delta_from_beta, feasible_waist_scan, max_twist, mixture_model,
    params_from_normalized, MixtureMode, MixtureModel, NormalizedPoint, TgsmParams,
};
pub use scalar::Real;
pub use spdc::{
    closed_form_eigs, coordinate_transform, entanglement_report, two_photon_purity,
    ClosedFormEigs, EntanglementReport, ManciniProducts, PhaseMatching, TwoPhotonState,
};

/// Double-precision instantiations.
pub type SquareMat64 = SquareMat<f64>;
pub type CovMatrix64 = CovMatrix<f64>;
pub type SymplecticSpectrum64 = SymplecticSpectrum<f64>;
pub type WilliamsonFactors64 = WilliamsonFactors<f64>;
pub type TgsmParams64 = TgsmParams<f64>;
pub type NormalizedPoint64 = NormalizedPoint<f64>;
pub type MixtureModel64 = MixtureModel<f64>;
pub type PhaseMatching64 = PhaseMatching<f64>;
pub type TwoPhotonState64 = TwoPhotonState<f64>;
pub type EntanglementReport64 = EntanglementReport<f64>;

/// Single-precision instantiations, mainly exercised by tests.
pub type CovMatrix32 = CovMatrix<f32>;
pub type TgsmParams32 = TgsmParams<f32>;
