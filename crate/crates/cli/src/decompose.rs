//! Incoherent-mixture Monte Carlo experiment: build the decomposition,
//! sample component means, and report empirical-vs-target covariance
//! z-scores as JSON.

use serde::Serialize;
use twistbeam::{
    feasible_waist_scan, mixture_model, Error, MixtureMode, SquareMat,
};

use crate::point::{resolve_point, Physical};
use crate::CliError;

#[derive(Debug, Clone, Serialize)]
pub struct DecomposeReport {
    pub mode: String,
    pub beta: f64,
    pub t_norm: f64,
    pub sigma_m: f64,
    pub wavelength_m: f64,
    pub curvature_inv_m: f64,
    pub component_waist_m: Option<f64>,
    pub samples: usize,
    pub seed: u64,
    pub feasible: bool,
    pub reconstruction_residual: f64,
    pub component_purity: f64,
    pub max_abs_z: f64,
    pub z_scores: Vec<Vec<f64>>,
    pub ensemble_cov: Vec<Vec<f64>>,
    /// For the symmetric-waist mode: bracketing of the feasible component
    /// waists found by a 200-point log scan over `(0, sigma]`.
    pub feasible_waist_range_m: Option<(f64, f64)>,
}

/// Entry-wise z-scores of the known-mean sample covariance: the estimator
/// variance of entry `(i, j)` is `(c_ii c_jj + c_ij^2) / N` (Isserlis).
fn covariance_z_scores(samples: &[[f64; 4]], target: &SquareMat<f64>) -> SquareMat<f64> {
    let n = samples.len() as f64;
    let mut emp: SquareMat<f64> = SquareMat::zeros(4);
    for s in samples {
        for i in 0..4 {
            for j in 0..4 {
                emp[(i, j)] += s[i] * s[j];
            }
        }
    }
    SquareMat::from_fn(4, |i, j| -> f64 {
        let mean: f64 = emp[(i, j)] / n;
        let var: f64 = target[(i, i)] * target[(j, j)] + target[(i, j)] * target[(i, j)];
        if var == 0.0 {
            // Degenerate direction: a faithful sampler returns exact zeros.
            if mean == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            (mean - target[(i, j)]) / (var / n).sqrt()
        }
    })
}

fn to_rows(m: &SquareMat<f64>) -> Vec<Vec<f64>> {
    (0..m.dim()).map(|i| (0..m.dim()).map(|j| m[(i, j)]).collect()).collect()
}

#[allow(clippy::too_many_arguments)]
pub fn run_decompose(
    beta: f64,
    t: f64,
    twist_sign: f64,
    phys: &Physical,
    mode_name: &str,
    waist_m: Option<f64>,
    samples: usize,
    seed: u64,
) -> Result<DecomposeReport, CliError> {
    if samples < 100 {
        return Err(CliError::Invalid(format!(
            "samples must be at least 100, got {samples}"
        )));
    }
    let (pump, _) = resolve_point(beta, t, twist_sign, phys)
        .map_err(|e| CliError::Invalid(e.to_string()))?;

    let component_waist = waist_m.unwrap_or_else(|| phys.sigma_m * beta.sqrt());
    let (mode, mode_label, waist_field) = match mode_name {
        "williamson" => (MixtureMode::Williamson, "williamson", None),
        "symmetric-waist" => (
            MixtureMode::SymmetricWaist(component_waist),
            "symmetric-waist",
            Some(component_waist),
        ),
        other => {
            return Err(CliError::Invalid(format!(
                "unknown mode '{other}' (expected 'williamson' or 'symmetric-waist')"
            )))
        }
    };

    let scan_range = if mode_name == "symmetric-waist" {
        let scan = feasible_waist_scan(&pump, 200).map_err(|e| CliError::Invalid(e.to_string()))?;
        let feasible: Vec<f64> =
            scan.iter().filter(|(_, ok)| *ok).map(|&(w, _)| w).collect();
        if feasible.is_empty() {
            None
        } else {
            Some((feasible[0], *feasible.last().unwrap()))
        }
    } else {
        None
    };

    let model = match mixture_model(&pump, mode) {
        Ok(model) => model,
        Err(Error::InfeasibleWaist { waist, min_eigenvalue }) => {
            return Err(CliError::Infeasible(format!(
                "symmetric-waist decomposition infeasible at waist {waist:e} m \
                 (remainder eigenvalue {min_eigenvalue:e}); feasible range: {}",
                match scan_range {
                    Some((lo, hi)) => format!("[{lo:e}, {hi:e}] m"),
                    None => "none found in (sigma/1000, sigma]".to_string(),
                }
            )))
        }
        Err(e) => return Err(CliError::Invalid(e.to_string())),
    };

    let target = pump.pump_cm().map_err(|e| CliError::Invalid(e.to_string()))?;
    let rec = model.component_cm.mat().add(&model.ensemble_cov);
    let reconstruction_residual =
        rec.sub(target.mat()).max_abs() / target.mat().max_abs();
    let component_purity = model
        .component_cm
        .purity()
        .map_err(|e| CliError::Invalid(e.to_string()))?;

    let draws = model.sample_means(samples, seed);
    let z = covariance_z_scores(&draws, &model.ensemble_cov);

    Ok(DecomposeReport {
        mode: mode_label.to_string(),
        beta,
        t_norm: t,
        sigma_m: phys.sigma_m,
        wavelength_m: phys.wavelength_m,
        curvature_inv_m: phys.curvature_inv_m,
        component_waist_m: waist_field,
        samples,
        seed,
        feasible: true,
        reconstruction_residual,
        component_purity,
        max_abs_z: z.max_abs(),
        z_scores: to_rows(&z),
        ensemble_cov: to_rows(&model.ensemble_cov),
        feasible_waist_range_m: scan_range,
    })
}
