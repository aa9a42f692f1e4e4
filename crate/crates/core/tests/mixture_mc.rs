//! Monte Carlo validation of the incoherent-mixture representation: the
//! empirical covariance of sampled component means must match the ensemble
//! covariance within statistical error, with the sample-covariance estimator
//! as the oracle.

use twistbeam::{mixture_model, params_from_normalized, MixtureMode, NormalizedPoint, SquareMat};

const SIGMA: f64 = 50e-6;
const WAVENUMBER: f64 = 2.0 * std::f64::consts::PI / 400e-9;

/// Entry-wise z-scores of the known-mean sample covariance against the
/// target. `Var(x_i x_j) = c_ii c_jj + c_ij^2` for a Gaussian (Isserlis), so
/// the standard error of each entry is `sqrt((c_ii c_jj + c_ij^2) / N)`.
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
            // Degenerate direction: the sampler must return exact zeros.
            assert_eq!(mean, 0.0);
            0.0
        } else {
            (mean - target[(i, j)]) / (var / n).sqrt()
        }
    })
}

#[test]
fn williamson_mixture_statistics_at_half_coherence() {
    let pt = NormalizedPoint::new(0.5, 0.5, 1.0).unwrap();
    let pump = params_from_normalized(&pt, SIGMA, WAVENUMBER, 0.0).unwrap();
    let model = mixture_model(&pump, MixtureMode::Williamson).unwrap();

    // Reconstruction of the pump CM.
    let target = pump.pump_cm().unwrap();
    let rec = model.component_cm.mat().add(&model.ensemble_cov);
    let residual = rec.sub(target.mat()).max_abs() / target.mat().max_abs();
    assert!(residual < 1e-9, "reconstruction residual {residual}");

    let samples = model.sample_means(100_000, 7_002);
    let z = covariance_z_scores(&samples, &model.ensemble_cov);
    let worst = z.max_abs();
    assert!(worst <= 5.0, "worst covariance z-score {worst}");
}

#[test]
fn symmetric_waist_mixture_statistics() {
    let pt = NormalizedPoint::new(0.5, 0.0, 1.0).unwrap();
    let pump = params_from_normalized(&pt, SIGMA, WAVENUMBER, 0.0).unwrap();
    let waist = SIGMA * 0.5f64.sqrt();
    let model = mixture_model(&pump, MixtureMode::SymmetricWaist(waist)).unwrap();
    let samples = model.sample_means(50_000, 11);
    let z = covariance_z_scores(&samples, &model.ensemble_cov);
    assert!(z.max_abs() <= 5.0, "worst z-score {}", z.max_abs());
}

#[test]
fn sampling_reproducibility_across_calls() {
    let pt = NormalizedPoint::new(0.3, 0.8, 1.0).unwrap();
    let pump = params_from_normalized(&pt, SIGMA, WAVENUMBER, 0.0).unwrap();
    let model = mixture_model(&pump, MixtureMode::Williamson).unwrap();
    let a = model.sample_means(1000, 99);
    let b = model.sample_means(1000, 99);
    assert_eq!(a, b);
}
