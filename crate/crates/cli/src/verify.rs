//! Randomized verification suite: closed form vs numerical PT spectrum,
//! purity identities, angular-momentum conservation, scaling invariance,
//! twist-bound saturation, and the criterion hierarchy.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twistbeam::{
    closed_form_eigs, delta_from_beta, entanglement_report, max_twist, params_from_normalized,
    NormalizedPoint, Party, PhaseMatching, TgsmParams, TwoPhotonState,
};

const WAVELENGTH: f64 = 400e-9;

#[derive(Debug, Clone)]
struct Check {
    name: &'static str,
    tol: f64,
    worst: f64,
    failures: usize,
    first_failure: Option<String>,
}

impl Check {
    fn new(name: &'static str, tol: f64) -> Self {
        Self { name, tol, worst: 0.0, failures: 0, first_failure: None }
    }

    fn record(&mut self, defect: f64, point: &str) {
        if defect > self.worst {
            self.worst = defect;
        }
        if defect > self.tol {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(point.to_string());
            }
        }
    }

    fn passed(&self) -> bool {
        self.failures == 0
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// Run `trials` random points; returns `true` iff every check passed.
/// `tolerance` overrides the closed-form-vs-oracle relative tolerance.
pub fn run_verify(trials: usize, seed: u64, tolerance: f64) -> bool {
    let k = 2.0 * std::f64::consts::PI / WAVELENGTH;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut checks = vec![
        Check::new("closed_form_vs_pt_oracle", tolerance),
        Check::new("pt_twofold_degeneracy", 1e-9),
        Check::new("pump_purity_beta_sq", 1e-9),
        Check::new("photon_purity_chain", 1e-8),
        Check::new("local_scaling_invariance", 1e-9),
        Check::new("photon_oam_half_pump", 1e-9),
        Check::new("twist_bound_saturation", 1e-9),
        Check::new("mancini_implies_npt", 0.5),
    ];

    for _ in 0..trials {
        let sigma = rng.gen_range((10e-6f64).ln()..(1e-3f64).ln()).exp();
        let beta = rng.gen_range((0.01f64).ln()..(1.0f64).ln()).exp();
        let t = rng.gen_range(0.0..=1.0);
        let length = rng.gen_range((1e-3f64).ln()..(3e-2f64).ln()).exp();
        let inv_r = rng.gen_range(0.0..=1e-2) / sigma;
        let label = format!(
            "sigma={sigma:.6e} beta={beta:.6} t={t:.6} L={length:.6e} inv_r={inv_r:.6e}"
        );

        let pt = NormalizedPoint::new(beta, t, 1.0).expect("valid draw");
        let pump = params_from_normalized(&pt, sigma, k, inv_r).expect("valid params");
        let pm = PhaseMatching::new(length, k).expect("valid phase matching");
        let state = TwoPhotonState::new(pump, pm).expect("valid state");

        let closed = closed_form_eigs(&pump, &pm);
        let spectrum = state.pt_spectrum(Party::Photon2).expect("PT spectrum");
        let v = &spectrum.values;
        checks[0].record(
            rel(v[0], closed.lambda_minus).max(rel(v[3], closed.lambda_plus)),
            &label,
        );
        checks[1].record(((v[1] - v[0]).max(v[3] - v[2]) / v[3]).abs(), &label);

        let beta_sq = beta * beta;
        let pump_purity = pump.pump_cm().unwrap().purity().expect("pump purity");
        checks[2].record(rel(pump_purity, beta_sq), &label);

        let chain = state.photon_cm().purity().expect("photon purity");
        checks[3].record(rel(chain, beta_sq * 5.0 / 27.0), &label);

        let base = state.photon_cm().symplectic_spectrum().expect("spectrum");
        let scaled = state
            .photon_cm()
            .local_scale()
            .unwrap()
            .symplectic_spectrum()
            .expect("scaled spectrum");
        let scaling_defect = base
            .values
            .iter()
            .zip(&scaled.values)
            .map(|(a, b)| rel(*a, *b))
            .fold(0.0f64, f64::max);
        checks[4].record(scaling_defect, &label);

        let report = entanglement_report(&pump, &pm).expect("report");
        let oam_scale = report.pump_oam.abs().max(1.0);
        checks[5].record(
            (report.photon_oam - report.pump_oam / 2.0).abs() / oam_scale,
            &label,
        );

        // Twist bound: saturation at |u| = 1/(k delta^2), physical just
        // inside, unphysical just outside.
        let delta = delta_from_beta(beta, sigma).unwrap();
        if delta.is_finite() {
            let bound = max_twist(k, delta);
            let at = TgsmParams::new(sigma, delta, inv_r, bound, k).unwrap();
            let nu_min = at.pump_cm().unwrap().symplectic_spectrum().unwrap().values[0];
            let mut defect = (nu_min - 0.5).abs();
            let inside = TgsmParams::new(sigma, delta, inv_r, bound * (1.0 - 1e-9), k).unwrap();
            if !inside.pump_cm().unwrap().is_physical(1e-9) {
                defect = 1.0;
            }
            let outside =
                TgsmParams::new_unchecked_twist(sigma, delta, inv_r, bound * (1.0 + 1e-6), k)
                    .unwrap();
            if outside.pump_cm_unchecked().is_physical(1e-9) {
                defect = 1.0;
            }
            checks[6].record(defect, &label);
        }

        // Hierarchy: a Mancini violation must come with an NPT verdict.
        let broken = report.mancini_violated && !report.npt_entangled;
        checks[7].record(if broken { 1.0 } else { 0.0 }, &label);
    }

    println!(
        "{:<28} {:>8} {:>13} {:>10} {:>8}",
        "check", "trials", "worst", "tol", "result"
    );
    let mut all_ok = true;
    for c in &checks {
        let status = if c.passed() { "PASS" } else { "FAIL" };
        all_ok &= c.passed();
        println!(
            "{:<28} {:>8} {:>13.3e} {:>10.1e} {:>8}",
            c.name, trials, c.worst, c.tol, status
        );
    }
    if !all_ok {
        for c in checks.iter().filter(|c| !c.passed()) {
            eprintln!(
                "FAIL {}: {} failing points, first at {}",
                c.name,
                c.failures,
                c.first_failure.as_deref().unwrap_or("<unknown>")
            );
        }
    }
    all_ok
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_suite_passes_quickly() {
        assert!(run_verify(50, 7, 1e-6));
    }

    #[test]
    fn absurd_tolerance_fails() {
        assert!(!run_verify(50, 7, 1e-15));
    }
}
