//! One-point evaluation shared by `report` and `sweep`, plus the flat
//! record serialized to CSV rows and JSON reports.

use serde::{Serialize, Serializer};
use twistbeam::{
    closed_form_eigs, entanglement_report, params_from_normalized, NormalizedPoint,
    PhaseMatching, TgsmParams,
};

/// Fixed physical configuration of a run (everything but the sweep axes).
#[derive(Debug, Clone, Copy)]
pub struct Physical {
    pub wavelength_m: f64,
    pub sigma_m: f64,
    pub crystal_length_m: f64,
    pub curvature_inv_m: f64,
}

impl Physical {
    pub fn wavenumber(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.wavelength_m
    }
}

/// Flat per-point record. Field order is the CSV column order; the JSON
/// report serializes the same fields in the same order.
#[derive(Debug, Clone, Serialize)]
pub struct PointReport {
    pub beta: f64,
    pub t_norm: f64,
    pub u_inv_m: f64,
    #[serde(serialize_with = "serialize_maybe_infinite")]
    pub delta_m: f64,
    pub tau2_inv_m2: f64,
    pub lambda_minus: f64,
    pub lambda_plus: f64,
    pub log_negativity: f64,
    pub mancini_min: f64,
    pub purity: f64,
    pub npt_entangled: u8,
    pub mancini_violated: u8,
    pub pump_oam: f64,
    pub photon_oam: f64,
    pub a_plus: f64,
    pub a_minus: f64,
}

/// The coherent limit has a genuinely infinite coherence length; JSON has
/// no literal for it, so it is emitted as the string `"inf"`.
fn serialize_maybe_infinite<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(*x)
    } else {
        s.serialize_str("inf")
    }
}

pub const CSV_HEADER: &str = "beta,t_norm,u_inv_m,delta_m,tau2_inv_m2,lambda_minus,lambda_plus,\
log_negativity,mancini_min,purity,npt_entangled,mancini_violated";

/// Scientific notation with 9 significant digits; infinities print as `inf`.
pub fn fmt_sci(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.8e}")
    } else if x.is_infinite() && x > 0.0 {
        "inf".to_string()
    } else if x.is_infinite() {
        "-inf".to_string()
    } else {
        "nan".to_string()
    }
}

impl PointReport {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            fmt_sci(self.beta),
            fmt_sci(self.t_norm),
            fmt_sci(self.u_inv_m),
            fmt_sci(self.delta_m),
            fmt_sci(self.tau2_inv_m2),
            fmt_sci(self.lambda_minus),
            fmt_sci(self.lambda_plus),
            fmt_sci(self.log_negativity),
            fmt_sci(self.mancini_min),
            fmt_sci(self.purity),
            self.npt_entangled,
            self.mancini_violated,
        )
    }
}

/// Resolve a normalized sweep point into pump and phase-matching parameters.
pub fn resolve_point(
    beta: f64,
    t: f64,
    twist_sign: f64,
    phys: &Physical,
) -> twistbeam::Result<(TgsmParams<f64>, PhaseMatching<f64>)> {
    let pt = NormalizedPoint::new(beta, t, twist_sign)?;
    let k = phys.wavenumber();
    let pump = params_from_normalized(&pt, phys.sigma_m, k, phys.curvature_inv_m)?;
    let pm = PhaseMatching::new(phys.crystal_length_m, k)?;
    Ok((pump, pm))
}

/// Evaluate one (beta, t) point into the flat record.
pub fn evaluate_point(
    beta: f64,
    t: f64,
    twist_sign: f64,
    phys: &Physical,
) -> twistbeam::Result<PointReport> {
    let (pump, pm) = resolve_point(beta, t, twist_sign, phys)?;
    let report = entanglement_report(&pump, &pm)?;
    let closed = closed_form_eigs(&pump, &pm);
    debug_assert_eq!(closed.lambda_minus, report.lambda_minus);
    Ok(PointReport {
        beta,
        t_norm: t,
        u_inv_m: pump.twist(),
        delta_m: pump.delta(),
        tau2_inv_m2: pump.tau_sq(),
        lambda_minus: report.lambda_minus,
        lambda_plus: report.lambda_plus,
        log_negativity: report.log_negativity,
        mancini_min: report.mancini_products.diff_sum,
        purity: report.purity_two_photon,
        npt_entangled: report.npt_entangled as u8,
        mancini_violated: report.mancini_violated as u8,
        pump_oam: report.pump_oam,
        photon_oam: report.photon_oam,
        a_plus: report.a_plus,
        a_minus: report.a_minus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sci_format_is_nine_significant_digits() {
        assert_eq!(fmt_sci(0.5), "5.00000000e-1");
        assert_eq!(fmt_sci(2.4270323906946247), "2.42703239e0");
        assert_eq!(fmt_sci(630.2535746439054), "6.30253575e2");
        assert_eq!(fmt_sci(0.0), "0.00000000e0");
        assert_eq!(fmt_sci(f64::INFINITY), "inf");
    }

    #[test]
    fn json_field_order_matches_csv_then_extras() {
        let phys = Physical {
            wavelength_m: 400e-9,
            sigma_m: 50e-6,
            crystal_length_m: 1e-2,
            curvature_inv_m: 0.0,
        };
        let report = evaluate_point(1.0, 0.0, 1.0, &phys).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        let keys: Vec<&str> = json
            .split('"')
            .skip(1)
            .step_by(2)
            .filter(|k| !k.starts_with("inf"))
            .collect();
        assert_eq!(
            keys,
            vec![
                "beta",
                "t_norm",
                "u_inv_m",
                "delta_m",
                "tau2_inv_m2",
                "lambda_minus",
                "lambda_plus",
                "log_negativity",
                "mancini_min",
                "purity",
                "npt_entangled",
                "mancini_violated",
                "pump_oam",
                "photon_oam",
                "a_plus",
                "a_minus",
            ]
        );
        // Coherent point: infinite coherence length serialized as "inf".
        assert!(json.contains("\"delta_m\":\"inf\""));
    }
}
