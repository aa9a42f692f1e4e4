//! `(beta, t)` grid sweeps written as deterministic CSV.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Deserialize;

use crate::point::{evaluate_point, Physical, PointReport, CSV_HEADER};
use crate::CliError;

/// One sweep axis: `count` points spread linearly over `[min, max]`.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl GridSpec {
    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.min];
        }
        let step = (self.max - self.min) / (self.count - 1) as f64;
        (0..self.count).map(|i| self.min + step * i as f64).collect()
    }
}

/// Sweep configuration; the JSON config file deserializes into exactly this.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub wavelength_m: f64,
    pub sigma_m: f64,
    pub crystal_length_m: f64,
    pub curvature_inv_m: f64,
    pub beta_grid: GridSpec,
    pub twist_grid: GridSpec,
    pub output_path: String,
    /// Part of the schema for bookkeeping; sweeps involve no randomness, so
    /// the output does not depend on it.
    #[serde(default)]
    #[allow(dead_code)]
    pub seed: u64,
}

impl SweepSpec {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("cannot parse {}: {e}", path.display())))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let invalid = |msg: &str| Err(CliError::Invalid(msg.to_string()));
        if !(self.wavelength_m > 0.0) || !(self.sigma_m > 0.0) || !(self.crystal_length_m > 0.0) {
            return invalid("wavelength_m, sigma_m and crystal_length_m must be positive");
        }
        if !self.curvature_inv_m.is_finite() {
            return invalid("curvature_inv_m must be finite");
        }
        let b = &self.beta_grid;
        if !(b.min > 0.0 && b.min <= b.max && b.max <= 1.0) || b.count < 1 {
            return invalid("beta grid must satisfy 0 < min <= max <= 1 and count >= 1");
        }
        let t = &self.twist_grid;
        if !(t.min >= 0.0 && t.min <= t.max && t.max <= 1.0) || t.count < 1 {
            return invalid("twist grid must satisfy 0 <= min <= max <= 1 and count >= 1");
        }
        Ok(())
    }

    pub fn physical(&self) -> Physical {
        Physical {
            wavelength_m: self.wavelength_m,
            sigma_m: self.sigma_m,
            crystal_length_m: self.crystal_length_m,
            curvature_inv_m: self.curvature_inv_m,
        }
    }
}

/// Evaluate the grid in row-major order (beta outer, t inner). Points fan
/// out across threads; rows are collected back in grid order so the output
/// is byte-identical regardless of scheduling.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<PointReport>, CliError> {
    spec.validate()?;
    let phys = spec.physical();
    let betas = spec.beta_grid.values();
    let twists = spec.twist_grid.values();
    let points: Vec<(f64, f64)> = betas
        .iter()
        .flat_map(|&b| twists.iter().map(move |&t| (b, t)))
        .collect();
    points
        .par_iter()
        .map(|&(beta, t)| {
            evaluate_point(beta, t, 1.0, &phys)
                .map_err(|e| CliError::Invalid(format!("point (beta={beta}, t={t}): {e}")))
        })
        .collect()
}

pub fn write_csv(rows: &[PointReport], path: &PathBuf) -> Result<(), CliError> {
    let file = fs::File::create(path)
        .map_err(|e| CliError::Invalid(format!("cannot create {}: {e}", path.display())))?;
    let mut out = BufWriter::new(file);
    let io_err = |e: std::io::Error| CliError::Invalid(format!("write failed: {e}"));
    writeln!(out, "{CSV_HEADER}").map_err(io_err)?;
    for row in rows {
        writeln!(out, "{}", row.csv_row()).map_err(io_err)?;
    }
    out.flush().map_err(io_err)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base_spec() -> SweepSpec {
        SweepSpec {
            wavelength_m: 400e-9,
            sigma_m: 50e-6,
            crystal_length_m: 1e-2,
            curvature_inv_m: 0.0,
            beta_grid: GridSpec { min: 0.1, max: 1.0, count: 4 },
            twist_grid: GridSpec { min: 0.0, max: 1.0, count: 3 },
            output_path: "out.csv".into(),
            seed: 0,
        }
    }

    #[test]
    fn grid_values_are_inclusive_linspace() {
        let g = GridSpec { min: 0.0, max: 1.0, count: 5 };
        assert_eq!(g.values(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        let single = GridSpec { min: 0.3, max: 0.9, count: 1 };
        assert_eq!(single.values(), vec![0.3]);
    }

    #[test]
    fn row_major_order_beta_outer() {
        let rows = run_sweep(&base_spec()).unwrap();
        assert_eq!(rows.len(), 12);
        assert_eq!(rows[0].beta, 0.1);
        assert_eq!(rows[0].t_norm, 0.0);
        assert_eq!(rows[1].t_norm, 0.5);
        assert_eq!(rows[2].t_norm, 1.0);
        assert_eq!(rows[3].beta, 0.4);
    }

    #[test]
    fn invalid_grid_is_rejected() {
        let mut spec = base_spec();
        spec.beta_grid.min = 0.0;
        assert!(matches!(run_sweep(&spec), Err(CliError::Invalid(_))));
        let mut spec = base_spec();
        spec.twist_grid.max = 1.5;
        assert!(matches!(run_sweep(&spec), Err(CliError::Invalid(_))));
        let mut spec = base_spec();
        spec.beta_grid.count = 0;
        assert!(matches!(run_sweep(&spec), Err(CliError::Invalid(_))));
    }

    #[test]
    fn config_rejects_unknown_fields() {
        let json = r#"{
            "wavelength_m": 4e-7, "sigma_m": 5e-5, "crystal_length_m": 0.01,
            "curvature_inv_m": 0, "beta_grid": {"min": 0.5, "max": 1, "count": 2},
            "twist_grid": {"min": 0, "max": 1, "count": 2},
            "output_path": "x.csv", "seed": 1, "typo_field": 3
        }"#;
        assert!(serde_json::from_str::<SweepSpec>(json).is_err());
    }
}
