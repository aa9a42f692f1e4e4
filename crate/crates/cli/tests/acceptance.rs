//! Acceptance suite: one test per criterion, each printing a PASS line
//! (run with `--nocapture` to see them). Reference configuration
//! throughout: 400 nm pump, sigma = 50 um, L = 1 cm, flat phase front.

use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use twistbeam::{
    closed_form_eigs, entanglement_report, mixture_model, params_from_normalized,
    ClosedFormEigs, MixtureMode, NormalizedPoint, Party, PhaseMatching, TwoPhotonState,
};

const SIGMA: f64 = 50e-6;
const WAVELENGTH: f64 = 400e-9;
const LENGTH: f64 = 1e-2;

fn wavenumber() -> f64 {
    2.0 * std::f64::consts::PI / WAVELENGTH
}

fn point(beta: f64, t: f64) -> (twistbeam::TgsmParams64, PhaseMatching<f64>) {
    let pt = NormalizedPoint::new(beta, t, 1.0).unwrap();
    let pump = params_from_normalized(&pt, SIGMA, wavenumber(), 0.0).unwrap();
    let pm = PhaseMatching::new(LENGTH, wavenumber()).unwrap();
    (pump, pm)
}

fn closed(beta: f64, t: f64) -> ClosedFormEigs<f64> {
    let (pump, pm) = point(beta, t);
    closed_form_eigs(&pump, &pm)
}

fn cli() -> Command {
    Command::new(env!("CARGO_BIN_EXE_twistbeam"))
}

fn parse_csv(text: &str) -> Vec<Vec<f64>> {
    let mut lines = text.lines();
    let header = lines.next().expect("header");
    assert_eq!(
        header,
        "beta,t_norm,u_inv_m,delta_m,tau2_inv_m2,lambda_minus,lambda_plus,\
         log_negativity,mancini_min,purity,npt_entangled,mancini_violated"
            .replace(' ', "")
    );
    lines
        .map(|l| l.split(',').map(|f| f.parse::<f64>().expect("numeric field")).collect())
        .collect()
}

const COL_BETA: usize = 0;
const COL_LAMBDA_MINUS: usize = 5;
const COL_NPT: usize = 10;

#[test]
fn acceptance_1_coherent_benchmark() {
    let c = closed(1.0, 0.0);
    assert!((c.lambda_minus - 0.23937).abs() <= 1e-4, "lambda_minus {}", c.lambda_minus);
    assert!((c.lambda_plus - 2.4270).abs() <= 1e-3, "lambda_plus {}", c.lambda_plus);

    // Both computation paths on the same point, with per-point timing.
    let (pump, pm) = point(1.0, 0.0);
    let reps = 200;
    let start = Instant::now();
    let mut worst_rel = 0.0f64;
    for _ in 0..reps {
        let c = closed_form_eigs(&pump, &pm);
        let state = TwoPhotonState::new(pump, pm).unwrap();
        let pt = state.pt_spectrum(Party::Photon2).unwrap();
        let rel = ((pt.values[0] - c.lambda_minus) / c.lambda_minus)
            .abs()
            .max(((pt.values[3] - c.lambda_plus) / c.lambda_plus).abs());
        worst_rel = worst_rel.max(rel);
    }
    let per_point = start.elapsed().as_secs_f64() / reps as f64;
    assert!(worst_rel <= 1e-6, "path disagreement {worst_rel}");
    assert!(per_point < 1e-3, "runtime {per_point} s/point");
    println!(
        "ACCEPTANCE 1 PASS: coherent benchmark lambda=({:.5}, {:.4}), paths agree to {:.1e}, {:.1} us/point",
        c.lambda_minus, c.lambda_plus, worst_rel, per_point * 1e6
    );
}

#[test]
fn acceptance_2_t0_profile_and_crossing() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t0.csv");
    let status = cli()
        .args([
            "sweep",
            "--beta-min", "0.01",
            "--beta-max", "1.0",
            "--beta-count", "200",
            "--twist-min", "0",
            "--twist-max", "0",
            "--twist-count", "1",
            "--out",
        ])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let rows = parse_csv(&std::fs::read_to_string(&out).unwrap());
    assert_eq!(rows.len(), 200);

    // min-law with the full-precision coherent constants.
    let base = closed(1.0, 0.0);
    for row in &rows {
        let expect = (base.lambda_minus / row[COL_BETA]).min(base.lambda_plus);
        let rel = (row[COL_LAMBDA_MINUS] - expect).abs() / expect;
        assert!(rel <= 1e-6, "beta {}: rel {}", row[COL_BETA], rel);
    }

    // Crossing of lambda_- = 1/2, interpolated on the sweep data.
    let mut crossing = None;
    for pair in rows.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        let (la, lb) = (a[COL_LAMBDA_MINUS], b[COL_LAMBDA_MINUS]);
        if (la - 0.5) * (lb - 0.5) <= 0.0 && la != lb {
            crossing =
                Some(a[COL_BETA] + (0.5 - la) * (b[COL_BETA] - a[COL_BETA]) / (lb - la));
            break;
        }
    }
    let crossing = crossing.expect("lambda_- crosses 1/2 on the grid");
    assert!(
        (crossing - 0.4787).abs() <= 1e-3,
        "crossing at beta = {crossing}"
    );
    println!(
        "ACCEPTANCE 2 PASS: t=0 profile matches min({:.5}/beta, {:.4}) to 1e-6; crossing at beta = {:.5}",
        base.lambda_minus, base.lambda_plus, crossing
    );
}

#[test]
fn acceptance_3_t1_two_region_structure() {
    let expectations = [
        (0.05, true),
        (0.1, true),
        (0.2, false),
        (0.3, false),
        (0.4, false),
        (0.9, true),
        (1.0, true),
    ];
    for (beta, expect_npt) in expectations {
        let (pump, pm) = point(beta, 1.0);
        let report = entanglement_report(&pump, &pm).unwrap();
        assert_eq!(report.npt_entangled, expect_npt, "beta = {beta}");

        // Cross-check closed form against the numerical PT oracle.
        let state = TwoPhotonState::new(pump, pm).unwrap();
        let pt = state.pt_spectrum(Party::Photon2).unwrap();
        let rel = ((pt.values[0] - report.lambda_minus) / report.lambda_minus).abs();
        assert!(rel <= 1e-6, "beta {beta}: oracle disagreement {rel}");
    }
    let lam_03 = closed(0.3, 1.0).lambda_minus;
    assert!((lam_03 - 0.7075).abs() <= 1e-3, "lambda_-(0.3) = {lam_03}");
    println!(
        "ACCEPTANCE 3 PASS: t=1 entangled at beta in {{0.05, 0.1}} and {{0.9, 1.0}}, separable gap at {{0.2, 0.3, 0.4}} with lambda_-(0.3) = {lam_03:.4}"
    );
}

#[test]
fn acceptance_4_incoherent_boost_monotonicity() {
    let betas = [0.1, 0.05, 0.02, 0.01];
    let mut previous = f64::INFINITY;
    for beta in betas {
        let (pump, pm) = point(beta, 1.0);
        let report = entanglement_report(&pump, &pm).unwrap();
        assert!(
            report.lambda_minus < previous,
            "lambda_- not strictly decreasing at beta {beta}"
        );
        previous = report.lambda_minus;
        let mu = beta * beta * 5.0 / 27.0;
        assert!(
            (report.purity_two_photon - mu).abs() <= 1e-9 * mu,
            "purity at beta {beta}"
        );
    }
    let (pump, pm) = point(0.01, 1.0);
    let report = entanglement_report(&pump, &pm).unwrap();
    assert!((report.lambda_minus - 0.0485).abs() <= 5e-3, "lambda {}", report.lambda_minus);
    assert!((report.log_negativity - 4.66).abs() <= 0.1, "E_N {}", report.log_negativity);
    println!(
        "ACCEPTANCE 4 PASS: lambda_- decreasing over beta {{0.1..0.01}} at t=1; lambda_-(0.01) = {:.4}, E_N = {:.3} nats, purity = beta^2 * 5/27",
        report.lambda_minus, report.log_negativity
    );
}

#[test]
fn acceptance_5_criterion_gap() {
    let (pump, pm) = point(0.1, 1.0);
    let report = entanglement_report(&pump, &pm).unwrap();
    let min_product = report.mancini_products.diff_sum;
    assert!((min_product - 12.09).abs() <= 0.05, "product {min_product}");
    assert!(!report.mancini_violated);
    assert!(report.lambda_minus < 0.5);
    assert!(report.npt_entangled);
    println!(
        "ACCEPTANCE 5 PASS: at (0.1, 1) Mancini product {min_product:.4} shows no violation while lambda_- = {:.4} < 1/2",
        report.lambda_minus
    );
}

#[test]
fn acceptance_6_verify_suite() {
    let start = Instant::now();
    let output = cli()
        .args(["verify", "--trials", "1000", "--seed", "42"])
        .output()
        .unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    assert!(
        output.status.success(),
        "verify failed:\n{}{}",
        String::from_utf8_lossy(&output.stdout),
        String::from_utf8_lossy(&output.stderr)
    );
    assert!(elapsed < 10.0, "verify took {elapsed} s");
    let table = String::from_utf8_lossy(&output.stdout);
    for check in [
        "closed_form_vs_pt_oracle",
        "pt_twofold_degeneracy",
        "pump_purity_beta_sq",
        "local_scaling_invariance",
        "photon_oam_half_pump",
        "twist_bound_saturation",
        "mancini_implies_npt",
    ] {
        assert!(table.contains(check), "missing check {check}");
    }
    println!("ACCEPTANCE 6 PASS: verify --trials 1000 exit 0 in {elapsed:.2} s");
}

#[test]
fn acceptance_7_mixture_monte_carlo() {
    let pt = NormalizedPoint::new(0.5, 0.5, 1.0).unwrap();
    let pump = params_from_normalized(&pt, SIGMA, wavenumber(), 0.0).unwrap();
    let model = mixture_model(&pump, MixtureMode::Williamson).unwrap();

    let target = pump.pump_cm().unwrap();
    let rec = model.component_cm.mat().add(&model.ensemble_cov);
    let residual = rec.sub(target.mat()).max_abs() / target.mat().max_abs();
    assert!(residual <= 1e-9, "reconstruction residual {residual}");

    let samples = model.sample_means(100_000, 2024);
    let n = samples.len() as f64;
    let mut worst_z = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            let mean: f64 = samples.iter().map(|s| s[i] * s[j]).sum::<f64>() / n;
            let c = &model.ensemble_cov;
            let var: f64 = c[(i, i)] * c[(j, j)] + c[(i, j)] * c[(i, j)];
            if var > 0.0 {
                worst_z = worst_z.max((mean - c[(i, j)]).abs() / (var / n).sqrt());
            }
        }
    }
    assert!(worst_z <= 5.0, "worst z-score {worst_z}");

    // Determinism through the CLI surface.
    let run = || {
        cli()
            .args([
                "decompose", "--beta", "0.5", "--twist", "0.5", "--samples", "5000",
                "--seed", "11", "--mode", "williamson",
            ])
            .output()
            .unwrap()
    };
    let (a, b) = (run(), run());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "decompose output not deterministic");
    println!(
        "ACCEPTANCE 7 PASS: Williamson mixture at (0.5, 0.5) reconstructs to {residual:.1e}, 1e5-sample z <= {worst_z:.2}, seeded runs identical"
    );
}

#[test]
fn acceptance_8_sweep_reproducibility() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<PathBuf> =
        vec![dir.path().join("a.csv"), dir.path().join("b.csv")];
    let mut durations = Vec::new();
    for p in &paths {
        let start = Instant::now();
        let status = cli()
            .args([
                "sweep",
                "--beta-min", "0.01", "--beta-max", "1.0", "--beta-count", "200",
                "--twist-min", "0.0", "--twist-max", "1.0", "--twist-count", "200",
                "--out",
            ])
            .arg(p)
            .status()
            .unwrap();
        assert!(status.success());
        durations.push(start.elapsed().as_secs_f64());
    }
    for d in &durations {
        assert!(*d < 5.0, "sweep took {d} s");
    }
    let a = std::fs::read(&paths[0]).unwrap();
    let b = std::fs::read(&paths[1]).unwrap();
    assert_eq!(a, b, "sweep outputs differ between runs");
    assert_eq!(a.iter().filter(|&&c| c == b'\n').count(), 40_001);

    // Rows must be finite except the coherent-limit coherence length.
    let text = String::from_utf8(a).unwrap();
    for row in parse_csv(&text) {
        for (idx, value) in row.iter().enumerate() {
            if idx == 3 && row[COL_BETA] == 1.0 {
                continue; // delta_m is genuinely infinite at beta = 1
            }
            assert!(value.is_finite(), "non-finite field {idx} in row {row:?}");
        }
        assert!(row[COL_NPT] == 0.0 || row[COL_NPT] == 1.0);
    }
    println!(
        "ACCEPTANCE 8 PASS: 200x200 sweeps byte-identical in {:.2} s and {:.2} s",
        durations[0], durations[1]
    );
}
