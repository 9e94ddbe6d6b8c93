//! End-to-end tests of the `ltheta` binary: exit codes, output formats, and
//! byte-level determinism.

use std::process::{Command, Output};

fn ltheta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ltheta"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = ltheta(args);
    assert!(
        out.status.success(),
        "ltheta {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn theta_of_z1_at_one() {
    let s = stdout(&["theta", "--zn", "1", "--tau", "1"]);
    assert!(s.starts_with("theta = 1.08643481121330801457"), "{s}");
}

#[test]
fn theta_of_z24_is_power_of_z1() {
    let s = stdout(&["theta", "--zn", "24", "--tau", "1"]);
    // 1.0864348...^24 = 7.3128749...
    assert!(s.starts_with("theta = 7.3128749"), "{s}");
}

#[test]
fn missing_tau_is_a_usage_error() {
    let out = ltheta(&["theta", "--zn", "1"]);
    assert!(!out.status.success());
}

#[test]
fn missing_lattice_is_an_error_with_nonzero_exit() {
    let out = ltheta(&["theta", "--tau", "1"]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("select exactly one lattice"), "{err}");
}

#[test]
fn decompose_matches_published_coefficients() {
    let s = stdout(&["decompose", "--catalog", "cs32"]);
    assert_eq!(s.trim(), "a4=0 a3=1/2 a2=1 a1=1/2 a0=-1");
}

#[test]
fn decompose_constant_for_small_binomial_code() {
    // the [2,1] repetition code has l = 0 and a constant ratio
    let s = stdout(&["decompose", "--catalog", "rep2"]);
    assert_eq!(s.trim(), "a0=1");
}

#[test]
fn decompose_golay_sums_to_one() {
    let s = stdout(&["decompose", "--catalog", "golay24"]);
    assert_eq!(s.trim(), "a3=1 a2=-21/8 a1=21/4 a0=-21/8");
}

#[test]
fn check_reports_all_three_conditions() {
    let s = stdout(&["check", "--catalog", "cs32"]);
    assert!(s.contains("sufficient overall: true"), "{s}");
    assert!(s.contains("necessary value: 93157006770176/644658718275 pass=true"));
    assert!(s.contains("ushape: u_shaped"));
    assert!(s.contains("min at t = 1/sqrt(2): 19/128"));
    // Golay: sufficient condition fails, U-shape still certified
    let s = stdout(&["check", "--catalog", "golay24"]);
    assert!(s.contains("sufficient overall: false"), "{s}");
    assert!(s.contains("ushape: u_shaped"), "{s}");
}

#[test]
fn check_on_binomial_distribution_code() {
    // rep2's distribution is the binomial benchmark for n = 2: the
    // necessary condition is exactly 0 and the degenerate rule applies
    let s = stdout(&["check", "--catalog", "rep2"]);
    assert!(s.contains("sufficient: degenerate rule"), "{s}");
    assert!(s.contains("sufficient overall: false"), "{s}");
    assert!(s.contains("necessary value: 0 pass=true"), "{s}");
    assert!(s.contains("ushape: not_u_shaped"), "{s}");
}

#[test]
fn table1_is_deterministic_and_matches_published_rows() {
    let a = stdout(&["table1", "--csv"]);
    let b = stdout(&["table1", "--csv"]);
    assert_eq!(a, b, "identical invocations must be byte-identical");
    assert!(a.starts_with("n,tau_eps_zn,tau_lower_bound,code,tau_eps_code,tau_eps_ensemble\n"));
    assert!(a.contains("8,0.641,0.548,ham8,0.831,0.668"), "{a}");
    assert!(a.contains("16,0.501,0.417,dc16,0.744,0.675"), "{a}");
    assert!(a.contains("24,0.444,0.365,golay24,0.790,0.723"), "{a}");
    assert!(a.contains("32,0.411,0.335,rm32,0.767,0.747"), "{a}");
    // large-n rows carry the ensemble column even without catalog files
    assert!(a.contains("72,0.340,0.271,"), "{a}");
    assert!(a.contains(",0.679\n"), "{a}");
    assert!(a.contains("256,0.267,0.208,"), "{a}");
    assert!(a.contains(",0.533\n"), "{a}");
}

#[test]
fn figure1_csv_has_z12_on_top() {
    let s = stdout(&["figure1", "--eps", "0.1"]);
    let mut lines = s.lines();
    assert_eq!(lines.next().unwrap(), "code_id,n,tau_eps,eta_eps");
    let rows: Vec<Vec<String>> = lines
        .map(|l| l.split(',').map(|x| x.to_string()).collect())
        .collect();
    assert!(rows.iter().any(|r| r[0].starts_with("pdc12-")));
    let eta = |id: &str| -> f64 {
        rows.iter()
            .find(|r| r[0] == id)
            .unwrap_or_else(|| panic!("row {id}"))[3]
            .parse()
            .unwrap()
    };
    let z12 = eta("z12");
    for r in &rows {
        let e: f64 = r[3].parse().unwrap();
        assert!(e > 0.0 && e.is_finite());
        assert!(z12 >= e - 1e-9, "{} exceeds z12", r[0]);
    }
}

#[test]
fn ratio_curve_of_zn_is_constant_one() {
    let s = stdout(&[
        "ratio-curve", "--zn", "16", "--tau-lo", "0.5", "--tau-hi", "2", "--points", "4",
    ]);
    let mut lines = s.lines();
    assert_eq!(lines.next().unwrap(), "tau,delta");
    for line in lines {
        let delta: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        assert_eq!(delta, 1.0);
    }
}

#[test]
fn ratio_curve_golay_dips_at_one() {
    let s = stdout(&[
        "ratio-curve", "--catalog", "golay24", "--tau-lo", "0.5", "--tau-hi", "1.5",
        "--points", "3",
    ]);
    let vals: Vec<f64> = s
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(vals.len(), 3);
    assert!(vals[1] < vals[0] && vals[1] < vals[2], "{vals:?}");
}

#[test]
fn flatness_curve_emits_csv() {
    let s = stdout(&["flatness", "--zn", "8", "--curve", "0.5:2:4"]);
    assert!(s.starts_with("tau,epsilon\n"));
    assert_eq!(s.lines().count(), 5);
}

#[test]
fn scaled_lattice_smoothing_runs() {
    let s = stdout(&["tau-eps", "--catalog", "ham8", "--scaled", "--eps", "1/8"]);
    assert!(s.starts_with("tau_eps = "), "{s}");
}

#[test]
fn smoothing_of_z24() {
    let s = stdout(&["smoothing", "--zn", "24", "--eps", "1/24"]);
    // 1/sqrt(2 pi 0.4444) = 0.5986...
    assert!(s.starts_with("eta = 0.598"), "{s}");
}

#[test]
fn flatness_single_point() {
    let s = stdout(&["flatness", "--zn", "8", "--tau", "1"]);
    assert!(s.starts_with("epsilon = 0.941017"), "{s}");
    // neither --tau nor --curve is an error
    let out = ltheta(&["flatness", "--zn", "8"]);
    assert!(!out.status.success());
}

#[test]
fn explicit_h_coeffs_ratio() {
    let s = stdout(&[
        "ratio", "--h-coeffs", "-1,1/2,1,1/2,0", "--n", "32", "--tau", "1",
    ]);
    // 19/128 = 0.1484375
    assert!(s.starts_with("ratio = 0.14843"), "{s}");
}

#[test]
fn ensemble_ushape_verdict() {
    let s = stdout(&["ensemble", "--n", "24", "--ushape"]);
    assert_eq!(s.trim(), "ushape = u_shaped");
}

#[test]
fn low_digits_rejected() {
    let out = ltheta(&["--digits", "10", "theta", "--zn", "1", "--tau", "1"]);
    assert!(!out.status.success());
}

#[test]
fn bad_catalog_name_reports_cleanly() {
    let out = ltheta(&["decompose", "--catalog", "nope"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("no catalog entry named 'nope'"));
}
