use std::path::Path;
use std::process::{Command, Output};

fn volterra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_volterra"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// Value following `label` on its line.
fn field(text: &str, label: &str) -> f64 {
    let line = text
        .lines()
        .find(|l| l.trim_start().starts_with(label))
        .unwrap_or_else(|| panic!("{label} in {text}"));
    line.trim_start()[label.len()..]
        .split_whitespace()
        .next()
        .unwrap()
        .trim_end_matches(',')
        .parse()
        .unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn hardy_norm_of_monomial() {
    let o = volterra(&["norm", "--space", "hardy", "--p", "2", "--symbol", "monomial:3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!((field(&stdout(&o), "H^2 norm:") - 1.0).abs() < 1e-12);
}

#[test]
fn bergman_norm_of_z() {
    let o = volterra(&[
        "norm",
        "--space",
        "bergman",
        "--p",
        "2",
        "--alpha",
        "0",
        "--symbol",
        "monomial:1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = field(&stdout(&o), "A^2_0 norm:");
    assert!((v - 0.5f64.sqrt()).abs() < 1e-7, "{v}");
}

#[test]
fn bp_divergence_of_log() {
    let o = volterra(&["norm", "--space", "bp", "--p", "2", "--symbol", "log"]);
    assert_eq!(o.status.code(), Some(0));
    let e = field(&stdout(&o), "growth exponent:");
    assert!((e + 0.5).abs() < 0.05, "{e}");
}

#[test]
fn verify_default_passes() {
    let o = volterra(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.ends_with(" ok")).count(), 6);
}

#[test]
fn verify_order_one_pair_passes() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.txt");
    std::fs::write(&f, "1 0\n2 0\n3 0\n").unwrap();
    let o = volterra(&[
        "verify",
        "--coeffs",
        path_str(&f),
        "--symbol",
        "log",
        "--n",
        "1",
        "--N",
        "64",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn corrupted_coefficients_fail_triple_agreement() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "1 0\n0.5 0\n1.7e308 0\n0.25 0\n").unwrap();
    let file_symbol = format!("file:{}", path_str(&bad));
    let o = volterra(&[
        "verify",
        "--coeffs",
        path_str(&bad),
        "--symbol",
        &file_symbol,
        "--n",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("triple-agreement"), "{}", stderr(&o));
}

#[test]
fn unparseable_coefficients_are_format_errors() {
    let dir = tempfile::tempdir().unwrap();
    let junk = dir.path().join("junk.txt");
    std::fs::write(&junk, "1 0\nabc 0\n").unwrap();
    let o = volterra(&["verify", "--coeffs", path_str(&junk)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"));
}

#[test]
fn parameter_errors_exit_two() {
    assert_eq!(volterra(&["norm", "--space", "hardy"]).status.code(), Some(2));
    assert_eq!(volterra(&["norm", "--symbol", "pow:-1"]).status.code(), Some(2));
    assert_eq!(
        volterra(&["norm", "--symbol", "log", "--p", "0.5"]).status.code(),
        Some(2)
    );
    assert_eq!(volterra(&["paper", "--only", "nope"]).status.code(), Some(2));
    assert_eq!(volterra(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn cap_errors_exit_three() {
    let o = volterra(&["carleson", "box", "--symbol", "z", "--levels", "12"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn box_profile_for_log_vanishes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("box.csv");
    let o = volterra(&[
        "carleson",
        "box",
        "--symbol",
        "log",
        "--n",
        "2",
        "--p",
        "2",
        "--out",
        path_str(&out),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(field(&text, "fitted slope:") >= 1.8);
    assert!(text.contains("verdict:        vanishing"));
    let csv = std::fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("scale,density,region_id,tail_estimate\n"));
    assert_eq!(csv.lines().count(), 9);
}

#[test]
fn ball_profiles_flip_with_order() {
    let base = [
        "carleson", "ball", "--gprime", "pow:1.5", "--p", "2", "--q", "2", "--alpha", "0", "--beta", "0",
    ];
    let one = volterra(&[&base[..], &["--n", "1"]].concat());
    let two = volterra(&[&base[..], &["--n", "2"]].concat());
    assert!((field(&stdout(&one), "fitted slope:") + 1.0).abs() <= 0.1);
    assert!(stdout(&one).contains("divergent"));
    assert!((field(&stdout(&two), "fitted slope:") - 1.0).abs() <= 0.1);
    assert!(stdout(&two).contains("verdict:        vanishing"));
}

#[test]
fn essnorm_hardy_log_is_compact() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ess.csv");
    let o = volterra(&[
        "essnorm",
        "hardy",
        "--symbol",
        "log",
        "--n",
        "2",
        "--p",
        "2",
        "--out",
        path_str(&out),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("verdict:          compact"), "{text}");
    assert!(text.contains("coherent:         yes"));
    let csv = std::fs::read_to_string(&out).unwrap();
    for block in ["# kernel", "# carleson", "# ratio"] {
        assert!(csv.contains(block));
    }
}

#[test]
fn essnorm_bergman_orders_disagree() {
    let base = [
        "essnorm",
        "bergman",
        "--gprime",
        "pow:1.5",
        "--p",
        "2",
        "--q",
        "2",
        "--out",
        "/dev/null",
    ];
    let one = stdout(&volterra(&[&base[..], &["--n", "1"]].concat()));
    let two = stdout(&volterra(&[&base[..], &["--n", "2"]].concat()));
    assert!(one.contains("verdict:          unbounded"), "{one}");
    assert!(two.contains("verdict:          compact"), "{two}");
}

#[test]
fn essnorm_zero_symbol_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("zero.csv");
    let o = volterra(&["essnorm", "hardy", "--symbol", "zero", "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(&out).unwrap();
    let densities: Vec<f64> = csv
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("scale"))
        .filter_map(|l| l.split(',').nth(1))
        .filter(|d| !d.is_empty())
        .map(|d| d.parse().unwrap())
        .collect();
    assert!(!densities.is_empty());
    assert!(densities.iter().all(|&d| d == 0.0));
}

#[test]
fn identical_runs_write_identical_csv() {
    let dir = tempfile::tempdir().unwrap();
    let runs: Vec<Vec<u8>> = (0..2)
        .map(|i| {
            let out = dir.path().join(format!("run{i}.csv"));
            let o = volterra(&[
                "essnorm",
                "hardy",
                "--symbol",
                "log",
                "--n",
                "2",
                "--levels",
                "5",
                "--seed",
                "7",
                "--out",
                path_str(&out),
            ]);
            assert_eq!(o.status.code(), Some(0));
            std::fs::read(&out).unwrap()
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(
        &cfg,
        "# norm settings\nsymbol = monomial:1\nspace_unused_key_check = 1\n",
    )
    .unwrap();
    let o = volterra(&["norm", "--config", path_str(&cfg)]);
    assert_eq!(o.status.code(), Some(2), "unknown keys are rejected");

    std::fs::write(&cfg, "symbol = monomial:1\np = 4\nalpha = 1\n").unwrap();
    let o = volterra(&["norm", "--space", "bergman", "--config", path_str(&cfg), "--p", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    // ||z||_{A^2_1}^2 = 2 / 6
    let v = field(&stdout(&o), "A^2_1 norm:");
    assert!((v - (1.0f64 / 3.0).sqrt()).abs() < 1e-7, "{v}");
}

#[test]
fn paper_single_scenarios() {
    let o = volterra(&["paper", "--only", "vk-norm"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for k in 1..=5 {
        assert!(text.contains(&format!("k={k}:")));
    }
    let o = volterra(&["paper", "--only", "corollary"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("gamma window"));
}
