//! End-to-end tests of the `hypervar` binary: output schema, route
//! agreement, determinism, and exit codes.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypervar"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn csv_field(line: &str, idx: usize) -> &str {
    line.split(',').nth(idx).unwrap()
}

#[test]
fn variance_all_routes_agree() {
    let out = run(&["variance", "-D", "1", "-R", "1", "--route", "all"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "D,R,mean,variance,ratio,route,err_estimate,extra");
    // four route rows plus the discrepancy row
    assert_eq!(lines.len(), 6);
    for route in ["bessel", "hyp2f2", "quadrature", "spectral"] {
        assert!(
            lines.iter().any(|l| csv_field(l, 5) == route),
            "missing route {route}"
        );
    }
    let disc_line = lines.iter().find(|l| l.contains("discrepancy")).unwrap();
    let disc: f64 = disc_line
        .rsplit("max_pairwise=")
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert!(disc < 1e-7, "routes disagree by {disc}");
}

#[test]
fn expand_prints_known_coefficients() {
    let out = run(&["expand", "-D", "1", "--kmax", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("prefactor=5.64189583547756e-1"));
    assert!(text.contains("k=0;coeff=1.00000000000000e0"));
    assert!(text.contains("k=1;coeff=-6.25000000000000e-2"));
}

#[test]
fn classify_reports_class_i() {
    let out = run(&[
        "classify", "-D", "2", "--rmin", "10", "--rmax", "100", "-n", "20",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("label=ClassI"), "{text}");
    let exponent: f64 = text
        .split("fitted_exponent=")
        .nth(1)
        .unwrap()
        .split(';')
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert!((exponent - 3.0).abs() < 0.05, "exponent {exponent}");
}

#[test]
fn poisson_control_is_not_hyperuniform() {
    let out = run(&[
        "classify",
        "-D",
        "1",
        "--rmin",
        "10",
        "--rmax",
        "100",
        "-n",
        "20",
        "--poisson",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("label=NotHyperuniform"), "{text}");
    let exponent: f64 = text
        .split("fitted_exponent=")
        .nth(1)
        .unwrap()
        .split(';')
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert!((exponent - 2.0).abs() < 0.05, "exponent {exponent}");
}

#[test]
fn sample_output_is_byte_identical_for_fixed_seed() {
    let args = [
        "sample",
        "-D",
        "1",
        "-R",
        "2",
        "--n-samples",
        "20000",
        "--seed",
        "7",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = run(&[
        "sample",
        "-D",
        "1",
        "-R",
        "2",
        "--n-samples",
        "20000",
        "--seed",
        "8",
    ]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn scan_emits_grid_rows_in_order() {
    let out = run(&[
        "scan",
        "-D",
        "1",
        "--rmin",
        "1",
        "--rmax",
        "10",
        "-n",
        "5",
        "--spacing",
        "log",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 6); // header + 5 rows
    let mut prev = 0.0f64;
    for line in &lines[1..] {
        let r: f64 = csv_field(line, 1).parse().unwrap();
        assert!(r > prev);
        prev = r;
    }
    assert!((prev - 10.0).abs() < 1e-12);
}

#[test]
fn json_output_parses_and_mirrors_csv_columns() {
    let out = run(&["ratio", "-D", "2", "-R", "5", "--output", "json"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let value: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(value["D"], 2);
    assert_eq!(value["route"], "bessel");
    let ratio = value["ratio"].as_f64().unwrap();
    let mean = value["mean"].as_f64().unwrap();
    let variance = value["variance"].as_f64().unwrap();
    assert!((ratio * mean - variance).abs() <= 1e-14 * variance);
}

#[test]
fn verify_passes_on_clean_build() {
    let out = run(&["verify"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("7/7 checks passed"));
}

#[test]
fn usage_error_exits_two() {
    let out = run(&["variance", "-D", "1", "-R", "1", "--route", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn numeric_guard_exits_three() {
    // R = 6 puts the 2F2 argument far outside the cancellation guard.
    let out = run(&["variance", "-D", "1", "-R", "6", "--route", "hyp2f2"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8(out.stderr).unwrap().contains("guard"));
}

#[test]
fn polydisk_window_variance() {
    let out = run(&[
        "variance", "-D", "1", "-R", "2", "--window", "polydisk", "--route", "spectral",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let line = text.lines().nth(1).unwrap();
    let variance: f64 = csv_field(line, 3).parse().unwrap();
    // identified with the D=1 ball: e^{-8}·4·[I_0(8)+I_1(8)]
    assert!(
        (variance - 1.110_297_100_598_194).abs() < 1e-9,
        "{variance}"
    );
}

#[test]
fn mean_matches_closed_form() {
    let out = run(&["mean", "-D", "3", "-R", "2"]);
    let text = stdout(&out);
    let mean: f64 = csv_field(text.lines().nth(1).unwrap(), 2).parse().unwrap();
    assert!((mean - 64.0 / 6.0).abs() < 1e-12);
}
