//! End-to-end tests that drive the compiled `kgscatter` binary.
//!
//! Fast variants (coarse grids, reduced step counts) keep the full suite in
//! the second range while still touching every subcommand, both output
//! formats, the determinism guarantee, and the exit-code contract.

use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kgscatter"))
        .args(args)
        .output()
        .expect("spawn kgscatter")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is UTF-8")
}

const FAST_SWEEP: &[&str] = &["sweep", "--n-energies", "25", "--steps", "2000"];

#[test]
fn sweep_emits_csv_schema() {
    let output = run(FAST_SWEEP);
    assert_eq!(output.status.code(), Some(0), "stderr: {}", stderr(&output));
    let text = stdout(&output);
    assert!(text.ends_with('\n'));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 26, "header plus one row per energy");
    assert_eq!(lines[0], "E,k_L,k_R,regime,R,T,flag");
    for line in &lines[1..] {
        assert_eq!(line.split(',').count(), 7, "row {line:?}");
    }
}

#[test]
fn sweep_marks_conventional_rows() {
    let text = stdout(&run(FAST_SWEEP));
    let conv: Vec<&str> = text.lines().filter(|l| l.ends_with(",conv")).collect();
    assert!(
        !conv.is_empty(),
        "grid over [-8, 12] crosses the left-evanescent band"
    );
    for row in conv {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(
            fields[1], "0.000000000000",
            "left channel is evanescent: {row}"
        );
        assert_eq!(fields[3], "evanL");
        assert_eq!(fields[4], "1.00000000000");
        assert_eq!(fields[5], "0.000000000000");
    }
}

#[test]
fn sweep_json_round_trips() {
    let output = run(&[
        "sweep",
        "--n-energies",
        "7",
        "--steps",
        "2000",
        "--format",
        "json",
    ]);
    assert_eq!(output.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).expect("valid JSON");
    assert_eq!(value["meta"]["step_count"], 2000);
    assert_eq!(value["meta"]["n_energies"], 7);
    assert_eq!(value["meta"]["potential"]["kind"], "hyperbolic_tangent");
    let points = value["points"].as_array().expect("points array");
    assert_eq!(points.len(), 7);
    assert!(points[0]["R"].is_f64());
}

#[test]
fn sweep_output_is_byte_deterministic() {
    let first = run(FAST_SWEEP);
    let second = run(FAST_SWEEP);
    assert_eq!(first.stdout, second.stdout);

    let parallel = run(&[
        "sweep",
        "--n-energies",
        "25",
        "--steps",
        "2000",
        "--parallel",
    ]);
    assert_eq!(
        first.stdout, parallel.stdout,
        "thread count must not leak into output"
    );
}

#[test]
fn sweep_writes_file_and_plot() {
    let dir = tempfile::tempdir().expect("tempdir");
    let csv = dir.path().join("spectrum.csv");
    let svg = dir.path().join("spectrum.svg");
    let output = run(&[
        "sweep",
        "--n-energies",
        "25",
        "--steps",
        "2000",
        "--out",
        csv.to_str().unwrap(),
        "--plot",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0));
    assert!(
        stdout(&output).is_empty(),
        "--out diverts the table away from stdout"
    );
    let csv_text = std::fs::read_to_string(&csv).expect("csv written");
    assert!(csv_text.starts_with("E,k_L,k_R,"));
    let svg_text = std::fs::read_to_string(&svg).expect("svg written");
    assert!(svg_text.starts_with("<svg"));
    assert!(svg_text.trim_end().ends_with("</svg>"));
}

#[test]
fn point_csv_has_header_and_row() {
    let output = run(&["point", "--e", "10", "--steps", "2000"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], "E,k_L,k_R,regime,R,T,flag");
    assert!(lines[1].starts_with("10.0000000000,"));
    assert!(lines[1].contains(",above+,"));
}

#[test]
fn point_json_reports_superradiance() {
    let output = run(&["point", "--e", "0", "--steps", "2000", "--format", "json"]);
    assert_eq!(output.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).expect("valid JSON");
    assert_eq!(value["regime"], "super");
    assert_eq!(value["conv"], false);
    assert!(value["R"].as_f64().unwrap() > 1.0);
    assert!(value["T"].as_f64().unwrap() < 0.0);
}

#[test]
fn point_accepts_negative_energy() {
    let output = run(&["point", "--e", "-2.5", "--steps", "2000"]);
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout(&output).contains(",super,"));
}

#[test]
fn alpha_potential_flows_through() {
    let output = run(&[
        "point",
        "--potential",
        "alpha",
        "--a",
        "-5",
        "--b",
        "1",
        "--c",
        "1",
        "--e",
        "-7",
        "--steps",
        "2000",
    ]);
    assert_eq!(output.status.code(), Some(0), "stderr: {}", stderr(&output));
    assert!(stdout(&output).contains(",super,"));
}

#[test]
fn regimes_prints_band_table() {
    let output = run(&["regimes"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    assert!(text.contains("thresholds: -6, -4, 4, 6"));
    assert!(text.contains("super"));
    assert!(text.contains("R>1"));
    assert!(text.contains("R=1 (conv)"));
    assert!(text.contains("(-inf, -6)"));
    assert!(text.contains("[6, inf)"));
}

#[test]
fn converge_passes_at_default_settings() {
    let output = run(&["converge"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    assert!(text.contains("order"));
    assert!(text.contains("result: PASS"));
}

#[test]
fn converge_accepts_custom_energy_list() {
    let output = run(&["converge", "--energies", "-3.0,1.5,7.0", "--steps", "2000"]);
    assert_eq!(output.status.code(), Some(0), "stderr: {}", stderr(&output));
    let text = stdout(&output);
    assert!(text.contains("E = -3:"));
    assert!(text.contains("E = 7:"));
}

#[test]
fn compare_passes_within_tolerance() {
    let output = run(&["compare", "--n-energies", "41"]);
    assert_eq!(output.status.code(), Some(0), "stderr: {}", stderr(&output));
    let text = stdout(&output);
    assert!(text.contains("result: PASS"));
    assert!(text.contains("max |dR|"));
}

#[test]
fn compare_fails_on_unreachable_tolerance() {
    let output = run(&[
        "compare",
        "--n-energies",
        "41",
        "--steps",
        "2000",
        "--tol",
        "1e-12",
    ]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stdout(&output).contains("result: FAIL"));
}

#[test]
fn compare_rejects_alpha_potential() {
    let output = run(&["compare", "--potential", "alpha", "--c", "1"]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr(&output).contains("tanh"));
}

#[test]
fn plot_potential_writes_svg() {
    let dir = tempfile::tempdir().expect("tempdir");
    for extra in [
        &["--potential", "tanh"][..],
        &["--potential", "alpha", "--c", "1"][..],
    ] {
        let svg = dir.path().join(format!("{}.svg", extra[1]));
        let mut args = vec!["plot-potential", "--out", svg.to_str().unwrap()];
        args.extend_from_slice(extra);
        let output = run(&args);
        assert_eq!(output.status.code(), Some(0), "stderr: {}", stderr(&output));
        assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
    }
}

#[test]
fn usage_errors_exit_one() {
    let cases: &[&[&str]] = &[
        &["sweep", "--potential", "alpha", "--n-energies", "5"],
        &["sweep", "--c", "1", "--n-energies", "5"],
        &["point", "--e", "1", "--mass", "0"],
        &["point", "--e", "1", "--mass", "-1"],
        &["point", "--e", "1", "--steps", "500"],
        &["point", "--e", "1", "--b", "-1"],
        &["sweep", "--unknown-flag"],
        &["no-such-subcommand"],
    ];
    for args in cases {
        let output = run(args);
        assert_eq!(
            output.status.code(),
            Some(1),
            "args {args:?}: {}",
            stderr(&output)
        );
    }
}

#[test]
fn coarse_steps_need_explicit_override() {
    let refused = run(&["point", "--e", "1", "--steps", "500"]);
    assert_eq!(refused.status.code(), Some(1));
    assert!(stderr(&refused).contains("--allow-coarse"));

    let allowed = run(&["point", "--e", "1", "--steps", "500", "--allow-coarse"]);
    assert_eq!(allowed.status.code(), Some(0));
}

#[test]
fn unwritable_output_exits_two() {
    let path = Path::new("/nonexistent-dir-for-kgscatter-test/out.csv");
    assert!(!path.parent().unwrap().exists(), "precondition");
    let output = run(&[
        "sweep",
        "--n-energies",
        "5",
        "--steps",
        "2000",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("cannot write"));
}

#[test]
fn help_and_version_exit_zero() {
    let help = run(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(stdout(&help).contains("sweep"));

    let version = run(&["--version"]);
    assert_eq!(version.status.code(), Some(0));
    assert!(stdout(&version).starts_with("kgscatter"));
}
