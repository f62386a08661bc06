//! End-to-end checks of the qse binary: formats, determinism, exit codes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use qse_core::io::{from_json, to_json, ReportFile, StateFile};

fn qse(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qse"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write_family(dir: &Path, name: &str, params: &[(&str, f64)]) -> PathBuf {
    let path = dir.join(format!("{name}.json"));
    let mut args: Vec<String> = vec!["family".into(), name.into()];
    for (k, v) in params {
        args.push(format!("--{}", k.replace('_', "-")));
        args.push(format!("{v}"));
    }
    args.push("--out".into());
    args.push(path.to_str().unwrap().into());
    let arg_refs: Vec<&str> = args.iter().map(String::as_str).collect();
    let out = qse(&arg_refs);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

fn maximally_mixed_file(dir: &Path) -> PathBuf {
    let path = dir.join("mixed.json");
    std::fs::write(
        &path,
        r#"{"pauli": {"a": [0, 0, 0], "b": [0, 0, 0], "T": [[0, 0, 0], [0, 0, 0], [0, 0, 0]]}}"#,
    )
    .unwrap();
    path
}

#[test]
fn analyze_prints_the_expected_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let state = write_family(dir.path(), "singlet-plus-product", &[("q", 0.5)]);
    let out = qse(&["analyze", state.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("qse "), "version header missing: {text}");
    assert!(text.contains("verdict: TwoWaySteerable (OnePureSteeredState)"));
    assert!(text.contains("entangled: yes"));
    assert!(text.contains("violated: no"));
    assert!(text.contains("alice ellipsoid"));
    assert!(text.contains("bob ellipsoid"));
    // party filter drops the other side
    let alice_only = stdout(&qse(&[
        "analyze",
        state.to_str().unwrap(),
        "--party",
        "alice",
    ]));
    assert!(alice_only.contains("alice ellipsoid"));
    assert!(!alice_only.contains("bob ellipsoid"));
}

#[test]
fn analyze_of_maximally_mixed_is_not_entangled() {
    let dir = tempfile::tempdir().unwrap();
    let path = maximally_mixed_file(dir.path());
    let out = qse(&["analyze", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("verdict: NotEntangled"));
}

#[test]
fn certify_equals_analyze_json_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let state = write_family(dir.path(), "singlet-plus-product", &[("q", 0.5)]);
    let a = qse(&["analyze", state.to_str().unwrap(), "--json"]);
    let c1 = qse(&["certify", state.to_str().unwrap()]);
    let c2 = qse(&["certify", state.to_str().unwrap()]);
    assert!(a.status.success() && c1.status.success());
    assert_eq!(stdout(&a), stdout(&c1));
    assert_eq!(stdout(&c1), stdout(&c2));
    let report: ReportFile = from_json(&stdout(&c1)).unwrap();
    assert_eq!(report.verdict, "TwoWaySteerable");
    assert!(report.bob.tangency.is_some());
}

#[test]
fn matrix_and_pauli_inputs_give_identical_reports() {
    let dir = tempfile::tempdir().unwrap();
    let matrix_path = write_family(dir.path(), "two-pure-a", &[("x", 0.5), ("y", 1.0 / 3.0)]);
    let sf: StateFile = from_json(&std::fs::read_to_string(&matrix_path).unwrap()).unwrap();
    let state = sf.to_state().unwrap();
    let pauli_path = dir.path().join("pauli.json");
    std::fs::write(
        &pauli_path,
        to_json(&StateFile::from_pauli(&state.pauli(), None)).unwrap(),
    )
    .unwrap();
    let from_matrix = qse(&["certify", matrix_path.to_str().unwrap()]);
    let from_pauli = qse(&["certify", pauli_path.to_str().unwrap()]);
    assert!(from_matrix.status.success() && from_pauli.status.success());
    assert_eq!(stdout(&from_matrix), stdout(&from_pauli));
}

#[test]
fn family_bytes_are_deterministic_and_analyzable() {
    let dir = tempfile::tempdir().unwrap();
    let p1 = write_family(dir.path(), "one-pure-a", &[("x", 0.75), ("y", 0.5), ("z", 0.5)]);
    let p2path = dir.path().join("again.json");
    let out = qse(&[
        "family",
        "one-pure-a",
        "--x",
        "0.75",
        "--y",
        "0.5",
        "--z",
        "0.5",
        "--out",
        p2path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(
        std::fs::read(&p1).unwrap(),
        std::fs::read(&p2path).unwrap()
    );
    // the spherical ellipsoid prints three equal semiaxes
    let text = stdout(&qse(&["analyze", p1.to_str().unwrap()]));
    assert!(
        text.contains("alice ellipsoid: center [0.000000000, 0.000000000, 0.333333333], semiaxes [0.666666667, 0.666666667, 0.666666667]"),
        "{text}"
    );
    assert!(text.contains("family: one-pure-a"));
}

#[test]
fn family_rejects_bad_input() {
    // positivity violation in the derived parameter
    let out = qse(&[
        "family",
        "tangent-x-state",
        "--a-z",
        "0.2",
        "--b-z",
        "0.1",
        "--t-x",
        "0",
        "--t-y",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // out-of-range weight
    let out = qse(&["family", "singlet-plus-product", "--q", "1.5"]);
    assert_eq!(out.status.code(), Some(2));
    // unknown family
    let out = qse(&["family", "unheard-of", "--q", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
    // missing and extra parameters
    let out = qse(&["family", "werner"]);
    assert_eq!(out.status.code(), Some(2));
    let out = qse(&["family", "werner", "--w", "0.5", "--q", "0.1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn truncated_and_malformed_files_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let state = write_family(dir.path(), "werner", &[("w", 0.5)]);
    let full = std::fs::read_to_string(&state).unwrap();
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, &full[..full.len() / 2]).unwrap();
    let out = qse(&["analyze", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let missing = dir.path().join("does-not-exist.json");
    let out = qse(&["analyze", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // both forms in one file
    let sf: StateFile = from_json(&full).unwrap();
    let mut both = sf.clone();
    both.pauli = StateFile::from_pauli(&sf.to_state().unwrap().pauli(), None).pauli;
    let both_path = dir.path().join("both.json");
    std::fs::write(&both_path, to_json(&both).unwrap()).unwrap();
    let out = qse(&["analyze", both_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_tolerance_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let state = write_family(dir.path(), "werner", &[("w", 0.5)]);
    let out = qse(&[
        "analyze",
        state.to_str().unwrap(),
        "--tol-tangency",
        "0.5",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn mesh_csv_has_the_documented_shape() {
    let dir = tempfile::tempdir().unwrap();
    let state = write_family(dir.path(), "singlet-plus-product", &[("q", 0.5)]);
    let out = qse(&[
        "mesh",
        state.to_str().unwrap(),
        "--party",
        "bob",
        "--samples",
        "64",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1 + 2 * 64 * 64);
    assert_eq!(lines[0], "x,y,z,surface");
    let mut max_ell = 0.0f64;
    for line in &lines[1..] {
        if let Some(rest) = line.strip_suffix(",ellipsoid") {
            let parts: Vec<f64> = rest.split(',').map(|t| t.parse().unwrap()).collect();
            max_ell = max_ell.max((parts[0].powi(2) + parts[1].powi(2) + parts[2].powi(2)).sqrt());
        }
    }
    assert!((max_ell - 1.0).abs() < 1e-7, "max |point| = {max_ell}");
}

#[test]
fn mesh_tri_and_error_paths() {
    let dir = tempfile::tempdir().unwrap();
    let state = write_family(dir.path(), "singlet-plus-product", &[("q", 0.5)]);
    let out = qse(&[
        "mesh",
        state.to_str().unwrap(),
        "--samples",
        "2",
        "--format",
        "tri",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 8);
    assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 8);

    // point-degenerate ellipsoid
    let mixed = maximally_mixed_file(dir.path());
    let out = qse(&["mesh", mixed.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    // bad sample count and format
    let out = qse(&["mesh", state.to_str().unwrap(), "--samples", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = qse(&["mesh", state.to_str().unwrap(), "--format", "obj"]);
    assert_eq!(out.status.code(), Some(2));
    // mesh needs a single party
    let out = qse(&["mesh", state.to_str().unwrap(), "--party", "both"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scan_reports_candidates_and_deltas() {
    let dir = tempfile::tempdir().unwrap();
    let state = write_family(dir.path(), "singlet-plus-product", &[("q", 0.5)]);
    let out = qse(&["scan", state.to_str().unwrap(), "--party", "bob"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("grid candidate 1"));
    assert!(text.contains("argmax single"));
    assert!(text.contains("value delta"));
    // a single candidate, at the south pole
    assert_eq!(text.matches("grid candidate").count(), 1);
    assert!(text.contains("n = [0.000000000, -0.000000000, -1.000000000]")
        || text.contains("n = [0.000000000, 0.000000000, -1.000000000]"));

    let mixed = maximally_mixed_file(dir.path());
    let text = stdout(&qse(&["scan", mixed.to_str().unwrap()]));
    assert_eq!(text.matches("grid candidates: none").count(), 2);
}

#[test]
fn out_flag_writes_the_same_bytes_as_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let state = write_family(dir.path(), "werner", &[("w", 0.5)]);
    let to_stdout = stdout(&qse(&["certify", state.to_str().unwrap()]));
    let path = dir.path().join("report.json");
    let out = qse(&[
        "certify",
        state.to_str().unwrap(),
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), to_stdout);
}
