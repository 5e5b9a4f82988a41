use nearkahler::app::{run, EXIT_CONFIG, EXIT_OK};

fn run_capture(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let code = run(std::iter::once("nearkahler").chain(args.iter().copied()), &mut out);
    (code, String::from_utf8(out).unwrap())
}

#[test]
fn verify_curvature_section_passes() {
    let (code, out) = run_capture(&["verify", "--section", "3"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("[curvature]"));
    assert!(out.contains("difference_forms3"));
    assert!(!out.contains("FAIL"));
}

#[test]
fn verify_json_is_structured() {
    let (code, out) = run_capture(&["verify", "--section", "hodge", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["certificate"]["passed"], true);
    assert_eq!(v["degree2"]["eigenvalues"], serde_json::json!(["2", "6", "12"]));
}

#[test]
fn config_errors_exit_2() {
    for args in [
        vec!["verify", "--section", "9"],
        vec!["spectrum", "--bundle", "sym2"],
        vec!["spectrum", "--bundle", "tt", "--cutoff", "0"],
        vec!["moduli", "--cutoff", "sixty"],
        vec!["moduli", "--cutoff", "1", "--tol-cluster", "-1"],
        vec!["bogus"],
    ] {
        assert_eq!(run_capture(&args).0, EXIT_CONFIG, "{args:?}");
    }
}

#[test]
fn unwritable_output_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "x").unwrap();
    let target = blocker.join("report.json");
    let (code, _) = run_capture(&["moduli", "--cutoff", "1/2", "--output", target.to_str().unwrap()]);
    assert_eq!(code, EXIT_CONFIG);
}

#[test]
fn tiny_cutoff_moduli_is_trivially_equal() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    let (code, out) = run_capture(&["moduli", "--cutoff", "1/2", "--format", "json", "--output", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("wrote "));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["equality"], true);
    assert_eq!(v["normalization"]["scal"], 30);
    assert_eq!(v["totals"]["e_sum"], 0);
    assert_eq!(v["totals"]["tt10"], 0);
}

#[test]
fn spectrum_uses_cache_dir_and_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let args = ["spectrum", "--bundle", "lambda0", "--cutoff", "13", "--format", "json", "--cache-dir", cache.to_str().unwrap()];
    let (c1, first) = run_capture(&args);
    let (c2, second) = run_capture(&args);
    assert_eq!((c1, c2), (EXIT_OK, EXIT_OK));
    assert_eq!(first, second);
    assert_eq!(std::fs::read_dir(&cache).unwrap().count(), 7);
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["lines"][0]["eigenvalue"], 0.0);
    assert_eq!(v["lines"][0]["multiplicity"], 1);
    assert_eq!(v["lines"][1]["eigenvalue"], 9.0);
}

#[test]
fn verification_failures_exit_1() {
    use nearkahler::app::EXIT_VERIFY;
    // floating-point residuals cannot meet this
    let (code, out) = run_capture(&["verify", "--section", "spectra", "--cutoff", "13", "--tol-operator", "1e-30"]);
    assert_eq!(code, EXIT_VERIFY);
    assert!(out.contains("FAIL  block_"));
    let (code, _) = run_capture(&["moduli", "--cutoff", "13", "--tol-operator", "1e-30"]);
    assert_eq!(code, EXIT_VERIFY);
}
