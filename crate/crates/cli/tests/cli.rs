use std::process::Command;

use serde_json::Value;

fn khoval(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_khoval")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, stdout, stderr) = khoval(args);
    let v = serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("{args:?}: {e}\n{stdout}\n{stderr}"));
    (code, v)
}

fn table(v: &Value) -> Vec<(i64, i64, i64)> {
    v["homology"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["i"].as_i64().unwrap(), e["j"].as_i64().unwrap(), e["dim"].as_i64().unwrap()))
        .collect()
}

#[test]
fn classify_examples() {
    let (code, v) = json(&["classify", "--braid", "1 1 1", "--strands", "2"]);
    assert_eq!(code, 0);
    assert_eq!((v["class"].as_str(), v["g3_d"].as_str()), (Some("Positive"), Some("1")));
    let (code, v) = json(&["classify", "--braid", "1 1 -1", "--strands", "2"]);
    assert_eq!(code, 0);
    assert_eq!((v["class"].as_str(), v["case"].as_i64()), (Some("AlmostPositive"), Some(2)));
    let (code, _, stderr) = khoval(&["classify", "--pd", "X(1,2,3)"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("X(1,2,3)"), "{stderr}");
}

#[test]
fn classify_reads_files_with_comments() {
    let path = std::env::temp_dir().join(format!("khoval-cli-test-{}.pd", std::process::id()));
    std::fs::write(&path, "# left-handed trefoil\nX(1,4,2,5) X(3,6,4,1)\nX(5,2,6,3)\n").unwrap();
    let (code, v) = json(&["classify", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code, 0);
    assert_eq!((v["n_plus"].as_i64(), v["n_minus"].as_i64()), (Some(0), Some(3)));
    assert_eq!(v["class"], "Other");
    let (code, _, _) = khoval(&["classify", "/nonexistent/khoval.pd"]);
    assert_eq!(code, 2);
}

#[test]
fn homology_examples() {
    let (code, v) = json(&["homology", "--pd", "O"]);
    assert_eq!(code, 0);
    assert_eq!(table(&v), vec![(0, -1, 1), (0, 1, 1)]);
    assert!(v["homology_raw"].is_null());

    let (code, v) = json(&["homology", "--braid", "1 1 1", "--strands", "2", "--raw"]);
    assert_eq!(code, 0);
    assert_eq!(table(&v), vec![(0, 1, 1), (0, 3, 1), (2, 5, 1), (3, 9, 1)]);
    assert_eq!(v["homology_raw"].as_array().unwrap().len(), 4);

    let twenty = ["1", "2"].repeat(10).join(" ");
    let (code, stdout, stderr) = khoval(&["homology", "--braid", &twenty, "--strands", "3"]);
    assert_eq!(code, 4, "{stderr}");
    assert!(stdout.is_empty() && stderr.contains("budget"));
}

#[test]
fn rasmussen_examples() {
    let (code, v) = json(&["rasmussen", "--braid", "1 1 1", "--strands", "2"]);
    assert_eq!(code, 0);
    assert_eq!((v["s"].as_i64(), v["g3"].as_str(), v["g4"].as_str()), (Some(2), Some("1"), Some("1")));
    let (code, v) = json(&["rasmussen", "--braid", "1 1 -1", "--strands", "2"]);
    assert_eq!(code, 0);
    assert_eq!((v["s"].as_i64(), v["formula"].as_str()), (Some(0), Some("AlmostPositiveCase2")));
    let (code, _, _) = khoval(&["rasmussen", "--braid", "1 -1 1 -1", "--strands", "2"]);
    assert_eq!(code, 3);
    // Two negative crossings on a knot diagram.
    let (code, _, stderr) = khoval(&["rasmussen", "--braid", "1 -1 1 -1 1", "--strands", "2"]);
    assert_eq!(code, 3, "{stderr}");
}

#[test]
fn jones_of_left_handed_trefoil() {
    let (code, v) = json(&["jones", "--pd", "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"]);
    assert_eq!(code, 0);
    assert_eq!(v["jones"], v["jones_oracle"]);
    assert_eq!(v["jones"]["variable"], "t^(1/2)");
    let terms = v["jones"]["terms"].as_object().unwrap();
    let mut got: Vec<(i64, &str)> = terms.iter().map(|(k, c)| (k.parse().unwrap(), c.as_str().unwrap())).collect();
    got.sort();
    // t^-1 + t^-3 - t^-4 in powers of t^(1/2)
    assert_eq!(got, vec![(-8, "-1"), (-6, "1"), (-2, "1")]);
}

#[test]
fn verify_examples() {
    let (code, v) = json(&["verify", "--braid", "1 1 -1", "--strands", "2"]);
    assert_eq!(code, 0);
    let support = v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "kh0_support").unwrap();
    assert_eq!(support["verdict"], "Pass");
    assert_eq!(v["s"], 0);
    let (code, v) = json(&["verify", "--pd", "O"]);
    assert_eq!(code, 0);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["verdict"] != "Fail"));
}

#[test]
fn verify_all_fixtures() {
    let (code, v) = json(&["verify", "--fixtures"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], v["total"]);
    assert!(v["total"].as_u64().unwrap() > 7);
}

#[test]
fn output_round_trips() {
    let (_, stdout, _) = khoval(&["verify", "--braid", "1 2 -1 2", "--strands", "3"]);
    let doc: khoval_cli::ReportDocument = serde_json::from_str(&stdout).unwrap();
    assert_eq!(khoval_cli::document::to_json(&doc), stdout.trim_end());
}

#[test]
fn pretty_and_threads() {
    let (code, stdout, _) = khoval(&["homology", "--braid", "1 1 1", "--strands", "2", "--pretty", "--threads", "2"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("class       Positive") && stdout.contains("2 thread(s)"), "{stdout}");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(khoval(&["homology"]).0, 2);
    assert_eq!(khoval(&["bogus"]).0, 2);
    assert_eq!(khoval(&["classify", "--braid", "1 3", "--strands", "2"]).0, 2);
    assert_eq!(khoval(&["--help"]).0, 0);
}

#[test]
fn fixture_listing() {
    let (code, v) = json(&["fixtures"]);
    assert_eq!(code, 0);
    let rows = v.as_array().unwrap();
    assert_eq!(rows[0]["id"], "unknot");
    assert!(rows.iter().any(|r| r["id"] == "s1^3+negative-kink" && r["frozen"] == true));
}
