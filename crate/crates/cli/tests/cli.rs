use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn hopfkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopfkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let out = hopfkit(args);
    let code = out.status.code().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{args:?}: {e}\n{}", String::from_utf8_lossy(&out.stderr))
    });
    (code, v)
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_exit_codes() {
    for (file, code) in [
        ("h4.json", 0),
        ("h4_solve.json", 0),
        ("qls_z3.json", 0),
        ("z6.json", 0),
        ("z2_bad_antipode.json", 1),
        ("monoid_bialgebra.json", 1),
        ("truncated.json", 2),
    ] {
        let out = hopfkit(&["check", path(&fixture(file))]);
        assert_eq!(out.status.code(), Some(code), "{file}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let (_, v) = run_json(&["check", path(&fixture("z2_bad_antipode.json"))]);
    assert_eq!(v["verdict"], "fail");
    assert!(v["result"]["first_failure"].as_str().unwrap().contains("antipode"));
    let (_, v) = run_json(&["check", path(&fixture("h4_solve.json"))]);
    assert_eq!(v["result"]["antipode_solved"], true);
    // S(x) = -gx, S(g) = g, S(gx) = x on the basis 1, x, g, gx
    assert_eq!(
        v["result"]["solved_antipode"],
        serde_json::json!([["1", "0", "0", "0"], ["0", "0", "0", "1"], ["0", "0", "1", "0"], ["0", "-1", "0", "0"]])
    );
    let missing = hopfkit(&["check", "/nonexistent/file.json"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn fixtures_match_builders() {
    for (file, args) in [
        ("h4.json", vec!["build", "h4"]),
        ("z6.json", vec!["build", "group", "--group", "Z6"]),
        ("z2.json", vec!["build", "group", "--group", "Z2"]),
        ("qls_z3.json", vec!["build", "qls", "--group", "Z3", "--g", "(1),(1)", "--chi", "(1),(2)"]),
    ] {
        let out = hopfkit(&args);
        assert_eq!(out.status.code(), Some(0));
        let expected = std::fs::read(fixture(file)).unwrap();
        assert_eq!(out.stdout, expected, "{file}");
    }
}

#[test]
fn build_families() {
    let dir = tempfile::tempdir().unwrap();
    let at = |name: &str| dir.path().join(name);
    let qls = at("qls.json");
    let builds: Vec<Vec<String>> = vec![
        vec!["taft".into(), "--n".into(), "3".into()],
        vec!["dual-group".into(), "--group".into(), "S3".into()],
        vec!["drinfeld-double".into(), "--group".into(), "S3".into()],
        vec!["dual".into(), "--input".into(), path(&fixture("h4.json")).into()],
        vec![
            "tensor".into(),
            "--left".into(),
            path(&fixture("z2.json")).into(),
            "--right".into(),
            path(&fixture("h4.json")).into(),
        ],
        vec![
            "dcp".into(),
            "--left".into(),
            path(&fixture("z2.json")).into(),
            "--right".into(),
            path(&fixture("z2.json")).into(),
        ],
        vec![
            "double-bicross".into(),
            "--left".into(),
            path(&fixture("z2.json")).into(),
            "--right".into(),
            path(&fixture("z2.json")).into(),
        ],
        vec!["qls".into(), "--group".into(), "Z6".into(), "--g".into(), "(3),(2)".into(), "--chi".into(), "(3),(2)".into(), "--orders".into(), "2,3".into()],
    ];
    for (k, b) in builds.iter().enumerate() {
        let out = at(&format!("b{k}.json"));
        let mut args = vec!["build"];
        args.extend(b.iter().map(String::as_str));
        args.extend(["-o", path(&out)]);
        let o = hopfkit(&args);
        assert_eq!(o.status.code(), Some(0), "{b:?}: {}", String::from_utf8_lossy(&o.stderr));
        let c = hopfkit(&["check", path(&out)]);
        assert_eq!(c.status.code(), Some(0), "{b:?}");
    }

    let o = hopfkit(&["build", "qls", "--group", "Z2", "--g", "(1)", "--chi", "(1)", "-o", path(&qls)]);
    assert_eq!(o.status.code(), Some(0));
    let bp = at("bp.json");
    assert_eq!(hopfkit(&["build", "biproduct", "--input", path(&qls), "-o", path(&bp)]).status.code(), Some(0));
    let (code, v) = run_json(&["check", path(&bp)]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["dim"], 4);
    assert_eq!(v["result"]["braided"], false);

    let (code, v) = {
        let o = hopfkit(&["build", "qls", "--group", "Z6", "--theta", "2", "--g", "(3),(2)", "--chi", "(3),(2)"]);
        let text = String::from_utf8(o.stdout).unwrap();
        (o.status.code(), serde_json::from_str::<Value>(&text).unwrap())
    };
    assert_eq!(code, Some(0));
    assert_eq!(v["dim"], 6);
    assert_eq!(v["field"], "Cyclotomic(6)");

    // N_i = 1 and inconsistent orders are rejected as structural errors
    assert_eq!(hopfkit(&["build", "qls", "--group", "Z2", "--g", "(0)", "--chi", "(1)"]).status.code(), Some(2));
    assert_eq!(
        hopfkit(&["build", "qls", "--group", "Z6", "--g", "(3)", "--chi", "(3)", "--orders", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(hopfkit(&["build", "qls", "--group", "Z2", "--theta", "2", "--g", "(1)", "--chi", "(1)"]).status.code(), Some(2));
}

#[test]
fn factor_command() {
    let qls = fixture("qls_z3.json");
    let (code, v) = run_json(&["factor", path(&qls), "--sub", "gen:x1", "--sub", "gen:x2"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["result"]["certificate"]["nodes"].as_array().unwrap().len(), 1);
    assert_eq!(v["result"]["factors"][0]["basis"], serde_json::json!(["1", "x1", "x1^2"]));

    // indices and names agree
    let by_index = hopfkit(&["factor", path(&qls), "--sub", "gen:3", "--sub", "gen:1"]);
    let by_name = hopfkit(&["factor", path(&qls), "--sub", "gen:x1", "--sub", "gen:x2"]);
    assert_eq!(by_index.stdout, by_name.stdout);

    // factors that do not span the algebra are a structural error
    assert_eq!(hopfkit(&["factor", path(&qls), "--sub", "gen:x1", "--sub", "gen:x1"]).status.code(), Some(2));

    // kZ6 = <g><g^3> spans but the multiplication map is not injective
    let z6 = fixture("z6.json");
    let (code, v) = run_json(&["factor", path(&z6), "--sub", "gen:g", "--sub", "gen:g^3"]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["verdict"]["passed"], false);
    assert_eq!(v["result"]["verdict"]["dimension_test"], false);

    // H4 = <g><x> fails structurally since <x> is not a subcoalgebra
    let h4 = fixture("h4.json");
    assert_eq!(hopfkit(&["factor", path(&h4), "--sub", "gen:g", "--sub", "gen:x"]).status.code(), Some(2));
    assert_eq!(hopfkit(&["factor", path(&h4), "--sub", "gen:y", "--sub", "gen:x"]).status.code(), Some(2));

    // subspace file
    let dir = tempfile::tempdir().unwrap();
    let sub = dir.path().join("g.json");
    std::fs::write(&sub, r#"{"vectors": [["1","0","0","0","0","0"],["0","0","0","1","0","0"]]}"#).unwrap();
    let (code, v) = run_json(&["factor", path(&z6), "--sub", path(&sub), "--sub", "gen:g^2"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["inputs"].as_array().unwrap().len(), 2);
}

#[test]
fn search_factor_command() {
    let (code, v) = run_json(&["search-factor", path(&fixture("h4.json"))]);
    assert_eq!(code, 1);
    assert_eq!(v["verdict"], "infactorisable");
    assert_eq!(v["result"]["lattice_complete"], true);
    assert_eq!(v["result"]["grouplikes"], serde_json::json!(["1", "g"]));
    let (code, v) = run_json(&["search-factor", path(&fixture("z6.json"))]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "factorisable");
}

#[test]
fn classify_command() {
    let (code, v) = run_json(&["classify", path(&fixture("h4.json"))]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "consistent");
    assert_eq!(v["result"]["semisimple"], false);
    assert_eq!(v["result"]["trace_S2"], "0");
    let (code, v) = run_json(&["classify", path(&fixture("z6.json")), "--sub", "gen:g^3", "--sub", "gen:g^2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["factors"].as_array().unwrap().len(), 2);
    assert_eq!(v["result"]["trace_S2"], "6");
    // braided input has no classification
    assert_eq!(hopfkit(&["classify", path(&fixture("qls_z3.json"))]).status.code(), Some(2));
}

#[test]
fn integrals_command() {
    let (code, v) = run_json(&["integrals", path(&fixture("h4.json"))]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["unimodular"], false);
    let left = v["result"]["left"]["expressions"][0].as_str().unwrap();
    let right = v["result"]["right"]["expressions"][0].as_str().unwrap();
    assert!(left == "x + gx" || left == "-x - gx", "{left}");
    assert!(right == "x - gx" || right == "-x + gx", "{right}");
    let (code, v) = run_json(&["integrals", path(&fixture("qls_z3.json"))]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["left"]["expressions"], serde_json::json!(["x1^2x2^2"]));
}

#[test]
fn reports_are_deterministic_and_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let h4 = fixture("h4.json");
    assert_eq!(hopfkit(&["classify", path(&h4), "-o", path(&a)]).status.code(), Some(0));
    let stdout = hopfkit(&["classify", path(&h4)]).stdout;
    assert_eq!(std::fs::read(&a).unwrap(), stdout);
    let v: Value = serde_json::from_slice(&stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["inputs"][0]["name"], "h4.json");
    assert_eq!(v["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
}
