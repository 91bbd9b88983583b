use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn specrec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_specrec"))
        .args(args)
        .env_remove("SPECREC_TRUNC_ORDER")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("specrec-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn agreeing_paths_exit_zero() {
    let out = specrec(&[
        "freeenergy", "--curve", "gaiotto", "--param", "Q=-1,1", "--gmax", "2", "--convention", "reconciled",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["agree"], true);
    assert_eq!(v["rows"][0]["duality"], "1/960");
    assert_eq!(v["rows"][0]["tr"], "1/960");
}

#[test]
fn printed_convention_disagreement_exits_two() {
    let out = specrec(&["freeenergy", "--curve", "harer-zagier", "--gmax", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["rows"][0]["tr"], "-1/240");
    assert_eq!(v["rows"][0]["closed_form"], "1/240");
    assert_eq!(v["agree"], false);
}

#[test]
fn input_errors_exit_one() {
    assert_eq!(specrec(&["freeenergy", "--curve", "no-such-curve"]).status.code(), Some(1));
    assert_eq!(specrec(&["freeenergy", "--curve", "rational-poles"]).status.code(), Some(1));
    assert_eq!(specrec(&["verify-identities", "--suite", "bogus"]).status.code(), Some(1));
    assert_eq!(specrec(&["frobnicate"]).status.code(), Some(1));

    let bad = scratch("bad.json");
    fs::write(&bad, "{\"x\": 3}").unwrap();
    let out = specrec(&["freeenergy", "--curve", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
}

#[test]
fn output_is_deterministic() {
    let args = ["freeenergy", "--curve", "log-points", "--param", "a=0,1", "--gmax", "3", "--method", "both"];
    let a = specrec(&args);
    let b = specrec(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn output_file_matches_stdout() {
    let path = scratch("fe.json");
    let args = ["freeenergy", "--curve", "harer-zagier", "--gmax", "2", "--method", "duality"];
    let direct = specrec(&args);
    let mut with_file = args.to_vec();
    with_file.extend(["--output", path.to_str().unwrap()]);
    let out = specrec(&with_file);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(fs::read(&path).unwrap(), direct.stdout);
}

#[test]
fn formats() {
    let csv = specrec(&["freeenergy", "--curve", "r-spin", "--param", "r=3", "--gmax", "2", "--method", "duality", "--format", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.starts_with("g,tr,duality,closed_form,agree\n"));
    assert!(text.contains("2,-,0,-,true"));
    let md = specrec(&["catalog", "list", "--format", "md"]);
    assert!(String::from_utf8(md.stdout).unwrap().contains("neg-r-spin"));
}

#[test]
fn flags_override_params_file() {
    let file = scratch("params.toml");
    fs::write(&file, "eps = \"2\"\nr = \"3\"\n").unwrap();
    let f = file.to_str().unwrap();
    let base = ["freeenergy", "--curve", "neg-r-spin", "--gmax", "2", "--method", "duality", "--params-file", f];
    let v = json(&specrec(&base));
    assert_eq!(v["rows"][0]["duality"], "1/960");
    let mut over = base.to_vec();
    over.extend(["--param", "eps=1"]);
    let v = json(&specrec(&over));
    assert_eq!(v["rows"][0]["duality"], "1/240");
}

#[test]
fn curve_config_file() {
    let file = scratch("hz.json");
    fs::write(
        &file,
        r#"{"label": "hz", "x": {"rational": {"num": ["1", "0", "1"], "den": ["0", "1"]}}, "y": {"rational": {"num": ["0", "1"]}}}"#,
    )
    .unwrap();
    let out = specrec(&["freeenergy", "--curve", file.to_str().unwrap(), "--gmax", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["rows"][0]["duality"], "-1/240");
    assert_eq!(v["rows"][0]["closed_form"], "NONE");
}

#[test]
fn catalog_list_schema() {
    let out = specrec(&["catalog", "list"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    for n in ["harer-zagier", "rational-poles", "log-points", "gaiotto", "cdo", "r-spin", "neg-r-spin"] {
        assert!(names.contains(&n), "{n}");
    }
}

#[test]
fn emit_omega() {
    let v = json(&specrec(&["emit-omega", "--curve", "harer-zagier", "--g", "0", "--n", "2"]));
    assert_eq!(v["bergman"], "dz1*dz2/(z1-z2)^2");
    let out = specrec(&["emit-omega", "--curve", "harer-zagier", "--g", "0", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!json(&out)["terms"].as_array().unwrap().is_empty());
    let out = specrec(&["emit-omega", "--curve", "r-spin", "--param", "r=4", "--g", "1", "--n", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("PATH_UNAVAILABLE"));
}

#[test]
fn verify_suites() {
    let out = specrec(&["verify-identities", "--suite", "appendix", "--gmax", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let out = specrec(&["verify-identities", "--suite", "loop-equations", "--gmax", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let out = specrec(&[
        "verify-identities", "--suite", "loop-equations", "--gmax", "2", "--curve", "log-points", "--param", "a=0,1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}
