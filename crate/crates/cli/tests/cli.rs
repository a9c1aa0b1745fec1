use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_sitawim"));
    c.env_remove("SITAWIM_STORE");
    c
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn run(c: &mut Command) -> (i32, String, String) {
    let Output { status, stdout, stderr } = c.output().expect("binary runs");
    (status.code().unwrap_or(-1), String::from_utf8(stdout).unwrap(), String::from_utf8(stderr).unwrap())
}

#[test]
fn repro_4a1_prints_f_and_chain() {
    let (code, out, _) = run(bin().args(["repro", "4a1-pseudocyclic"]));
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("remaining 36*x5^2-24*x5*k1+4*k1^2+32*x5-11*k1+7"));
    assert!(out.contains("x1 := x2"));
    assert!(out.contains("x2 := -2*x5+k2-1"));
}

#[test]
fn repro_reports_are_byte_identical() {
    let a = run(bin().args(["--format", "machine", "repro", "n35-battery"]));
    let b = run(bin().args(["--format", "machine", "repro", "n35-battery"]));
    assert_eq!(a.0, 0);
    assert_eq!(a.1, b.1);
}

#[test]
fn analyze_n35() {
    let (code, out, _) = run(bin().arg("analyze").arg(fixture("n35")));
    assert_eq!(code, 0);
    assert!(out.contains("multiplicities 1 4 10 10 10"));
    assert!(out.contains("noncyclotomic"));
}

#[test]
fn tables_are_deterministic() {
    let a = run(bin().args(["tables", "--order", "5"]));
    let b = run(bin().args(["tables", "--order", "5"]));
    assert_eq!(a.0, 0);
    assert_eq!(a.1, b.1);
    let (code, out, _) = run(bin().args(["tables", "--order", "35"]));
    assert_eq!(code, 0);
    assert!(out.contains("m1=4 m2=10 degrees=[4, 6, 12, 12] a=[-1, 6, -3, -3] t=[0, -3, 0, 0]"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(bin().arg("tables")).0, 2);
    assert_eq!(run(bin().arg("bogus")).0, 2);
    assert_eq!(run(bin().args(["repro", "bogus"])).0, 2);
    assert_eq!(run(bin().args(["--eps", "-1", "tables", "--order", "5"])).0, 2);
    assert_eq!(run(bin().args(["catalog", "list"])).0, 2);
    let (code, _, err) = run(bin().args(["--format", "machine", "analyze", "missing.json"]));
    assert_eq!(code, 2);
    let rec: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
    assert_eq!(rec["exit"], 2);
}

#[test]
fn infeasible_or_bad_instance_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, r#"{"matrices": [[[1,0],[0,1]],[[0,2],[1,0]]]}"#).unwrap();
    assert_eq!(run(bin().arg("analyze").arg(&p)).0, 1);
}

#[test]
fn resource_cap_exits_3() {
    let (code, _, err) = run(bin().args(["--itype", "5A1", "--assumption", "pseudocyclic", "--cap-degree", "2", "gb"]));
    assert_eq!(code, 3, "{err}");
}

#[test]
fn catalog_round_trip_via_env_store() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("cat/store.jsonl");
    let with_store = || {
        let mut c = bin();
        c.env("SITAWIM_STORE", &store);
        c
    };
    assert_eq!(run(with_store().args(["catalog", "list"])), (0, String::new(), String::new()));
    let (code, out, _) = run(with_store().args(["--format", "machine", "catalog", "insert"]).arg(fixture("n249.json")));
    assert_eq!(code, 0);
    let entry: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    let digest = entry["digest"].as_str().unwrap().to_string();
    assert_eq!(run(with_store().args(["catalog", "insert"]).arg(fixture("n249.json"))).0, 1);
    let (_, loaded, _) = run(with_store().args(["--format", "machine", "catalog", "load", &digest[..10]]));
    assert_eq!(loaded, out);
    assert_eq!(std::fs::read_to_string(&store).unwrap(), out);
    run(with_store().args(["analyze", "--insert"]).arg(fixture("n35.json")));
    let (_, listed, _) = run(with_store().args(["catalog", "list", "--noncyclotomic", "--max-order", "100"]));
    assert_eq!(listed.lines().count(), 1);
    assert!(listed.contains("order 35"));
}

#[test]
fn search_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("a41.json");
    std::fs::write(&cfg, r#"{"itype": "4A1", "family": {"pseudocyclic": {"degrees": "homogeneous"}}, "grid": [{"name": "k1", "lo": {"const": 1}, "hi": {"const": 10}}], "keep": ["x5"]}"#).unwrap();
    let (code, out, err) = run(bin().arg("search").arg(&cfg));
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("point=k1=5 status=sol"), "{out}");
    assert!(out.contains("instances 2"), "{out}");
}
