use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn d4(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_d4"))
        .args(args)
        .env_remove("D4_THREADS")
        .output()
        .expect("spawn d4")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn norm_test_output() {
    let out = d4(&["norm-test", "--a", "2", "--b", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["co1"], true);
    assert_eq!((v["triple"]["g0"].as_i64(), v["triple"]["h0"].as_i64(), v["triple"]["n0"].as_i64()), (Some(3), Some(1), Some(1)));
    assert_eq!(v["schema"], "d4/v1");
}

#[test]
fn exit_codes() {
    assert_eq!(d4(&["norm-test", "--a", "3", "--b", "5"]).status.code(), Some(3));
    assert_eq!(d4(&["enumerate", "--a", "3", "--b", "5", "--X", "1e9"]).status.code(), Some(3));
    assert_eq!(d4(&["norm-test", "--a", "4", "--b", "7"]).status.code(), Some(2));
    assert_eq!(d4(&["norm-test", "--a", "1", "--b", "7"]).status.code(), Some(2));
    assert_eq!(d4(&["norm-test", "--a", "7", "--b", "7"]).status.code(), Some(2));
    assert_eq!(d4(&["norm-test", "--a", "2"]).status.code(), Some(2));
    assert_eq!(d4(&["bogus"]).status.code(), Some(2));
    assert_eq!(d4(&["enumerate", "--a", "2", "--b", "7", "--X", "1e30"]).status.code(), Some(4));
    assert_eq!(d4(&["frobenius", "--a", "2", "--b", "7", "--m", "2", "--x", "100"]).status.code(), Some(2));
    assert_eq!(d4(&["thresholds", "--a", "2", "--b", "7", "--eps0", "0.3"]).status.code(), Some(2));
    assert_eq!(d4(&["ev", "--a", "2", "--b", "7", "--ell", "1", "--eta", "0.2"]).status.code(), Some(2));
    assert_eq!(d4(&["thresholds", "--a", "2", "--b", "7", "--format", "csv"]).status.code(), Some(2));
    assert_eq!(d4(&["--version"]).status.code(), Some(0));
}

#[test]
fn negative_context_values() {
    let out = d4(&["norm-test", "--a", "-1", "--b", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["a"], -1);
}

fn run_to(dir: &Path, name: &str, threads: &str, args: &[&str]) -> Vec<u8> {
    let out = dir.join(name);
    let mut full = args.to_vec();
    let out_s = out.to_str().unwrap().to_string();
    full.extend(["--threads", threads, "--out", &out_s]);
    let st = d4(&full);
    assert_eq!(st.status.code(), Some(0), "{}", String::from_utf8_lossy(&st.stderr));
    std::fs::read(out).unwrap()
}

#[test]
fn outputs_do_not_depend_on_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [&[&str]; 4] = [
        &["frobenius", "--a", "2", "--b", "7", "--x", "2e5"],
        &["chebotarev", "--a", "2", "--b", "7", "--m", "5", "--x", "2e5"],
        &["enumerate", "--a", "2", "--b", "7", "--X", "1e11", "--format", "json"],
        &["rho-coeffs", "--a", "3", "--b", "11", "--x", "5e4"],
    ];
    for (i, args) in cases.iter().enumerate() {
        let one = run_to(dir.path(), &format!("{i}-1"), "1", args);
        let four = run_to(dir.path(), &format!("{i}-4"), "4", args);
        assert!(!one.is_empty());
        assert_eq!(one, four, "{args:?}");
    }
}

#[test]
fn manifest_lists_artifacts_with_hashes() {
    let dir = tempfile::tempdir().unwrap();
    let bytes = run_to(dir.path(), "fam.csv", "2", &["enumerate", "--a", "2", "--b", "7", "--X", "1e10"]);
    let text = String::from_utf8(bytes.clone()).unwrap();
    assert_eq!(text.lines().count(), 44);
    assert_eq!(text.lines().next(), Some("m,g,h,n,poly_c0,poly_c2,disc_bound"));
    let m: Value = serde_json::from_slice(&std::fs::read(dir.path().join("fam.csv.manifest.json")).unwrap()).unwrap();
    assert_eq!(m["command"], "enumerate");
    assert_eq!(m["threads"], 2);
    let art = &m["artifacts"][0];
    assert!(art["path"].as_str().unwrap().ends_with("fam.csv"));
    assert_eq!(art["bytes"], bytes.len());
    use sha2::Digest;
    assert_eq!(art["sha256"], hex::encode(sha2::Sha256::digest(&bytes)));
}

#[test]
fn unwritable_output_fails_before_work() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("missing").join("x.csv");
    let out = d4(&["enumerate", "--a", "2", "--b", "7", "--X", "1e10", "--out", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# defaults\na = 3\nb = 11\neps0 = 0.05\n").unwrap();
    let cfg_s = cfg.to_str().unwrap();
    let v = json(&d4(&["thresholds", "--config", cfg_s]));
    assert_eq!(v["config"]["eps0"], 0.05);
    assert_eq!(v["q_max"], 44);
    let v = json(&d4(&["thresholds", "--config", cfg_s, "--eps0", "0.2"]));
    assert_eq!(v["config"]["eps0"], 0.2);
    std::fs::write(&cfg, "a 3\n").unwrap();
    assert_eq!(d4(&["thresholds", "--config", cfg_s]).status.code(), Some(2));
}

#[test]
fn thread_env_var() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.json");
    let st = Command::new(env!("CARGO_BIN_EXE_d4"))
        .args(["norm-test", "--a", "2", "--b", "7", "--out", out.to_str().unwrap()])
        .env("D4_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(0));
    let m: Value = serde_json::from_slice(&std::fs::read(dir.path().join("s.json.manifest.json")).unwrap()).unwrap();
    assert_eq!(m["threads"], 3);
}

#[test]
fn ingest_and_selftest() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("cl.csv");
    std::fs::write(&f, "").unwrap();
    let out = d4(&["ingest-cl", "--file", f.to_str().unwrap(), "--ell", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["rows"], serde_json::json!([]));
    std::fs::write(&f, "a,b,g,h,disc_exact,invariant_factors,provenance\n2,7,4,1,7168,2,x\n").unwrap();
    assert_eq!(d4(&["ingest-cl", "--file", f.to_str().unwrap()]).status.code(), Some(2));
    let out = d4(&["selftest", "--seed", "11"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passed"], true);
}
