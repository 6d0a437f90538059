use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use sha2::{Digest, Sha256};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdesign")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: stdout {} stderr {}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn zoo_list_and_build() {
    let out = run(&["zoo", "list"]);
    assert!(out.status.success());
    let ids: Vec<String> = json(&out)["result"].as_array().unwrap().iter().map(|z| z["id"].as_str().unwrap().to_string()).collect();
    assert!(ids.contains(&"trace123".to_string()) && ids.contains(&"pless".to_string()));

    let out = run(&["zoo", "build", "rt6"]);
    let v = json(&out);
    assert_eq!((v["result"]["n"].as_u64(), v["result"]["k"].as_u64()), (Some(11), Some(5)));
    let out = run(&["zoo", "build", "drs", "--q", "8", "--k", "3", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert!(!run(&["zoo", "build", "drs", "--q", "8"]).status.success());
}

#[test]
fn profile_fields() {
    let v = json(&run(&["profile", "--zoo", "ternary-golay", "--rho"]));
    let p = &v["result"]["profile"];
    assert_eq!((p["d"].as_u64(), p["s_dual"].as_u64(), p["rho"].as_u64()), (Some(5), Some(2), Some(2)));
    assert_eq!(p["is_perfect"], true);
    assert_eq!(v["result"]["golden_mismatches"].as_array().map(Vec::len), Some(0));

    let v = json(&run(&["profile", "--zoo", "drs", "--q", "8", "--k", "3"]));
    assert_eq!(v["result"]["profile"]["is_mds"], true);

    let v = json(&run(&["profile", "--zoo", "ternary-golay", "--dual"]));
    assert_eq!(v["result"]["profile"]["d"].as_u64(), Some(6));
}

#[test]
fn malformed_file_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    std::fs::write(&path, "3 4 2\n1 0 1 1\n0 1 1\n").unwrap();
    let out = run(&["profile", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));

    std::fs::write(&path, "3 4 2\n1 0 1 1\n0 1 1 2\n").unwrap();
    let v = json(&run(&["profile", "--file", path.to_str().unwrap()]));
    assert_eq!(v["result"]["profile"]["k"].as_u64(), Some(2));
    assert_eq!(run(&["profile", "--bogus"]).status.code(), Some(2));
}

#[test]
fn design_strengths_and_witnesses() {
    let v = json(&run(&["design", "--zoo", "ternary-golay", "--weight", "5", "--max-strength"]));
    let s = &v["result"]["strengths"];
    assert_eq!((s["t_qary"].as_u64(), s["t_classical"].as_u64()), (Some(3), Some(4)));

    let out = run(&["design", "--zoo", "simplex", "--q", "3", "--m", "3", "--weight", "9", "--t", "3"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["passed"], false);
    assert!(v["result"]["qary"]["witness"]["subset"].is_array());

    let out = run(&["design", "--zoo", "ternary-golay", "--weight", "5", "--t", "4", "--kind", "classical"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["result"]["classical"]["lambda"].as_u64(), Some(1));

    let v = json(&run(&["design", "--zoo", "ternary-golay", "--weight", "5", "--t", "4", "--kind", "classical", "--mode", "multiset"]));
    assert_eq!(v["result"]["classical"]["lambda"].as_u64(), Some(2));
}

#[test]
fn fixed_coordinates_need_transitivity() {
    let out = run(&["design", "--zoo", "ternary-golay", "--weight", "5", "--t", "2", "--fixed-coords"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("transitive"));

    let v = json(&run(&["design", "--zoo", "drs", "--q", "9", "--k", "4", "--weight", "7", "--t", "2", "--fixed-coords"]));
    assert_eq!(v["result"]["fixed_coordinates"]["check"]["lambda"].as_u64(), Some(7));

    let args = ["design", "--zoo", "ternary-golay", "--weight", "5", "--t", "2", "--fixed-coords", "--coords", "3,7", "--assert-transitive", "2"];
    let v = json(&run(&args));
    assert_eq!(v["result"]["fixed_coordinates"]["coordinates"], serde_json::json!([3, 7]));
}

#[test]
fn block_file_source() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("blocks.txt");
    // the 7 lines of the Fano plane as binary vectors
    let lines = ["1 1 1 0 0 0 0", "1 0 0 1 1 0 0", "1 0 0 0 0 1 1", "0 1 0 1 0 1 0", "0 1 0 0 1 0 1", "0 0 1 1 0 0 1", "0 0 1 0 1 1 0"];
    std::fs::write(&path, format!("2 7 3 7\n{}\n", lines.join("\n"))).unwrap();
    let v = json(&run(&["design", "--blocks", path.to_str().unwrap(), "--t", "2"]));
    assert_eq!(v["result"]["classical"]["lambda"].as_u64(), Some(1));
    assert_eq!(v["result"]["qary"]["lambda"].as_u64(), Some(1));
}

#[test]
fn criteria_confirmed() {
    let out = run(&["criteria", "--zoo", "ternary-golay", "--confirm"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["result"]["standard"]["t"].as_u64(), Some(3));
    assert_eq!(v["result"]["assmus_mattson"]["t"].as_u64(), Some(4));
    assert_eq!(v["result"]["perfect"]["is_perfect"], true);

    let v = json(&run(&["criteria", "--zoo", "tf1-dual", "--q", "4", "--coordinate", "2", "--confirm"]));
    assert_eq!(v["result"]["puncturing_shortening"]["applies"], true);
    assert_eq!(v["passed"], true);
}

fn sha_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn reproduce_to(dir: &Path, name: &str, args: &[&str]) -> (Output, Vec<u8>) {
    let out_path = dir.join(name);
    let mut full = vec!["reproduce"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", out_path.to_str().unwrap()]);
    let out = run(&full);
    (out, std::fs::read(&out_path).unwrap())
}

#[test]
fn reproduce_drs_is_byte_identical_with_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let (o1, a) = reproduce_to(dir.path(), "a.json", &["drs"]);
    let (o2, b) = reproduce_to(dir.path(), "b.json", &["drs"]);
    assert!(o1.status.success() && o2.status.success());
    assert_eq!(a, b);
    let v: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["result"]["summary"]["fail"].as_u64(), Some(0));
    assert_eq!(v["result"]["summary"]["pass"].as_u64(), Some(4));
    let m: Value = serde_json::from_slice(&std::fs::read(dir.path().join("a.json.manifest.json")).unwrap()).unwrap();
    assert_eq!(m["sha256"].as_str().unwrap(), sha_hex(&a));
    assert!(m["wall_time_ms"].is_u64());
    assert!(stderr(&o1).contains("wall time"));
}

#[test]
fn reproduce_two_weight_reports_skips() {
    let dir = tempfile::tempdir().unwrap();
    let (out, text) = reproduce_to(dir.path(), "t.csv", &["two-weight", "--format", "csv"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = String::from_utf8(text).unwrap();
    assert!(text.starts_with("suite,id,claim,status,detail"));
    let skipped: Vec<&str> = text.lines().filter(|l| l.contains(",SKIPPED,")).collect();
    assert_eq!(skipped.len(), 4, "{skipped:?}");
    assert!(skipped.iter().all(|l| l.contains("FE")));
    assert!(!text.contains(",FAIL,"));
}

#[test]
fn reproduce_trace_beyond_reach_is_skipped() {
    let out = run(&["reproduce", "trace", "--m", "7", "--threads", "1"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["result"]["summary"]["pass"].as_u64(), Some(0));
    assert_eq!(v["result"]["summary"]["fail"].as_u64(), Some(0));
    assert!(run(&["reproduce", "trace", "--m", "4"]).status.code() != Some(0));
}
