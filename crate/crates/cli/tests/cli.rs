use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superverma")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

const GL11: [&str; 6] = ["--algebra", "gl", "--m", "1", "--n", "1"];

fn with<'a>(base: &[&'a str], extra: &[&'a str]) -> Vec<&'a str> {
    base.iter().chain(extra).copied().collect()
}

#[test]
fn describe_gl11() {
    let v = json(&with(&["describe"], &GL11));
    let roots = v["positive_roots"].as_array().unwrap();
    assert_eq!(roots.len(), 1);
    assert_eq!(roots[0]["parity"], "odd");
    assert_eq!(roots[0]["isotropic"], true);
}

#[test]
fn describe_osp12() {
    let v = json(&["describe", "--algebra", "osp", "--m", "1", "--n", "1"]);
    let roots = v["positive_roots"].as_array().unwrap();
    assert_eq!(roots.len(), 2);
    let odd: Vec<_> = roots.iter().filter(|r| r["parity"] == "odd").collect();
    assert_eq!(odd.len(), 1);
    assert_eq!(odd[0]["isotropic"], false);
    assert_eq!(v["classes"].as_array().unwrap().len(), 1);
}

#[test]
fn describe_table_lists_classes() {
    let out = run(&["describe", "--algebra", "gl", "--m", "2", "--n", "1", "--pi-l", "0", "--format", "table"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("ε2-δ1, ε1-δ1"), "{text}");
}

#[test]
fn bad_specs_exit_2() {
    assert_eq!(code(&["describe", "--algebra", "e8"]), 2);
    assert_eq!(code(&["describe", "--algebra", "gl", "--m", "0", "--n", "1"]), 2);
    assert_eq!(code(&["describe", "--algebra", "d21a", "--alpha", "-1"]), 2);
    assert_eq!(code(&["describe", "--algebra", "gl", "--m", "2", "--n", "1", "--pi-l", "1"]), 2);
    assert_eq!(code(&["describe", "--algebra", "gl", "--m", "2", "--n", "1", "--pi-l", "7"]), 2);
}

#[test]
fn det_single_factor() {
    let v = json(&with(&["det"], &with(&GL11, &["--lambda", "1,0", "--eta", "1,-1"])));
    assert_eq!(v["value"], "1");
    let factors = v["factors"].as_array().unwrap();
    assert_eq!(factors.len(), 1);
    assert_eq!(factors[0]["kind"], "odd_iso");
    assert_eq!(factors[0]["exponent"], 1);
}

#[test]
fn det_zero_offset() {
    let v = json(&with(&["det"], &with(&GL11, &["--lambda", "1,0", "--eta", "0,0"])));
    assert_eq!(v["value"], "1");
    assert!(v["factors"].as_array().unwrap().is_empty());
}

#[test]
fn det_non_dominant_exits_3() {
    let args = ["det", "--algebra", "gl", "--m", "2", "--n", "1", "--pi-l", "0", "--lambda", "0,1,0", "--eta", "1,0,-1"];
    assert_eq!(code(&args), 3);
}

#[test]
fn gram_blocks() {
    let v = json(&with(&["gram"], &with(&GL11, &["--lambda", "2,1", "--mu", "2,1"])));
    assert_eq!(v["matrix"], serde_json::json!([["1"]]));
    assert_eq!(v["determinant"], "1");
    let v = json(&with(&["gram"], &with(&GL11, &["--lambda", "2,1", "--eta", "1,-1"])));
    assert_eq!(v["determinant"], "3");
    let v = json(&with(&["gram"], &with(&GL11, &["--lambda", "2,1", "--eta", "2,-2"])));
    assert_eq!(v["determinant"], "1");
    assert_eq!(v["note"], "empty block");
}

#[test]
fn gram_depth_exceeded_exits_4() {
    assert_eq!(code(&with(&["gram"], &with(&GL11, &["--lambda", "2,1", "--eta", "5,-5", "--depth", "3"]))), 4);
}

#[test]
fn verify_pass() {
    let v = json(&with(&["verify"], &with(&GL11, &["--eta", "1,-1", "--samples", "3"])));
    assert_eq!(v["pass"], true);
    assert_eq!(v["constant_c"], "1");
    assert_eq!(v["samples"].as_array().unwrap().len(), 3);
    let v = json(&with(&["verify"], &with(&GL11, &["--eta", "0,0"])));
    assert_eq!(v["pass"], true);
}

#[test]
fn verify_parabolic_pass() {
    let v = json(&["verify", "--algebra", "gl", "--m", "2", "--n", "1", "--pi-l", "0", "--eta", "1,1,-2", "--seed", "4"]);
    assert_eq!(v["pass"], true);
}

#[test]
fn verify_corrupted_exits_5() {
    let args = ["verify", "--algebra", "gl", "--m", "2", "--n", "1", "--pi-l", "0", "--eta", "1,1,-2", "--corrupt-exponent"];
    assert_eq!(code(&args), 5);
}

#[test]
fn verify_exhausted_sampling_exits_6() {
    // osp(1|2) has rank 1, so the sampling grid has fewer than 100 points.
    assert_eq!(code(&["verify", "--algebra", "osp", "--m", "1", "--n", "1", "--eta", "1", "--samples", "100"]), 6);
}

#[test]
fn irreducible_gl11() {
    let v = json(&with(&["irreducible"], &with(&GL11, &["--lambda", "1,-1", "--brute-check"])));
    assert_eq!(v["verdict"], "reducible");
    assert_eq!(v["psi"]["iso"].as_array().unwrap().len(), 1);
    assert_eq!(v["brute_check"]["agrees"], true);
    let v = json(&with(&["irreducible"], &with(&GL11, &["--lambda", "1,0"])));
    assert_eq!(v["verdict"], "irreducible");
    assert_eq!(v["brute_check"], Value::Null);
}

#[test]
fn irreducible_regular_populates_m_plus_plus() {
    let v = json(&["irreducible", "--algebra", "gl", "--m", "2", "--n", "1", "--lambda", "3,1,1/2"]);
    assert_ne!(v["M_plus_plus"], "n/a");
    let v = json(&["irreducible", "--algebra", "gl", "--m", "2", "--n", "1", "--lambda", "0,1,1/2"]);
    assert_eq!(v["M_plus_plus"], "n/a");
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--algebra", "osp", "--m", "3", "--n", "1", "--eta", "1,1", "--seed", "9"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["irreducible", "--algebra", "gl", "--m", "2", "--n", "2", "--pi-l", "0", "--lambda", "1,0,0,-1"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn config_file_with_override() {
    let dir = std::env::temp_dir().join(format!("superverma-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("job.json");
    std::fs::write(
        &path,
        r#"{"algebra":{"family":"gl","m":1,"n":1,"positivity":"standard"},"lambda":["2","1"],"eta":[1,-1]}"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let v = json(&["gram", "--config", p]);
    assert_eq!(v["determinant"], "3");
    let v = json(&["gram", "--config", p, "--lambda", "4,1"]);
    assert_eq!(v["determinant"], "5");
    std::fs::write(&path, r#"{"algebra":{"family":"gl","m":1,"n":1},"colour":1}"#).unwrap();
    assert_eq!(code(&["describe", "--config", p]), 2);
}

#[test]
fn table_format() {
    let out = run(&with(&["verify"], &with(&GL11, &["--eta", "1,-1", "--format", "table"])));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.trim_end().ends_with("PASS"), "{text}");
}
