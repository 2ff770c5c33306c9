use std::path::PathBuf;
use std::process::{Command, Output};

fn brkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_brkit")).args(args).output().expect("spawn brkit")
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn s(p: &PathBuf) -> &str {
    p.to_str().unwrap()
}

#[test]
fn model_then_recognize() {
    let m = scratch("wa621.msp");
    let out = scratch("wa621.json");
    let o = brkit(&["model", "--kind", "alt", "--n", "6", "--s", "2", "--t", "1", "--q", "2", "-o", s(&m)]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&m).unwrap();
    assert!(text.contains("dim 9"));

    let o = brkit(&["recognize", s(&m), "--r", "4", "--mode", "auto", "--seed", "3", "-o", s(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["verdict"], "certified");
    assert_eq!(v["P"].as_array().unwrap().len(), 6);
}

#[test]
fn missing_file_is_a_usage_error() {
    let o = brkit(&["urk", "nosuch.msp"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nosuch.msp"));
}

#[test]
fn bad_arguments_exit_2() {
    assert_eq!(brkit(&["model", "--kind", "alt", "--n", "6"]).status.code(), Some(2));
    assert_eq!(brkit(&["model", "--kind", "alt", "--n", "6", "--s", "2", "--t", "1", "--q", "6"]).status.code(), Some(2));
    assert_eq!(brkit(&["verify", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn symmetric_gf2_recognition_is_refused() {
    let m = scratch("ws2.msp");
    brkit(&["model", "--kind", "sym", "--n", "5", "--s", "1", "--t", "2", "--q", "2", "-o", s(&m)]);
    let o = brkit(&["recognize", s(&m), "--r", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("q > 2"));
}

#[test]
fn sample_is_recognized_with_its_truth() {
    let sp = scratch("sample.msp");
    let truth = scratch("sample.truth");
    let cert = scratch("sample.cert");
    let o = brkit(&[
        "sample", "--kind", "sym", "--n", "7", "--s", "2", "--t", "1", "--q", "5", "--d", "14", "--seed", "7", "-o", s(&sp),
        "--truth", s(&truth),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(std::fs::read_to_string(&truth).unwrap().contains("model sym 7 2 1"));
    let o = brkit(&["recognize", s(&sp), "--r", "5", "--cert", s(&cert)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(std::fs::read_to_string(&cert).unwrap().starts_with("%matspace v1"));
}

#[test]
fn full_space_is_not_certified() {
    let m = scratch("full.msp");
    // WA_{4,0,4} is all of Alt_4, which has rank-4 members.
    brkit(&["model", "--kind", "alt", "--n", "4", "--s", "0", "--t", "4", "--q", "3", "-o", s(&m)]);
    let o = brkit(&["recognize", s(&m), "--r", "2", "--no-threshold"]);
    assert_ne!(o.status.code(), Some(0));
}

#[test]
fn dims_and_urk() {
    let o = brkit(&["dims", "--kind", "alt", "--n-min", "4", "--n-max", "4"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("kind\tn\ts\tt\tdim\turk"));
    assert!(text.lines().any(|l| l == "alt\t4\t1\t2\t4\t4"));

    let m = scratch("ws312.msp");
    brkit(&["model", "--kind", "sym", "--n", "4", "--s", "1", "--t", "2", "--q", "3", "-o", s(&m)]);
    let o = brkit(&["urk", s(&m)]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["urk"], 4);
    assert_eq!(v["method"], "exact");
}

#[test]
fn verify_writes_jsonl() {
    let out = scratch("formulas.jsonl");
    let o = brkit(&["verify", "--suite", "formulas", "--seed", "1", "-o", s(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["pass"], true);
    }
}
