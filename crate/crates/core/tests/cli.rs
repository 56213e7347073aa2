use std::process::Command;

use serde_json::Value;

fn rsw(args: &[&str]) -> (Option<i32>, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_rsw")).args(args).output().unwrap();
    (out.status.code(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn text_output() {
    let (code, text) = rsw(&["--p", "5", "--f", "t^-2", "--g", "t^-3", "--h", "t^-1", "--verify"]);
    assert_eq!(code, Some(0));
    assert!(text.contains("case: Two"));
    assert!(text.contains("rsw = 3 dlog t at level 5"));
    assert!(text.contains("verified: true"));
}

#[test]
fn input_errors_exit_with_2() {
    let (code, out) = rsw(&["--p", "6", "--f", "t^-1", "--g", "t^-1", "--h", "t^-1", "--json"]);
    assert_eq!(code, Some(2));
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["error"]["kind"], "InvalidPrime");

    let (code, out) = rsw(&["--p", "5", "--f", "x1^-1", "--g", "t^-1", "--h", "t^-1", "--json"]);
    assert_eq!(code, Some(2));
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["error"]["kind"], "Parse");

    let (code, _) = rsw(&["--p", "5"]);
    assert_eq!(code, Some(2));
}

#[test]
fn unramified_input_exits_with_1() {
    let (code, out) = rsw(&["--p", "2", "--f", "t^-2 + t^-1", "--g", "t^-1", "--h", "t^-1", "--json"]);
    assert_eq!(code, Some(1));
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["error"]["kind"], "Unramified");
    assert!(v["error"]["message"].as_str().unwrap().starts_with("f:"));
}

#[test]
fn batch_preserves_order() {
    let dir = std::env::temp_dir().join(format!("rsw-batch-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("jobs.jsonl");
    let jobs = [
        r#"{"p": 5, "f": "t^-2", "g": "t^-3", "h": "t^-7", "verify": true}"#,
        r#"{"p": 3, "f": "t^-1", "g": "t^-1", "h": "2*t^-2"}"#,
        r#"{"p": 5, "f": "t^-2", "g": "t^-3", "h": "t^-1"}"#,
    ];
    std::fs::write(&path, jobs.join("\n")).unwrap();
    let (code, out) = rsw(&["--batch", path.to_str().unwrap(), "--json"]);
    assert_eq!(code, Some(1));
    let reports: Vec<Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(reports.len(), 3);
    assert_eq!(reports[0]["case"], "One");
    assert_eq!(reports[1]["error"]["kind"], "DegenerateCaseThree");
    assert_eq!(reports[2]["case"], "Two");
    std::fs::remove_dir_all(&dir).unwrap();
}
