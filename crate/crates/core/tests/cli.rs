use std::path::PathBuf;
use std::process::Command;

use serde_json::{json, Value};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json"))
}

fn run(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_skcl")).args(args).output().expect("binary runs");
    let text = String::from_utf8(out.stdout).expect("utf-8");
    let v = serde_json::from_str(&text).unwrap_or(Value::Null);
    (out.status.code().unwrap_or(-1), v, text)
}

fn run_fixture(cmd: &str, name: &str, extra: &[&str]) -> (i32, Value) {
    let path = fixture(name);
    let mut args = vec![cmd, path.to_str().unwrap()];
    args.extend_from_slice(extra);
    let (code, v, _) = run(&args);
    (code, v)
}

const FIXTURES: &[(&str, usize)] = &[
    ("fdex1_a2_b1", 8),
    ("fdex1_a3_b0", 8),
    ("fdex2_n3", 8),
    ("fdex2_n4", 16),
    ("fdex3_n3", 8),
    ("inbetweenex1", 8),
    ("inbetweenex1_mu13_2", 4),
    ("zerodim", 0),
    ("notsimple_a0", 8),
    ("notsimple_a1", 8),
    ("betweenex2", 2),
];

#[test]
fn dim_of_bundled_fixtures() {
    for &(name, dim) in FIXTURES {
        let (code, v) = run_fixture("validate", name, &[]);
        assert_eq!(code, 0, "{name}: {v}");
        assert_eq!(v["result"]["valid"], json!(true));
        let (code, v) = run_fixture("dim", name, &[]);
        assert_eq!(code, 0);
        assert_eq!(v["result"]["dimension"], json!(dim), "{name}");
    }
}

#[test]
fn tfae_between_ex2() {
    let (code, v) = run_fixture("tfae", "betweenex2", &[]);
    assert_eq!(code, 0);
    let r = &v["result"];
    for k in ["g_injective", "full_dimension", "coefficients_vanish", "q_central"] {
        assert_eq!(r[k], json!(false), "{k}");
    }
    assert_eq!(r["dimension"], json!(2));
}

#[test]
fn fixtures_match_examples_command() {
    let cases: &[(&str, &[&str])] = &[
        ("fdex1_a2_b1", &["--which", "fdex1", "--param", "a=2", "--param", "b=1"]),
        ("zerodim", &["--which", "zerodim"]),
        ("betweenex2", &["--which", "betweenex2"]),
        ("notsimple_a0", &["--which", "notsimple", "--param", "a=0"]),
    ];
    for (name, args) in cases {
        let mut full = vec!["examples"];
        full.extend_from_slice(args);
        let (code, v, _) = run(&full);
        assert_eq!(code, 0);
        let on_disk: Value = serde_json::from_str(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap();
        assert_eq!(v["result"], on_disk, "{name}");
    }
}

#[test]
fn output_is_byte_identical() {
    let path = fixture("inbetweenex1");
    let p = path.to_str().unwrap();
    for args in [vec!["reduce", p], vec!["basis", p], vec!["partition", p], vec!["hilbert", p, "--target", "lambda", "--degree", "3"]] {
        let a = run(&args).2;
        let b = run(&args).2;
        assert_eq!(a, b, "{args:?}");
        assert!(!a.is_empty());
    }
}

#[test]
fn exit_codes() {
    let (code, v, _) = run(&["bogus"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], json!("input"));

    let (code, v, _) = run(&["dim", "--inline", "{not json"]);
    assert_eq!(code, 2);
    assert!(v["error"]["message"].as_str().unwrap().contains("JSON"));

    let bad = r#"{"n":2,"mu":[["1","2"],["1","1"]],"b":[["0","0"],["0","0"]]}"#;
    let (code, v, _) = run(&["validate", "--inline", bad]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], json!("validation"));

    // zero algebra has no basis
    let (code, v) = run_fixture("basis", "zerodim", &[]);
    assert_eq!(code, 3, "{v}");
    assert_eq!(v["error"]["kind"], json!("precondition"));

    // μ_12 = 2 rules out the AS-regular construction
    let (code, _) = run_fixture("asreg", "fdex1_a2_b1", &[]);
    assert_eq!(code, 3);

    let (code, _, _) = run(&["dim", fixture("missing").to_str().unwrap()]);
    assert_eq!(code, 2);
}

#[test]
fn degree_cap_from_environment() {
    let path = fixture("fdex3_n3");
    let p = path.to_str().unwrap();
    let (code, _, _) = run(&["hilbert", p, "--target", "lambda", "--degree", "7"]);
    assert_eq!(code, 3);
    let out = Command::new(env!("CARGO_BIN_EXE_skcl"))
        .args(["hilbert", p, "--target", "lambda", "--degree", "7"])
        .env("SKCL_DEGREE_CAP", "8")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["coefficients"], json!([1, 3, 3, 1, 0, 0, 0, 0]));
}

#[test]
fn nf_and_mul() {
    let (code, v) = run_fixture("nf", "fdex1_a2_b1", &["--element", r#"[{"word":[3,1,3],"coeff":"1"}]"#]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["display"], json!("2*x3"));
    assert!(v["trace"].is_array());

    let (code, v) = run_fixture(
        "mul",
        "notsimple_a1",
        &["--a", r#"[{"word":[3],"coeff":"1"},{"word":[],"coeff":"1"}]"#, "--b", r#"[{"word":[3],"coeff":"1"},{"word":[],"coeff":"-1"}]"#],
    );
    assert_eq!(code, 0);
    assert_eq!(v["result"]["product"], json!([]));

    let (code, _) = run_fixture("nf", "fdex1_a2_b1", &["--element", r#"[{"word":[9],"coeff":"1"}]"#]);
    assert_eq!(code, 2);
}

#[test]
fn homogenize_modes() {
    let (code, v) = run_fixture("homogenize", "fdex3_n3", &["--single"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["presentation"]["generators"].as_array().unwrap().len(), 4);

    let (code, v) = run_fixture("homogenize", "fdex3_n3", &["--multi"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["matrices_source"], json!("partition"));
    assert_eq!(v["result"]["matrices"].as_array().unwrap().len(), 3);

    let (code, _) = run_fixture("homogenize", "fdex3_n3", &[]);
    assert_eq!(code, 2);
}

#[test]
fn central_check_and_qcentral() {
    let (code, v) = run_fixture("central-check", "fdex3_n3", &["--degree", "4"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["result"]["holds"], json!(true));

    let (code, v) = run_fixture("qcentral", "betweenex2", &[]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["q_central"], json!(false));
}
