//! End-to-end checks of the command-line surface: bit-exact piping, exit
//! codes, and JSON output shapes.

use std::io::Write;
use std::process::{Command, Output, Stdio};

const BIN: &str = env!("CARGO_BIN_EXE_tdcode");

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut cmd = Command::new(BIN);
    cmd.args(args).stdout(Stdio::piped()).stderr(Stdio::piped());
    if stdin.is_some() {
        cmd.stdin(Stdio::piped());
    }
    let mut child = cmd.spawn().expect("binary runs");
    if let Some(text) = stdin {
        child.stdin.as_mut().unwrap().write_all(text.as_bytes()).unwrap();
    }
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).trim().to_string()
}

#[test]
fn encode_channel_decode_roundtrip() {
    let out = run(
        &["encode", "--q", "4", "--n", "24", "--p", "1", "--mode", "anchored", "--data", "abcdef12"],
        None,
    );
    assert!(out.status.success());
    let cw = stdout(&out);
    assert!(cw.chars().all(|c| ('0'..='3').contains(&c)));

    // Identity pipe.
    let dec = run(
        &["decode", "--q", "4", "--n", "24", "--p", "1", "--mode", "anchored", "--input", "-"],
        Some(&cw),
    );
    assert!(dec.status.success());
    assert!(stdout(&dec).starts_with("abcdef12"));

    // Through a seeded channel within the promise.
    let noisy = run(
        &["channel", "--q", "4", "--seed", "11", "--dups", "10", "--edits", "1", "--kinds", "ins"],
        Some(&cw),
    );
    assert!(noisy.status.success());
    let dec = run(
        &["decode", "--q", "4", "--n", "24", "--p", "1", "--mode", "anchored", "--input", "-"],
        Some(&stdout(&noisy)),
    );
    assert!(dec.status.success());
    assert!(stdout(&dec).starts_with("abcdef12"));
}

#[test]
fn channel_is_deterministic() {
    let seq = "0123012301230123";
    let a = run(&["channel", "--q", "4", "--seed", "5", "--dups", "6", "--edits", "2"], Some(seq));
    let b = run(&["channel", "--q", "4", "--seed", "5", "--dups", "6", "--edits", "2"], Some(seq));
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn malformed_input_exits_2() {
    let out = run(
        &["decode", "--q", "4", "--n", "24", "--p", "1", "--input", "01x2"],
        None,
    );
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim()).unwrap();
    assert_eq!(err["error"], "usage");
}

#[test]
fn garbage_word_decode_exits_1() {
    // A plausible-length word that is not near any codeword: syndrome
    // recovery fails.
    let junk: String =
        std::iter::repeat("0213").take(800).collect::<String>();
    let out = run(
        &["decode", "--q", "4", "--n", "24", "--p", "1", "--mode", "anchored", "--input", &junk],
        None,
    );
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim()).unwrap();
    assert_eq!(err["error"], "decode");
}

#[test]
fn bounds_json_fields() {
    let out = run(&["bounds", "--q", "4", "--n", "20", "--p", "1"], None);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["q"], 4);
    assert_eq!(v["irr_count"], "614363640");
    let rate = v["growth_rate"].as_f64().unwrap();
    assert!((rate - 2.6590).abs() < 5e-5);
    assert!(v["gv_bound"].as_f64().unwrap() > 0.0);
}

#[test]
fn config_file_round_trip() {
    let dir = std::env::temp_dir().join(format!("tdcode-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("aux.conf");
    std::fs::write(&path, "q = 4\nm = 18\np_tilde = 3\nt_colors = 9\nn_hat = 17\ngamma = 9\nl_edit = 17\n").unwrap();
    let out = run(
        &[
            "encode", "--q", "4", "--n", "24", "--p", "1", "--mode", "anchored", "--data", "ff",
            "--config", path.to_str().unwrap(), "--json",
        ],
        None,
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    // n_hat = 17 instead of 15: segment grows by 2 * 9 * 23 symbols.
    assert_eq!(v["syndrome_symbols"], 3100 + 2 * 9 * 23);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn experiment_report_matches_committed_schema() {
    let out = run(
        &[
            "experiment", "--q", "4", "--n", "24", "--p", "1", "--trials", "10", "--seed0", "3",
            "--dups", "8",
        ],
        None,
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["trials"], 10);
    assert_eq!(v["successes"], 10);
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);

    // Validate against the committed schema: required keys, types, and no
    // extraneous fields.
    let schema: serde_json::Value = serde_json::from_str(include_str!(
        "../docs/experiment-report.schema.json"
    ))
    .unwrap();
    let props = schema["properties"].as_object().unwrap();
    let obj = v.as_object().unwrap();
    for req in schema["required"].as_array().unwrap() {
        assert!(obj.contains_key(req.as_str().unwrap()), "missing field {req}");
    }
    for (key, value) in obj {
        let spec = props.get(key).unwrap_or_else(|| panic!("unexpected field {key}"));
        let ok = match spec["type"].as_str().unwrap() {
            "integer" => value.is_u64() || value.is_i64(),
            "number" => value.is_number(),
            "string" => value.is_string(),
            "array" => value.is_array(),
            other => panic!("unhandled schema type {other}"),
        };
        assert!(ok, "field {key} has wrong type: {value}");
    }
}
