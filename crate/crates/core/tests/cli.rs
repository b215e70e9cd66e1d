use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_moduli-hilbert"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = run(&full);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_str(&stdout(&out)).expect("valid json")
}

fn rat(v: &Value) -> String {
    let (num, den) = (v["num"].as_str().unwrap(), v["den"].as_str().unwrap());
    if den == "1" {
        num.to_owned()
    } else {
        format!("{num}/{den}")
    }
}

#[test]
fn triangle_plain_rows() {
    let out = run(&["triangle", "--n", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let last = text.lines().last().unwrap();
    assert_eq!(last, "6  1 219 3292 7723 3292 219 1  14747");
}

#[test]
fn triangle_zero_is_single_row() {
    let doc = json(&["triangle", "--n", "0"]);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["alpha"], serde_json::json!(["1"]));
    assert_eq!(rows[0]["sigma"], "1");
}

#[test]
fn output_is_deterministic_and_round_trips() {
    let a = run(&["triangle", "--n", "8", "--format", "json"]);
    let b = run(&["triangle", "--n", "8", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let parsed: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string(&parsed).unwrap() + "\n", text);
    let row8 = &parsed["rows"][8]["alpha"];
    assert_eq!(row8.as_array().unwrap().len(), 9);
}

#[test]
fn csv_sigma_column() {
    let out = run(&["sigma", "--n", "6", "--format", "csv"]);
    assert_eq!(
        stdout(&out),
        "n,sigma\n0,1\n1,2\n2,7\n3,34\n4,213\n5,1630\n6,14747\n"
    );
}

#[test]
fn fj_zero_and_one() {
    let doc = json(&["fj", "--j", "0"]);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows[0]["freq"], "0");
    assert_eq!(
        rows[0]["poly"]
            .as_array()
            .unwrap()
            .iter()
            .map(rat)
            .collect::<Vec<_>>(),
        ["-1", "-1"]
    );
    assert_eq!(rows[1]["freq"], "1");
    assert_eq!(rat(&rows[1]["poly"][0]), "1");

    let doc = json(&["fj", "--j", "1"]);
    assert_eq!(doc["parameters"]["degree_sequence"], "(-inf, 2, 0)");
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows[0]["freq"], "1");
    assert_eq!(
        rows[0]["poly"]
            .as_array()
            .unwrap()
            .iter()
            .map(rat)
            .collect::<Vec<_>>(),
        ["-2", "-2", "-1/2"]
    );
    assert_eq!(rows[1]["freq"], "2");
    assert_eq!(rat(&rows[1]["poly"][0]), "2");
}

#[test]
fn fj_leading_constant_agrees_with_gamma() {
    let fj = json(&["fj", "--j", "4"]);
    let leading = fj["rows"].as_array().unwrap().last().unwrap().clone();
    assert_eq!(leading["freq"], "5");
    let gamma = json(&["coeff", "--s", "0", "--t", "5", "--k", "0"]);
    assert_eq!(rat(&leading["poly"][0]), rat(&gamma["rows"][0]["formula"]));
    // 5^8 / 5!
    assert_eq!(rat(&leading["poly"][0]), "78125/24");
}

#[test]
fn coeff_examples() {
    for (s, t, k, value) in [
        ("1", "2", "1", "-20"),
        ("0", "1", "0", "1"),
        ("3", "3", "0", "-6561/32"),
    ] {
        let doc = json(&["coeff", "--s", s, "--t", t, "--k", k]);
        let row = &doc["rows"][0];
        assert_eq!(rat(&row["formula"]), value, "s={s} t={t} k={k}");
        assert_eq!(rat(&row["extracted"]), value);
        assert_eq!(row["verdict"], "MATCH");
    }
}

#[test]
fn coeff_out_of_desk_range_is_skipped() {
    let doc = json(&["coeff", "--s", "10", "--t", "10", "--k", "0"]);
    assert_eq!(doc["rows"][0]["verdict"], "SKIPPED");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["asymptotics", "--n", "5"]).status.code(), Some(2));
    assert_eq!(
        run(&["coeff", "--s", "0", "--t", "0", "--k", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["coeff", "--s", "0", "--t", "2", "--k", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["coeff", "--s", "3", "--t", "3", "--k", "7"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["triangle"]).status.code(), Some(2));
    assert_eq!(run(&["triangle", "--n", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    assert_eq!(
        run(&["triangle", "--n", "3", "--format", "xml"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "--suite", "tables"]).status.code(), Some(0));
    assert_eq!(
        run(&["verify", "--suite", "identities"]).status.code(),
        Some(0)
    );
}

#[test]
fn progress_stays_off_stdout() {
    let out = run(&["asymptotics", "--n", "10", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("n,sigma,ln_estimate,ratio,transfer_ratio\n"));
    assert_eq!(text.lines().count(), 11);
    assert!(!out.stderr.is_empty());
}

#[test]
fn conjecture_reports_q1() {
    let doc = json(&["conjecture", "--k", "1"]);
    assert_eq!(doc["rows"][0]["candidate"], "5/3*s + 3*t - 8/3");
    assert_eq!(doc["rows"][0]["consistent"], true);
}
