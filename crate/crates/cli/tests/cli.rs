use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_barrier-lab"))
        .env_remove("BARRIER_LAB_THREADS")
        .args(args)
        .output()
        .unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

/// Renders a JSON cell the way the CSV encoder does.
fn json_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(a) => a
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(";"),
        other => other.to_string(),
    }
}

#[test]
fn barriers_csv_matches_golden() {
    let golden = include_str!("golden/barriers_eps_1_1_range_1_30.csv");
    assert_eq!(
        stdout(&["barriers", "--eps", "1/1", "--range", "1..30"]),
        golden
    );
    assert_eq!(golden.lines().count() - 1, 18);
}

#[test]
fn check_reports_witness() {
    let out = stdout(&["check", "--eps", "3/2", "--n", "3"]);
    assert_eq!(out, "n,is_barrier,witness,method\n3,false,2,naive\n");
    let out = stdout(&["check", "--eps", "1/1", "--n", "7"]);
    assert_eq!(out, "n,is_barrier,witness,method\n7,false,6,windowed\n");
    let out = stdout(&["check", "--eps", "1/1", "--n", "8", "--method", "naive"]);
    assert_eq!(out, "n,is_barrier,witness,method\n8,true,,naive\n");
}

#[test]
fn windowed_check_rejects_large_eps() {
    let out = run(&[
        "check", "--eps", "3/2", "--n", "100", "--method", "windowed",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds 1"));
}

#[test]
fn verify_exit_codes() {
    let out = run(&["verify", "--suite", "lemma13", "--eps", "1/2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("lemma13,pass,30,"));
    // Problem-1 suites need an eps.
    assert_eq!(
        run(&["verify", "--suite", "lemma13"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", "--suite", "canonical", "--limit", "500"])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["barriers", "--eps", "0.5", "--range", "1..10"][..],
        &["barriers", "--eps", "0/1", "--range", "1..10"],
        &["barriers", "--eps", "1/2", "--range", "10..1"],
        &["barriers", "--eps", "1/2", "--range", "0..10"],
        &["gaps", "--eps", "1/2", "--limit", "10"],
        &["records", "--eps", "1/2", "--limit", "10"],
        &["subseq", "--eps", "1/2", "--s", "1", "--count", "3"],
        &["subseq", "--s", "1", "--count", "64"],
        &["classify", "--range", "2..10"],
        &["density", "--eps", "3/2"],
        &["frobnicate"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
    let out = run(&["subseq", "--s", "1", "--count", "64"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("overflow"));
}

#[test]
fn csv_and_json_carry_identical_values() {
    for args in [
        &["barriers", "--eps", "2/3", "--range", "1..500"][..],
        &["density", "--eps", "1/1", "--r-max", "4"],
        &["gaps", "--limit", "300"],
        &["records", "--limit", "5000"],
        &["classify", "--range", "3..200"],
        &["subseq", "--s", "2", "--count", "30"],
        &["check", "--eps", "1/1", "--n", "22"],
    ] {
        let csv = stdout(&[args, &["--format", "csv"]].concat());
        let json: Value =
            serde_json::from_str(&stdout(&[args, &["--format", "json"]].concat())).unwrap();
        assert_eq!(json["meta"]["command"], args[0]);
        let header: Vec<&str> = csv.lines().next().unwrap().split(',').collect();
        let from_json: Vec<Vec<String>> = json["rows"]
            .as_array()
            .unwrap()
            .iter()
            .map(|row| header.iter().map(|h| json_cell(&row[*h])).collect())
            .collect();
        assert_eq!(csv_rows(&csv), from_json, "{args:?}");
    }
}

#[test]
fn density_table_rows() {
    let out = stdout(&["density", "--eps", "1/1", "--r-max", "3"]);
    assert_eq!(
        out,
        "r,t,count,interval_len,ratio\n1,1,4,4,1.000000\n2,1,12,24,0.500000\n3,1,44,180,0.244444\n"
    );
    let out = stdout(&["density", "--eps", "1/1", "--r-max", "2", "--t", "2"]);
    assert!(out.ends_with("2,2,24,24,1.000000\n"));
}

#[test]
fn gaps_records_classify_subseq() {
    let out = stdout(&["gaps", "--limit", "13", "--from", "12"]);
    assert_eq!(out, "n,gap,argmax_m,lemma_bound\n12,2,10,1\n13,5,12,5\n");
    let out = stdout(&["records", "--limit", "13"]);
    let ns: Vec<&str> = out
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap())
        .collect();
    assert_eq!(ns, ["2", "3", "5", "7", "13"]);
    let out = stdout(&["classify", "--range", "3..4"]);
    assert_eq!(out, "n,s,alphas\n3,1,1\n4,2,0;1\n");
    let out = stdout(&["subseq", "--s", "1", "--count", "5"]);
    assert_eq!(out, "i,n\n1,3\n2,5\n3,9\n4,17\n5,33\n");
}

#[test]
fn out_flag_and_thread_env() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("records.json");
    let out = run(&[
        "records",
        "--limit",
        "1000",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["meta"]["range"], "2..1000");

    let via_env = Command::new(env!("CARGO_BIN_EXE_barrier-lab"))
        .env("BARRIER_LAB_THREADS", "4")
        .args(["gaps", "--limit", "150000"])
        .output()
        .unwrap();
    assert!(via_env.status.success());
    assert_eq!(
        via_env.stdout,
        stdout(&["gaps", "--limit", "150000", "--threads", "1"]).into_bytes()
    );
    let bad = Command::new(env!("CARGO_BIN_EXE_barrier-lab"))
        .env("BARRIER_LAB_THREADS", "0")
        .args(["gaps", "--limit", "10"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
