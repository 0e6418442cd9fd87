use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

const EX_P: &str = "0.4,0.35,0.15,0.1";
const EX_Q: &str = "0.5,0.2,0.2,0.1";
const CAT_P: &str = "0.4,0.4,0.1,0.1";
const CAT_Q: &str = "0.5,0.25,0.25,0";

fn elocc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_elocc"))
        .args(args)
        .env_remove("ELOCC_DEFAULT_D")
        .env_remove("ELOCC_DEFAULT_D2")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json_ok(args: &[&str]) -> Value {
    let out = elocc(args);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn error_of(args: &[&str]) -> (i32, String) {
    let out = elocc(args);
    let body: Value = serde_json::from_slice(&out.stdout).unwrap();
    (out.status.code().unwrap(), body["error"]["code"].as_str().unwrap().to_string())
}

#[test]
fn check_example() {
    let v = json_ok(&["check", "-p", EX_P, "-q", EX_Q]);
    assert_eq!(
        v,
        serde_json::json!({"convertible": false, "classification": "incomparable_solvable", "L": [2]})
    );
    let v = json_ok(&["check", "-p", "0.5,0.3,0.2", "-q", "0.6,0.3,0.1"]);
    assert_eq!(v["convertible"], true);
    assert_eq!(v["L"], serde_json::json!([]));
}

#[test]
fn filters_report_the_dual_rejection() {
    let v = json_ok(&["filters", "-p", EX_P, "-q", EX_Q, "-r", "0.7,0.3"]);
    let battery = &v["battery"];
    assert_eq!(battery["accepted"], false);
    assert_eq!(battery["first_rejection"], "COR3_DUAL");
    let cor3 = battery["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .find(|x| x["filter"] == "COR3_DUAL")
        .unwrap();
    assert_eq!(cor3["witness"]["violated"][0]["left"]["value"], "1/2");
    assert_eq!(cor3["witness"]["violated"][0]["right"]["value"], "3/7");
    assert_eq!(battery["baseline"]["filter"], "PRA99_BASELINE");

    let v = json_ok(&["filters", "-p", EX_P, "-q", EX_Q, "-r", "0.7,0.3", "--two-level", "0,1,1"]);
    assert_eq!(v["two_level_choice"]["accepted"], true);
}

#[test]
fn filters_grid_scan_csv() {
    let out = elocc(&["filters", "-p", CAT_P, "-q", CAT_Q, "-k", "2", "-D", "10", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "candidate,decimal,ratio_1_2,first_rejection,catalyzes");
    assert_eq!(lines.len(), 6);
    assert!(lines.contains(&"3/5;2/5,0.6;0.4,1.5,,true"));
}

#[test]
fn search_finds_known_catalyst() {
    let v = json_ok(&["search", "-p", CAT_P, "-q", CAT_Q, "-k", "2", "-D", "10"]);
    assert_eq!(v["found"], serde_json::json!([["3/5", "2/5"]]));
    assert_eq!(v["exhausted"], true);
    assert_eq!(v["grid"]["denominator"], 10);
}

#[test]
fn search_output_ignores_worker_count() {
    let base = ["search", "-p", CAT_P, "-q", CAT_Q, "-k", "3", "-D", "45", "--max-results", "4"];
    let outputs: Vec<Vec<u8>> = ["1", "3", "8"]
        .iter()
        .map(|w| {
            let mut args = base.to_vec();
            args.extend(["--workers", w]);
            elocc(&args).stdout
        })
        .collect();
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[0], outputs[2]);
}

#[test]
fn env_overrides_default_denominator() {
    let out = Command::new(env!("CARGO_BIN_EXE_elocc"))
        .args(["search", "-p", CAT_P, "-q", CAT_Q, "-k", "2"])
        .env("ELOCC_DEFAULT_D2", "20")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["grid"]["denominator"], 20);
    let v = json_ok(&["search", "-p", CAT_P, "-q", CAT_Q, "-k", "2"]);
    assert_eq!(v["grid"]["denominator"], 200);

    let out = Command::new(env!("CARGO_BIN_EXE_elocc"))
        .args(["search", "-p", CAT_P, "-q", CAT_Q, "-k", "2"])
        .env("ELOCC_DEFAULT_D2", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn metrics_commands() {
    let v = json_ok(&["pmax", "-p", EX_P, "-q", EX_Q, "-r", "0.7,0.3"]);
    assert_eq!(v["plain"]["p_max"]["value"], "5/6");
    assert_eq!(v["plain"]["argmin_l"], 3);
    assert_eq!(v["catalytic"]["argmin_l"], 7);
    let v = json_ok(&["distance", "-p", EX_P, "-q", EX_Q, "-r", "0.7,0.3"]);
    assert_eq!(v["delta"]["value"], "1/20");
    assert_eq!(v["delta"]["decimal"], "0.05");
    let v = json_ok(&["prop2", "-p", CAT_P, "-q", CAT_Q, "-r", "0.6,0.4"]);
    assert_eq!(v["check"]["consistent"], true);
    assert_eq!(v["check"]["oracle"], true);
}

#[test]
fn bound_and_mindim() {
    let v = json_ok(&["bound", "-p", EX_P, "-q", EX_Q]);
    assert_eq!(v["bound"]["a"]["value"], "5/2");
    assert_eq!(v["bound"]["k_lower"], 2);
    assert_eq!(v["two_dim_interval"]["upper"]["value"], "2");
    let v = json_ok(&["mindim", "-p", CAT_P, "-q", CAT_Q, "--k-max", "3", "-D", "10"]);
    assert_eq!(v["dimension"], 2);
}

#[test]
fn reach_command() {
    let v = json_ok(&["reach", "-p", "0.3,0.25,0.25,0.2", "-t", "3", "-s", "2"]);
    assert_eq!(v["universal_rank_reach"], true);
    assert_eq!(v["lemma2"]["sufficient"], true);
    assert_eq!(error_of(&["reach", "-p", "0.5,0.5", "-t", "2"]), (3, "RANK_ORDER_VIOLATION".into()));
}

#[test]
fn exit_codes() {
    assert_eq!(error_of(&["check", "-p", "0.5,0.6", "-q", "1"]), (2, "SUM_NOT_ONE".into()));
    assert_eq!(error_of(&["check", "-p", "abc", "-q", "1"]), (2, "PARSE_ERROR".into()));
    assert_eq!(error_of(&["check", "-q", "1"]), (2, "MISSING_ARGUMENT".into()));
    assert_eq!(
        error_of(&["filters", "-p", "0.5,0.3,0.2", "-q", "0.6,0.3,0.1", "-r", "0.6,0.4"]),
        (3, "UNSOLVABLE_PAIR".into())
    );
    assert_eq!(
        error_of(&["filters", "-p", EX_P, "-q", EX_Q, "-r", "0.6,0.4,0"]),
        (3, "DEGENERATE_CATALYST".into())
    );
    assert_eq!(error_of(&["search", "-p", EX_P, "-q", EX_Q, "-k", "1"]), (3, "INVALID_GRID".into()));
    assert_eq!(error_of(&["bogus"]), (2, "USAGE_ERROR".into()));
    assert_eq!(
        error_of(&["filters", "-p", EX_P, "-q", EX_Q, "-r", "0.7,0.3", "--two-level", "0,1"]),
        (2, "USAGE_ERROR".into())
    );
    assert_eq!(error_of(&["bound", "-p", EX_P, "-q", EX_Q, "--format", "csv"]), (2, "UNSUPPORTED_FORMAT".into()));
}

fn write_temp(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

const ENSEMBLE: &str = r#"{"inputs": {"ensemble": {
    "branches": [
        {"weight": "1/2", "schmidt": ["0.4", "0.4", "0.1", "0.1"]},
        {"weight": "1/2", "schmidt": ["0.42", "0.38", "0.1", "0.1"]}
    ],
    "target": ["0.5", "0.25", "0.25", "0"],
    "catalyst": ["0.6", "0.4"]
}}}"#;

#[test]
fn protocol_from_file() {
    let f = write_temp(ENSEMBLE);
    let path = f.path().to_str().unwrap();
    let v = json_ok(&["protocol", "--input", path]);
    assert_eq!(v["feasible"], true);
    assert_eq!(v["final_state"]["ancilla_weights"], serde_json::json!(["1/2", "1/2"]));
    let v = json_ok(&["protocol", "--trace", "--input", path]);
    let steps = v["steps"].as_array().unwrap();
    assert_eq!(steps.iter().filter(|s| s["step"] == "convert").count(), 2);
    assert_eq!(steps.last().unwrap()["step"], "output");

    let bad = write_temp(&ENSEMBLE.replace("0.42\", \"0.38", "0.45\", \"0.35"));
    let bad_path = bad.path().to_str().unwrap();
    let v = json_ok(&["protocol", "--input", bad_path]);
    assert_eq!(v["feasible"], false);
    assert_eq!(v["branches"][1]["violated_prefix"], 3);
    assert_eq!(
        error_of(&["protocol", "--trace", "--input", bad_path]),
        (3, "PROTOCOL_INFEASIBLE".into())
    );

    let skewed = write_temp(&ENSEMBLE.replacen("1/2", "1/3", 1));
    assert_eq!(
        error_of(&["protocol", "--input", skewed.path().to_str().unwrap()]),
        (2, "WEIGHT_SUM_NOT_ONE".into())
    );
}

#[test]
fn dry_run_request_replays() {
    let args = ["search", "-p", CAT_P, "-q", CAT_Q, "-k", "2", "-D", "30", "--no-filters"];
    let direct = elocc(&args).stdout;
    let mut dry = args.to_vec();
    dry.push("--dry-run");
    let request = stdout(&elocc(&dry));
    let parsed: Value = serde_json::from_str(&request).unwrap();
    assert_eq!(parsed["subcommand"], "search");
    assert_eq!(parsed["inputs"]["p"], serde_json::json!(["0.4", "0.4", "0.1", "0.1"]));
    let f = write_temp(&request);
    let replayed = elocc(&["search", "--input", f.path().to_str().unwrap()]).stdout;
    assert_eq!(direct, replayed);
    assert_eq!(
        error_of(&["check", "--input", f.path().to_str().unwrap()]),
        (2, "SUBCOMMAND_MISMATCH".into())
    );
}

#[test]
fn compare_filters_is_seeded() {
    let a = elocc(&["compare-filters", "-n", "150", "--seed", "3"]).stdout;
    let b = elocc(&["compare-filters", "-n", "150", "--seed", "3"]).stdout;
    assert_eq!(a, b);
    let v: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["samples"], 150);
    assert_eq!(v["filters"][0]["filter"], "PROP1");
    assert_eq!(v["filters"][0]["false_rejections"], 0);
    let csv = stdout(&elocc(&["compare-filters", "-n", "20", "--format", "csv"]));
    assert!(csv.starts_with(
        "filter,samples,true_rejections,false_rejections,accepted_catalysts,accepted_non_catalysts\n"
    ));
}
