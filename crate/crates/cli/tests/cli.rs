use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use adw_core::fixtures;
use adw_core::netlist::serialize_netlist;
use serde_json::Value;
use tempfile::TempDir;

const F_SPEC: &str = "vars 4\nnames a b c d\non 1 2 3 5 6 7 9 10 11 13\n";

fn adw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_adw")).args(args).env_remove("ADW_LIMIT_STATES").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema").join(name);
    let v: Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&v).unwrap()
}

fn assert_valid(validator: &jsonschema::Validator, doc: &Value) {
    let errors: Vec<String> = validator.iter_errors(doc).map(|e| format!("{} at {}", e, e.instance_path())).collect();
    assert!(errors.is_empty(), "{errors:#?}");
}

#[test]
fn minimize_prints_both_covers() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.spec", F_SPEC);
    let o = adw(&["minimize", s(&f)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("ON  (3 terms): a'c + b'c + c'd"), "{text}");
    assert!(text.contains("OFF (2 terms): abc + c'd'"), "{text}");
    assert!(text.contains("(a' + b')c + c'd"), "{text}");
    assert!(text.contains("F(1) = a(0)c(1) + b(0)c(1) + c(0)d(1)"), "{text}");

    let json: Value = serde_json::from_slice(&adw(&["minimize", s(&f), "--format", "json"]).stdout).unwrap();
    assert_eq!(json["factored_literals"], 5);
}

#[test]
fn minimize_constant_zero_and_malformed() {
    let dir = TempDir::new().unwrap();
    let zero = write(&dir, "z.spec", "vars 2\non\n");
    let o = adw(&["minimize", s(&zero)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("ON  (0 terms): 0"));

    let bad = write(&dir, "bad.spec", "vars 2\non 1\nbogus 3\n");
    let o = adw(&["minimize", s(&bad)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn dsop_check_and_convert() {
    let o = adw(&["dsop", "check", "c(a+b)+dc'"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("witness (ac, bc)"), "{}", stdout(&o));

    let o = adw(&["dsop", "check", "ab'c+bc+dc'"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("DSOP"));

    let o = adw(&["dsop", "convert", "a+b"]);
    assert_eq!(stdout(&o).trim(), "a + a'b");

    let json: Value = serde_json::from_slice(&adw(&["dsop", "check", "[a(0)+b(0)]c(1)+c(0)d(1)", "--format", "json"]).stdout).unwrap();
    assert_eq!(json["dsop"], false);
    assert_eq!(json["witness"], serde_json::json!(["a(0)c(1)", "b(0)c(1)"]));
}

#[test]
fn synth_shapes() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.spec", F_SPEC);
    let out = dir.path().join("m1.net");
    let o = adw(&["synth", s(&f), "--method", "method1", "--cd", "or", "-o", s(&out)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("completion C-element fan-in 6"), "{}", stdout(&o));
    assert!(fs::read_to_string(&out).unwrap().contains(" C "));

    let o = adw(&["synth", "--expr", "ab + cd", "--method", "drcl", "--output-name", "Z"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stderr(&o).starts_with("6 gates (AND 3, OR 3)"), "{}", stderr(&o));

    let o = adw(&["synth", s(&f), "--method", "dims"]);
    assert!(stderr(&o).contains("C 16"), "{}", stderr(&o));

    let o = adw(&["synth", s(&f), "--method", "method1", "--max-fanin", "2", "--decompose", "naive"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
}

#[test]
fn synth_option_conflicts_and_unknown_flags() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.spec", F_SPEC);
    let o = adw(&["synth", s(&f), "--method", "dsop", "--cd", "nor"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("method1"), "{}", stderr(&o));
    assert_eq!(code(&adw(&["synth", s(&f), "--method", "dsop", "--frobnicate"])), 2);
    assert_eq!(code(&adw(&["synth", s(&f), "--method", "bogus"])), 2);
    assert_eq!(code(&adw(&["synth", s(&f), "--method", "dims", "--decompose", "naive"])), 2);
}

#[test]
fn analyze_exit_codes() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.spec", F_SPEC);
    let m1 = dir.path().join("m1.net");
    let dsop = dir.path().join("dsop.net");
    assert_eq!(code(&adw(&["synth", s(&f), "--method", "method1", "-o", s(&m1)])), 0);
    assert_eq!(code(&adw(&["synth", s(&f), "--method", "dsop", "-o", s(&dsop)])), 0);

    let o = adw(&["analyze", s(&m1), "--checks", "deadlock", "--codewords", "0101"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("DEADLOCK in rtz phase"), "{}", stdout(&o));

    let o = adw(&["analyze", s(&dsop), "--checks", "deadlock"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("no findings"));

    let nand5 = write(&dir, "nand5.net", &serialize_netlist(&fixtures::nand5_decomposed()));
    let o = adw(&["analyze", s(&nand5), "--checks", "orphans", "--codewords", "11111"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("gate orphan on net2"), "{}", stdout(&o));
}

#[test]
fn analyze_limit_and_errors() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.spec", F_SPEC);
    let dsop = dir.path().join("dsop.net");
    assert_eq!(code(&adw(&["synth", s(&f), "--method", "dsop", "-o", s(&dsop)])), 0);

    let o = Command::new(env!("CARGO_BIN_EXE_adw"))
        .args(["analyze", s(&dsop), "--checks", "deadlock"])
        .env("ADW_LIMIT_STATES", "10")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3, "{}", stdout(&o));
    assert!(stdout(&o).contains("state limit reached"), "{}", stdout(&o));
    assert_eq!(code(&adw(&["analyze", s(&dsop), "--checks", "deadlock", "--limit-states", "10"])), 3);

    let bad = write(&dir, "bad.net", "input a:wire\noutput y:wire\ngate g AND a z -> y\n");
    assert_eq!(code(&adw(&["analyze", s(&bad)])), 2);
    assert_eq!(code(&adw(&["analyze", s(&dsop), "--codewords", "012"])), 2);
    assert_eq!(code(&adw(&["analyze", s(&dsop), "--checks", "deadlock,bogus"])), 2);
    assert_eq!(code(&adw(&["analyze", "/nonexistent/x.net"])), 2);
}

#[test]
fn analyze_json_matches_schema() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.spec", F_SPEC);
    let m1 = dir.path().join("m1.net");
    assert_eq!(code(&adw(&["synth", s(&f), "--method", "method1", "-o", s(&m1)])), 0);
    let o = adw(&["analyze", s(&m1), "--codewords", "0000,0101", "--format", "json", "--method", "method1"]);
    assert_eq!(code(&o), 1);
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_valid(&schema("report.schema.json"), &doc);
    assert!(!doc["deadlocks"].as_array().unwrap().is_empty());
    assert!(!doc["mcc"].as_array().unwrap().is_empty());
    assert_eq!(doc["classification"], "not_self_timed");
}

#[test]
fn every_reproduce_case_succeeds() {
    let report = schema("report.schema.json");
    let outcome = schema("reproduce.schema.json");
    for case in ["fig5-wire", "fig5-gate", "fig6-or", "fig6-nor", "fig7", "dsop-f", "dsop-kernel"] {
        let o = adw(&["reproduce", case]);
        assert_eq!(code(&o), 0, "{case}: {}{}", stdout(&o), stderr(&o));
        assert!(stdout(&o).contains(&format!("{case}: REPRODUCED")));

        let o = adw(&["reproduce", case, "--format", "json"]);
        let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_valid(&outcome, &doc);
        assert_valid(&report, &doc["report"]);
        assert_eq!(doc["reproduced"], true);
    }
    assert_eq!(code(&adw(&["reproduce", "fig99"])), 2);
}

#[test]
fn reproduce_quotes_the_snapshots() {
    let text = stdout(&adw(&["reproduce", "fig6-or"]));
    assert!(text.contains("int1 = 1, int2 = 1, int3 = 1, int4 = 1, int5 = 1, int6 = 1"), "{text}");
    assert!(text.contains("{cd1 = 0, cd2 = 0, cd3 = 0, cd4 = 0, or2 = 0, or1 = 1}"), "{text}");
    assert!(text.contains("D held at 1"), "{text}");
    let text = stdout(&adw(&["reproduce", "fig6-nor"]));
    assert!(text.contains("{cd1 = 0, cd2 = 0, cd3 = 0, cd4 = 0, nor2 = 1, nor1 = 0}"), "{text}");
    let text = stdout(&adw(&["reproduce", "fig5-wire"]));
    assert!(text.contains("wire orphan on b(0)") && text.contains("wire orphan on d(0)"), "{text}");
}
