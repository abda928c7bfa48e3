use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    let cache = tempfile::tempdir().unwrap();
    run_with_cache(args, cache.path())
}

fn run_with_cache(args: &[&str], cache: &std::path::Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_autocx"))
        .args(args)
        .env("AC_CACHE_DIR", cache)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = run(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn complexity_values() {
    assert_eq!(json(&["complexity", "010111010", "--mode", "pi"])["value"], 5);
    assert_eq!(json(&["complexity", "", "--mode", "omega"])["value"], 1);
    // a single state with a 0-loop has exactly one accepting path
    assert_eq!(json(&["complexity", "0000", "--mode", "pi"])["value"], 1);
    assert_eq!(json(&["complexity", "0101", "--mode", "pi"])["value"], 2);
    let d = json(&["complexity", "010111010", "--mode", "dagger"]);
    assert_eq!(d["value"], 4);
    assert!(d["witness_sequence"].is_null());
}

#[test]
fn base_may_only_be_raised() {
    assert_eq!(json(&["complexity", "0000", "--base", "3"])["base"], 3);
    assert_eq!(run(&["complexity", "0120", "--base", "2"]).status.code(), Some(2));
    assert_eq!(json(&["complexity", "0120"])["base"], 3);
}

#[test]
fn structure_rows() {
    let pi = json(&["structure", "000010000", "--mode", "pi"]);
    assert_eq!(pi["h_star"][1]["states"], 5);
    let omega = json(&["structure", "000010000", "--mode", "omega"]);
    assert_eq!(omega["h_star"][1]["states"], 4);
    let pacific = json(&["structure", "001011", "--mode", "omega"]);
    assert_eq!(pacific["h_star"][4]["states"], 2);
}

#[test]
fn pvalue_records() {
    let p = json(&["pvalue", "-q", "3", "-m", "2", "-n", "11", "-b", "2", "--mode", "pi"]);
    assert_eq!(p["p_value"]["rounded"], "0.04");
    let p = json(&["pvalue", "-q", "2", "-m", "7", "-n", "10", "-b", "2", "--mode", "omega"]);
    assert_eq!(p["p_value"]["rounded"], "0.60");
    let p = json(&["pvalue", "-q", "1", "-m", "5", "-n", "5", "-b", "2", "--mode", "omega"]);
    assert_eq!(p["p_value"]["decimal"], "1.000000");
}

#[test]
fn explain_modes() {
    let e = json(&["explain", "0", "--mode", "pi"]);
    assert_eq!(e["optimal_states"], 1);
    assert_eq!(e["optimal_log_acc"], 0);
    assert_eq!(e["witnesses"], serde_json::json!(["00"]));
    let c = json(&["explain", "01111011011", "--all-modes"]);
    let pair = c["pairs"]
        .as_array()
        .unwrap()
        .iter()
        .find(|p| p["first"] == "delta" && p["second"] == "pi")
        .unwrap();
    assert_eq!(pair["disjoint"], true);
    let c = json(&["explain", "0110001000", "--all-modes"]);
    let pair = c["pairs"]
        .as_array()
        .unwrap()
        .iter()
        .find(|p| p["first"] == "pi" && p["second"] == "omega")
        .unwrap();
    assert_eq!(pair["disjoint"], true);
}

#[test]
fn verify_exit_codes() {
    let o = run(&["verify", "aaaa"]);
    assert_eq!(o.status.code(), Some(0));
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["status"], "pass");
    assert_eq!(run(&["verify", "nosuch"]).status.code(), Some(2));
    let o = run(&["verify", "--all", "--budget", "fast"]);
    assert_eq!(o.status.code(), Some(0));
    for line in stdout(&o).lines() {
        let r: Value = serde_json::from_str(line).unwrap();
        assert_eq!(r["status"], "pass", "{line}");
    }
    let o = run(&["verify", "--all", "--budget", "0", "--format", "tsv"]);
    assert_eq!(stdout(&o).lines().count(), 9);
}

#[test]
fn guard_violation_exits_3() {
    let o = run(&["--max-word-len", "5", "complexity", "0101010"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["pvalue", "-q", "2", "-m", "1", "-n", "20"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["complexity", "01x"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["explain", "0101"]).status.code(), Some(2));
}

#[test]
fn census_rows() {
    let o = run(&["census", "-n", "4", "--mode", "pi", "--format", "tsv"]);
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 16);
    let max = rows.iter().map(|r| r.split('\t').nth(1).unwrap().parse::<usize>().unwrap()).max();
    assert_eq!(max, Some(3));
    let one = json(&["census", "-n", "1", "--mode", "omega"]);
    assert_eq!(one["rows"][0]["omega"], 1);
    assert_eq!(one["rows"][1]["omega"], 1);
}

#[test]
fn census_density_footer() {
    let c = json(&["census", "-n", "13", "--mode", "delta", "--epsilon", "0.1"]);
    assert_eq!(c["density"]["closed_form"], c["density"]["enumerated"]);
}

#[test]
fn dot_output() {
    let a = stdout(&run(&["dot", "fig8"]));
    let b = stdout(&run(&["dot", "fig8"]));
    assert_eq!(a, b);
    assert!(a.starts_with("digraph"));
    assert!(stdout(&run(&["dot", "fig3"])).contains("doublecircle"));
    let k = stdout(&run(&["dot", "0101010", "--construction", "kayleigh"]));
    assert_eq!(k.lines().filter(|l| l.contains("shape=") && l.contains("label=\"q")).count(), 4);
    let ch = stdout(&run(&["dot", "0110,1111", "--construction", "chambers-hyde"]));
    assert_eq!(ch.lines().filter(|l| l.contains("label=\"q")).count(), 5);
    assert_eq!(run(&["dot", "fig9"]).status.code(), Some(2));
}

#[test]
fn json_round_trips_byte_identically() {
    for args in [
        vec!["complexity", "010111010"],
        vec!["structure", "0110001000", "--mode", "omega"],
        vec!["explain", "01111011011", "--all-modes"],
        vec!["verify", "fig6"],
    ] {
        let text = stdout(&run(&args));
        for line in text.lines() {
            let v: Value = serde_json::from_str(line).unwrap();
            assert_eq!(serde_json::to_string(&v).unwrap(), line);
        }
    }
}

#[test]
fn jobs_do_not_change_output() {
    let args = ["explain", "0110001000", "--mode", "omega"];
    let one = stdout(&run(&[&["--jobs", "1"][..], &args[..]].concat()));
    let four = stdout(&run(&[&["--jobs", "4"][..], &args[..]].concat()));
    assert_eq!(one, four);
}

#[test]
fn cache_is_stable_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["pvalue", "-q", "3", "-m", "4", "-n", "9", "--mode", "delta"];
    let first = stdout(&run_with_cache(&args, dir.path()));
    let bytes = std::fs::read(dir.path().join("numerators.tsv")).unwrap();
    let second = stdout(&run_with_cache(&args, dir.path()));
    assert_eq!(first, second);
    assert_eq!(std::fs::read(dir.path().join("numerators.tsv")).unwrap(), bytes);
}
