use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn nilcommute(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_nilcommute"));
    cmd.args(args);
    match threads {
        Some(t) => cmd.env("NILCOMMUTE_THREADS", t),
        None => cmd.env_remove("NILCOMMUTE_THREADS"),
    };
    cmd.output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json report")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn verify_paper_passes_with_byte_exact_golden_files() {
    let o = nilcommute(&["verify-paper"], None);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r = json(&o);
    for name in ["phi(7,3)", "psi(7,4)"] {
        assert_eq!(r["statistics"][name]["detail"]["byte_exact"], true);
        assert_eq!(r["statistics"][name]["detail"]["symbolic"], true);
    }
}

#[test]
fn char3_report_records_residues() {
    let r = json(&nilcommute(&["char3-witness"], None));
    assert_eq!(r["passed"], true);
    assert_eq!(r["statistics"]["det_l3_mod_3"], "0");
    assert_ne!(r["statistics"]["det_l4_mod_3"], "0");
}

#[test]
fn reports_are_byte_identical_across_runs_and_thread_counts() {
    let args = ["rank-laws", "--n", "6", "--trials", "40", "--seed", "17"];
    let a = nilcommute(&args, Some("1"));
    let b = nilcommute(&args, Some("3"));
    let c = nilcommute(&args, None);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let other = nilcommute(&["rank-laws", "--n", "6", "--trials", "40", "--seed", "18"], None);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let args = ["lemma-m", "--n", "5", "--trials", "5"];
    let printed = nilcommute(&args, None);
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    let o = nilcommute(&with_out, None);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), printed.stdout);
}

#[test]
fn replay_of_passing_report_passes() {
    let dir = tempfile::tempdir().unwrap();
    let report = nilcommute(&["coarsen", "--n", "4", "--trials", "10"], None);
    assert_eq!(code(&report), 0);
    let path = write(dir.path(), "pass.json", &String::from_utf8(report.stdout).unwrap());
    let o = nilcommute(&["replay", &path], None);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&o)["passed"], true);
}

#[test]
fn injected_fault_is_reproduced_under_any_worker_count() {
    let dir = tempfile::tempdir().unwrap();
    let report = nilcommute(&["rank-laws", "--n", "5", "--trials", "12", "--inject-fault", "lemma-3.3"], None);
    assert_eq!(code(&report), 1);
    let r: Value = serde_json::from_slice(&report.stdout).unwrap();
    assert_eq!(r["counterexamples"][0]["detail"]["law"], "lemma-3.3");
    assert_eq!(r["counterexamples"][0]["detail"]["injected"], true);
    let path = write(dir.path(), "fault.json", &String::from_utf8(report.stdout).unwrap());
    let one = nilcommute(&["replay", &path], Some("1"));
    let four = nilcommute(&["replay", &path], Some("4"));
    assert_eq!(code(&one), 1, "{}", String::from_utf8_lossy(&one.stderr));
    assert_eq!(one.stdout, four.stdout);
    let replayed = json(&one);
    assert_eq!(replayed["statistics"]["reproduced"], true);
    assert_eq!(replayed["counterexamples"], r["counterexamples"]);
}

#[test]
fn diverging_replay_is_an_internal_error() {
    let dir = tempfile::tempdir().unwrap();
    let report = nilcommute(&["rank-laws", "--n", "4", "--trials", "5", "--inject-fault", "cor-3.2"], None);
    let mut r: Value = serde_json::from_slice(&report.stdout).unwrap();
    r["counterexamples"][0]["detail"]["partition"] = "9".into();
    let path = write(dir.path(), "tampered.json", &r.to_string());
    let o = nilcommute(&["replay", &path], None);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("nondeterministic"));
}

#[test]
fn replay_without_payload_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let report = nilcommute(&["char3-witness"], None);
    let mut r: Value = serde_json::from_slice(&report.stdout).unwrap();
    r["passed"] = false.into();
    let path = write(dir.path(), "empty.json", &r.to_string());
    assert_eq!(code(&nilcommute(&["replay", &path], None)), 2);
    assert_eq!(code(&nilcommute(&["replay", "/nonexistent/report.json"], None)), 2);
    let junk = write(dir.path(), "junk.json", "{}");
    assert_eq!(code(&nilcommute(&["replay", &junk], None)), 2);
}

#[test]
fn usage_errors_exit_with_2() {
    for args in [
        &["no-such-experiment"][..],
        &["rank-laws", "--prime", "100"],
        &["rank-laws", "--trials", "0"],
        &["generic-rank", "--n", "5", "--partition", "3,1"],
        &["rank-laws", "--law", "lemma-9.9"],
        &["tangent-dim", "--prime", "3"],
        &["upsilon", "--n", "7", "--l", "5"],
        &["rank-laws", "--format", "xml"],
    ] {
        let o = nilcommute(args, None);
        assert_eq!(code(&o), 2, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn csv_is_a_flat_projection() {
    let o = nilcommute(&["generic-rank", "--partition", "2,1", "--trials", "50", "--format", "csv"], None);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    let records: Vec<(String, String)> =
        rows.records().map(|r| r.unwrap()).map(|r| (r[0].to_string(), r[1].to_string())).collect();
    assert!(records.contains(&("experiment".into(), "generic-rank".into())));
    assert!(records.contains(&("statistics.partitions.2,1.expected".into(), "2".into())));
}

#[test]
fn hilbert_alias_and_roundtrips_flag() {
    let o = nilcommute(&["hilbert", "--n", "6", "--m", "3", "--roundtrips", "20", "--prime", "101"], None);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["experiment"], "hilbert-roundtrip");
    let pair = &r["statistics"]["pairs"]["n=6 m=3"];
    assert_eq!(pair["round_trips"], 20);
    assert_eq!(pair["tangent_dimension"]["n^2-1"], 35);
}

#[test]
fn timing_is_opt_in() {
    let plain = json(&nilcommute(&["char3-witness"], None));
    assert!(plain.get("wall_clock_ms").is_none());
    let timed = json(&nilcommute(&["char3-witness", "--timing"], None));
    assert!(timed["wall_clock_ms"].is_u64());
}

#[test]
fn upsilon_prints_labelled_columns() {
    let o = nilcommute(&["upsilon", "--n", "4", "--l", "2"], None);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let header = text.lines().next().unwrap();
    assert!(header.trim_start().starts_with("(3,0)") && header.ends_with("(0,0)"));
    assert_eq!(text.lines().count(), 5);
    let j = nilcommute(&["upsilon", "--n", "4", "--l", "2", "--json"], None);
    let v: Value = serde_json::from_slice(&j.stdout).unwrap();
    assert_eq!(v["ring"], "Z");
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
}
