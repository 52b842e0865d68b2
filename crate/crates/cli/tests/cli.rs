use std::process::{Command, Output};

use binomdiv::report::SweepDocument;
use binomdiv_core::registry::builtin_families;
use binomdiv_core::theorem::{run_sweep, SweepConfig};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_binomdiv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_small_instance_holds() {
    let o = run(&["verify", "--a", "2", "--b", "1", "--n", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("verdict: HOLDS"), "{text}");
    assert!(text.contains("smallest margin: 0 at p=5"), "{text}");
}

#[test]
fn verify_json_carries_entries() {
    let o = run(&["verify", "--a", "3", "--b", "1", "--n", "4", "--format", "json", "--no-timing"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["command"], "verify");
    assert_eq!(doc["summary"]["checked"], 1);
    assert_eq!(doc["summary"]["violations"], 0);
    let entries = doc["results"][0]["entries"].as_array().unwrap();
    // 2bn+1 = 9 and 2bn+3 = 11
    let at = |p: u64| entries.iter().find(|e| e["p"] == p).unwrap();
    assert!(at(3)["required"].as_i64().unwrap() >= 2);
    assert!(at(11)["available"].as_i64() >= at(11)["required"].as_i64());
}

#[test]
fn bad_parameters_exit_2() {
    assert_eq!(run(&["verify", "--a", "1", "--b", "2", "--n", "1"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--a", "3", "--b", "1", "--n", "0"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--a", "3", "--b", "1"]).status.code(), Some(2));
    assert_eq!(
        run(&["verify", "--a", "3", "--b", "1", "--n", "1", "--family", "nope"]).status.code(),
        Some(2)
    );
    // 2an at the overflow guard
    let huge = (1u64 << 61).to_string();
    assert_eq!(run(&["verify", "--a", "2", "--b", "1", "--n", &huge]).status.code(), Some(2));
    assert_eq!(run(&["sweep", "--a-max", "3", "--b-max", "2", "--n-max", "2", "--jobs", "0"]).status.code(), Some(2));
}

#[test]
fn non_theorem_family_violation_exits_1() {
    let o = run(&["verify", "--a", "2", "--b", "1", "--n", "1", "--family", "unit-multiplier"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAILS"));
    let o = run(&["sweep", "--a-max", "3", "--b-max", "2", "--n-max", "4", "--family", "unit-multiplier"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn trace_nine_divides_n() {
    let o = run(&["trace", "--a", "3", "--b", "1", "--n", "9", "--modulus", "2bn+3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("p=3 divides 2bn+3=21"), "{text}");
    assert!(text.contains("NineDividesN"), "{text}");
    assert!(text.contains("i=1: ⌊54/7⌋ + ⌊9/7⌋ − ⌊27/7⌋ − ⌊18/7⌋ − ⌊18/7⌋ = 7 + 1 − 3 − 2 − 2 = 1"), "{text}");
}

#[test]
fn trace_csv_is_a_usage_error() {
    let o = run(&["trace", "--a", "3", "--b", "1", "--n", "9", "--modulus", "2bn+1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn integrality_examples() {
    let o = run(&["integrality", "--num", "1,1", "--den", "2", "--n-max", "5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("n=1: not integral (witness prime 2)"));

    let o = run(&["integrality", "--num", "2", "--den", "1,1", "--n-max", "5"]);
    assert_eq!(o.status.code(), Some(0));

    let o = run(&["integrality", "--num", "30,1", "--den", "15,10,6", "--n-max", "20", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["summary"]["violations"], 0);
    assert_eq!(doc["results"].as_array().unwrap().len(), 20);

    let o = run(&["integrality", "--ratio", "(2n)!^1 (n)!^-2", "--n-max", "3"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn unbalanced_integrality_warns() {
    let o = run(&["integrality", "--num", "3", "--den", "1", "--n-max", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    assert_eq!(run(&["integrality", "--num", "0", "--den", "1", "--n-max", "2"]).status.code(), Some(2));
}

#[test]
fn lemma_fuzz_is_deterministic() {
    let args = ["lemma-fuzz", "--samples", "20000", "--seed", "9", "--format", "json"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let doc: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(doc["summary"]["checked"], 20000);
    assert_eq!(doc["summary"]["violations"], 0);
}

#[test]
fn sweep_reports_are_byte_identical_across_runs_and_workers() {
    let base = ["sweep", "--a-max", "6", "--b-max", "5", "--n-max", "12", "--format", "json", "--no-timing"];
    let one = run(&[&base[..], &["--jobs", "1"]].concat());
    let again = run(&[&base[..], &["--jobs", "1"]].concat());
    let four = run(&[&base[..], &["--jobs", "4"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, again.stdout);
    let mut one_doc: SweepDocument = serde_json::from_slice(&one.stdout).unwrap();
    let four_doc: SweepDocument = serde_json::from_slice(&four.stdout).unwrap();
    one_doc.config.jobs = 4;
    assert_eq!(one_doc, four_doc);
}

#[test]
fn sweep_json_round_trips_to_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.json");
    let o = run(&[
        "sweep", "--a-max", "5", "--b-max", "4", "--n-max", "10", "--no-timing", "--format", "json",
        "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let doc: SweepDocument = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();

    let mut config = SweepConfig::new(5, 4, 10);
    config.timing = false;
    let direct = run_sweep(&config, &builtin_families()).unwrap();
    assert_eq!(doc.sweep_report(), direct.report);
    assert_eq!(doc.results.len(), 100);
    assert!(doc.results.windows(2).all(|w| (w[0].a, w[0].b, w[0].n) < (w[1].a, w[1].b, w[1].n)));
}

#[test]
fn sweep_csv_columns() {
    let o = run(&["sweep", "--a-max", "3", "--b-max", "1", "--n-max", "2", "--format", "csv", "--no-timing"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "a,b,n,verdict,witness_prime,seconds\n2,1,1,holds,,0.0\n2,1,2,holds,,0.0\n3,1,1,holds,,0.0\n3,1,2,holds,,0.0\n"
    );
}

#[test]
fn seeded_sample_sweep() {
    let args = ["sweep", "--a-max", "10", "--b-max", "9", "--n-max", "20", "--sample", "25", "--seed", "3", "--format", "csv", "--no-timing"];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(stdout(&first).lines().count(), 26);
    assert_eq!(first.stdout, run(&args).stdout);
}

#[test]
fn unwritable_out_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("report.json");
    let o = run(&["verify", "--a", "2", "--b", "1", "--n", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn oracle_check_lists_and_runs_suites() {
    let o = run(&["oracle-check", "--list"]);
    assert_eq!(o.status.code(), Some(0));
    let listing = stdout(&o);
    for name in ["legendre-direct", "kummer-legendre", "claims", "theorem-a", "minimal-multiplier"] {
        assert!(listing.contains(name), "{listing}");
    }
    let o = run(&["oracle-check", "--suite", "theorem-a", "--suite", "integrality", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("suite,checked,mismatches,status\n"));
    assert!(text.contains("theorem-a,60,0,pass"), "{text}");
    assert_eq!(run(&["oracle-check", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn oracle_check_all_suites_pass() {
    let o = run(&["oracle-check"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(!text.contains("FAIL"), "{text}");
}

#[test]
fn empty_sweep_box() {
    let o = run(&["sweep", "--a-max", "1", "--b-max", "1", "--n-max", "10", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: SweepDocument = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc.summary.checked, 0);
    assert!(doc.results.is_empty());
}

#[test]
fn trace_examples() {
    let o = run(&["trace", "--a", "3", "--b", "1", "--n", "1", "--modulus", "2bn+3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let traces = doc["results"].as_array().unwrap();
    assert_eq!(traces.len(), 1);
    assert_eq!(traces[0]["p"], 5);
    assert_eq!(traces[0]["satisfied"], true);

    let o = run(&["trace", "--a", "2", "--b", "1", "--n", "1", "--modulus", "2bn+1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("p=3") && text.contains("OmittedBranchNumeric"), "{text}");

    assert_eq!(run(&["trace", "--a", "2", "--b", "1", "--n", "1", "--modulus", "2bn+5"]).status.code(), Some(2));
}
