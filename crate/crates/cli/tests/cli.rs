use std::path::Path;
use std::process::{Command, Output};

fn markov(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_markov")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn compute_formats() {
    let o = markov(&["compute", "2/3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("markov number 29"), "{text}");
    assert!(text.contains("denominator x^1 y^2 z^4"), "{text}");

    let o = markov(&["compute", "0/1"]);
    assert!(stdout(&o).contains("M = x"));

    let v: serde_json::Value = serde_json::from_slice(&markov(&["compute", "1/2", "--format", "json"]).stdout).unwrap();
    assert_eq!(v["markov_number"], "5");

    let csv = stdout(&markov(&["compute", "1/2", "--format", "csv"]));
    assert_eq!(csv.lines().count(), 5, "{csv}");
}

#[test]
fn bad_input_exits_with_two() {
    for args in [&["compute", "2/4"][..], &["compute", "3/2"], &["compute", "x"], &["sail", "3/2"], &["selftest", "--skip", "nope"]] {
        assert_eq!(markov(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn selftest_table() {
    let o = markov(&["selftest"]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("36 passed, 0 failed, 0 skipped\n"));

    let o = markov(&["selftest", "--row1-as-printed"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("1 failed"), "{text}");
    assert!(text.contains("FAIL  analysis    row j = 1 at (3, 1) for 2/3"), "{text}");

    let o = markov(&["selftest", "--skip", "entropy,sails"]);
    assert!(stdout(&o).contains("skipped"));
}

fn read(dir: &Path, name: &str) -> Vec<u8> {
    std::fs::read(dir.join(name)).unwrap()
}

#[test]
fn sweep_is_deterministic_across_worker_counts() {
    let (one, many) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let run = |dir: &Path, workers: &str| {
        markov(&["sweep", "--max-sum", "20", "--out", dir.to_str().unwrap(), "--workers", workers])
    };
    assert!(run(one.path(), "1").status.success());
    assert!(run(many.path(), "4").status.success());
    let jsonl = read(one.path(), "sweep.jsonl");
    assert_eq!(jsonl, read(many.path(), "sweep.jsonl"));
    assert_eq!(read(one.path(), "summary.csv"), read(many.path(), "summary.csv"));
    assert_eq!(jsonl.iter().filter(|&&b| b == b'\n').count(), 63);
}

#[test]
fn sweep_rejects_bad_arguments() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert_eq!(markov(&["sweep", "--max-sum", "10", "--out", out, "--checks", "bogus"]).status.code(), Some(2));
    assert_eq!(markov(&["sweep", "--max-sum", "10", "--out", "/proc/nope"]).status.code(), Some(2));
}

#[test]
fn sail_reports() {
    let v: serde_json::Value = serde_json::from_slice(&markov(&["sail", "1/7"]).stdout).unwrap();
    assert_eq!(v["empty"], true);
    assert!(v["note"].is_string());

    let v: serde_json::Value = serde_json::from_slice(&markov(&["sail", "2/3"]).stdout).unwrap();
    assert_eq!(v["location_of_four"]["value"], "4");
}

#[test]
fn entropy_surface() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("surface.csv");
    let o = markov(&["entropy", "--n", "100", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(csv.starts_with("xi,eta,F,empirical_n100\n"));
    assert_eq!(csv.lines().count(), 1226);
}
