use qca::report::CheckReport;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qca-verify")).args(args).env_remove("QCA_WORKERS").output().expect("binary runs")
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--suite", "ybe", "--n", "1"]).status.code(), Some(0));
    assert_eq!(run(&["--suite", "unitarity", "--n", "1", "--perturb"]).status.code(), Some(1));
    assert_eq!(run(&["--suite", "bogus"]).status.code(), Some(2));
    assert_eq!(run(&["--suite", "ybe", "--q-mode", "pinned:1"]).status.code(), Some(2));
    assert_eq!(run(&["--suite", "rll", "--fusion", "2", "--params", "1,2,3"]).status.code(), Some(2));
    assert_eq!(run(&["--suite", "gauss", "--n", "1", "--fusion", "2", "--params", "2, 5/3"]).status.code(), Some(0));
    assert_eq!(run(&["--suite", "minors", "--n", "3", "--fusion", "4"]).status.code(), Some(3));
}

#[test]
fn json_report_round_trips() {
    let out = run(&["--suite", "crossing", "--n", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let r = CheckReport::from_json(&text).unwrap();
    assert_eq!(r.suite, "crossing");
    assert!(r.all_pass());
    assert_eq!(CheckReport::from_json(&r.to_json()).unwrap(), r);
}

#[test]
fn failure_witness_on_stderr() {
    let out = run(&["--suite", "ybe", "--n", "1", "--perturb"]);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("FAIL"), "{err}");
}

#[test]
fn output_file_and_dump() {
    let dir = std::env::temp_dir().join(format!("qca-cli-{}", std::process::id()));
    let report = dir.join("report.json");
    let out = run(&["--suite", "gauss", "--n", "1", "--fusion", "1", "--format", "json", "--out", report.to_str().unwrap(), "--dump", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let r = CheckReport::from_json(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert!(r.all_pass());
    for f in ["rbar.txt", "fused_l.txt"] {
        assert!(!std::fs::read_to_string(dir.join(f)).unwrap().trim().is_empty(), "{f} empty");
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn deterministic_across_workers() {
    let args = ["--suite", "all", "--n", "1", "--fusion", "1", "--format", "json"];
    let a = run(&[&args[..], &["--workers", "1"]].concat());
    let b = run(&[&args[..], &["--workers", "3"]].concat());
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    let parse = |o: &Output| CheckReport::from_json(std::str::from_utf8(&o.stdout).unwrap()).unwrap().without_timings();
    assert_eq!(parse(&a), parse(&b));
}

#[test]
fn seed_picks_default_parameters() {
    let get = |seed: &str| {
        let o = run(&["--suite", "gauss", "--n", "1", "--fusion", "2", "--seed", seed, "--format", "json"]);
        assert_eq!(o.status.code(), Some(0));
        CheckReport::from_json(std::str::from_utf8(&o.stdout).unwrap()).unwrap()
    };
    let (a, b) = (get("1"), get("1"));
    assert_eq!(a.without_timings(), b.without_timings());
    let params = |r: &CheckReport| r.params.get("params").cloned().unwrap();
    let seen: std::collections::BTreeSet<String> = ["1", "2", "3", "4"].iter().map(|s| params(&get(s))).collect();
    assert!(seen.len() > 1, "every seed gives {seen:?}");
}
