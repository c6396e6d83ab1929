use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use kummer_cli::jobs::JobResult;
use kummer_cli::store;

fn kummer(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kummer"))
        .arg("--out")
        .arg(out)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn curve_reports_genus_two() {
    let dir = tempfile::tempdir().unwrap();
    let o = kummer(dir.path(), &["curve", "--a", "2", "--b", "3", "--quad", "0,0,1,1"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["curve"]["curve"]["genus"], 2);
}

#[test]
fn lattice_count_output() {
    let dir = tempfile::tempdir().unwrap();
    let o = kummer(dir.path(), &["lattice", "count", "--n", "1"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["lattice"]["count"]["brute"], 18);
    assert_eq!(v["lattice"]["count"]["formula"], 18);
}

#[test]
fn invalid_input_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["lattice", "find", "--n", "0"][..],
        &["verify-config", "--a", "2", "--b", "1/2"],
        &["sweep", "--n-max", "0"],
        &["curve", "--a", "2", "--b", "3", "--quad", "1,0,0,0"],
        &["curve", "--a", "2", "--b", "3", "--quad", "1,2"],
        &["no-such-command"],
    ] {
        let o = kummer(dir.path(), args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn zerocycle_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let spanning = dir.path().join("w.json");
    fs::write(
        &spanning,
        r#"{"m":2,"witnesses":[[1,0],[0,1],[1,1]],"targets":[{"c":["1","0"],"d":["0","1"]},{"c":["1/2","0"],"d":["0","1/3"]}]}"#,
    )
    .unwrap();
    let o = kummer(dir.path(), &["zerocycle", "--file", spanning.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["zerocycle"][0]["result"]["certified"]["denominator"], "2");
    assert_eq!(v["zerocycle"][1]["result"]["certified"]["denominator"], "12");

    let thin = dir.path().join("u.json");
    fs::write(&thin, r#"{"m":2,"witnesses":[[1,0]],"targets":[{"c":["1","0"],"d":["0","1"]}]}"#).unwrap();
    let o = kummer(dir.path(), &["zerocycle", "--file", thin.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("undecided"));

    let missing = dir.path().join("missing.json");
    let o = kummer(dir.path(), &["zerocycle", "--file", missing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn sweep_artifacts_do_not_depend_on_jobs() {
    let one = tempfile::tempdir().unwrap();
    let four = tempfile::tempdir().unwrap();
    for (dir, jobs) in [(&one, "1"), (&four, "4")] {
        let o = kummer(dir.path(), &["sweep", "--n-max", "2", "--jobs", jobs]);
        assert!(o.status.success());
    }
    let index = store::read_index(one.path()).unwrap();
    assert_eq!(index, store::read_index(four.path()).unwrap());
    assert_eq!(index.len(), 1);
    let (id, entry) = index.iter().next().unwrap();
    assert!(id.starts_with("sweep-"));
    assert_eq!(entry.extra, [format!("{id}.csv"), format!("{id}.txt")]);
    for name in std::iter::once(&entry.file).chain(&entry.extra).chain([&store::INDEX_FILE.to_string()]) {
        assert_eq!(fs::read(one.path().join(name)).unwrap(), fs::read(four.path().join(name)).unwrap(), "{name}");
    }
    let record = store::load(&one.path().join(&entry.file)).unwrap();
    let JobResult::Sweep(report) = &record.result else { panic!("not a sweep") };
    assert_eq!(report.rows.len(), 3 * 63);
    assert_eq!(report.failure_count, 0);
}

#[test]
fn records_round_trip_and_index_accumulates() {
    let dir = tempfile::tempdir().unwrap();
    let runs: [&[&str]; 3] = [
        &["section", "--a", "3", "--b", "5", "--quad", "1,-1,0,1"],
        &["curve", "--a", "2", "--b", "3", "--quad", "0,0,1,1", "--harvest", "3"],
        &["lattice", "find", "--n", "7"],
    ];
    for args in runs {
        assert!(kummer(dir.path(), args).status.success(), "{args:?}");
    }
    let index = store::read_index(dir.path()).unwrap();
    let kinds: Vec<&str> = index.values().map(|e| e.kind.as_str()).collect();
    assert_eq!(kinds.len(), 3);
    for kind in ["section", "curve", "lattice"] {
        assert!(kinds.contains(&kind));
    }
    for (id, entry) in &index {
        let path = dir.path().join(&entry.file);
        let text = fs::read_to_string(&path).unwrap();
        let record = store::load(&path).unwrap();
        assert_eq!(&record.job_id, id);
        assert_eq!(&record.spec.job_id(), id);
        assert_eq!(serde_json::to_string_pretty(&record).unwrap() + "\n", text);
    }
}

#[test]
fn no_persist_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let o = kummer(&out, &["--no-persist", "lattice", "count", "--n", "2"]);
    assert!(o.status.success());
    assert!(!out.exists());
}
