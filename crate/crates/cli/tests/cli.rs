use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use forq::engine::{decide_inclusion, EngineOptions, Verdict};
use forq::io::print_ba;
use forq::testkit::fixtures::{RUNNING_EXAMPLE_A, RUNNING_EXAMPLE_B};
use forq::testkit::suite_pair;

fn forq(args: &[&str], paths: &[&Path]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_forq"))
        .args(args)
        .args(paths)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_running_example(dir: &Path) -> (std::path::PathBuf, std::path::PathBuf) {
    let (a, b) = (dir.join("running.A.ba"), dir.join("running.B.ba"));
    fs::write(&a, RUNNING_EXAMPLE_A).unwrap();
    fs::write(&b, RUNNING_EXAMPLE_B).unwrap();
    (a, b)
}

#[test]
fn check_reports_counterexample() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = write_running_example(dir.path());
    let out = forq(&["check"], &[&a, &b]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "NOT_INCLUDED\ncounterexample: a (a)^w\n");
}

#[test]
fn check_same_file_is_included() {
    let dir = tempfile::tempdir().unwrap();
    let (_, b) = write_running_example(dir.path());
    let out = forq(&["check"], &[&b, &b]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "INCLUDED\n");
}

#[test]
fn check_prints_stats() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = write_running_example(dir.path());
    let out = forq(&["check", "--stats", "--picky", "--no-prune"], &[&b, &a]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let keys: Vec<&str> = text.lines().skip(1).map(|l| l.split('=').next().unwrap()).collect();
    assert_eq!(keys, ["queries", "stem_basis", "period_basis", "rounds", "time_ms"]);
}

#[test]
fn check_usage_and_io_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let (a, _) = write_running_example(dir.path());
    let missing = dir.path().join("missing.ba");
    let out = forq(&["check"], &[&a, &missing]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing.ba"));

    let bad = dir.path().join("bad.ba");
    fs::write(&bad, "a,x y->z\n").unwrap();
    assert_eq!(forq(&["check"], &[&a, &bad]).status.code(), Some(2));
    assert_eq!(forq(&["check"], &[&a]).status.code(), Some(2));

    let lax = dir.path().join("lax.ba");
    fs::write(&lax, "a,x->x\n").unwrap();
    assert_eq!(forq(&["check"], &[&lax, &lax]).status.code(), Some(0));
    assert_eq!(forq(&["check", "--strict"], &[&lax, &lax]).status.code(), Some(2));
}

#[test]
fn check_timeout_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = write_running_example(dir.path());
    assert_eq!(forq(&["check", "--timeout-ms", "0"], &[&a, &b]).status.code(), Some(3));
}

#[test]
fn cli_verdict_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    for i in 0..40 {
        let (a, b) = suite_pair(i);
        let (pa, pb) = (dir.path().join("a.ba"), dir.path().join("b.ba"));
        fs::write(&pa, print_ba(&a).unwrap()).unwrap();
        fs::write(&pb, print_ba(&b).unwrap()).unwrap();
        let lib = decide_inclusion(&a, &b, &EngineOptions::default()).unwrap().verdict;
        let code = forq(&["check"], &[&pa, &pb]).status.code();
        let want = match lib {
            Verdict::Included => 0,
            Verdict::NotIncluded => 1,
        };
        assert_eq!(code, Some(want), "pair {i}");
    }
}

#[test]
fn bench_writes_csv_and_survival() {
    let dir = tempfile::tempdir().unwrap();
    write_running_example(dir.path());
    fs::write(
        dir.path().join("manifest.txt"),
        "running running.A.ba running.B.ba\nself running.B.ba running.B.ba\nbroken running.A.ba nope.ba\n",
    )
    .unwrap();
    let (csv, dat) = (dir.path().join("o.csv"), dir.path().join("o.dat"));
    let out = Command::new(env!("CARGO_BIN_EXE_forq"))
        .args(["bench", "--jobs", "2", "--csv"])
        .arg(&csv)
        .arg("--survival")
        .arg(&dat)
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = fs::read_to_string(&csv).unwrap();
    let rows: Vec<Vec<&str>> = text.lines().map(|l| l.split(',').collect()).collect();
    assert_eq!(rows[0], ["name", "verdict", "time_ms", "queries", "stem_basis", "period_basis", "status"]);
    assert_eq!((rows[1][0], rows[1][1], rows[1][6]), ("running", "not_included", "ok"));
    assert_eq!((rows[2][0], rows[2][1], rows[2][6]), ("self", "included", "ok"));
    assert_eq!((rows[3][0], rows[3][1], rows[3][6]), ("broken", "", "error"));
    let points = fs::read_to_string(&dat).unwrap();
    assert_eq!(points.lines().count(), 2);
    assert!(points.lines().last().unwrap().ends_with(" 2"));
}

#[test]
fn bench_timeouts_are_left_out_of_survival() {
    let dir = tempfile::tempdir().unwrap();
    write_running_example(dir.path());
    let manifest = dir.path().join("list.txt");
    fs::write(&manifest, "running running.A.ba running.B.ba\n").unwrap();
    let dat = dir.path().join("o.dat");
    let out = Command::new(env!("CARGO_BIN_EXE_forq"))
        .args(["bench", "--timeout-ms", "0", "--survival"])
        .arg(&dat)
        .arg(&manifest)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(stdout(&out).lines().nth(1).unwrap().ends_with(",timeout"));
    assert_eq!(fs::read_to_string(&dat).unwrap(), "");
}

#[test]
fn bench_pairs_files_in_directory_without_manifest() {
    let dir = tempfile::tempdir().unwrap();
    write_running_example(dir.path());
    fs::write(dir.path().join("lonely.A.ba"), RUNNING_EXAMPLE_A).unwrap();
    let out = forq(&["bench"], &[dir.path()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().nth(1).unwrap().starts_with("running,not_included,"));
}

#[test]
fn bench_empty_and_unreadable_manifests() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.txt");
    fs::write(&empty, "").unwrap();
    let out = forq(&["bench"], &[&empty]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "name,verdict,time_ms,queries,stem_basis,period_basis,status\n");
    assert_eq!(forq(&["bench"], &[&dir.path().join("absent.txt")]).status.code(), Some(2));
}

#[test]
fn selftest_runs() {
    let out = forq(&["selftest", "--pairs", "30"], &[]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("30 pairs, 0 disagreements"));
}
