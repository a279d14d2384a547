use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/fixtures")
        .join(rel)
}

fn gridgather(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gridgather"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("gridgather-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn run_reports_an_optimal_gathering() {
    let f = fixture("micro/I1_1.txt");
    for sched in ["fsync", "ssync", "async"] {
        let o = gridgather(&["run", f.to_str().unwrap(), "--scheduler", sched, "--seed", "4"]);
        assert_eq!(o.status.code(), Some(0));
        let s = stdout(&o);
        assert!(s.starts_with("outcome=Gathered node=("), "{s}");
        assert!(s.contains("optimal=true"), "{s}");
    }
}

#[test]
fn run_refuses_ungatherable_starts_with_success() {
    let o = gridgather(&["run", fixture("u/v0_1.txt").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("outcome=Ungatherable reason="));
}

#[test]
fn run_writes_identical_traces_for_one_seed() {
    let dir = scratch("trace");
    let f = fixture("micro/I4b1_1.txt");
    let mut texts = Vec::new();
    for i in 0..2 {
        let t = dir.join(format!("{i}.trace"));
        let o = gridgather(&[
            "run",
            f.to_str().unwrap(),
            "--scheduler",
            "async",
            "--seed",
            "9",
            "--trace",
            t.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        texts.push(std::fs::read(&t).unwrap());
    }
    assert_eq!(texts[0], texts[1]);
    let last = String::from_utf8(texts[0].clone()).unwrap();
    assert!(last.lines().last().unwrap().starts_with("outcome=gathered"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn batch_runs_keep_input_order() {
    let dir = scratch("batch");
    let files: Vec<String> = ["micro/I2_1.txt", "u/r4_1.txt", "micro/I3a_2.txt", "micro/I4a_3.txt"]
        .iter()
        .map(|f| fixture(f).to_string_lossy().into_owned())
        .collect();
    let mut args = vec!["run", "--jobs", "3", "--trace", dir.to_str().unwrap()];
    args.extend(files.iter().map(String::as_str));
    let o = gridgather(&args);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<String> = stdout(&o).lines().map(str::to_owned).collect();
    assert_eq!(lines.len(), 4);
    for (line, f) in lines.iter().zip(&files) {
        assert!(line.starts_with(&format!("scenario={f} outcome=")), "{line}");
    }
    assert!(dir.join("I3a_2.trace").exists());
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn step_cap_exits_with_fault_status() {
    let o = gridgather(&["run", fixture("micro/I3b2_1.txt").to_str().unwrap(), "--max-steps", "1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).starts_with("outcome=CapExceeded"));
}

#[test]
fn parse_errors_exit_with_two() {
    let dir = scratch("parse");
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "M 0 0\nR 1 x\n").unwrap();
    let o = gridgather(&["run", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    let few = dir.join("few.txt");
    std::fs::write(&few, "M 0 0\nR 1 1\nR 2 2\n").unwrap();
    let o = gridgather(&["run", few.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("at least 7"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(gridgather(&["run"]).status.code(), Some(1));
    assert_eq!(
        gridgather(&["run", "x.txt", "--scheduler", "lockstep"]).status.code(),
        Some(1)
    );
    assert_eq!(gridgather(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn classify_reports_the_class() {
    let o = gridgather(&["classify", fixture("u_prime/d_1.txt").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("class=I3b3 gatherable=false u_prime=true\n"));
    let o = gridgather(&["classify", fixture("micro/I3b1_2.txt").to_str().unwrap()]);
    let s = stdout(&o);
    assert!(s.starts_with("class=I3b1 gatherable=true"), "{s}");
    assert!(s.lines().any(|l| l.starts_with("weber=[(")), "{s}");
}

#[test]
fn explore_summarises_outcomes() {
    let o = gridgather(&["explore", fixture("micro/I1_2.txt").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let first = s.lines().next().unwrap();
    assert!(first.starts_with("outcomes=1 kind=Gathered moves_min="), "{first}");
    let field = |k: &str| first.split(' ').find_map(|t| t.strip_prefix(k)).unwrap().to_owned();
    assert_eq!(field("moves_min="), field("moves_max="));
    assert_eq!(field("moves_min="), field("optimal_cost="));

    let o = gridgather(&["explore", fixture("u/a_1.txt").to_str().unwrap()]);
    assert!(stdout(&o).starts_with("outcomes=1 kind=Ungatherable"));

    let o = gridgather(&[
        "explore",
        fixture("micro/I4a_1.txt").to_str().unwrap(),
        "--max-states",
        "20",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("states="));
}

#[test]
fn gen_is_seeded_and_checked() {
    let a = gridgather(&[
        "gen",
        "--n",
        "9",
        "--meetings",
        "3",
        "--extent",
        "10",
        "--class",
        "I3b2",
        "--seed",
        "7",
    ]);
    let b = gridgather(&[
        "gen",
        "--n",
        "9",
        "--meetings",
        "3",
        "--extent",
        "10",
        "--class",
        "I3b2",
        "--seed",
        "7",
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);

    let dir = scratch("gen");
    let f = dir.join("one.txt");
    let o = gridgather(&["gen", "--n", "7", "--meetings", "1", "--out", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let c = gridgather(&["classify", f.to_str().unwrap()]);
    assert!(stdout(&c).starts_with("class=I1 "));
    std::fs::remove_dir_all(dir).unwrap();

    assert_eq!(
        gridgather(&["gen", "--n", "6", "--meetings", "2"]).status.code(),
        Some(1)
    );
    let o = gridgather(&[
        "gen",
        "--n",
        "7",
        "--meetings",
        "1",
        "--class",
        "I4b1",
        "--attempts",
        "10",
    ]);
    assert_ne!(o.status.code(), Some(0));
}
