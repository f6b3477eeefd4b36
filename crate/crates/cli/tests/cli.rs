use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_marked-pcp")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solve_monoid_pair() {
    let o = run(&["solve", path(&fixture("monoid_pair.pcp"))]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "case cycle\nbasis 1\np0 = a b\n");
}

#[test]
fn solve_example_is_trivial_and_deterministic() {
    let a = run(&["solve", path(&fixture("core_pair.pcp"))]);
    let b = run(&["solve", path(&fixture("core_pair.pcp"))]);
    assert_eq!(a.status.code(), Some(0));
    assert!(stdout(&a).contains("basis 0"));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn check_reports_each_characterization() {
    let o = run(&["check", path(&fixture("unfolded.pcp"))]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "g marked=false folded=false length-identity=false agree=true\n");
    let o = run(&["check", path(&fixture("core_pair.pcp"))]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["check", path(&fixture("monoid_pair.pcp"))]);
    assert_eq!(stdout(&o), "g marked=true\nh marked=true\n");
}

#[test]
fn reduce_prints_complexity() {
    let o = run(&["reduce", path(&fixture("core_pair.pcp")), "--steps", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(
        out.starts_with("sigma-before 16\nsigma-after 8\nsteps 1\nmode group\nsigma p0 p1\ndelta a b c\n"),
        "{out}"
    );
    assert!(out.contains("p0 = a b^-1\np1 = c\n"));
}

#[test]
fn oracle_passes_on_bundled_fixtures() {
    for (name, r) in [("monoid_pair.pcp", "8"), ("core_pair.pcp", "6")] {
        let o = run(&["oracle", path(&fixture(name)), "--radius", r]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stdout(&o));
        assert!(stdout(&o).starts_with("pass"));
    }
}

#[test]
fn density_csv() {
    let o = run(&["density", "--kind", "marked-monoid", "-k", "2", "-m", "2", "-n", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "kind,k,m,n,samples,empirical,predicted\nmarked-monoid,2,2,10,0,0.499512,0.500000\n");
    let args = ["density", "--kind", "immersion-group", "-k", "1", "-m", "2", "-n", "6", "--samples", "500"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.stdout, b.stdout);
    let seeded = run(&[&args[..], &["--seed", "9"]].concat());
    assert_eq!(seeded.status.code(), Some(0));
}

#[test]
fn export_dot_and_trace() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("core.dot");
    let o = run(&["export-dot", path(&fixture("core_pair.pcp")), "--graph", "core", "-o", path(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let dot = fs::read_to_string(&out).unwrap();
    assert!(dot.starts_with("digraph G {\n  v0 [peripheries=2];\n"));
    assert_eq!(dot.matches(" -> ").count(), 8);

    let out = dir.path().join("g.dot");
    run(&["export-dot", path(&fixture("unfolded.pcp")), "--graph", "g", "-o", path(&out)]);
    assert_eq!(fs::read_to_string(&out).unwrap().matches(" -> ").count(), 6);

    let trace = dir.path().join("trace");
    let o = run(&["solve", path(&fixture("core_pair.pcp")), "--trace", path(&trace)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(trace.join("step_000.pcp").exists());
    assert!(trace.join("step_000_core.dot").exists());
    let first = fs::read_to_string(trace.join("step_000.pcp")).unwrap();
    assert!(first.contains("a = x y x x"));
}

#[test]
fn error_exit_codes() {
    let o = run(&["solve", "/definitely/not/here.pcp"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["density", "--kind", "both", "-k", "1", "-m", "1", "-n", "1"]);
    assert_eq!(o.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.pcp");
    fs::write(&bad, "mode monoid\nsigma a b\ndelta x y\nmap g\na = x y\nb = x\nmap h\na = x\nb = y\n").unwrap();
    let o = run(&["solve", path(&bad)]);
    assert_eq!(o.status.code(), Some(3));
    let err = stderr(&o);
    assert!(err.contains("map `g`") && err.contains("`a`") && err.contains("`b`"), "{err}");

    fs::write(&bad, "mode group\nsigma a\ndelta x\nmap g\na = x x^-1\nmap h\na = x\n").unwrap();
    let o = run(&["solve", path(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 5, column 7"), "{}", stderr(&o));

    let three = dir.path().join("three.pcp");
    fs::write(&three, "mode monoid\nsigma a\ndelta x\nmap f\na = x\nmap g\na = x\nmap h\na = x x\n").unwrap();
    assert_eq!(run(&["solve", path(&three)]).status.code(), Some(2));
    let o = run(&["solve", path(&three), "--set"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("basis 0"));
}
