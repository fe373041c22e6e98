//! End-to-end tests of the `untangle` binary: every subcommand, the file
//! formats, and the exit-code contract (0 success, 1 usage, 2 audit/bound
//! failure).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_untangle"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

struct Dir {
    root: tempfile::TempDir,
}

impl Dir {
    fn new() -> Self {
        Dir {
            root: tempfile::tempdir().unwrap(),
        }
    }

    fn file(&self, name: &str) -> PathBuf {
        self.root.path().join(name)
    }
}

#[test]
fn gen_greedy_verify_pipeline() {
    let dir = Dir::new();
    let m = dir.file("m.json");
    let seq = dir.file("seq.json");

    let out = run(&["gen", "star", "--n", "5", "--out", path_str(&m)]);
    assert!(out.status.success(), "{out:?}");
    let text = fs::read_to_string(&m).unwrap();
    assert!(text.contains("\"reds\""));
    assert!(text.contains("\"mate\""));

    let out = run(&["greedy", "--in", path_str(&m), "--out", path_str(&seq)]);
    assert!(out.status.success(), "{out:?}");
    assert!(fs::read_to_string(&seq).unwrap().contains("\"flips\""));

    let out = run(&["verify", "--in", path_str(&m), "--seq", path_str(&seq)]);
    assert!(out.status.success(), "{out:?}");
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("complete untangle sequence"));
}

#[test]
fn search_and_enumerate_star() {
    let dir = Dir::new();
    let m = dir.file("m.json");
    run(&["gen", "star", "--n", "3", "--out", path_str(&m)]);

    // One flip exchanges the two outer segments of a 3-star and unhooks
    // the middle one, so the shortest sequence has length 1; only the
    // longest matches the pair count.
    let out = run(&["shortest", "--in", path_str(&m)]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("shortest: length 1"), "{stdout}");

    let out = run(&["longest", "--in", path_str(&m)]);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("longest: length 3"), "{stdout}");

    let out = run(&["enumerate", "--in", path_str(&m), "--limit", "100"]);
    assert!(out.status.success());

    let out = run(&[
        "policy",
        "--in",
        path_str(&m),
        "--policy",
        "random",
        "--seed",
        "7",
    ]);
    assert!(out.status.success());
}

#[test]
fn potential_table_on_butterfly() {
    let dir = Dir::new();
    let m = dir.file("m.json");
    run(&[
        "gen",
        "butterfly",
        "--m",
        "2",
        "--perturb",
        "--out",
        path_str(&m),
    ]);
    let out = run(&["potential", "--in", path_str(&m)]);
    assert!(out.status.success(), "{out:?}");
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("phi total"), "{stdout}");
    assert!(stdout.contains("word"), "{stdout}");
}

#[test]
fn track_writes_trajectories() {
    let dir = Dir::new();
    let m = dir.file("m.json");
    let seq = dir.file("seq.json");
    let trace = dir.file("trace.json");
    run(&[
        "gen",
        "random",
        "--kind",
        "red-on-line",
        "--n",
        "4",
        "--seed",
        "3",
        "--out",
        path_str(&m),
    ]);
    run(&[
        "policy",
        "--in",
        path_str(&m),
        "--policy",
        "first",
        "--out",
        path_str(&seq),
    ]);
    let out = run(&[
        "track",
        "--in",
        path_str(&m),
        "--seq",
        path_str(&seq),
        "--out",
        path_str(&trace),
    ]);
    assert!(out.status.success(), "{out:?}");
    let text = fs::read_to_string(&trace).unwrap();
    assert!(text.contains("\"trajectories\""));
    assert!(text.contains("\"transitions\""));
}

#[test]
fn render_matching_and_frames() {
    let dir = Dir::new();
    let m = dir.file("m.json");
    let seq = dir.file("seq.json");
    let svg = dir.file("out.svg");
    run(&["gen", "fence", "--m", "2", "--out", path_str(&m)]);
    let out = run(&["render", "--in", path_str(&m), "--out", path_str(&svg)]);
    assert!(out.status.success());
    assert!(fs::read_to_string(&svg).unwrap().starts_with("<svg"));

    run(&[
        "policy",
        "--in",
        path_str(&m),
        "--policy",
        "topmost",
        "--out",
        path_str(&seq),
    ]);
    let out = run(&[
        "render",
        "--in",
        path_str(&m),
        "--seq",
        path_str(&seq),
        "--out",
        path_str(&svg),
    ]);
    assert!(out.status.success());
    // A 2-fence untangles in exactly 4 flips: 5 frames.
    for i in 0..5 {
        assert!(dir.file(&format!("out-{i:04}.svg")).exists(), "frame {i}");
    }
}

#[test]
fn reduce_compiles_formula() {
    let dir = Dir::new();
    let formula = dir.file("f.txt");
    let m = dir.file("mphi.json");
    let report = dir.file("report.json");
    fs::write(&formula, "a b c\n+ a b c @1\n").unwrap();
    let out = run(&[
        "reduce",
        "--formula",
        path_str(&formula),
        "--alpha",
        "1",
        "--out",
        path_str(&m),
        "--report",
        path_str(&report),
    ]);
    assert!(out.status.success(), "{out:?}");
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("k = 9"), "{stdout}");
    let rep = fs::read_to_string(&report).unwrap();
    assert!(rep.contains("\"verdict\": true"));
    assert!(fs::read_to_string(&m).unwrap().contains("\"mate\""));
}

#[test]
fn report_suite_passes() {
    let dir = Dir::new();
    let out_file = dir.file("report.txt");
    let out = run(&[
        "report",
        "--max-n",
        "5",
        "--trials",
        "3",
        "--seed",
        "1",
        "--out",
        path_str(&out_file),
    ]);
    assert!(out.status.success(), "{out:?}");
    let text = fs::read_to_string(&out_file).unwrap();
    assert!(text.contains("all bounds hold"), "{text}");
}

#[test]
fn exit_codes_follow_the_contract() {
    // Usage error: unknown flag.
    let out = run(&["gen", "star", "--bogus", "4"]);
    assert_eq!(out.status.code(), Some(1));
    // Usage error: missing input file.
    let out = run(&["greedy", "--in", "/nonexistent/m.json"]);
    assert_eq!(out.status.code(), Some(1));

    // Audit failure: replaying an invalid sequence exits 2.
    let dir = Dir::new();
    let m = dir.file("m.json");
    let seq = dir.file("seq.json");
    run(&["gen", "star", "--n", "2", "--out", path_str(&m)]);
    fs::write(&seq, "{\"flips\": [[0,1],[0,1]]}").unwrap();
    let out = run(&["verify", "--in", path_str(&m), "--seq", path_str(&seq)]);
    assert_eq!(out.status.code(), Some(2));
}
