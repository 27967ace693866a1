use std::path::Path;
use std::process::{Command, Output};

fn circflow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_circflow"))
        .args(args)
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn construct_then_flow_number_and_reverify() {
    let dir = tempfile::tempdir().unwrap();
    let g = path(dir.path(), "p.graph");
    let cert = path(dir.path(), "p.cert.json");
    assert_eq!(code(&circflow(&["construct", "--family", "petersen", "--out", &g])), 0);
    let out = circflow(&["flow-number", &g, "--cert", &cert]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("phi_c = 5"));
    let out = circflow(&["reverify", &cert, &g]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).starts_with("ok"));
}

#[test]
fn tampered_flow_exits_refuted() {
    let dir = tempfile::tempdir().unwrap();
    let g = path(dir.path(), "j5.graph");
    let f = path(dir.path(), "j5.flow");
    assert_eq!(
        code(&circflow(&[
            "build-flow",
            "--family",
            "flower",
            "--n",
            "2",
            "--out",
            &f,
            "--graph-out",
            &g
        ])),
        0
    );
    assert_eq!(code(&circflow(&["verify-flow", &g, &f])), 0);
    let text = std::fs::read_to_string(&f).unwrap();
    let line = text.lines().find(|l| l.starts_with("edge ")).unwrap();
    let mut toks: Vec<&str> = line.split_whitespace().collect();
    toks[4] = "100";
    std::fs::write(&f, text.replacen(line, &toks.join(" "), 1)).unwrap();
    let out = circflow(&["verify-flow", &g, &f]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("invalid"));
}

#[test]
fn exhausted_budget_is_inconclusive() {
    let dir = tempfile::tempdir().unwrap();
    let g = path(dir.path(), "p.graph");
    circflow(&["construct", "--family", "petersen", "--out", &g]);
    let out = circflow(&["chromatic-index", &g, "--budget", "0"]);
    assert_eq!(code(&out), 2);
    let out = circflow(&["chromatic-index", &g]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("= 4"));
}

#[test]
fn usage_errors_exit_3() {
    assert_eq!(code(&circflow(&["no-such-command"])), 3);
    assert_eq!(code(&circflow(&["construct", "--family", "complete"])), 3);
    assert_eq!(code(&circflow(&["flow-number", "/nonexistent/graph"])), 3);
    assert_eq!(code(&circflow(&["--help"])), 0);
}

#[test]
fn class_property_of_petersen() {
    let dir = tempfile::tempdir().unwrap();
    let g = path(dir.path(), "p.graph");
    let m = path(dir.path(), "p.matching");
    circflow(&["construct", "--family", "petersen", "--out", &g]);
    std::fs::write(
        &m,
        "circflow-matching v1\nedge on[0]\nedge on[1]\nedge on[2]\nedge on[3]\nedge on[4]\n",
    )
    .unwrap();
    let out = circflow(&[
        "class-property",
        &g,
        "--matching",
        &m,
        "--which",
        "class2",
        "--t",
        "1,2",
    ]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("1:class-2,2:class-2: verified"));
    let out = circflow(&["class-property", &g, "--matching", &m, "--which", "class1", "--t", "1"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn colorings_and_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let c = path(dir.path(), "mp.coloring");
    let out = circflow(&["color", "--construction", "mp-tilde", "--t", "1", "--out", &c]);
    assert_eq!(code(&out), 0);
    assert!(std::fs::read_to_string(&c).unwrap().contains("palette 13"));
    let out = circflow(&["asymptotic-bound", "--t", "2", "--r", "9/2"]);
    assert_eq!(stdout(&out).trim(), "19/7");
    assert_eq!(code(&circflow(&["asymptotic-bound", "--t", "2", "--r", "6"])), 3);
}

#[test]
fn paper_demo_section_3_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = circflow(&[
        "paper-demo",
        "--scope",
        "section-3",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let report = std::fs::read_to_string(dir.path().join("report.txt")).unwrap();
    assert_eq!(report.lines().filter(|l| l.contains("verified")).count(), 3);
    assert!(dir.path().join("mp-tilde-3.cert.json").exists());
}
