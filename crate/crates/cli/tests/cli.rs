use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("corpus")
        .join(name)
}

fn cqe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cqe"))
        .args(args)
        .env("CQE_NO_COLOR", "1")
        .output()
        .unwrap()
}

fn text(b: &[u8]) -> String {
    String::from_utf8_lossy(b).into_owned()
}

fn script(dir: &tempfile::TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn corpus_scripts_check() {
    for f in ["lem.cqe", "peano.cqe", "presburger.cqe"] {
        let out = cqe(&["check", corpus(f).to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{f}: {}", text(&out.stderr));
        let stdout = text(&out.stdout);
        assert!(stdout.contains("ok"), "{f}: {stdout}");
        assert!(!stdout.contains('\x1b'));
    }
}

#[test]
fn blocked_substitution_reports_the_side_condition() {
    let out = cqe(&["check", corpus("unregistered_inst.cqe").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = text(&out.stderr);
    assert!(err.contains("IS-EFFECTIVE-IN"), "{err}");
    assert!(err.contains("failed command:"), "{err}");
}

#[test]
fn bad_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let p = script(&dir, "bad.cqe", "thm t := REFL(`(x:num`)\n");
    let out = cqe(&["check", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "{}", text(&out.stderr));
    assert!(
        text(&out.stderr).contains("bad.cqe:1"),
        "{}",
        text(&out.stderr)
    );

    let out = cqe(&["check", dir.path().join("missing.cqe").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let lem = corpus("lem.cqe");
    let o = dir.path().join("o");
    let out = cqe(&[
        "export",
        lem.to_str().unwrap(),
        "--out",
        o.to_str().unwrap(),
        "--format",
        "xml",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!o.exists());
}

#[test]
fn failing_step_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let p = script(
        &dir,
        "wrong.cqe",
        "thm r := REFL(`x:num`)\ncheck r matches `(y:num) = y`\n",
    );
    let out = cqe(&["check", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(text(&out.stderr).contains("does not match"));
}

#[test]
fn export_both_formats() {
    let dir = tempfile::tempdir().unwrap();
    let lem = corpus("lem.cqe");
    let json = dir.path().join("lem.json");
    let sexp = dir.path().join("lem.sexp");
    for (path, fmt) in [(&json, "json-like"), (&sexp, "sexp")] {
        let out = cqe(&[
            "export",
            lem.to_str().unwrap(),
            "--out",
            path.to_str().unwrap(),
            "--format",
            fmt,
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", text(&out.stderr));
    }
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(doc["format"], "cqe-export");
    let thms = doc["theorems"].as_array().unwrap();
    let lem_entry = thms.iter().find(|t| t["name"] == "lem").unwrap();
    assert_eq!(lem_entry["hypotheses"].as_array().unwrap().len(), 0);
    assert!(lem_entry["axioms"]
        .as_array()
        .unwrap()
        .iter()
        .any(|a| a == "EXCLUDED_MIDDLE"));

    let s = std::fs::read_to_string(&sexp).unwrap();
    assert!(s.starts_with("(export"));
    assert!(s.contains("(name \"lem\")"));
}

#[test]
fn repl_reads_stdin_after_loading() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cqe"))
        .args(["repl", "--load", corpus("lem.cqe").to_str().unwrap()])
        .env("CQE_NO_COLOR", "1")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"thm again := SPEC(`y:epsilon`, lem)\nthm oops := NOPE(lem)\n:thms\n:quit\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", text(&out.stderr));
    let stdout = text(&out.stdout);
    assert!(stdout.contains("again:"), "{stdout}");
    assert!(stdout.contains("lem_ab"), "{stdout}");
    assert!(!stdout.contains('\x1b'));
}
