//! Black-box checks of the installed binary: exit codes, stdout contracts,
//! config-file precedence, CSV output, and parallel determinism.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_droste"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn transform_prints_the_mapped_coordinates() {
    let out = run(&[
        "transform",
        "--from",
        "hd",
        "--to",
        "ks",
        "--mu",
        "1",
        "--region",
        "R_II_plus",
        "--point",
        "t=0,r=2",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "u=2.718282, v=2.718282");
}

#[test]
fn usage_problems_exit_2() {
    for args in [
        &["verify", "--chart", "not_a_chart"][..],
        &["verify", "--chart", "hd", "--grid", "r=5:1:10"][..],
        &["trace", "--chart", "ks"][..],
        &["trace", "--chart", "ks", "--init", "u=1,v=1", "--null"][..],
        &[
            "transform",
            "--from",
            "hd",
            "--to",
            "nowhere",
            "--point",
            "t=0,r=2",
        ][..],
        &["topology", "--query", "bridge", "--space", "doubled_line"][..],
        &["verify", "--chart", "hd", "--mu", "-2"][..],
        &["embed", "--map", "escher"][..],
    ] {
        let out = run(args);
        assert_eq!(code(&out), 2, "args {args:?}: {}", stdout(&out));
    }
}

#[test]
fn vacuum_violation_exits_1_with_the_worst_point() {
    let out = run(&["verify", "--chart", "lemaitre_paper", "--mu", "1"]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("\"verdict\": \"violation\""), "{text}");
    assert!(text.contains("worst_point"), "{text}");
}

#[test]
fn config_file_feeds_defaults_and_flags_override_it() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "mu = 2.0\nformat = json\n# comment line\n").unwrap();
    let cfg = cfg.to_str().unwrap();

    let from_file = run(&["conformance", "--config", cfg]);
    assert_eq!(code(&from_file), 0);
    assert!(stdout(&from_file).contains("\"mu\": 2.0"));

    let overridden = run(&["conformance", "--config", cfg, "--mu", "3"]);
    assert_eq!(code(&overridden), 0);
    assert!(stdout(&overridden).contains("\"mu\": 3.0"));

    let missing = run(&["conformance", "--config", "/nonexistent/x.cfg"]);
    assert_eq!(code(&missing), 2);
}

#[test]
fn reports_embed_tool_identity_and_resolved_config() {
    let out = run(&["verify", "--chart", "ks", "--mu", "1.5"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("\"tool\": \"droste\""));
    assert!(text.contains(&format!("\"version\": \"{}\"", env!("CARGO_PKG_VERSION"))));
    assert!(text.contains("\"mu\": 1.5"));
    assert!(text.contains("\"chart\": \"ks\""));
}

#[test]
fn csv_reports_carry_the_config_prologue() {
    let out = run(&["verify", "--chart", "hd", "--mu", "1", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    let head = lines.next().unwrap();
    assert!(head.starts_with("# tool=droste version="), "{head}");
    assert!(text.contains("# config chart=hd"), "{text}");
    let header = lines.find(|l| !l.starts_with('#')).expect("csv header row");
    assert!(header.split(',').any(|c| c == "residual"), "{header}");
}

#[test]
fn job_count_does_not_change_the_report_body() {
    let base = run(&["verify", "--chart", "ks", "--mu", "1", "--jobs", "1"]);
    let par = run(&["verify", "--chart", "ks", "--mu", "1", "--jobs", "4"]);
    assert_eq!(code(&base), 0);
    assert_eq!(code(&par), 0);
    // The resolved config records the differing --jobs values; the measured
    // report itself must not depend on the pool size.
    let body = |o: &Output| -> serde_json::Value {
        serde_json::from_str::<serde_json::Value>(&stdout(o)).unwrap()["report"].clone()
    };
    assert_eq!(body(&base), body(&par));

    let zero = run(&["verify", "--chart", "ks", "--jobs", "0"]);
    assert_eq!(code(&zero), 2);
}

#[test]
fn wall_clock_stays_out_of_the_report_stream() {
    let out = run(&["curvature", "--mu", "1"]);
    assert_eq!(code(&out), 0);
    assert!(!stdout(&out).contains("wall_clock"));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("wall_clock_ms"), "{err}");
}

#[test]
fn trace_reports_events_and_thins_samples() {
    let out = run(&[
        "trace",
        "--chart",
        "ks",
        "--mu",
        "1",
        "--init",
        "u=1,v=1,du=0,dv=-1",
        "--null",
        "--affine-max",
        "3",
        "--events",
        "--samples",
        "5",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("\"events\""), "{text}");
    assert!(text.contains("horizon"), "{text}");
    assert_eq!(text.matches("\"lambda\"").count(), 5 + 1, "{text}");

    // A causal mismatch between the flag and the data is a usage error.
    let bad = run(&[
        "trace",
        "--chart",
        "ks",
        "--mu",
        "1",
        "--init",
        "u=1,v=1,du=0,dv=-1",
        "--timelike",
    ]);
    assert_eq!(code(&bad), 2);
}

#[test]
fn out_flag_writes_the_same_bytes_as_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let piped = run(&["embed", "--map", "kasner", "--mu", "2"]);
    let filed = run(&[
        "embed",
        "--map",
        "kasner",
        "--mu",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&piped), 0);
    assert_eq!(code(&filed), 0);
    let on_disk = std::fs::read_to_string(&path).unwrap();
    assert_eq!(stdout(&piped), on_disk);
}
