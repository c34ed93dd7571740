//! The command-line surface and its exit codes.

use std::process::{Command, Output};

fn twobridge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twobridge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn check_by_cf_and_fraction() {
    let o = twobridge(&["check", "--cf", "2,2,1", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("verdict     ObstructionHolds"));
    assert!(text.contains("lhs         12"));
    assert!(text.contains("alexander (seifert)"));

    let o = twobridge(&["check", "--fraction", "7/5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("C(7/3)"));

    let o = twobridge(&["check", "--cf", "3"]);
    assert!(stdout(&o).contains("ExcludedTorus"));
}

#[test]
fn check_rejects_bad_input() {
    for args in [
        &["check", "--cf", "2,2"][..],
        &["check", "--fraction", "7/4"],
        &["check", "--fraction", "7/0"],
        &["check", "--cf", "a,b"],
    ] {
        let o = twobridge(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    assert_ne!(twobridge(&["check"]).status.code(), Some(0));
    assert_ne!(
        twobridge(&["check", "--cf", "3", "--fraction", "3/1"])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn sweep_and_plot_data() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.csv");
    let o = twobridge(&[
        "sweep",
        "--max-crossings",
        "13",
        "--jobs",
        "2",
        "--dedup",
        "canonical",
        "--checkpoint",
        dir.path().join("ck").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert!(stdout(&o).contains("equalities            0"));
    assert_eq!(
        std::fs::read_to_string(&out).unwrap().lines().count(),
        1 + 126
    );

    let plots = dir.path().join("plots");
    let o = twobridge(&[
        "plot-data",
        "--in",
        out.to_str().unwrap(),
        "--out",
        plots.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(plots.join("q_vs_quotient.csv").exists());
}

#[test]
fn operational_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.csv");
    let o = twobridge(&[
        "sweep",
        "--max-crossings",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let o = twobridge(&[
        "plot-data",
        "--in",
        "/nonexistent/x.csv",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
}
