//! End-to-end checks of the `supmatch` binary: exit codes and the
//! wiring between subcommands.

use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_supmatch"))
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
        .display()
        .to_string()
}

#[test]
fn generate_then_solve_round_trip() {
    let work = tempfile::tempdir().unwrap();
    let inst_dir = work.path().join("inst");
    let out = bin()
        .args([
            "generate",
            "-n",
            "10",
            "-m",
            "3",
            "--taxonomy",
            &data("taxonomy.csv"),
            "--student-pool",
            &data("students.csv"),
            "--supervisor-pool",
            &data("supervisors.csv"),
            "--seed",
            "5",
            "--out-dir",
            inst_dir.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let cfg = work.path().join("run.cfg");
    std::fs::write(&cfg, "pop_max = 8\nit_max = 10\npatience = 10\n").unwrap();
    let run_dir = work.path().join("run");
    let out = bin()
        .args([
            "solve",
            "--instance",
            inst_dir.join("instance.cfg").to_str().unwrap(),
            "--config",
            cfg.to_str().unwrap(),
            "--seed",
            "3",
            "--out-dir",
            run_dir.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(run_dir.join("frontier.csv").exists());
    assert!(run_dir.join("run.csv").exists());
    assert!(run_dir.join("config_echo.cfg").exists());
}

#[test]
fn missing_taxonomy_is_a_named_error_with_exit_one() {
    let work = tempfile::tempdir().unwrap();
    let out = bin()
        .args([
            "generate",
            "-n",
            "5",
            "-m",
            "2",
            "--taxonomy",
            work.path().join("nope.csv").to_str().unwrap(),
            "--student-pool",
            &data("students.csv"),
            "--supervisor-pool",
            &data("supervisors.csv"),
            "--seed",
            "1",
            "--out-dir",
            work.path().join("o").to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("nope.csv"), "stderr: {stderr}");
}

#[test]
fn oracle_budget_exceeded_exits_two() {
    let work = tempfile::tempdir().unwrap();
    let inst_dir = work.path().join("inst");
    assert!(bin()
        .args([
            "generate",
            "-n",
            "30",
            "-m",
            "8",
            "--surplus",
            "10",
            "--taxonomy",
            &data("taxonomy.csv"),
            "--student-pool",
            &data("students.csv"),
            "--supervisor-pool",
            &data("supervisors.csv"),
            "--seed",
            "2",
            "--out-dir",
            inst_dir.to_str().unwrap(),
        ])
        .status()
        .unwrap()
        .success());
    // 8^30 far exceeds any sane budget
    let out = bin()
        .args([
            "oracle",
            "--instance",
            inst_dir.join("instance.cfg").to_str().unwrap(),
            "--enum-budget",
            "1000000",
            "--out-dir",
            work.path().join("o").to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("budget"), "stderr: {stderr}");
}

#[test]
fn invalid_instance_document_reports_line() {
    let work = tempfile::tempdir().unwrap();
    let bad = work.path().join("instance.cfg");
    std::fs::write(&bad, "taxonomy = t.csv\nstudents broken line\n").unwrap();
    let out = bin()
        .args([
            "solve",
            "--instance",
            bad.to_str().unwrap(),
            "--out-dir",
            work.path().join("o").to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains(":2:"), "no line diagnostic in: {stderr}");
}

#[test]
fn solve_seed_seven_twice_is_byte_identical() {
    let work = tempfile::tempdir().unwrap();
    let inst_dir = work.path().join("inst");
    assert!(bin()
        .args([
            "generate",
            "-n",
            "12",
            "-m",
            "4",
            "--taxonomy",
            &data("taxonomy.csv"),
            "--student-pool",
            &data("students.csv"),
            "--supervisor-pool",
            &data("supervisors.csv"),
            "--seed",
            "9",
            "--out-dir",
            inst_dir.to_str().unwrap(),
        ])
        .status()
        .unwrap()
        .success());
    let cfg = work.path().join("run.cfg");
    std::fs::write(&cfg, "pop_max = 8\nit_max = 12\npatience = 12\n").unwrap();
    let run = |dir: &Path| {
        assert!(bin()
            .args([
                "solve",
                "--instance",
                inst_dir.join("instance.cfg").to_str().unwrap(),
                "--config",
                cfg.to_str().unwrap(),
                "--seed",
                "7",
                "--out-dir",
                dir.to_str().unwrap(),
            ])
            .status()
            .unwrap()
            .success());
    };
    let a = work.path().join("a");
    let b = work.path().join("b");
    run(&a);
    run(&b);
    let frontier_a = std::fs::read(a.join("frontier.csv")).unwrap();
    let frontier_b = std::fs::read(b.join("frontier.csv")).unwrap();
    assert_eq!(frontier_a, frontier_b);
}
