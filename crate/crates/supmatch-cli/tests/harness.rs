//! Library-level checks of the experiment harness: consistency between
//! subcommand aggregates, report shapes, and optimality bounds.

use std::path::{Path, PathBuf};

use supmatch_cli::files::FrontierReport;
use supmatch_cli::grid::{run_grid, Range};
use supmatch_cli::{bench, compare, generate, solve};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn generate_instance(dir: &Path, n: usize, m: usize, seed: u64) -> PathBuf {
    generate::run_generate(
        n,
        m,
        20.0,
        seed,
        &data("taxonomy.csv"),
        &data("students.csv"),
        &data("supervisors.csv"),
        None,
        2.0,
        dir,
    )
    .unwrap();
    dir.join("instance.cfg")
}

#[test]
fn single_cell_grid_equals_the_solve_aggregate() {
    let work = tempfile::tempdir().unwrap();
    let instance = generate_instance(&work.path().join("inst"), 10, 3, 11);
    let cfg_path = work.path().join("run.cfg");
    std::fs::write(
        &cfg_path,
        "pop_max = 8\nit_max = 15\npatience = 15\np_mt = 0.2\np_sw = 0.3\n",
    )
    .unwrap();

    let outcome = run_grid(
        std::slice::from_ref(&instance),
        Some(&cfg_path),
        Range::parse("0.2:0.2:0.1").unwrap(),
        Range::parse("0.3:0.3:0.1").unwrap(),
        &[7],
        1,
        &work.path().join("grid"),
    )
    .unwrap();
    assert_eq!(outcome.cells.len(), 1);

    let run = solve::run_solve(&instance, Some(&cfg_path), Some(7), &work.path().join("solve"))
        .unwrap();
    assert_eq!(outcome.cells[0].mean_s_metric, run.s_metric);
}

#[test]
fn grid_results_do_not_depend_on_the_thread_count() {
    let work = tempfile::tempdir().unwrap();
    let instance = generate_instance(&work.path().join("inst"), 8, 3, 17);
    let cfg_path = work.path().join("run.cfg");
    std::fs::write(&cfg_path, "pop_max = 8\nit_max = 8\npatience = 8\n").unwrap();
    let run = |threads: usize, dir: &str| {
        run_grid(
            std::slice::from_ref(&instance),
            Some(&cfg_path),
            Range::parse("0.1:0.2:0.1").unwrap(),
            Range::parse("0.2:0.4:0.2").unwrap(),
            &[1, 2],
            threads,
            &work.path().join(dir),
        )
        .unwrap()
    };
    let serial = run(1, "serial");
    let parallel = run(3, "parallel");
    assert_eq!(serial.cells, parallel.cells);
    assert_eq!(
        std::fs::read(work.path().join("serial/grid.csv")).unwrap(),
        std::fs::read(work.path().join("parallel/grid.csv")).unwrap()
    );
}

#[test]
fn ratio_report_covers_three_series_per_size() {
    let rows = bench::ratio_sweep(&[50, 100], &[8, 10, 12], 20, 3, 1);
    assert_eq!(rows.len(), 3 * 2);
    for denom in [8, 10, 12] {
        assert_eq!(rows.iter().filter(|r| r.denom == denom).count(), 2);
    }
    for row in &rows {
        assert!((0.0..=1.0).contains(&row.mean_ratio));
    }
}

#[test]
fn compare_never_exceeds_the_oracle() {
    let work = tempfile::tempdir().unwrap();
    let instance = generate_instance(&work.path().join("inst"), 6, 3, 13);
    let cfg_path = work.path().join("run.cfg");
    std::fs::write(&cfg_path, "pop_max = 16\nit_max = 60\npatience = 10\n").unwrap();
    let outcome = compare::run_compare(
        &instance,
        Some(&cfg_path),
        Some(5),
        1e7,
        &work.path().join("cmp"),
    )
    .unwrap();
    assert!(outcome.optimality_students() <= 1.0 + 1e-12);
    assert!(outcome.optimality_supervisors() <= 1.0 + 1e-12);
    assert!(outcome.optimality_students() > 0.5);
    assert!(outcome.ga_s_metric >= outcome.exact_s_metric - 1e-12);
    // the exact frontier report is flagged and parses back
    let exact = FrontierReport::parse(
        &std::fs::read_to_string(work.path().join("cmp/exact_frontier.csv")).unwrap(),
        "exact_frontier.csv",
    )
    .unwrap();
    assert!(exact.exact);
    assert!(!exact.entries.is_empty());
}

#[test]
fn forced_instance_compares_at_exactly_100_percent() {
    // a single supervisor with tight quotas admits exactly one matching
    let work = tempfile::tempdir().unwrap();
    let dir = work.path().join("inst");
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::copy(data("taxonomy.csv"), dir.join("taxonomy.csv")).unwrap();
    std::fs::write(
        dir.join("students.csv"),
        "a,machine_learning,deep_learning,computer_vision,databases,devops\n\
         b,databases,query_optimization,data_mining,clustering,devops\n\
         c,cryptography,network_security,software_security,devops,databases\n",
    )
    .unwrap();
    std::fs::write(
        dir.join("supervisors.csv"),
        "r,machine_learning,databases,cryptography,devops,clustering\n",
    )
    .unwrap();
    std::fs::write(dir.join("quotas.csv"), "r,3,3\n").unwrap();
    std::fs::write(
        dir.join("instance.cfg"),
        "taxonomy = taxonomy.csv\nstudents = students.csv\nsupervisors = supervisors.csv\n\
         quotas = quotas.csv\nweights = 0.561,0.258,0.129,0.064,0.032\nalpha = 2\n",
    )
    .unwrap();
    let cfg_path = work.path().join("run.cfg");
    std::fs::write(&cfg_path, "pop_max = 4\nit_max = 5\npatience = 5\n").unwrap();
    let outcome = compare::run_compare(
        &dir.join("instance.cfg"),
        Some(&cfg_path),
        Some(1),
        1e7,
        &work.path().join("cmp"),
    )
    .unwrap();
    assert_eq!(outcome.optimality_students(), 1.0);
    assert_eq!(outcome.optimality_supervisors(), 1.0);
    assert_eq!(outcome.ga_s_metric, outcome.exact_s_metric);
}
