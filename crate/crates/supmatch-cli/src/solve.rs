//! The solve run: evolve one instance and write its reports.

use std::fs;
use std::path::{Path, PathBuf};

use supmatch::engine::{evolve, EvolveResult};
use supmatch::error::{Error, Result};
use supmatch::{Frontier, ProblemInstance};

use crate::files::{
    emit_matching, load_instance, write_file, FrontierEntry, FrontierReport, RunConfigFile,
};

/// Outcome of one solve run: what was written and the headline numbers.
pub struct SolveOutcome {
    pub seed: u64,
    pub iterations: usize,
    pub s_metric: f64,
    pub frontier_size: usize,
    pub frontier_path: PathBuf,
    pub run_report_path: PathBuf,
}

pub fn run_solve(
    instance_path: &Path,
    config_path: Option<&Path>,
    seed_flag: Option<u64>,
    out_dir: &Path,
) -> Result<SolveOutcome> {
    let instance = load_instance(instance_path)?;
    let file_cfg = match config_path {
        Some(p) => RunConfigFile::load(p)?,
        None => RunConfigFile::default(),
    };
    let seed = seed_flag.or(file_cfg.seed).unwrap_or_else(rand::random);
    let (instance, ga) = file_cfg.resolve(instance, seed)?;
    let result = evolve(&instance, &ga)?;
    let frontier = result.frontier();

    fs::create_dir_all(out_dir).map_err(|source| Error::File {
        path: out_dir.display().to_string(),
        source,
    })?;
    let frontier_path =
        write_run_outputs(out_dir, &instance, &file_cfg, seed, &result, &frontier)?;
    Ok(SolveOutcome {
        seed,
        iterations: result.trace.len(),
        s_metric: result.trace.last().expect("trace is nonempty").s_metric,
        frontier_size: frontier.len(),
        frontier_path,
        run_report_path: out_dir.join("run.csv"),
    })
}

/// Writes run.csv, the frontier report with one matching file per
/// point, and the configuration echo. Returns the frontier path.
pub fn write_run_outputs(
    out_dir: &Path,
    instance: &ProblemInstance,
    file_cfg: &RunConfigFile,
    seed: u64,
    result: &EvolveResult,
    frontier: &Frontier,
) -> Result<PathBuf> {
    let mut run = String::from("iteration,s_metric,best_f_students,best_f_supervisors,frontier_size\n");
    for r in &result.trace {
        run.push_str(&format!(
            "{},{},{},{},{}\n",
            r.iteration, r.s_metric, r.best_students, r.best_supervisors, r.frontier_size
        ));
    }
    write_file(&out_dir.join("run.csv"), &run)?;

    let frontier_path = write_frontier(out_dir, "frontier", instance, frontier, false, file_cfg)?;
    write_file(
        &out_dir.join("config_echo.cfg"),
        &file_cfg.echo(instance, seed).emit(),
    )?;
    Ok(frontier_path)
}

/// Writes a frontier report plus one matching file per entry; file
/// names are derived from `stem`.
pub fn write_frontier(
    out_dir: &Path,
    stem: &str,
    instance: &ProblemInstance,
    frontier: &Frontier,
    exact: bool,
    file_cfg: &RunConfigFile,
) -> Result<PathBuf> {
    let mut entries = Vec::with_capacity(frontier.len());
    for (idx, (pair, matching)) in frontier.entries().iter().enumerate() {
        let name = format!("{stem}_m{idx:03}.csv");
        write_file(&out_dir.join(&name), &emit_matching(matching, instance))?;
        entries.push(FrontierEntry {
            f_students: pair.students,
            f_supervisors: pair.supervisors,
            matching_file: name,
        });
    }
    let report = FrontierReport {
        s_metric: frontier.s_metric(supmatch::ReferencePoint {
            x: file_cfg.ref_x,
            y: file_cfg.ref_y,
        })?,
        ref_x: file_cfg.ref_x,
        ref_y: file_cfg.ref_y,
        exact,
        entries,
    };
    let path = out_dir.join(format!("{stem}.csv"));
    write_file(&path, &report.emit())?;
    Ok(path)
}
