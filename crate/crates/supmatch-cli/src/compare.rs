//! Optimality comparison: a GA run against the exhaustive oracle.

use std::path::{Path, PathBuf};

use supmatch::engine::evolve_with;
use supmatch::error::Result;
use supmatch::oracle::{exact_best, exact_pareto_frontier, ObjectiveKind};
use supmatch::preferences::EvaluationMatrices;
use supmatch::ReferencePoint;

use crate::files::{load_instance, write_file, RunConfigFile};
use crate::solve::write_frontier;

pub struct CompareOutcome {
    pub ga_best_students: f64,
    pub exact_best_students: f64,
    pub ga_best_supervisors: f64,
    pub exact_best_supervisors: f64,
    pub ga_s_metric: f64,
    pub exact_s_metric: f64,
    pub report_path: PathBuf,
}

impl CompareOutcome {
    pub fn optimality_students(&self) -> f64 {
        self.ga_best_students / self.exact_best_students
    }

    pub fn optimality_supervisors(&self) -> f64 {
        self.ga_best_supervisors / self.exact_best_supervisors
    }
}

pub fn run_compare(
    instance_path: &Path,
    config_path: Option<&Path>,
    seed_flag: Option<u64>,
    enum_budget: f64,
    out_dir: &Path,
) -> Result<CompareOutcome> {
    let instance = load_instance(instance_path)?;
    let file_cfg = match config_path {
        Some(p) => RunConfigFile::load(p)?,
        None => RunConfigFile::default(),
    };
    let seed = seed_flag.or(file_cfg.seed).unwrap_or_else(rand::random);
    let (instance, ga) = file_cfg.resolve(instance, seed)?;
    let matrices = EvaluationMatrices::for_instance(&instance);

    let result = evolve_with(&instance, &matrices, &ga)?;
    let ga_frontier = result.frontier();
    let last = result.trace.last().expect("trace is nonempty");

    let (exact_students, _) =
        exact_best(&instance, &matrices, ObjectiveKind::Students, enum_budget)?;
    let (exact_supervisors, _) =
        exact_best(&instance, &matrices, ObjectiveKind::Supervisors, enum_budget)?;
    let exact_frontier = exact_pareto_frontier(&instance, &matrices, enum_budget)?;
    let reference = ReferencePoint {
        x: file_cfg.ref_x,
        y: file_cfg.ref_y,
    };
    let exact_s = exact_frontier.s_metric(reference)?;

    std::fs::create_dir_all(out_dir).map_err(|source| supmatch::Error::File {
        path: out_dir.display().to_string(),
        source,
    })?;
    write_frontier(out_dir, "ga_frontier", &instance, &ga_frontier, false, &file_cfg)?;
    write_frontier(out_dir, "exact_frontier", &instance, &exact_frontier, true, &file_cfg)?;

    let outcome = CompareOutcome {
        ga_best_students: last.best_students,
        exact_best_students: exact_students,
        ga_best_supervisors: last.best_supervisors,
        exact_best_supervisors: exact_supervisors,
        ga_s_metric: last.s_metric,
        exact_s_metric: exact_s,
        report_path: out_dir.join("compare.txt"),
    };
    let report = format!(
        "seed = {seed}\n\
         ga_best_students = {}\n\
         exact_best_students = {}\n\
         optimality_students = {}\n\
         ga_best_supervisors = {}\n\
         exact_best_supervisors = {}\n\
         optimality_supervisors = {}\n\
         ga_s_metric = {}\n\
         exact_s_metric = {}\n",
        outcome.ga_best_students,
        outcome.exact_best_students,
        outcome.optimality_students(),
        outcome.ga_best_supervisors,
        outcome.exact_best_supervisors,
        outcome.optimality_supervisors(),
        outcome.ga_s_metric,
        outcome.exact_s_metric,
    );
    write_file(&outcome.report_path, &report)?;
    Ok(outcome)
}
