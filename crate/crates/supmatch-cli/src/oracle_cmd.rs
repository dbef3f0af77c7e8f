//! Exact frontier extraction via exhaustive enumeration.

use std::path::{Path, PathBuf};

use supmatch::error::Result;
use supmatch::oracle::{assignment_space, exact_pareto_frontier};
use supmatch::preferences::EvaluationMatrices;

use crate::files::{load_instance, RunConfigFile};
use crate::solve::write_frontier;

pub struct OracleOutcome {
    pub space: f64,
    pub frontier_size: usize,
    pub s_metric: f64,
    pub frontier_path: PathBuf,
}

pub fn run_oracle(
    instance_path: &Path,
    enum_budget: f64,
    out_dir: &Path,
    progress: &mut dyn FnMut(f64, f64),
) -> Result<OracleOutcome> {
    let instance = load_instance(instance_path)?;
    let space = assignment_space(&instance);
    progress(space, enum_budget);
    let matrices = EvaluationMatrices::for_instance(&instance);
    let frontier = exact_pareto_frontier(&instance, &matrices, enum_budget)?;
    std::fs::create_dir_all(out_dir).map_err(|source| supmatch::Error::File {
        path: out_dir.display().to_string(),
        source,
    })?;
    let file_cfg = RunConfigFile::default();
    let frontier_path = write_frontier(out_dir, "frontier", &instance, &frontier, true, &file_cfg)?;
    Ok(OracleOutcome {
        space,
        s_metric: frontier
            .s_metric(supmatch::ReferencePoint::default())
            .unwrap_or(f64::NAN),
        frontier_size: frontier.len(),
        frontier_path,
    })
}
