//! Mutation parameter grid search.
//!
//! Runs every (p_mt, p_sw) cell over a set of instances and seeds and
//! reports per-cell means of the frontier indicator and the best
//! fitness per objective. A seed produces the same initialization
//! stream in every cell, so configurations compete from identical
//! starting populations. Cells are independent; with more than one
//! thread they run in parallel and the report is still written in a
//! fixed order.

use std::path::{Path, PathBuf};

use rayon::prelude::*;

use supmatch::engine::evolve_with;
use supmatch::error::Result;
use supmatch::preferences::EvaluationMatrices;
use supmatch::ProblemInstance;

use crate::files::{load_instance, write_file, RunConfigFile};

/// Inclusive numeric range `start:end:step`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub start: f64,
    pub end: f64,
    pub step: f64,
}

impl Range {
    pub fn parse(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected `start:end:step`, got `{s}`"));
        }
        let nums: Vec<f64> = parts
            .iter()
            .map(|p| p.trim().parse().map_err(|_| format!("invalid number `{p}`")))
            .collect::<std::result::Result<_, String>>()?;
        if nums[2] <= 0.0 {
            return Err("step must be positive".into());
        }
        Ok(Range {
            start: nums[0],
            end: nums[1],
            step: nums[2],
        })
    }

    pub fn values(&self) -> Vec<f64> {
        let count = ((self.end - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..count)
            .map(|i| {
                // keep printed values tidy: grid coordinates are exact
                // multiples of the step to within rounding
                let v = self.start + i as f64 * self.step;
                (v * 1e9).round() / 1e9
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridCell {
    pub p_mt: f64,
    pub p_sw: f64,
    pub mean_s_metric: f64,
    pub mean_best_students: f64,
    pub mean_best_supervisors: f64,
}

pub struct GridOutcome {
    pub cells: Vec<GridCell>,
    pub report_path: PathBuf,
    pub runs_per_cell: usize,
}

pub fn run_grid(
    instance_paths: &[PathBuf],
    config_path: Option<&Path>,
    p_mt_range: Range,
    p_sw_range: Range,
    seeds: &[u64],
    threads: usize,
    out_dir: &Path,
) -> Result<GridOutcome> {
    let base_cfg = match config_path {
        Some(p) => RunConfigFile::load(p)?,
        None => RunConfigFile::default(),
    };
    let instances: Vec<ProblemInstance> = instance_paths
        .iter()
        .map(|p| load_instance(p))
        .collect::<Result<_>>()?;
    if instances.is_empty() {
        return Err(supmatch::Error::InvalidConfig(
            "grid needs at least one instance".into(),
        ));
    }
    if seeds.is_empty() {
        return Err(supmatch::Error::InvalidConfig(
            "grid needs at least one seed".into(),
        ));
    }

    // Matrices depend only on the instance (and weight overrides), so
    // build them once and share them across all cells.
    let prepared: Vec<(ProblemInstance, EvaluationMatrices)> = instances
        .into_iter()
        .map(|inst| {
            let (inst, _) = base_cfg.resolve(inst, 0)?;
            let mats = EvaluationMatrices::for_instance(&inst);
            Ok((inst, mats))
        })
        .collect::<Result<_>>()?;

    let mut coords = Vec::new();
    for &p_mt in &p_mt_range.values() {
        for &p_sw in &p_sw_range.values() {
            coords.push((p_mt, p_sw));
        }
    }

    let evaluate_cell = |&(p_mt, p_sw): &(f64, f64)| -> Result<GridCell> {
        let mut s_sum = 0.0;
        let mut stu_sum = 0.0;
        let mut sup_sum = 0.0;
        let mut runs = 0usize;
        for (inst, mats) in &prepared {
            for &seed in seeds {
                let cell_cfg = RunConfigFile {
                    p_mt,
                    p_sw,
                    ..base_cfg.clone()
                };
                let (_, ga) = cell_cfg.resolve(inst.clone(), seed)?;
                let result = evolve_with(inst, mats, &ga)?;
                let last = result.trace.last().expect("trace is nonempty");
                s_sum += last.s_metric;
                stu_sum += last.best_students;
                sup_sum += last.best_supervisors;
                runs += 1;
            }
        }
        Ok(GridCell {
            p_mt,
            p_sw,
            mean_s_metric: s_sum / runs as f64,
            mean_best_students: stu_sum / runs as f64,
            mean_best_supervisors: sup_sum / runs as f64,
        })
    };

    let cells: Vec<GridCell> = if threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| supmatch::Error::InvalidConfig(format!("thread pool: {e}")))?;
        pool.install(|| coords.par_iter().map(evaluate_cell).collect::<Result<_>>())?
    } else {
        coords.iter().map(evaluate_cell).collect::<Result<_>>()?
    };

    std::fs::create_dir_all(out_dir).map_err(|source| supmatch::Error::File {
        path: out_dir.display().to_string(),
        source,
    })?;
    let mut report = String::from("p_mt,p_sw,metric,value\n");
    for cell in &cells {
        report.push_str(&format!(
            "{},{},s_metric,{}\n",
            cell.p_mt, cell.p_sw, cell.mean_s_metric
        ));
        report.push_str(&format!(
            "{},{},best_f_students,{}\n",
            cell.p_mt, cell.p_sw, cell.mean_best_students
        ));
        report.push_str(&format!(
            "{},{},best_f_supervisors,{}\n",
            cell.p_mt, cell.p_sw, cell.mean_best_supervisors
        ));
    }
    let report_path = out_dir.join("grid.csv");
    write_file(&report_path, &report)?;
    Ok(GridOutcome {
        runs_per_cell: prepared.len() * seeds.len(),
        cells,
        report_path,
    })
}
