//! Instance generation from preference pools.

use std::path::{Path, PathBuf};

use supmatch::error::Result;
use supmatch::generator::{generate_instance, GenerateParams};
use supmatch::rng::substream;
use supmatch::TopicTree;

use crate::files::{parse_preference_pool, read_to_string, write_instance_bundle};

pub struct GenerateOutcome {
    pub instance_path: PathBuf,
    pub warnings: Vec<String>,
    pub capacity_total: u32,
}

#[allow(clippy::too_many_arguments)]
pub fn run_generate(
    n: usize,
    m: usize,
    surplus_percent: f64,
    seed: u64,
    taxonomy_path: &Path,
    student_pool_path: &Path,
    supervisor_pool_path: &Path,
    weights: Option<Vec<f64>>,
    alpha: f64,
    out_dir: &Path,
) -> Result<GenerateOutcome> {
    let tree = TopicTree::parse_named(
        &read_to_string(taxonomy_path)?,
        &taxonomy_path.display().to_string(),
    )?;
    let students = parse_preference_pool(
        &read_to_string(student_pool_path)?,
        &student_pool_path.display().to_string(),
    )?;
    let supervisors = parse_preference_pool(
        &read_to_string(supervisor_pool_path)?,
        &supervisor_pool_path.display().to_string(),
    )?;
    let params = GenerateParams {
        n,
        m,
        surplus_percent,
        weights: weights.unwrap_or_else(|| GenerateParams::default().weights),
        alpha,
    };
    let mut rng = substream(seed, 7);
    let generated = generate_instance(&params, &tree, &students, &supervisors, &mut rng)?;
    let instance_path = write_instance_bundle(out_dir, &generated.instance)?;
    Ok(GenerateOutcome {
        instance_path,
        warnings: generated.warnings,
        capacity_total: generated.instance.c_max().iter().sum(),
    })
}
