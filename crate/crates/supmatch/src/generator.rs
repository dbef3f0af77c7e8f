//! Instance generation: sampling participants from preference pools and
//! drawing supervision capacities with a guaranteed capacity surplus.

use rand::seq::index;
use rand::Rng;

use crate::error::{Error, Result};
use crate::instance::ProblemInstance;
use crate::preferences::{RankWeights, RankedPreference, DEFAULT_RANK_WEIGHTS};
use crate::taxonomy::TopicTree;

/// One pool record: a participant id and its ranked topic names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoolEntry {
    pub id: String,
    pub topics: Vec<String>,
}

/// Parameters for [`generate_instance`].
#[derive(Debug, Clone)]
pub struct GenerateParams {
    pub n: usize,
    pub m: usize,
    /// Percentage by which the total capacity must exceed n.
    pub surplus_percent: f64,
    pub weights: Vec<f64>,
    pub alpha: f64,
}

impl Default for GenerateParams {
    fn default() -> Self {
        GenerateParams {
            n: 150,
            m: 30,
            surplus_percent: 20.0,
            weights: DEFAULT_RANK_WEIGHTS.to_vec(),
            alpha: 2.0,
        }
    }
}

/// A generated instance plus any sampling warnings (for the caller to
/// surface; the library never prints).
#[derive(Debug, Clone)]
pub struct Generated {
    pub instance: ProblemInstance,
    pub warnings: Vec<String>,
}

const MAX_CAPACITY_REDRAWS: u32 = 100_000;

/// Draws per-supervisor upper quotas i.i.d. from the integer uniform
/// distribution on [4, 10], redrawing the whole vector until the total
/// clears `n * (1 + surplus/100)`. Errors when the surplus is impossible
/// (`10 m` below the requirement) and when attainable-but-extreme
/// thresholds exhaust the redraw budget.
pub fn draw_capacities_uniform(
    n: usize,
    m: usize,
    surplus_percent: f64,
    rng: &mut impl Rng,
) -> Result<Vec<u32>> {
    let required = n as f64 * (100.0 + surplus_percent);
    if ((10 * m * 100) as f64) < required {
        return Err(Error::ImpossibleSurplus {
            max_total: 10 * m as u64,
            required: required / 100.0,
        });
    }
    for _ in 0..MAX_CAPACITY_REDRAWS {
        let draw: Vec<u32> = (0..m).map(|_| rng.random_range(4..=10)).collect();
        let total: u64 = draw.iter().map(|&c| c as u64).sum();
        if (total * 100) as f64 >= required {
            return Ok(draw);
        }
    }
    Err(Error::CapacityRedrawExhausted {
        attempts: MAX_CAPACITY_REDRAWS,
    })
}

/// Capacity draw for benchmark instances: a 7-wide integer window like
/// [4, 10], but shifted upward when supervisors are so scarce that the
/// plain window cannot reach the surplus (the expected total clears the
/// threshold with 5% headroom, so the wholesale redraw terminates fast).
pub fn draw_capacities_windowed(
    n: usize,
    m: usize,
    surplus_percent: f64,
    rng: &mut impl Rng,
) -> Vec<u32> {
    let required = n as f64 * (100.0 + surplus_percent);
    let needed_mean = 1.05 * required / (100.0 * m as f64);
    let lo = 4f64.max((needed_mean - 3.0).ceil()) as u32;
    let hi = lo + 6;
    loop {
        let draw: Vec<u32> = (0..m).map(|_| rng.random_range(lo..=hi)).collect();
        let total: u64 = draw.iter().map(|&c| c as u64).sum();
        if (total * 100) as f64 >= required {
            return draw;
        }
    }
}

/// Samples `count` entries from a pool: without replacement when the
/// pool suffices, with replacement (and a warning) otherwise. Duplicate
/// picks get a `~k` suffix so instance ids stay unique.
fn sample_entries(
    pool: &[PoolEntry],
    count: usize,
    what: &str,
    rng: &mut impl Rng,
    warnings: &mut Vec<String>,
) -> Vec<PoolEntry> {
    if pool.len() >= count {
        let mut picks: Vec<usize> = index::sample(rng, pool.len(), count).into_vec();
        picks.sort_unstable();
        picks.into_iter().map(|i| pool[i].clone()).collect()
    } else {
        warnings.push(format!(
            "{what} pool has {} entries, sampling {count} with replacement",
            pool.len()
        ));
        let mut seen: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
        (0..count)
            .map(|_| {
                let i = rng.random_range(0..pool.len());
                let mut entry = pool[i].clone();
                let occurrence = seen.entry(i).or_insert(0);
                *occurrence += 1;
                if *occurrence > 1 {
                    entry.id = format!("{}~{}", entry.id, occurrence);
                }
                entry
            })
            .collect()
    }
}

/// Builds a problem instance from preference pools: samples n student
/// and m supervisor profiles, sets every lower quota to one student and
/// draws upper quotas from U(4, 10) until their sum exceeds n by the
/// requested surplus.
pub fn generate_instance(
    params: &GenerateParams,
    tree: &TopicTree,
    student_pool: &[PoolEntry],
    supervisor_pool: &[PoolEntry],
    rng: &mut impl Rng,
) -> Result<Generated> {
    if student_pool.is_empty() || supervisor_pool.is_empty() {
        return Err(Error::InvalidInstance("empty preference pool".into()));
    }
    let mut warnings = Vec::new();
    let students = sample_entries(student_pool, params.n, "student", rng, &mut warnings);
    let supervisors = sample_entries(supervisor_pool, params.m, "supervisor", rng, &mut warnings);
    let c_max = draw_capacities_uniform(params.n, params.m, params.surplus_percent, rng)?;
    let weights = RankWeights::new(params.weights.clone())?;
    build_instance(
        students,
        supervisors,
        vec![1; params.m],
        c_max,
        weights,
        params.alpha,
        tree.clone(),
    )
    .map(|instance| Generated { instance, warnings })
}

fn build_instance(
    students: Vec<PoolEntry>,
    supervisors: Vec<PoolEntry>,
    c_min: Vec<u32>,
    c_max: Vec<u32>,
    weights: RankWeights,
    alpha: f64,
    tree: TopicTree,
) -> Result<ProblemInstance> {
    let mut student_ids = Vec::with_capacity(students.len());
    let mut student_prefs = Vec::with_capacity(students.len());
    for e in students {
        student_prefs.push(RankedPreference::from_names(&e.topics, &tree)?);
        student_ids.push(e.id);
    }
    let mut supervisor_ids = Vec::with_capacity(supervisors.len());
    let mut supervisor_prefs = Vec::with_capacity(supervisors.len());
    for e in supervisors {
        supervisor_prefs.push(RankedPreference::from_names(&e.topics, &tree)?);
        supervisor_ids.push(e.id);
    }
    ProblemInstance::new(
        student_ids,
        supervisor_ids,
        student_prefs,
        supervisor_prefs,
        c_min,
        c_max,
        weights,
        alpha,
        tree,
    )
}

/// A fixed three-level computing taxonomy used by benchmarks and tests.
pub fn synthetic_taxonomy() -> TopicTree {
    const EDGES: &[(&str, &str)] = &[
        ("theory", "computing"),
        ("algorithms", "theory"),
        ("graph_algorithms", "algorithms"),
        ("approximation_algorithms", "algorithms"),
        ("complexity", "theory"),
        ("formal_methods", "theory"),
        ("artificial_intelligence", "computing"),
        ("machine_learning", "artificial_intelligence"),
        ("deep_learning", "machine_learning"),
        ("reinforcement_learning", "machine_learning"),
        ("computer_vision", "artificial_intelligence"),
        ("object_recognition", "computer_vision"),
        ("natural_language_processing", "artificial_intelligence"),
        ("machine_translation", "natural_language_processing"),
        ("multi_agent_systems", "artificial_intelligence"),
        ("software_engineering", "computing"),
        ("software_testing", "software_engineering"),
        ("requirements", "software_engineering"),
        ("devops", "software_engineering"),
        ("data_management", "computing"),
        ("databases", "data_management"),
        ("query_optimization", "databases"),
        ("data_mining", "data_management"),
        ("recommender_systems", "data_mining"),
        ("information_retrieval", "data_management"),
        ("systems", "computing"),
        ("operating_systems", "systems"),
        ("distributed_systems", "systems"),
        ("cloud_computing", "systems"),
        ("networks", "systems"),
        ("security", "computing"),
        ("cryptography", "security"),
        ("network_security", "security"),
        ("hci", "computing"),
        ("visualization", "hci"),
        ("accessibility", "hci"),
        ("graphics", "computing"),
        ("rendering", "graphics"),
        ("virtual_reality", "graphics"),
    ];
    let mut records: Vec<(&str, Option<&str>)> = vec![("computing", None)];
    records.extend(EDGES.iter().map(|&(c, p)| (c, Some(p))));
    TopicTree::from_edges(records).expect("the built-in taxonomy is valid")
}

/// Random preference pool over a taxonomy: each entry ranks k distinct
/// non-root topics drawn uniformly.
pub fn synthetic_pool(
    tree: &TopicTree,
    count: usize,
    k: usize,
    prefix: &str,
    rng: &mut impl Rng,
) -> Vec<PoolEntry> {
    let names: Vec<&str> = tree
        .topics()
        .filter(|&t| t != tree.root())
        .map(|t| tree.name(t))
        .collect();
    assert!(k <= names.len(), "taxonomy too small for k = {k}");
    (0..count)
        .map(|i| {
            let picks = index::sample(rng, names.len(), k);
            PoolEntry {
                id: format!("{prefix}{i:03}"),
                topics: picks.into_iter().map(|p| names[p].to_string()).collect(),
            }
        })
        .collect()
}

/// A self-contained random instance for operator benchmarks: synthetic
/// pools over the built-in taxonomy, unit lower quotas and windowed
/// upper quotas targeting a 20% capacity surplus.
pub fn bench_instance(n: usize, m: usize, k: usize, rng: &mut impl Rng) -> ProblemInstance {
    let tree = synthetic_taxonomy();
    let students = synthetic_pool(&tree, n, k, "s", rng);
    let supervisors = synthetic_pool(&tree, m, k, "r", rng);
    let c_max = draw_capacities_windowed(n, m, 20.0, rng);
    let weights = RankWeights::new(DEFAULT_RANK_WEIGHTS[..k].to_vec()).expect("prefix is valid");
    build_instance(
        students,
        supervisors,
        vec![1; m],
        c_max,
        weights,
        2.0,
        tree,
    )
    .expect("windowed capacities always admit a feasible instance")
}
