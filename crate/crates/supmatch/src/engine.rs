//! The evolutionary loop: nondominated sorting, crowding distance,
//! binary tournaments and an elitist generation schema.
//!
//! Each generation pools the survivors with the previous offspring,
//! partitions the pool into successive Pareto frontiers, refills the
//! survivor set frontier by frontier (truncating the last admitted
//! frontier by descending crowding distance), and then produces one
//! mutant per survivor plus one crossover child per tournament-selected
//! pair. The run stops at the iteration cap or once the first
//! frontier's quality indicator has stalled for a configured number of
//! iterations.

use rand::Rng;

use crate::error::{Error, Result};
use crate::instance::ProblemInstance;
use crate::matching::Matching;
use crate::objectives::{
    s_metric, student_objective, supervisor_objective, Frontier, ObjectivePair, ReferencePoint,
};
use crate::operators::{
    gsp_crossover, hopcroft_karp_crossover, k_point_crossover, mutate, uniform_crossover,
    MutationParams,
};
use crate::preferences::EvaluationMatrices;
use crate::rng::{purpose, substream};

/// One candidate solution with its cached objectives and NSGA bookkeeping.
#[derive(Debug, Clone)]
pub struct Individual {
    pub matching: Matching,
    pub objectives: ObjectivePair,
    /// Frontier index within the current pool; 0 is nondominated.
    pub rank: usize,
    /// Crowding distance within its frontier; boundaries get infinity.
    pub crowding: f64,
}

/// Which crossover the engine applies to tournament pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossoverKind {
    HopcroftKarp,
    Gsp,
    Uniform,
    KPoint,
    /// No crossover: offspring come from mutation alone.
    None,
}

impl CrossoverKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CrossoverKind::HopcroftKarp => "hopcroft-karp",
            CrossoverKind::Gsp => "gsp",
            CrossoverKind::Uniform => "uniform",
            CrossoverKind::KPoint => "k-point",
            CrossoverKind::None => "none",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "hopcroft-karp" => Ok(CrossoverKind::HopcroftKarp),
            "gsp" => Ok(CrossoverKind::Gsp),
            "uniform" => Ok(CrossoverKind::Uniform),
            "k-point" => Ok(CrossoverKind::KPoint),
            "none" => Ok(CrossoverKind::None),
            other => Err(Error::InvalidConfig(format!(
                "unknown crossover `{other}` (expected hopcroft-karp, gsp, uniform, k-point or none)"
            ))),
        }
    }
}

/// Run parameters for [`evolve`].
#[derive(Debug, Clone, PartialEq)]
pub struct GAConfig {
    pub pop_max: usize,
    pub it_max: usize,
    /// Iterations without indicator improvement before stopping.
    pub patience: usize,
    pub mutation: MutationParams,
    pub crossover: CrossoverKind,
    /// Cut count for the k-point comparator crossover.
    pub k_points: usize,
    /// Balance exponent used by operators and the supervisor objective.
    pub alpha: f64,
    pub reference: ReferencePoint,
    pub seed: u64,
}

impl Default for GAConfig {
    fn default() -> Self {
        GAConfig {
            pop_max: 128,
            it_max: 250,
            patience: 20,
            mutation: MutationParams { p_mt: 0.05, p_sw: 0.2 },
            crossover: CrossoverKind::Gsp,
            k_points: 8,
            alpha: 2.0,
            reference: ReferencePoint::default(),
            seed: 0,
        }
    }
}

impl GAConfig {
    pub fn validate(&self) -> Result<()> {
        if self.pop_max < 2 || !self.pop_max.is_multiple_of(2) {
            return Err(Error::InvalidConfig(
                "pop_max must be an even number of at least 2".into(),
            ));
        }
        if self.it_max < 1 {
            return Err(Error::InvalidConfig("it_max must be at least 1".into()));
        }
        if self.patience < 1 {
            return Err(Error::InvalidConfig("patience must be at least 1".into()));
        }
        for (name, p) in [("p_mt", self.mutation.p_mt), ("p_sw", self.mutation.p_sw)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidConfig(format!("{name} must be in [0, 1]")));
            }
        }
        if self.k_points < 1 {
            return Err(Error::InvalidConfig("k_points must be at least 1".into()));
        }
        if !self.alpha.is_finite() || self.alpha < 0.0 {
            return Err(Error::InvalidConfig(
                "alpha must be finite and nonnegative".into(),
            ));
        }
        if !(self.reference.x > 0.0 && self.reference.y > 0.0) {
            return Err(Error::InvalidConfig(
                "reference point must be strictly positive".into(),
            ));
        }
        Ok(())
    }
}

/// Strict improvements smaller than this do not reset the patience counter.
pub const IMPROVEMENT_EPS: f64 = 1e-12;

/// One row of the per-iteration trace.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord {
    pub iteration: usize,
    pub s_metric: f64,
    pub best_students: f64,
    pub best_supervisors: f64,
    /// Distinct objective pairs on the pool's first frontier.
    pub frontier_size: usize,
}

/// Final population, frontier partition and convergence trace of a run.
#[derive(Debug, Clone)]
pub struct EvolveResult {
    /// Successive frontiers of the final pool; index 0 is nondominated.
    pub fronts: Vec<Vec<Individual>>,
    pub trace: Vec<IterationRecord>,
}

impl EvolveResult {
    /// Deduplicated rank-0 frontier with one matching per objective pair.
    pub fn frontier(&self) -> Frontier {
        Frontier::from_candidates(
            self.fronts
                .first()
                .into_iter()
                .flatten()
                .map(|ind| (ind.objectives, ind.matching.clone())),
        )
    }
}

/// Partitions a population into successive Pareto frontiers and assigns
/// ranks. Returns the index sets frontier by frontier.
pub fn nondominated_sort(population: &mut [Individual]) -> Vec<Vec<usize>> {
    let n = population.len();
    let mut dominated_by: Vec<u32> = vec![0; n];
    let mut dominates: Vec<Vec<u32>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in (i + 1)..n {
            let a = population[i].objectives;
            let b = population[j].objectives;
            if a.dominates(&b) {
                dominates[i].push(j as u32);
                dominated_by[j] += 1;
            } else if b.dominates(&a) {
                dominates[j].push(i as u32);
                dominated_by[i] += 1;
            }
        }
    }
    let mut fronts: Vec<Vec<usize>> = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&i| dominated_by[i] == 0).collect();
    let mut rank = 0;
    while !current.is_empty() {
        for &i in &current {
            population[i].rank = rank;
        }
        let mut next: Vec<usize> = Vec::new();
        for &i in &current {
            for &j in &dominates[i] {
                dominated_by[j as usize] -= 1;
                if dominated_by[j as usize] == 0 {
                    next.push(j as usize);
                }
            }
        }
        next.sort_unstable();
        fronts.push(std::mem::replace(&mut current, next));
        rank += 1;
    }
    fronts
}

/// Assigns crowding distances within one frontier: per objective the
/// boundary individuals get infinity and interior ones accumulate the
/// neighbour gap normalized by the objective's range (a constant
/// objective contributes nothing).
pub fn crowding_distance(population: &mut [Individual], front: &[usize]) {
    for &i in front {
        population[i].crowding = 0.0;
    }
    if front.len() <= 2 {
        for &i in front {
            population[i].crowding = f64::INFINITY;
        }
        return;
    }
    let objectives: [fn(&ObjectivePair) -> f64; 2] =
        [|p| p.students, |p| p.supervisors];
    for get in objectives {
        let mut order: Vec<usize> = front.to_vec();
        order.sort_by(|&a, &b| {
            get(&population[a].objectives)
                .total_cmp(&get(&population[b].objectives))
                .then(a.cmp(&b))
        });
        let lo = get(&population[order[0]].objectives);
        let hi = get(&population[*order.last().expect("front is nonempty")].objectives);
        population[order[0]].crowding = f64::INFINITY;
        population[*order.last().expect("front is nonempty")].crowding = f64::INFINITY;
        let range = hi - lo;
        if range <= 0.0 {
            continue;
        }
        for w in order.windows(3) {
            let (prev, mid, next) = (w[0], w[1], w[2]);
            let gap = (get(&population[next].objectives) - get(&population[prev].objectives))
                / range;
            population[mid].crowding += gap;
        }
    }
}

/// Binary-tournament parent selection: `pairs` ordered pairs, each
/// parent the winner of a two-individual tournament drawn uniformly
/// with replacement. Lower rank wins, then higher crowding, then a coin
/// flip.
pub fn tournament_select(
    population: &[Individual],
    pairs: usize,
    rng: &mut impl Rng,
) -> Vec<(usize, usize)> {
    assert!(population.len() >= 2, "tournament needs at least two individuals");
    let tourney = |rng: &mut dyn rand::RngCore| -> usize {
        let a = rng.random_range(0..population.len());
        let b = rng.random_range(0..population.len());
        let (ra, rb) = (population[a].rank, population[b].rank);
        if ra != rb {
            return if ra < rb { a } else { b };
        }
        let (ca, cb) = (population[a].crowding, population[b].crowding);
        if ca != cb {
            return if ca > cb { a } else { b };
        }
        if rng.random_bool(0.5) {
            a
        } else {
            b
        }
    };
    (0..pairs).map(|_| (tourney(rng), tourney(rng))).collect()
}

/// Runs the evolutionary loop on an instance; matrices are built internally.
pub fn evolve(instance: &ProblemInstance, config: &GAConfig) -> Result<EvolveResult> {
    let matrices = EvaluationMatrices::for_instance(instance);
    evolve_with(instance, &matrices, config)
}

/// Runs the evolutionary loop against precomputed evaluation matrices.
///
/// Single-threaded and bit-reproducible: all draws derive from
/// `config.seed` through fixed-purpose substreams, so two runs with the
/// same inputs yield identical results.
pub fn evolve_with(
    instance: &ProblemInstance,
    matrices: &EvaluationMatrices,
    config: &GAConfig,
) -> Result<EvolveResult> {
    config.validate()?;
    let pop_max = config.pop_max;
    let mut init_rng = substream(config.seed, purpose::INIT);
    let mut mut_rng = substream(config.seed, purpose::MUTATION);
    let mut sel_rng = substream(config.seed, purpose::SELECTION);
    let mut cross_rng = substream(config.seed, purpose::CROSSOVER);

    let assess = |matching: Matching| -> Individual {
        let objectives = ObjectivePair {
            students: student_objective(&matching, matrices),
            supervisors: supervisor_objective(&matching, matrices, config.alpha, instance),
        };
        Individual {
            matching,
            objectives,
            rank: 0,
            crowding: 0.0,
        }
    };

    let mut survivors: Vec<Individual> = (0..pop_max)
        .map(|_| assess(Matching::random_feasible(instance, &mut init_rng)))
        .collect();
    let mut offspring: Vec<Individual> = Vec::new();

    let mut trace: Vec<IterationRecord> = Vec::new();
    let mut best_indicator = f64::INFINITY;
    let mut stalled = 0usize;

    for iteration in 0..config.it_max {
        let mut pool = survivors;
        pool.append(&mut offspring);

        let fronts = nondominated_sort(&mut pool);
        for front in &fronts {
            crowding_distance(&mut pool, front);
        }

        // Refill survivors frontier by frontier; the last admitted
        // frontier is truncated by descending crowding distance.
        let mut selected: Vec<usize> = Vec::with_capacity(pop_max);
        for front in &fronts {
            if selected.len() + front.len() <= pop_max {
                selected.extend_from_slice(front);
                if selected.len() == pop_max {
                    break;
                }
            } else {
                let mut rest = front.clone();
                rest.sort_by(|&a, &b| {
                    pool[b]
                        .crowding
                        .total_cmp(&pool[a].crowding)
                        .then(a.cmp(&b))
                });
                rest.truncate(pop_max - selected.len());
                selected.extend(rest);
                break;
            }
        }

        // Convergence bookkeeping on the pool's first frontier.
        let frontier_points: Vec<ObjectivePair> = {
            let mut f = Vec::new();
            for &i in &fronts[0] {
                if !f.contains(&pool[i].objectives) {
                    f.push(pool[i].objectives);
                }
            }
            f
        };
        let indicator = s_metric(&frontier_points, config.reference)?;
        let best_students = pool
            .iter()
            .map(|ind| ind.objectives.students)
            .fold(f64::NEG_INFINITY, f64::max);
        let best_supervisors = pool
            .iter()
            .map(|ind| ind.objectives.supervisors)
            .fold(f64::NEG_INFINITY, f64::max);
        trace.push(IterationRecord {
            iteration,
            s_metric: indicator,
            best_students,
            best_supervisors,
            frontier_size: frontier_points.len(),
        });
        if indicator < best_indicator - IMPROVEMENT_EPS {
            best_indicator = indicator;
            stalled = 0;
        } else {
            stalled += 1;
        }

        let last_iteration = iteration + 1 == config.it_max || stalled >= config.patience;
        if last_iteration {
            let fronts_out = fronts
                .iter()
                .map(|front| front.iter().map(|&i| pool[i].clone()).collect())
                .collect();
            return Ok(EvolveResult {
                fronts: fronts_out,
                trace,
            });
        }

        survivors = selected.iter().map(|&i| pool[i].clone()).collect();

        // Offspring: one mutant per survivor, one crossover child per pair.
        let mut next_offspring: Vec<Individual> = Vec::with_capacity(pop_max + pop_max / 2);
        for ind in &survivors {
            next_offspring.push(assess(mutate(
                &ind.matching,
                &config.mutation,
                instance,
                &mut mut_rng,
            )));
        }
        if config.crossover != CrossoverKind::None {
            let pairs = tournament_select(&survivors, pop_max / 2, &mut sel_rng);
            for (a, b) in pairs {
                let p1 = &survivors[a].matching;
                let p2 = &survivors[b].matching;
                let child = match config.crossover {
                    CrossoverKind::HopcroftKarp => {
                        hopcroft_karp_crossover(p1, p2, config.alpha, instance, &mut cross_rng)
                    }
                    CrossoverKind::Gsp => {
                        gsp_crossover(p1, p2, config.alpha, instance, &mut cross_rng)
                    }
                    CrossoverKind::Uniform => {
                        uniform_crossover(p1, p2, instance, &mut cross_rng)
                    }
                    CrossoverKind::KPoint => {
                        k_point_crossover(p1, p2, config.k_points, instance, &mut cross_rng)
                    }
                    CrossoverKind::None => unreachable!(),
                };
                next_offspring.push(assess(child));
            }
        }
        offspring = next_offspring;
    }
    unreachable!("the loop returns on its last iteration")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preferences::{RankWeights, RankedPreference};
    use crate::taxonomy::TopicTree;

    fn pair(x: f64, y: f64) -> ObjectivePair {
        ObjectivePair {
            students: x,
            supervisors: y,
        }
    }

    fn individual(x: f64, y: f64) -> Individual {
        Individual {
            matching: Matching::from_assignment(vec![0], 1),
            objectives: pair(x, y),
            rank: 0,
            crowding: 0.0,
        }
    }

    fn varied_instance(n: usize, m: usize, seed: u64) -> ProblemInstance {
        // A small taxonomy with enough spread that random preference
        // lists produce genuinely different evaluations.
        let tree = TopicTree::from_edges(vec![
            ("root", None),
            ("ai", Some("root")),
            ("ml", Some("ai")),
            ("dl", Some("ml")),
            ("cv", Some("ai")),
            ("sys", Some("root")),
            ("os", Some("sys")),
            ("db", Some("sys")),
            ("theory", Some("root")),
            ("algo", Some("theory")),
            ("crypto", Some("theory")),
        ])
        .unwrap();
        let names: Vec<&str> = vec![
            "ai", "ml", "dl", "cv", "sys", "os", "db", "theory", "algo", "crypto",
        ];
        let mut rng = substream(seed, 90);
        let mut lists = |count: usize, prefix: &str| -> (Vec<String>, Vec<RankedPreference>) {
            let mut ids = Vec::new();
            let mut prefs = Vec::new();
            for i in 0..count {
                ids.push(format!("{prefix}{i}"));
                let sample = rand::seq::index::sample(&mut rng, names.len(), 3);
                let chosen: Vec<&str> = sample.into_iter().map(|k| names[k]).collect();
                prefs.push(RankedPreference::from_names(&chosen, &tree).unwrap());
            }
            (ids, prefs)
        };
        let (sids, sprefs) = lists(n, "s");
        let (rids, rprefs) = lists(m, "r");
        ProblemInstance::new(
            sids,
            rids,
            sprefs,
            rprefs,
            vec![1; m],
            vec![(2 * n / m) as u32; m],
            RankWeights::new(vec![0.5, 0.25, 0.15]).unwrap(),
            2.0,
            tree,
        )
        .unwrap()
    }

    #[test]
    fn dominance_via_objective_pairs() {
        assert!(pair(0.3, 0.3).dominates(&pair(0.2, 0.2)));
        assert!(!pair(0.3, 0.1).dominates(&pair(0.1, 0.3)));
        assert!(!pair(0.1, 0.3).dominates(&pair(0.3, 0.1)));
    }

    #[test]
    fn sort_single_front_when_mutually_nondominated() {
        let mut pop = vec![
            individual(0.1, 0.9),
            individual(0.5, 0.5),
            individual(0.9, 0.1),
        ];
        let fronts = nondominated_sort(&mut pop);
        assert_eq!(fronts.len(), 1);
        assert!(pop.iter().all(|i| i.rank == 0));
    }

    #[test]
    fn sort_chain_gives_singleton_fronts() {
        let mut pop = vec![
            individual(0.1, 0.1),
            individual(0.4, 0.4),
            individual(0.2, 0.2),
            individual(0.3, 0.3),
        ];
        let fronts = nondominated_sort(&mut pop);
        assert_eq!(fronts.len(), 4);
        assert_eq!(pop[1].rank, 0);
        assert_eq!(pop[0].rank, 3);
    }

    /// Slow reference classifier: peel nondominated sets repeatedly.
    fn naive_ranks(points: &[ObjectivePair]) -> Vec<usize> {
        let mut rank = vec![usize::MAX; points.len()];
        let mut assigned = 0;
        let mut current = 0;
        while assigned < points.len() {
            let alive: Vec<usize> = (0..points.len()).filter(|&i| rank[i] == usize::MAX).collect();
            for &i in &alive {
                let dominated = alive
                    .iter()
                    .any(|&j| j != i && points[j].dominates(&points[i]));
                if !dominated {
                    rank[i] = current;
                    assigned += 1;
                }
            }
            current += 1;
        }
        rank
    }

    #[test]
    fn sort_matches_naive_classifier_on_random_points() {
        let mut rng = substream(17, 91);
        for _ in 0..50 {
            let count = rng.random_range(1..60);
            let points: Vec<ObjectivePair> = (0..count)
                .map(|_| {
                    // coarse grid so duplicates and ties occur
                    pair(
                        (rng.random_range(0..8) as f64) / 10.0,
                        (rng.random_range(0..8) as f64) / 10.0,
                    )
                })
                .collect();
            let mut pop: Vec<Individual> = points
                .iter()
                .map(|&p| individual(p.students, p.supervisors))
                .collect();
            nondominated_sort(&mut pop);
            let expect = naive_ranks(&points);
            for (ind, want) in pop.iter().zip(expect) {
                assert_eq!(ind.rank, want);
            }
        }
    }

    #[test]
    fn crowding_small_fronts_all_infinite() {
        let mut pop = vec![individual(0.1, 0.9), individual(0.9, 0.1)];
        let fronts = nondominated_sort(&mut pop);
        crowding_distance(&mut pop, &fronts[0]);
        assert!(pop.iter().all(|i| i.crowding.is_infinite()));
    }

    #[test]
    fn crowding_evenly_spaced_middle_point() {
        let mut pop = vec![
            individual(0.1, 0.9),
            individual(0.2, 0.8),
            individual(0.3, 0.7),
        ];
        let fronts = nondominated_sort(&mut pop);
        assert_eq!(fronts.len(), 1);
        crowding_distance(&mut pop, &fronts[0]);
        assert!((pop[1].crowding - 2.0).abs() < 1e-12);
        assert!(pop[0].crowding.is_infinite());
        assert!(pop[2].crowding.is_infinite());
    }

    #[test]
    fn crowding_handles_duplicate_objectives() {
        let mut pop = vec![
            individual(0.5, 0.5),
            individual(0.5, 0.5),
            individual(0.5, 0.5),
            individual(0.5, 0.5),
        ];
        let fronts = nondominated_sort(&mut pop);
        crowding_distance(&mut pop, &fronts[0]);
        for ind in &pop {
            assert!(ind.crowding == 0.0 || ind.crowding.is_infinite());
            assert!(!ind.crowding.is_nan());
        }
    }

    #[test]
    fn tournament_low_rank_beats_high_rank() {
        // index 0 dominates index 1; the worse individual can only be
        // selected when both tournament draws land on it (probability 1/4).
        let mut pop = vec![individual(0.9, 0.9), individual(0.1, 0.1)];
        nondominated_sort(&mut pop);
        let mut rng = substream(3, 92);
        let trials = 40_000;
        let mut worse = 0usize;
        for (a, b) in tournament_select(&pop, trials, &mut rng) {
            worse += usize::from(a == 1) + usize::from(b == 1);
        }
        let freq = worse as f64 / (2 * trials) as f64;
        assert!((freq - 0.25).abs() < 0.01, "freq {freq}");
    }

    #[test]
    fn tournament_equal_rank_prefers_crowding() {
        // All three nondominated; the middle point has finite crowding and
        // the boundary points are infinite, so the middle only survives a
        // tournament against itself (probability 1/9).
        let mut pop = vec![
            individual(0.2, 0.8),
            individual(0.5, 0.5),
            individual(0.8, 0.2),
        ];
        let fronts = nondominated_sort(&mut pop);
        crowding_distance(&mut pop, &fronts[0]);
        assert!(pop[1].crowding < pop[0].crowding);
        let mut rng = substream(4, 93);
        let trials = 45_000;
        let mut middle = 0usize;
        for (a, b) in tournament_select(&pop, trials, &mut rng) {
            middle += usize::from(a == 1) + usize::from(b == 1);
        }
        let freq = middle as f64 / (2 * trials) as f64;
        assert!((freq - 1.0 / 9.0).abs() < 0.01, "freq {freq}");
    }

    #[test]
    fn evolve_improves_and_stays_feasible() {
        let inst = varied_instance(12, 3, 5);
        let config = GAConfig {
            pop_max: 16,
            it_max: 40,
            patience: 40,
            seed: 42,
            ..GAConfig::default()
        };
        let result = evolve(&inst, &config).unwrap();
        assert!(!result.trace.is_empty());
        // every individual of every final front is feasible
        for front in &result.fronts {
            for ind in front {
                assert!(ind.matching.is_feasible(&inst));
            }
        }
        // indicator trace is nonincreasing, best traces nondecreasing
        for w in result.trace.windows(2) {
            assert!(w[1].s_metric <= w[0].s_metric + 1e-12);
            assert!(w[1].best_students >= w[0].best_students);
            assert!(w[1].best_supervisors >= w[0].best_supervisors);
        }
    }

    #[test]
    fn evolve_is_deterministic_per_seed() {
        let inst = varied_instance(10, 3, 6);
        let config = GAConfig {
            pop_max: 8,
            it_max: 15,
            patience: 15,
            seed: 9,
            ..GAConfig::default()
        };
        let a = evolve(&inst, &config).unwrap();
        let b = evolve(&inst, &config).unwrap();
        assert_eq!(a.trace, b.trace);
        assert_eq!(a.frontier().points(), b.frontier().points());
    }

    #[test]
    fn evolve_patience_stops_early() {
        let inst = varied_instance(8, 2, 7);
        let config = GAConfig {
            pop_max: 8,
            it_max: 500,
            patience: 5,
            seed: 1,
            ..GAConfig::default()
        };
        let result = evolve(&inst, &config).unwrap();
        assert!(result.trace.len() < 500, "patience never triggered");
    }

    #[test]
    fn evolve_without_crossover_keeps_offspring_count() {
        let inst = varied_instance(10, 3, 8);
        let config = GAConfig {
            pop_max: 8,
            it_max: 10,
            patience: 10,
            crossover: CrossoverKind::None,
            seed: 3,
            ..GAConfig::default()
        };
        let result = evolve(&inst, &config).unwrap();
        // final pool = survivors + mutants only
        let total: usize = result.fronts.iter().map(|f| f.len()).sum();
        assert_eq!(total, 2 * config.pop_max);
    }

    #[test]
    fn evolve_all_crossover_kinds_run() {
        let inst = varied_instance(10, 3, 11);
        for kind in [
            CrossoverKind::HopcroftKarp,
            CrossoverKind::Gsp,
            CrossoverKind::Uniform,
            CrossoverKind::KPoint,
        ] {
            let config = GAConfig {
                pop_max: 8,
                it_max: 8,
                patience: 8,
                crossover: kind,
                seed: 4,
                ..GAConfig::default()
            };
            let result = evolve(&inst, &config).unwrap();
            let total: usize = result.fronts.iter().map(|f| f.len()).sum();
            assert_eq!(total, 2 * config.pop_max + config.pop_max / 2);
        }
    }

    #[test]
    fn evolve_handles_a_single_supervisor() {
        // with one supervisor every matching is identical: mutation can
        // neither swap across supervisors nor transfer, both crossovers
        // reproduce the parent, and the run stalls out on patience
        let tree = TopicTree::from_edges(vec![("root", None), ("t", Some("root"))]).unwrap();
        let pref = RankedPreference::from_names(&["t"], &tree).unwrap();
        let inst = ProblemInstance::new(
            (0..5).map(|i| format!("s{i}")).collect(),
            vec!["r0".into()],
            vec![pref.clone(); 5],
            vec![pref],
            vec![1],
            vec![5],
            RankWeights::new(vec![0.9]).unwrap(),
            2.0,
            tree,
        )
        .unwrap();
        let config = GAConfig {
            pop_max: 8,
            it_max: 100,
            patience: 3,
            seed: 1,
            ..GAConfig::default()
        };
        let result = evolve(&inst, &config).unwrap();
        assert_eq!(result.trace.len(), 4, "stalls after patience iterations");
        let frontier = result.frontier();
        assert_eq!(frontier.len(), 1);
        assert!(frontier.entries()[0].1.is_feasible(&inst));
    }

    #[test]
    fn evolve_handles_zero_lower_quotas() {
        // c_min = 0 lets supervisors end up empty; the supervisor
        // objective and both crossovers must cope with zero-slot
        // structures throughout a run
        let mut inst = varied_instance(9, 3, 13);
        let tree = inst.tree().clone();
        inst = ProblemInstance::new(
            inst.student_ids().to_vec(),
            inst.supervisor_ids().to_vec(),
            inst.student_prefs().to_vec(),
            inst.supervisor_prefs().to_vec(),
            vec![0; 3],
            vec![9, 9, 9],
            inst.weights().clone(),
            inst.alpha(),
            tree,
        )
        .unwrap();
        for kind in [CrossoverKind::Gsp, CrossoverKind::HopcroftKarp] {
            let config = GAConfig {
                pop_max: 8,
                it_max: 25,
                patience: 25,
                crossover: kind,
                seed: 2,
                ..GAConfig::default()
            };
            let result = evolve(&inst, &config).unwrap();
            for front in &result.fronts {
                for ind in front {
                    assert!(ind.matching.is_feasible(&inst));
                }
            }
        }
    }

    #[test]
    fn config_validation_rejects_bad_values() {
        let odd = GAConfig {
            pop_max: 3,
            ..GAConfig::default()
        };
        assert!(odd.validate().is_err());
        let empty = GAConfig {
            pop_max: 0,
            ..GAConfig::default()
        };
        assert!(empty.validate().is_err());
        let hot = GAConfig {
            mutation: MutationParams { p_mt: 1.5, p_sw: 0.2 },
            ..GAConfig::default()
        };
        assert!(hot.validate().is_err());
        let impatient = GAConfig {
            patience: 0,
            ..GAConfig::default()
        };
        assert!(impatient.validate().is_err());
    }
}
