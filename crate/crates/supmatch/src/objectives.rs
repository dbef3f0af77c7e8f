//! The two maximization objectives and the frontier quality indicator.
//!
//! The student objective is the mean evaluation students give their
//! assigned supervisor. The supervisor objective is the mean over
//! supervisors of the mean evaluation they give their assigned
//! students, multiplied by a workload balance penalty `1/(1+sigma)^alpha`
//! where sigma is the spread of workload levels.
//!
//! Frontier quality is measured against a reference point that must
//! strictly dominate every attainable objective pair: the indicator is
//! the reference box area minus the origin-anchored area dominated by
//! the frontier (a staircase union of rectangles). It shrinks toward
//! zero as the frontier approaches the reference point, is minimized
//! exactly by the true Pareto frontier for a fixed reference, and lower
//! is better.

use crate::error::{Error, Result};
use crate::instance::ProblemInstance;
use crate::matching::Matching;
use crate::preferences::EvaluationMatrices;

/// One point in objective space; both components are maximized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObjectivePair {
    pub students: f64,
    pub supervisors: f64,
}

impl ObjectivePair {
    /// Pareto dominance: weakly better in both objectives, strictly in one.
    pub fn dominates(&self, other: &ObjectivePair) -> bool {
        self.students >= other.students
            && self.supervisors >= other.supervisors
            && (self.students > other.students || self.supervisors > other.supervisors)
    }
}

/// Reference point for the frontier indicator; must strictly dominate
/// every frontier point it is used with (checked at use time).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferencePoint {
    pub x: f64,
    pub y: f64,
}

impl Default for ReferencePoint {
    fn default() -> Self {
        ReferencePoint { x: 1.0, y: 1.0 }
    }
}

/// Mean of the values students assign to their matched supervisor.
pub fn student_objective(matching: &Matching, matrices: &EvaluationMatrices) -> f64 {
    let n = matching.n();
    let total: f64 = (0..n)
        .map(|i| matrices.student_value(i, matching.supervisor_of(i)))
        .sum();
    total / n as f64
}

/// Balance-penalized mean of per-supervisor mean values.
///
/// A supervisor without students contributes zero to the average; this
/// can only occur when its lower quota is zero.
pub fn supervisor_objective(
    matching: &Matching,
    matrices: &EvaluationMatrices,
    alpha: f64,
    instance: &ProblemInstance,
) -> f64 {
    let m = matching.m();
    let mut sums = vec![0.0; m];
    for i in 0..matching.n() {
        let j = matching.supervisor_of(i);
        sums[j] += matrices.supervisor_value(j, i);
    }
    let mut acc = 0.0;
    for (&sum, &count) in sums.iter().zip(matching.counts()) {
        if count > 0 {
            acc += sum / count as f64;
        }
    }
    let sigma = matching.workload_stats(instance).sigma;
    let penalty = 1.0 / (1.0 + sigma).powf(alpha);
    penalty * acc / m as f64
}

/// Both objectives of one matching, using the instance's alpha.
pub fn evaluate_pair(
    matching: &Matching,
    matrices: &EvaluationMatrices,
    instance: &ProblemInstance,
) -> ObjectivePair {
    ObjectivePair {
        students: student_objective(matching, matrices),
        supervisors: supervisor_objective(matching, matrices, instance.alpha(), instance),
    }
}

/// Frontier quality indicator; lower is better.
///
/// Dominated or duplicate input points are filtered first (they never
/// change the value). Errors on an empty input and on any point outside
/// the half-open reference box.
pub fn s_metric(points: &[ObjectivePair], reference: ReferencePoint) -> Result<f64> {
    if points.is_empty() {
        return Err(Error::EmptyFrontier);
    }
    for p in points {
        if !(0.0..reference.x).contains(&p.students) || !(0.0..reference.y).contains(&p.supervisors)
        {
            return Err(Error::PointOutsideReferenceBox {
                x: p.students,
                y: p.supervisors,
                rx: reference.x,
                ry: reference.y,
            });
        }
    }
    let frontier = pareto_filter(points);
    // Nondominated maximization points sorted by x ascending have strictly
    // descending y, so the dominated region is a staircase.
    let mut area = 0.0;
    let mut prev_x = 0.0;
    for p in &frontier {
        area += (p.students - prev_x) * p.supervisors;
        prev_x = p.students;
    }
    Ok(reference.x * reference.y - area)
}

/// The mutually nondominated subset, deduplicated, sorted by the student
/// objective ascending.
pub fn pareto_filter(points: &[ObjectivePair]) -> Vec<ObjectivePair> {
    let mut keep: Vec<ObjectivePair> = Vec::new();
    for &p in points {
        if keep.iter().any(|q| q.dominates(&p) || *q == p) {
            continue;
        }
        keep.retain(|q| !p.dominates(q));
        keep.push(p);
    }
    keep.sort_by(|a, b| a.students.total_cmp(&b.students));
    keep
}

/// A set of mutually nondominated objective pairs together with one
/// matching per pair, kept sorted by the student objective.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Frontier {
    entries: Vec<(ObjectivePair, Matching)>,
}

impl Frontier {
    pub fn new() -> Self {
        Frontier::default()
    }

    /// Builds a frontier by inserting every candidate.
    pub fn from_candidates<I>(candidates: I) -> Self
    where
        I: IntoIterator<Item = (ObjectivePair, Matching)>,
    {
        let mut f = Frontier::new();
        for (pair, matching) in candidates {
            f.insert(pair, matching);
        }
        f
    }

    /// Inserts a candidate, dropping it if dominated and evicting any
    /// entries it dominates. Exact duplicates keep the first matching.
    pub fn insert(&mut self, pair: ObjectivePair, matching: Matching) -> bool {
        if self
            .entries
            .iter()
            .any(|(q, _)| q.dominates(&pair) || *q == pair)
        {
            return false;
        }
        self.entries.retain(|(q, _)| !pair.dominates(q));
        let pos = self
            .entries
            .partition_point(|(q, _)| q.students < pair.students);
        self.entries.insert(pos, (pair, matching));
        true
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(ObjectivePair, Matching)] {
        &self.entries
    }

    pub fn points(&self) -> Vec<ObjectivePair> {
        self.entries.iter().map(|(p, _)| *p).collect()
    }

    pub fn s_metric(&self, reference: ReferencePoint) -> Result<f64> {
        s_metric(&self.points(), reference)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::Matching;
    use crate::preferences::{RankWeights, RankedPreference};
    use crate::taxonomy::TopicTree;
    use crate::ProblemInstance;

    fn pair(x: f64, y: f64) -> ObjectivePair {
        ObjectivePair {
            students: x,
            supervisors: y,
        }
    }

    fn ref11() -> ReferencePoint {
        ReferencePoint { x: 1.0, y: 1.0 }
    }

    /// Instance where every participant shares one list of five sibling
    /// topics, so every evaluation attains the weight total 1.044.
    fn identical_lists_instance(n: usize, c_min: Vec<u32>, c_max: Vec<u32>) -> ProblemInstance {
        let tree = TopicTree::from_edges(vec![
            ("root", None),
            ("t1", Some("root")),
            ("t2", Some("root")),
            ("t3", Some("root")),
            ("t4", Some("root")),
            ("t5", Some("root")),
        ])
        .unwrap();
        let pref =
            RankedPreference::from_names(&["t1", "t2", "t3", "t4", "t5"], &tree).unwrap();
        let m = c_min.len();
        ProblemInstance::new(
            (0..n).map(|i| format!("s{i}")).collect(),
            (0..m).map(|j| format!("r{j}")).collect(),
            vec![pref.clone(); n],
            vec![pref; m],
            c_min,
            c_max,
            RankWeights::default(),
            2.0,
            tree,
        )
        .unwrap()
    }

    #[test]
    fn student_objective_identical_lists_attains_total() {
        let inst = identical_lists_instance(4, vec![0, 0], vec![4, 4]);
        let mats = EvaluationMatrices::for_instance(&inst);
        let m = Matching::from_assignment(vec![0, 1, 0, 1], 2);
        let v = student_objective(&m, &mats);
        assert!((v - 1.044).abs() < 1e-12, "{v}");
    }

    #[test]
    fn student_objective_is_plain_mean() {
        // Mean over students of their value at the assigned supervisor,
        // recomputed by brute force over all (i, j) pairs.
        let inst = identical_lists_instance(2, vec![1, 1], vec![2, 2]);
        let mats = EvaluationMatrices::for_instance(&inst);
        let m = Matching::from_assignment(vec![0, 1], 2);
        let brute: f64 = (0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .filter(|&(i, j)| m.supervisor_of(i) == j)
            .map(|(i, j)| mats.student_value(i, j))
            .sum::<f64>()
            / 2.0;
        assert_eq!(student_objective(&m, &mats), brute);
    }

    #[test]
    fn supervisor_objective_penalty_cases() {
        // levels (0.5, 1.0) with alpha 2 penalize by 1/(1.25)^2 = 0.64.
        let inst = identical_lists_instance(3, vec![1, 1], vec![2, 2]);
        let mats = EvaluationMatrices::for_instance(&inst);
        let m = Matching::from_assignment(vec![0, 1, 1], 2);
        let raw = 1.044; // every per-supervisor mean equals the weight total
        let expect = 0.64 * raw;
        let got = supervisor_objective(&m, &mats, 2.0, &inst);
        assert!((got - expect).abs() < 1e-12, "{got} vs {expect}");
        // alpha = 0 removes the penalty entirely.
        let got0 = supervisor_objective(&m, &mats, 0.0, &inst);
        assert!((got0 - raw).abs() < 1e-12);
        // balanced levels: penalty is exactly one.
        let inst_b = identical_lists_instance(4, vec![1, 1], vec![2, 2]);
        let mats_b = EvaluationMatrices::for_instance(&inst_b);
        let balanced = Matching::from_assignment(vec![0, 0, 1, 1], 2);
        let got_b = supervisor_objective(&balanced, &mats_b, 2.0, &inst_b);
        assert!((got_b - raw).abs() < 1e-12);
    }

    #[test]
    fn empty_supervisor_contributes_zero() {
        let inst = identical_lists_instance(2, vec![0, 0], vec![2, 2]);
        let mats = EvaluationMatrices::for_instance(&inst);
        let m = Matching::from_assignment(vec![0, 0], 2);
        let sigma = m.workload_stats(&inst).sigma;
        let expect = (1.0 / (1.0 + sigma).powi(2)) * (1.044 + 0.0) / 2.0;
        let got = supervisor_objective(&m, &mats, 2.0, &inst);
        assert!((got - expect).abs() < 1e-12);
    }

    #[test]
    fn evaluate_pair_is_deterministic_and_positive() {
        let inst = identical_lists_instance(3, vec![1, 1], vec![2, 2]);
        let mats = EvaluationMatrices::for_instance(&inst);
        let m = Matching::from_assignment(vec![0, 1, 1], 2);
        let a = evaluate_pair(&m, &mats, &inst);
        let b = evaluate_pair(&m, &mats, &inst);
        assert_eq!(a, b);
        assert!(a.students > 0.0 && a.supervisors > 0.0);
        assert!((a.supervisors - 1.044 * 0.64).abs() < 1e-12);
    }

    #[test]
    fn s_metric_single_point() {
        let s = s_metric(&[pair(0.5, 0.5)], ref11()).unwrap();
        assert!((s - 0.75).abs() < 1e-12);
    }

    #[test]
    fn s_metric_two_point_staircase() {
        let s = s_metric(&[pair(0.2, 0.6), pair(0.5, 0.3)], ref11()).unwrap();
        assert!((s - 0.79).abs() < 1e-12);
    }

    #[test]
    fn s_metric_approaches_zero_at_reference() {
        let eps = 1e-6;
        let s = s_metric(&[pair(1.0 - eps, 1.0 - eps)], ref11()).unwrap();
        assert!((s - eps * (2.0 - eps)).abs() < 1e-12);
    }

    #[test]
    fn s_metric_guards() {
        assert!(matches!(s_metric(&[], ref11()), Err(Error::EmptyFrontier)));
        assert!(matches!(
            s_metric(&[pair(1.0, 0.5)], ref11()),
            Err(Error::PointOutsideReferenceBox { .. })
        ));
        assert!(matches!(
            s_metric(&[pair(-0.1, 0.5)], ref11()),
            Err(Error::PointOutsideReferenceBox { .. })
        ));
    }

    #[test]
    fn s_metric_ignores_dominated_points() {
        let base = s_metric(&[pair(0.2, 0.6), pair(0.5, 0.3)], ref11()).unwrap();
        let with_junk = s_metric(
            &[pair(0.2, 0.6), pair(0.1, 0.1), pair(0.5, 0.3), pair(0.2, 0.6)],
            ref11(),
        )
        .unwrap();
        assert_eq!(base, with_junk);
    }

    #[test]
    fn s_metric_monotone_under_domination() {
        let base = s_metric(&[pair(0.2, 0.6), pair(0.5, 0.3)], ref11()).unwrap();
        let better = s_metric(&[pair(0.2, 0.6), pair(0.5, 0.3), pair(0.6, 0.4)], ref11()).unwrap();
        assert!(better <= base);
    }

    #[test]
    fn dominance_examples() {
        assert!(pair(0.3, 0.3).dominates(&pair(0.2, 0.2)));
        assert!(!pair(0.3, 0.1).dominates(&pair(0.1, 0.3)));
        assert!(!pair(0.1, 0.3).dominates(&pair(0.3, 0.1)));
        let a = pair(0.4, 0.4);
        assert!(!a.dominates(&a));
    }

    #[test]
    fn frontier_insert_keeps_nondominated_sorted() {
        let mk = |x, y| (pair(x, y), Matching::from_assignment(vec![0], 1));
        let mut f = Frontier::new();
        assert!(f.insert(mk(0.4, 0.4).0, mk(0.4, 0.4).1));
        assert!(f.insert(mk(0.2, 0.6).0, mk(0.2, 0.6).1));
        // dominated by (0.4, 0.4)
        assert!(!f.insert(mk(0.3, 0.3).0, mk(0.3, 0.3).1));
        // duplicates rejected
        assert!(!f.insert(mk(0.4, 0.4).0, mk(0.4, 0.4).1));
        // dominates (0.4, 0.4): evicts it
        assert!(f.insert(mk(0.5, 0.5).0, mk(0.5, 0.5).1));
        let pts = f.points();
        assert_eq!(pts.len(), 2);
        assert!(pts[0].students < pts[1].students);
    }
}
