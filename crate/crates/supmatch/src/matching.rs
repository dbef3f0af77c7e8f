//! The chromosome: a total assignment of students to supervisors.
//!
//! A matching is stored as a dense student-to-supervisor index array
//! with cached per-supervisor counts; the bipartite graph view is
//! recoverable as the edge set `{(i, assignment[i])}`. The
//! representation makes "every student has exactly one supervisor"
//! structural, so only the quota window needs checking for feasibility.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::instance::ProblemInstance;

/// One assignment of every student to exactly one supervisor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    assignment: Vec<u32>,
    counts: Vec<u32>,
}

/// Per-supervisor student counts of a matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AllocationStructure(Vec<u32>);

impl AllocationStructure {
    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl From<Vec<u32>> for AllocationStructure {
    fn from(counts: Vec<u32>) -> Self {
        AllocationStructure(counts)
    }
}

/// Workload levels (count over upper quota) and their population spread.
#[derive(Debug, Clone, PartialEq)]
pub struct WorkloadStats {
    pub levels: Vec<f64>,
    pub sigma: f64,
}

impl Matching {
    /// Builds a matching from an assignment array; counts are derived.
    ///
    /// Panics if any supervisor index is out of range. Feasibility with
    /// respect to quotas is not required here; it is an obligation of
    /// every public producer of matchings, checked by [`Matching::is_feasible`].
    pub fn from_assignment(assignment: Vec<u32>, m: usize) -> Self {
        let mut counts = vec![0u32; m];
        for &j in &assignment {
            assert!((j as usize) < m, "supervisor index {j} out of range");
            counts[j as usize] += 1;
        }
        Matching { assignment, counts }
    }

    pub fn n(&self) -> usize {
        self.assignment.len()
    }

    pub fn m(&self) -> usize {
        self.counts.len()
    }

    pub fn assignment(&self) -> &[u32] {
        &self.assignment
    }

    #[inline]
    pub fn supervisor_of(&self, student: usize) -> usize {
        self.assignment[student] as usize
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// Students assigned to `supervisor`, in ascending index order.
    pub fn students_of(&self, supervisor: usize) -> Vec<usize> {
        self.assignment
            .iter()
            .enumerate()
            .filter(|(_, &j)| j as usize == supervisor)
            .map(|(i, _)| i)
            .collect()
    }

    /// True iff every supervisor's student count lies in its quota window.
    pub fn is_feasible(&self, instance: &ProblemInstance) -> bool {
        assert_eq!(self.n(), instance.n(), "matching/instance student count mismatch");
        assert_eq!(self.m(), instance.m(), "matching/instance supervisor count mismatch");
        self.counts
            .iter()
            .zip(instance.c_min().iter().zip(instance.c_max()))
            .all(|(&c, (&lo, &hi))| lo <= c && c <= hi)
    }

    /// Supervisors strictly below their upper quota (and at or above their
    /// lower quota; callers pass feasible matchings). Ascending order.
    pub fn under_subscribed(&self, instance: &ProblemInstance) -> Vec<usize> {
        self.counts
            .iter()
            .enumerate()
            .filter(|(j, &c)| c < instance.c_max()[*j])
            .map(|(j, _)| j)
            .collect()
    }

    /// Workload levels `count / c_max` and their population standard
    /// deviation (divide by m: the levels describe the whole supervisor
    /// population, not a sample).
    pub fn workload_stats(&self, instance: &ProblemInstance) -> WorkloadStats {
        let levels: Vec<f64> = self
            .counts
            .iter()
            .zip(instance.c_max())
            .map(|(&c, &hi)| c as f64 / hi as f64)
            .collect();
        let m = levels.len() as f64;
        let mean = levels.iter().sum::<f64>() / m;
        let var = levels.iter().map(|l| (l - mean) * (l - mean)).sum::<f64>() / m;
        WorkloadStats {
            levels,
            sigma: var.sqrt(),
        }
    }

    pub fn structure(&self) -> AllocationStructure {
        AllocationStructure(self.counts.clone())
    }

    /// Samples a feasible matching: shuffle the students, fill every
    /// supervisor up to its lower quota, then spread the remainder over
    /// uniformly drawn under-subscribed supervisors.
    pub fn random_feasible(instance: &ProblemInstance, rng: &mut impl Rng) -> Matching {
        let n = instance.n();
        let m = instance.m();
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        let mut assignment = vec![0u32; n];
        let mut counts = vec![0u32; m];
        let mut next = 0usize;
        for (j, &lower) in instance.c_min().iter().enumerate() {
            for _ in 0..lower {
                assignment[order[next]] = j as u32;
                counts[j] += 1;
                next += 1;
            }
        }
        let mut under: Vec<usize> = (0..m).filter(|&j| counts[j] < instance.c_max()[j]).collect();
        for &student in &order[next..] {
            let pick = rng.random_range(0..under.len());
            let j = under[pick];
            assignment[student] = j as u32;
            counts[j] += 1;
            if counts[j] == instance.c_max()[j] {
                under.remove(pick);
            }
        }
        Matching { assignment, counts }
    }

    /// Moves `student` to `supervisor`, keeping the count cache in sync.
    pub(crate) fn reassign(&mut self, student: usize, supervisor: usize) {
        let old = self.assignment[student] as usize;
        self.counts[old] -= 1;
        self.counts[supervisor] += 1;
        self.assignment[student] = supervisor as u32;
    }

    /// Exchanges the supervisors of two students (counts are unchanged).
    pub(crate) fn swap_students(&mut self, a: usize, b: usize) {
        self.assignment.swap(a, b);
    }
}
