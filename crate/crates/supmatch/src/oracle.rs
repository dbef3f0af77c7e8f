//! Exhaustive ground truth for desk-scale instances.
//!
//! Enumerates every feasible assignment vector with quota pruning, and
//! derives from the stream the exact Pareto frontier and the exact
//! single-objective optima. A budget guard on the raw assignment space
//! (`m^n`) refuses instances that would hang instead of silently
//! running forever.

use crate::error::{Error, Result};
use crate::instance::ProblemInstance;
use crate::matching::Matching;
use crate::objectives::{evaluate_pair, Frontier};
use crate::preferences::EvaluationMatrices;

/// Default ceiling on the raw assignment space `m^n`.
pub const DEFAULT_ENUM_BUDGET: f64 = 1e7;

/// Size of the raw assignment space `m^n`.
pub fn assignment_space(instance: &ProblemInstance) -> f64 {
    (instance.m() as f64).powi(instance.n() as i32)
}

/// Which single objective [`exact_best`] maximizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObjectiveKind {
    Students,
    Supervisors,
}

/// Streaming enumeration of every feasible matching, in lexicographic
/// assignment order, each produced exactly once.
pub struct FeasibleMatchings<'a> {
    instance: &'a ProblemInstance,
    assignment: Vec<u32>,
    counts: Vec<u32>,
    /// Next supervisor index to try at each depth.
    cursor: Vec<u32>,
    /// Sum over supervisors of students still needed to reach c_min.
    deficit: u32,
    depth: usize,
    exhausted: bool,
    yielded: bool,
}

impl<'a> FeasibleMatchings<'a> {
    fn new(instance: &'a ProblemInstance) -> Self {
        let n = instance.n();
        let m = instance.m();
        FeasibleMatchings {
            instance,
            assignment: vec![0; n],
            counts: vec![0; m],
            cursor: vec![0; n + 1],
            deficit: instance.c_min().iter().sum(),
            depth: 0,
            exhausted: false,
            yielded: false,
        }
    }

    fn assign(&mut self, depth: usize, j: usize) {
        self.assignment[depth] = j as u32;
        if self.counts[j] < self.instance.c_min()[j] {
            self.deficit -= 1;
        }
        self.counts[j] += 1;
    }

    fn unassign(&mut self, depth: usize) {
        let j = self.assignment[depth] as usize;
        self.counts[j] -= 1;
        if self.counts[j] < self.instance.c_min()[j] {
            self.deficit += 1;
        }
    }

    /// A prefix extension is viable when the supervisor has a free slot
    /// and the remaining students can still cover every lower quota.
    fn viable(&self, depth: usize, j: usize) -> bool {
        if self.counts[j] >= self.instance.c_max()[j] {
            return false;
        }
        let fills_deficit = self.counts[j] < self.instance.c_min()[j];
        let deficit_after = self.deficit - u32::from(fills_deficit);
        let remaining = (self.instance.n() - depth - 1) as u32;
        deficit_after <= remaining
    }
}

impl Iterator for FeasibleMatchings<'_> {
    type Item = Matching;

    fn next(&mut self) -> Option<Matching> {
        if self.exhausted {
            return None;
        }
        let n = self.instance.n();
        let m = self.instance.m() as u32;
        if self.yielded {
            // Backtrack off the previously returned full assignment.
            self.depth -= 1;
            self.unassign(self.depth);
        }
        loop {
            if self.depth == n {
                self.yielded = true;
                return Some(Matching::from_assignment(
                    self.assignment.clone(),
                    self.instance.m(),
                ));
            }
            let mut j = self.cursor[self.depth];
            while j < m && !self.viable(self.depth, j as usize) {
                j += 1;
            }
            if j < m {
                self.assign(self.depth, j as usize);
                self.cursor[self.depth] = j + 1;
                self.depth += 1;
                self.cursor[self.depth] = 0;
            } else {
                if self.depth == 0 {
                    self.exhausted = true;
                    return None;
                }
                self.depth -= 1;
                self.unassign(self.depth);
            }
        }
    }
}

/// Streams every feasible matching, or errors when the raw assignment
/// space exceeds `budget`.
pub fn enumerate_feasible(
    instance: &ProblemInstance,
    budget: f64,
) -> Result<FeasibleMatchings<'_>> {
    let space = assignment_space(instance);
    if space > budget {
        return Err(Error::EnumerationBudget { space, budget });
    }
    Ok(FeasibleMatchings::new(instance))
}

/// The exact Pareto frontier over all feasible matchings, deduplicated
/// by objective pair.
pub fn exact_pareto_frontier(
    instance: &ProblemInstance,
    matrices: &EvaluationMatrices,
    budget: f64,
) -> Result<Frontier> {
    let stream = enumerate_feasible(instance, budget)?;
    let mut frontier = Frontier::new();
    for matching in stream {
        let pair = evaluate_pair(&matching, matrices, instance);
        frontier.insert(pair, matching);
    }
    Ok(frontier)
}

/// The exact maximum of one objective, with an attaining matching.
pub fn exact_best(
    instance: &ProblemInstance,
    matrices: &EvaluationMatrices,
    kind: ObjectiveKind,
    budget: f64,
) -> Result<(f64, Matching)> {
    let stream = enumerate_feasible(instance, budget)?;
    let mut best: Option<(f64, Matching)> = None;
    for matching in stream {
        let pair = evaluate_pair(&matching, matrices, instance);
        let value = match kind {
            ObjectiveKind::Students => pair.students,
            ObjectiveKind::Supervisors => pair.supervisors,
        };
        if best.as_ref().is_none_or(|(b, _)| value > *b) {
            best = Some((value, matching));
        }
    }
    best.ok_or_else(|| Error::InvalidInstance("no feasible matching enumerated".into()))
}
