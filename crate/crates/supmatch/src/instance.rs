//! The immutable problem statement.

use crate::error::{Error, Result};
use crate::preferences::{RankWeights, RankedPreference};
use crate::taxonomy::TopicTree;

/// Students, supervisors, quotas, weights, the balance exponent and the
/// topic taxonomy. Validated once at construction and immutable after,
/// so it can be shared freely across workers.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemInstance {
    student_ids: Vec<String>,
    supervisor_ids: Vec<String>,
    student_prefs: Vec<RankedPreference>,
    supervisor_prefs: Vec<RankedPreference>,
    c_min: Vec<u32>,
    c_max: Vec<u32>,
    weights: RankWeights,
    alpha: f64,
    tree: TopicTree,
}

impl ProblemInstance {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        student_ids: Vec<String>,
        supervisor_ids: Vec<String>,
        student_prefs: Vec<RankedPreference>,
        supervisor_prefs: Vec<RankedPreference>,
        c_min: Vec<u32>,
        c_max: Vec<u32>,
        weights: RankWeights,
        alpha: f64,
        tree: TopicTree,
    ) -> Result<Self> {
        let n = student_ids.len();
        let m = supervisor_ids.len();
        if n == 0 || m == 0 {
            return Err(Error::InvalidInstance(
                "need at least one student and one supervisor".into(),
            ));
        }
        if student_prefs.len() != n || supervisor_prefs.len() != m {
            return Err(Error::InvalidInstance(
                "preference list count does not match participant count".into(),
            ));
        }
        if c_min.len() != m || c_max.len() != m {
            return Err(Error::InvalidInstance(
                "quota vectors must have one entry per supervisor".into(),
            ));
        }
        for id_set in [&student_ids, &supervisor_ids] {
            for (i, id) in id_set.iter().enumerate() {
                if id.is_empty() {
                    return Err(Error::InvalidInstance("empty participant id".into()));
                }
                if id_set[..i].contains(id) {
                    return Err(Error::InvalidInstance(format!(
                        "duplicate participant id `{id}`"
                    )));
                }
            }
        }
        for j in 0..m {
            if c_min[j] > c_max[j] {
                return Err(Error::InvalidInstance(format!(
                    "supervisor `{}` has c_min {} > c_max {}",
                    supervisor_ids[j], c_min[j], c_max[j]
                )));
            }
            if c_max[j] == 0 {
                return Err(Error::InvalidInstance(format!(
                    "supervisor `{}` has zero upper quota",
                    supervisor_ids[j]
                )));
            }
        }
        let min_total: u64 = c_min.iter().map(|&c| c as u64).sum();
        let max_total: u64 = c_max.iter().map(|&c| c as u64).sum();
        if min_total > n as u64 || (n as u64) > max_total {
            return Err(Error::InvalidInstance(format!(
                "no feasible matching: need sum(c_min) <= n <= sum(c_max), got {min_total} <= {n} <= {max_total}"
            )));
        }
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(Error::InvalidInstance(
                "alpha must be finite and nonnegative".into(),
            ));
        }
        for prefs in student_prefs.iter().chain(supervisor_prefs.iter()) {
            if prefs.len() != weights.len() {
                return Err(Error::LengthMismatch {
                    got: prefs.len(),
                    want: weights.len(),
                });
            }
        }
        Ok(ProblemInstance {
            student_ids,
            supervisor_ids,
            student_prefs,
            supervisor_prefs,
            c_min,
            c_max,
            weights,
            alpha,
            tree,
        })
    }

    pub fn n(&self) -> usize {
        self.student_ids.len()
    }

    pub fn m(&self) -> usize {
        self.supervisor_ids.len()
    }

    pub fn student_ids(&self) -> &[String] {
        &self.student_ids
    }

    pub fn supervisor_ids(&self) -> &[String] {
        &self.supervisor_ids
    }

    pub fn student_prefs(&self) -> &[RankedPreference] {
        &self.student_prefs
    }

    pub fn supervisor_prefs(&self) -> &[RankedPreference] {
        &self.supervisor_prefs
    }

    pub fn c_min(&self) -> &[u32] {
        &self.c_min
    }

    pub fn c_max(&self) -> &[u32] {
        &self.c_max
    }

    pub fn weights(&self) -> &RankWeights {
        &self.weights
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn tree(&self) -> &TopicTree {
        &self.tree
    }

    /// Same instance with a different balance exponent.
    pub fn with_alpha(mut self, alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(Error::InvalidInstance(
                "alpha must be finite and nonnegative".into(),
            ));
        }
        self.alpha = alpha;
        Ok(self)
    }

    /// Same instance with a different weight vector (length must match k).
    pub fn with_weights(mut self, weights: RankWeights) -> Result<Self> {
        let k = self.student_prefs[0].len();
        if weights.len() != k {
            return Err(Error::LengthMismatch {
                got: weights.len(),
                want: k,
            });
        }
        self.weights = weights;
        Ok(self)
    }
}
