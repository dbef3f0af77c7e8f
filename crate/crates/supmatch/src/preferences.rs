//! Ranked topic preferences and the two-sided evaluation value.
//!
//! A participant states an ordered list of k distinct topics, most
//! preferred first. The value one participant assigns to being paired
//! with another combines, per ranked topic, a rank weight, the rank
//! similarity between the topic and its best match in the counterpart's
//! list, and the taxonomy similarity toward that best match. The two
//! directions are evaluated independently and are not symmetric.

use crate::error::{Error, Result};
use crate::instance::ProblemInstance;
use crate::taxonomy::{TopicId, TopicTree};

/// Default rank weights for k = 5 preference lists, decreasing roughly
/// exponentially so that missing the first choice costs far more than
/// missing the last.
pub const DEFAULT_RANK_WEIGHTS: [f64; 5] = [0.561, 0.258, 0.129, 0.064, 0.032];

/// An ordered list of distinct topics; position 1 is the most preferred.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankedPreference {
    topics: Vec<TopicId>,
}

impl RankedPreference {
    pub fn new(topics: Vec<TopicId>, tree: &TopicTree) -> Result<Self> {
        if topics.is_empty() {
            return Err(Error::InvalidInstance(
                "preference list must contain at least one topic".into(),
            ));
        }
        for (i, &t) in topics.iter().enumerate() {
            if !tree.contains(t) {
                return Err(Error::UnknownTopic(format!("#{}", t.0)));
            }
            if topics[..i].contains(&t) {
                return Err(Error::InvalidInstance(format!(
                    "topic `{}` appears twice in one preference list",
                    tree.name(t)
                )));
            }
        }
        Ok(RankedPreference { topics })
    }

    pub fn from_names<S: AsRef<str>>(names: &[S], tree: &TopicTree) -> Result<Self> {
        let topics = names
            .iter()
            .map(|n| tree.topic_id(n.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(topics, tree)
    }

    pub fn len(&self) -> usize {
        self.topics.len()
    }

    pub fn is_empty(&self) -> bool {
        self.topics.is_empty()
    }

    pub fn topics(&self) -> &[TopicId] {
        &self.topics
    }

    /// 1-based rank of `topic`, or `None` when absent.
    pub fn position(&self, topic: TopicId) -> Option<usize> {
        self.topics.iter().position(|&t| t == topic).map(|p| p + 1)
    }
}

/// Nonincreasing, nonnegative weights, one per preference rank.
#[derive(Debug, Clone, PartialEq)]
pub struct RankWeights {
    weights: Vec<f64>,
    total: f64,
}

impl RankWeights {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidWeights("weight vector is empty".into()));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidWeights(
                "weights must be finite and nonnegative".into(),
            ));
        }
        if weights.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidWeights(
                "weights must be nonincreasing".into(),
            ));
        }
        let total = weights.iter().sum();
        Ok(RankWeights { weights, total })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.weights
    }

    /// Upper bound of every evaluation value.
    pub fn total(&self) -> f64 {
        self.total
    }
}

impl Default for RankWeights {
    fn default() -> Self {
        RankWeights::new(DEFAULT_RANK_WEIGHTS.to_vec()).expect("default weights are valid")
    }
}

/// Rank similarity between `kw_i` (in `list_i`) and `kw_j` (in `list_j`):
/// `1 / (1 + |pos_i - pos_j|)` over 1-based positions.
pub fn rank_similarity(
    kw_i: TopicId,
    kw_j: TopicId,
    list_i: &RankedPreference,
    list_j: &RankedPreference,
) -> Result<f64> {
    let pi = list_i
        .position(kw_i)
        .ok_or_else(|| Error::TopicNotRanked(format!("#{}", kw_i.0)))?;
    let pj = list_j
        .position(kw_j)
        .ok_or_else(|| Error::TopicNotRanked(format!("#{}", kw_j.0)))?;
    Ok(1.0 / (1.0 + pi.abs_diff(pj) as f64))
}

/// The topic of `other` most similar to `kw`; ties are broken by the
/// earliest position in `other`.
pub fn best_matching_topic(kw: TopicId, other: &RankedPreference, tree: &TopicTree) -> TopicId {
    let mut best = other.topics()[0];
    let mut best_sim = tree.similarity(kw, best);
    for &cand in &other.topics()[1..] {
        let sim = tree.similarity(kw, cand);
        if sim > best_sim {
            best = cand;
            best_sim = sim;
        }
    }
    best
}

/// Evaluation of `list_j` from the perspective of `list_i`: for each
/// ranked topic of `list_i`, weight times rank similarity times taxonomy
/// similarity toward its best match in `list_j`. Always in (0, sum of
/// weights].
pub fn evaluate(
    list_i: &RankedPreference,
    list_j: &RankedPreference,
    weights: &RankWeights,
    tree: &TopicTree,
) -> Result<f64> {
    if list_i.len() != weights.len() {
        return Err(Error::LengthMismatch {
            got: list_i.len(),
            want: weights.len(),
        });
    }
    if list_j.len() != weights.len() {
        return Err(Error::LengthMismatch {
            got: list_j.len(),
            want: weights.len(),
        });
    }
    let mut value = 0.0;
    for (r, &kw) in list_i.topics().iter().enumerate() {
        let best = best_matching_topic(kw, list_j, tree);
        let pos_best = list_j.position(best).expect("best match comes from list_j");
        let s_rnk = 1.0 / (1.0 + (r + 1).abs_diff(pos_best) as f64);
        let s_tax = tree.similarity(kw, best);
        value += weights.as_slice()[r] * s_rnk * s_tax;
    }
    Ok(value)
}

/// Dense per-pair evaluation values for a whole instance.
///
/// `student_value(i, j)` is student i's value for supervisor j and
/// `supervisor_value(j, i)` is supervisor j's value for student i; the
/// two are independent evaluations and in general not transposes of one
/// another.
#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationMatrices {
    n: usize,
    m: usize,
    v: Vec<f64>,       // n x m, row-major by student
    v_prime: Vec<f64>, // m x n, row-major by supervisor
}

impl EvaluationMatrices {
    pub fn for_instance(instance: &ProblemInstance) -> Self {
        let (n, m) = (instance.n(), instance.m());
        let tree = instance.tree();
        let weights = instance.weights();
        let mut v = vec![0.0; n * m];
        let mut v_prime = vec![0.0; m * n];
        for i in 0..n {
            for j in 0..m {
                v[i * m + j] = evaluate(
                    &instance.student_prefs()[i],
                    &instance.supervisor_prefs()[j],
                    weights,
                    tree,
                )
                .expect("instance validation guarantees matching lengths");
                v_prime[j * n + i] = evaluate(
                    &instance.supervisor_prefs()[j],
                    &instance.student_prefs()[i],
                    weights,
                    tree,
                )
                .expect("instance validation guarantees matching lengths");
            }
        }
        EvaluationMatrices { n, m, v, v_prime }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn student_value(&self, student: usize, supervisor: usize) -> f64 {
        self.v[student * self.m + supervisor]
    }

    #[inline]
    pub fn supervisor_value(&self, supervisor: usize, student: usize) -> f64 {
        self.v_prime[supervisor * self.n + student]
    }
}
