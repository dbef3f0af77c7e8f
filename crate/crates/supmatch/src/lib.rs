//! Near-Pareto-optimal student-supervisor allocation.
//!
//! Matches n students to m supervisors under per-supervisor lower and
//! upper supervision quotas, maximizing two objectives at once: the
//! students' mean satisfaction with their supervisor's topics, and the
//! supervisors' mean satisfaction with their students discounted by a
//! workload-imbalance penalty. Preferences on both sides are ranked
//! topic lists over a shared taxonomy tree, compared by path overlap
//! and rank distance.
//!
//! The solver is a two-objective genetic algorithm with nondominated
//! sorting, crowding-distance selection and allocation-aware operators:
//! a swap/transfer mutation and two structure-preserving crossovers,
//! one backed by maximum-cardinality bipartite matching and one greedy.
//! It returns an estimated Pareto frontier for a human decision maker
//! to choose from. Desk-scale instances can be checked against an
//! exhaustive oracle ([`oracle`]).
//!
//! ```
//! use supmatch::engine::{evolve, GAConfig};
//! use supmatch::generator::bench_instance;
//! use supmatch::rng::substream;
//!
//! let instance = bench_instance(20, 4, 5, &mut substream(7, 0));
//! let config = GAConfig { pop_max: 16, it_max: 20, seed: 7, ..GAConfig::default() };
//! let result = evolve(&instance, &config)?;
//! for (objectives, matching) in result.frontier().entries() {
//!     assert!(matching.is_feasible(&instance));
//!     assert!(objectives.students > 0.0 && objectives.supervisors > 0.0);
//! }
//! # Ok::<(), supmatch::Error>(())
//! ```

pub mod engine;
pub mod error;
pub mod generator;
pub mod instance;
pub mod matching;
pub mod objectives;
pub mod operators;
pub mod oracle;
pub mod preferences;
pub mod rng;
pub mod taxonomy;

pub use engine::{CrossoverKind, EvolveResult, GAConfig, Individual, IterationRecord};
pub use error::{Error, Result};
pub use instance::ProblemInstance;
pub use matching::{AllocationStructure, Matching, WorkloadStats};
pub use objectives::{Frontier, ObjectivePair, ReferencePoint};
pub use operators::MutationParams;
pub use preferences::{EvaluationMatrices, RankWeights, RankedPreference, DEFAULT_RANK_WEIGHTS};
pub use taxonomy::{TopicId, TopicTree};
