//! Core abstraction for subset-universe decision problems: every instance
//! carries an explicit element universe, solutions are subsets of it, and a
//! deterministic verifier recognizes them. On top of that sit brute-force
//! enumeration, partial-solution checks, universe-covering detection, and
//! machine-checkable solution-embedding reductions.

mod check;
mod embed;
mod enumerate;
mod error;
mod instance;
mod mask;
mod problem;
mod reduction;

pub use check::{
    check_se_on_reduced, check_se_on_reduced_threaded, check_se_property, SeCheckReport,
};
pub use embed::Embedding;
pub use enumerate::{
    enumerate_solutions, enumerate_solutions_threaded, is_partial_solution, is_universe_covering,
    Cap, CoveringReport, SolutionSet, HARD_LIMIT,
};
pub use error::CoreError;
pub use instance::InstanceBundle;
pub use mask::SubsetMask;
pub use problem::{payload_as, ModelKind, Payload, Problem, ProblemSpec, UniverseElement};
pub use reduction::{ReducedInstance, SeReduction};
