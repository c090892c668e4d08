//! The problem abstraction: a named verifier over an instance payload with an
//! explicit element universe.

use std::any::Any;
use std::fmt;
use std::sync::Arc;

use crate::{CoreError, SubsetMask};

/// Problem-specific instance data, opaque to this crate.
pub type Payload = Arc<dyn Any + Send + Sync>;

/// Downcasts a payload to the concrete instance type a problem expects.
pub fn payload_as<'a, T: 'static>(payload: &'a Payload, problem: &str) -> Result<&'a T, CoreError> {
    payload.downcast_ref::<T>().ok_or(CoreError::PayloadType {
        problem: problem.to_string(),
    })
}

/// How the universe of a problem is structured. Model transforms care about
/// the distinction: literal universes pair each element with its complement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    /// One universe element per atomic decision (the common case).
    Variable,
    /// Elements come in complementary pairs `(u, ~u)`, element `i` paired
    /// with `n + i`; every solution picks exactly one of each pair.
    Literal,
}

/// A human-readable universe element with a dense 0-based id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniverseElement {
    pub id: usize,
    pub label: String,
}

impl UniverseElement {
    pub fn new(id: usize, label: impl Into<String>) -> Self {
        UniverseElement {
            id,
            label: label.into(),
        }
    }
}

/// A registered problem: universe extractor plus a deterministic, total
/// solution verifier. `universe` also validates the payload; `verify` may
/// assume a payload that passed `universe`.
pub trait Problem: Send + Sync {
    fn name(&self) -> &str;

    fn kind(&self) -> ModelKind {
        ModelKind::Variable
    }

    fn universe(&self, payload: &Payload) -> Result<Vec<UniverseElement>, CoreError>;

    /// Cheap width lookup; must agree with `universe(payload).len()`.
    fn universe_size(&self, payload: &Payload) -> Result<usize, CoreError> {
        Ok(self.universe(payload)?.len())
    }

    /// Pure membership test: does `subset` encode a solution of `payload`?
    /// The mask width always equals `universe_size(payload)`.
    fn verify(&self, payload: &Payload, subset: &SubsetMask) -> bool;
}

/// Shared handle to a problem definition. Identity is nominal: two specs are
/// the same problem exactly when their names agree.
#[derive(Clone)]
pub struct ProblemSpec(Arc<dyn Problem>);

impl ProblemSpec {
    pub fn new(problem: impl Problem + 'static) -> Self {
        ProblemSpec(Arc::new(problem))
    }

    pub fn from_arc(problem: Arc<dyn Problem>) -> Self {
        ProblemSpec(problem)
    }

    pub fn name(&self) -> &str {
        self.0.name()
    }

    pub fn kind(&self) -> ModelKind {
        self.0.kind()
    }

    pub fn universe(&self, payload: &Payload) -> Result<Vec<UniverseElement>, CoreError> {
        self.0.universe(payload)
    }

    pub fn universe_size(&self, payload: &Payload) -> Result<usize, CoreError> {
        self.0.universe_size(payload)
    }

    pub fn verify(&self, payload: &Payload, subset: &SubsetMask) -> bool {
        self.0.verify(payload, subset)
    }
}

impl fmt::Debug for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProblemSpec({})", self.name())
    }
}
