//! A problem instance materialized together with its universe.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::{CoreError, Payload, ProblemSpec, SubsetMask, UniverseElement};

/// An instance bound to its problem, with the universe built and validated:
/// ids are dense `0..n` and labels are unique.
#[derive(Clone)]
pub struct InstanceBundle {
    spec: ProblemSpec,
    payload: Payload,
    universe: Arc<[UniverseElement]>,
}

impl InstanceBundle {
    pub fn new(spec: ProblemSpec, payload: Payload) -> Result<Self, CoreError> {
        let universe = spec.universe(&payload)?;
        for (i, elem) in universe.iter().enumerate() {
            if elem.id != i {
                return Err(CoreError::InvalidUniverse(format!(
                    "element at position {i} has id {} (ids must be dense, 0-based)",
                    elem.id
                )));
            }
        }
        let mut seen = HashSet::with_capacity(universe.len());
        for elem in &universe {
            if !seen.insert(elem.label.as_str()) {
                return Err(CoreError::InvalidUniverse(format!(
                    "duplicate label `{}`",
                    elem.label
                )));
            }
        }
        Ok(InstanceBundle {
            spec,
            payload,
            universe: universe.into(),
        })
    }

    pub fn spec(&self) -> &ProblemSpec {
        &self.spec
    }

    pub fn payload(&self) -> &Payload {
        &self.payload
    }

    pub fn payload_as<T: 'static>(&self) -> Result<&T, CoreError> {
        crate::payload_as(&self.payload, self.spec.name())
    }

    pub fn width(&self) -> usize {
        self.universe.len()
    }

    pub fn universe(&self) -> &[UniverseElement] {
        &self.universe
    }

    pub fn label(&self, id: usize) -> &str {
        &self.universe[id].label
    }

    /// Labels of the elements of `mask`, in id order.
    pub fn labels_of(&self, mask: &SubsetMask) -> Vec<String> {
        mask.ids()
            .into_iter()
            .map(|i| self.label(i).to_string())
            .collect()
    }

    /// Does `subset` encode a solution? Errors on width mismatch.
    pub fn is_solution(&self, subset: &SubsetMask) -> Result<bool, CoreError> {
        if subset.width() != self.width() {
            return Err(CoreError::WidthMismatch {
                expected: self.width(),
                got: subset.width(),
            });
        }
        Ok(self.spec.verify(&self.payload, subset))
    }
}

impl fmt::Debug for InstanceBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "InstanceBundle({}, |U|={})",
            self.spec.name(),
            self.width()
        )
    }
}
