//! Solution-embedding reductions: an instance map together with a
//! per-instance injective element embedding.

use std::fmt;
use std::sync::Arc;

use crate::{CoreError, Embedding, InstanceBundle, ProblemSpec};

/// The materialized output of applying a reduction to one instance.
#[derive(Clone, Debug)]
pub struct ReducedInstance {
    pub target: InstanceBundle,
    pub embedding: Embedding,
}

type ApplyFn = dyn Fn(&InstanceBundle) -> Result<ReducedInstance, CoreError> + Send + Sync;

/// An instance mapping `g` with its embedding family `f_I`, between two named
/// problems. Composition chains reductions end to end.
#[derive(Clone)]
pub struct SeReduction {
    source: ProblemSpec,
    target: ProblemSpec,
    name: String,
    apply: Arc<ApplyFn>,
}

impl SeReduction {
    pub fn new(
        source: ProblemSpec,
        target: ProblemSpec,
        apply: impl Fn(&InstanceBundle) -> Result<ReducedInstance, CoreError> + Send + Sync + 'static,
    ) -> Self {
        let name = format!("{}->{}", source.name(), target.name());
        SeReduction {
            source,
            target,
            name,
            apply: Arc::new(apply),
        }
    }

    /// The identity reduction on a problem: `g = id`, `f = id`.
    pub fn identity(spec: ProblemSpec) -> Self {
        let target = spec.clone();
        SeReduction::new(spec, target, |inst| {
            Ok(ReducedInstance {
                target: inst.clone(),
                embedding: Embedding::identity(inst.width()),
            })
        })
    }

    pub fn source(&self) -> &ProblemSpec {
        &self.source
    }

    pub fn target(&self) -> &ProblemSpec {
        &self.target
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn apply(&self, inst: &InstanceBundle) -> Result<ReducedInstance, CoreError> {
        if inst.spec().name() != self.source.name() {
            return Err(CoreError::SpecMismatch {
                left: inst.spec().name().to_string(),
                right: self.source.name().to_string(),
            });
        }
        (self.apply)(inst)
    }

    /// Chains two reductions; the first must target what the second starts
    /// from.
    pub fn compose(first: &SeReduction, second: &SeReduction) -> Result<SeReduction, CoreError> {
        if first.target.name() != second.source.name() {
            return Err(CoreError::SpecMismatch {
                left: first.target.name().to_string(),
                right: second.source.name().to_string(),
            });
        }
        let (a, b) = (first.clone(), second.clone());
        let mut composed =
            SeReduction::new(first.source.clone(), second.target.clone(), move |inst| {
                let mid = a.apply(inst)?;
                let out = b.apply(&mid.target)?;
                Ok(ReducedInstance {
                    target: out.target,
                    embedding: mid.embedding.then(&out.embedding)?,
                })
            });
        composed.name = format!("{}->{}", first.name, second.target.name());
        Ok(composed)
    }
}

impl fmt::Debug for SeReduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SeReduction({})", self.name)
    }
}
