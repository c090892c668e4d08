//! Model transforms that derive new problems from registered ones:
//! complement-based, literal-based, and dual models. Payloads are shared with
//! the underlying problem; only universe and solution structure change.

use nps_core::{CoreError, ModelKind, Payload, Problem, ProblemSpec, SubsetMask, UniverseElement};

enum Transform {
    /// Same-size universe with barred labels; a solution is the complement
    /// of an inner solution (the elements "assigned false").
    Complement,
    /// Doubled universe `U ∪ ~U`; each inner solution S becomes
    /// `S ∪ {~u : u ∉ S}`.
    Literal,
    /// Same universe; S is a solution exactly when `U \ S` solves the inner
    /// problem.
    Dual,
}

struct Transformed {
    inner: ProblemSpec,
    which: Transform,
    name: String,
}

impl Transformed {
    fn inner_width(&self, payload: &Payload) -> usize {
        self.inner
            .universe_size(payload)
            .expect("validated at materialization")
    }
}

impl Problem for Transformed {
    fn name(&self) -> &str {
        &self.name
    }

    fn kind(&self) -> ModelKind {
        match self.which {
            Transform::Complement => ModelKind::Variable,
            Transform::Literal | Transform::Dual => ModelKind::Literal,
        }
    }

    fn universe(&self, payload: &Payload) -> Result<Vec<UniverseElement>, CoreError> {
        let inner = self.inner.universe(payload)?;
        Ok(match self.which {
            Transform::Complement => inner
                .into_iter()
                .map(|e| UniverseElement::new(e.id, format!("~{}", e.label)))
                .collect(),
            Transform::Literal => {
                let n = inner.len();
                let mut out = inner;
                let barred: Vec<UniverseElement> = out
                    .iter()
                    .map(|e| UniverseElement::new(n + e.id, format!("~{}", e.label)))
                    .collect();
                out.extend(barred);
                out
            }
            Transform::Dual => inner,
        })
    }

    fn universe_size(&self, payload: &Payload) -> Result<usize, CoreError> {
        let n = self.inner.universe_size(payload)?;
        Ok(match self.which {
            Transform::Literal => 2 * n,
            _ => n,
        })
    }

    fn verify(&self, payload: &Payload, subset: &SubsetMask) -> bool {
        match self.which {
            Transform::Complement | Transform::Dual => {
                self.inner.verify(payload, &subset.complement())
            }
            Transform::Literal => {
                let n = self.inner_width(payload);
                let mut positive = SubsetMask::empty(n);
                for i in 0..n {
                    let pos = subset.contains(i);
                    if pos == subset.contains(n + i) {
                        return false; // exactly one of each pair
                    }
                    if pos {
                        positive.insert(i);
                    }
                }
                self.inner.verify(payload, &positive)
            }
        }
    }
}

/// Complement-based model: solutions are the complements of the inner
/// problem's solutions, under barred element labels. The inner problem must
/// be variable-based.
pub fn complement_model(inner: ProblemSpec) -> Result<ProblemSpec, CoreError> {
    if inner.kind() != ModelKind::Variable {
        return Err(CoreError::ModelPrecondition(format!(
            "complement model requires a variable-based problem, `{}` is literal-based",
            inner.name()
        )));
    }
    let name = format!("complement:{}", inner.name());
    Ok(ProblemSpec::new(Transformed {
        inner,
        which: Transform::Complement,
        name,
    }))
}

/// Literal-based model over a variable-based problem.
pub fn literal_model(inner: ProblemSpec) -> Result<ProblemSpec, CoreError> {
    if inner.kind() != ModelKind::Variable {
        return Err(CoreError::ModelPrecondition(format!(
            "literal model requires a variable-based problem, `{}` is literal-based",
            inner.name()
        )));
    }
    let name = format!("literal:{}", inner.name());
    Ok(ProblemSpec::new(Transformed {
        inner,
        which: Transform::Literal,
        name,
    }))
}

/// Dual of a literal-based problem: solutions are complements of solutions.
pub fn dual_model(inner: ProblemSpec) -> Result<ProblemSpec, CoreError> {
    if inner.kind() != ModelKind::Literal {
        return Err(CoreError::ModelPrecondition(format!(
            "dual model requires a literal-based problem, `{}` is variable-based",
            inner.name()
        )));
    }
    let name = format!("dual:{}", inner.name());
    Ok(ProblemSpec::new(Transformed {
        inner,
        which: Transform::Dual,
        name,
    }))
}
