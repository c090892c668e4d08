//! Satisfiability problems in variable-based and literal-based form.

use nps_core::{CoreError, ModelKind, Payload, Problem, SubsetMask, UniverseElement};

use crate::payload::CnfFormula;

/// Universe element id of a signed literal in the literal-based layout
/// `l1..ln, ~l1..~ln`.
pub fn literal_element(num_vars: usize, lit: i32) -> usize {
    let var = lit.unsigned_abs() as usize - 1;
    if lit > 0 {
        var
    } else {
        num_vars + var
    }
}

fn variable_universe(n: usize) -> Vec<UniverseElement> {
    (0..n)
        .map(|i| UniverseElement::new(i, format!("x{}", i + 1)))
        .collect()
}

fn literal_universe(n: usize) -> Vec<UniverseElement> {
    let mut out: Vec<UniverseElement> = (0..n)
        .map(|i| UniverseElement::new(i, format!("l{}", i + 1)))
        .collect();
    out.extend((0..n).map(|i| UniverseElement::new(n + i, format!("~l{}", i + 1))));
    out
}

fn clause_satisfied_by_vars(clause: &[i32], truth: &SubsetMask) -> bool {
    clause.iter().any(|&lit| {
        let var = lit.unsigned_abs() as usize - 1;
        (lit > 0) == truth.contains(var)
    })
}

/// SAT with the variable universe: a solution is the set of true variables
/// of a satisfying assignment.
pub struct SatV {
    name: &'static str,
    max_clause: Option<usize>,
}

impl SatV {
    pub const SAT: SatV = SatV {
        name: "sat-v",
        max_clause: None,
    };
    pub const THREE_SAT: SatV = SatV {
        name: "3sat-v",
        max_clause: Some(3),
    };
}

impl Problem for SatV {
    fn name(&self) -> &str {
        self.name
    }

    fn universe(&self, payload: &Payload) -> Result<Vec<UniverseElement>, CoreError> {
        let cnf: &CnfFormula = nps_core::payload_as(payload, self.name)?;
        cnf.validate()?;
        if let Some(max) = self.max_clause {
            if cnf.max_clause_len() > max {
                return Err(CoreError::InvalidInstance(format!(
                    "clause longer than {max} in a {}-instance",
                    self.name
                )));
            }
        }
        Ok(variable_universe(cnf.num_vars))
    }

    fn universe_size(&self, payload: &Payload) -> Result<usize, CoreError> {
        Ok(nps_core::payload_as::<CnfFormula>(payload, self.name)?.num_vars)
    }

    fn verify(&self, payload: &Payload, subset: &SubsetMask) -> bool {
        let cnf: &CnfFormula = payload.downcast_ref().expect("payload type");
        cnf.clauses
            .iter()
            .all(|c| clause_satisfied_by_vars(c, subset))
    }
}

/// SAT with the literal universe: a solution picks exactly one of each
/// complementary literal pair and intersects every clause.
pub struct SatL {
    name: &'static str,
    max_clause: Option<usize>,
}

impl SatL {
    pub const SAT: SatL = SatL {
        name: "sat-l",
        max_clause: None,
    };
    pub const THREE_SAT: SatL = SatL {
        name: "3sat-l",
        max_clause: Some(3),
    };
}

impl Problem for SatL {
    fn name(&self) -> &str {
        self.name
    }

    fn kind(&self) -> ModelKind {
        ModelKind::Literal
    }

    fn universe(&self, payload: &Payload) -> Result<Vec<UniverseElement>, CoreError> {
        let cnf: &CnfFormula = nps_core::payload_as(payload, self.name)?;
        cnf.validate()?;
        if let Some(max) = self.max_clause {
            if cnf.max_clause_len() > max {
                return Err(CoreError::InvalidInstance(format!(
                    "clause longer than {max} in a {}-instance",
                    self.name
                )));
            }
        }
        Ok(literal_universe(cnf.num_vars))
    }

    fn universe_size(&self, payload: &Payload) -> Result<usize, CoreError> {
        Ok(nps_core::payload_as::<CnfFormula>(payload, self.name)?.num_vars * 2)
    }

    fn verify(&self, payload: &Payload, subset: &SubsetMask) -> bool {
        let cnf: &CnfFormula = payload.downcast_ref().expect("payload type");
        let n = cnf.num_vars;
        for i in 0..n {
            if subset.contains(i) == subset.contains(n + i) {
                return false;
            }
        }
        cnf.clauses.iter().all(|clause| {
            clause
                .iter()
                .any(|&lit| subset.contains(literal_element(n, lit)))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nps_core::{enumerate_solutions, Cap, InstanceBundle, ProblemSpec};
    use std::sync::Arc;

    fn sat_l(num_vars: usize, clauses: &[&[i32]]) -> InstanceBundle {
        let cnf = CnfFormula {
            num_vars,
            clauses: clauses.iter().map(|c| c.to_vec()).collect(),
        };
        InstanceBundle::new(ProblemSpec::new(SatL::SAT), Arc::new(cnf)).unwrap()
    }

    fn sat_v(num_vars: usize, clauses: &[&[i32]]) -> InstanceBundle {
        let cnf = CnfFormula {
            num_vars,
            clauses: clauses.iter().map(|c| c.to_vec()).collect(),
        };
        InstanceBundle::new(ProblemSpec::new(SatV::SAT), Arc::new(cnf)).unwrap()
    }

    #[test]
    fn unit_clause_forces_assignment() {
        let inst = sat_v(1, &[&[1]]);
        let sols = enumerate_solutions(&inst, Cap::default()).unwrap();
        assert_eq!(sols.len(), 1);
        assert_eq!(sols.masks()[0].ids(), vec![0]);
    }

    #[test]
    fn contradiction_has_no_solutions() {
        let inst = sat_v(1, &[&[1], &[-1]]);
        assert!(enumerate_solutions(&inst, Cap::default())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn literal_clause_drops_one_assignment() {
        // (~l1 v ~l2 v l3): all assignments except l1=l2=1, l3=0 satisfy.
        // Independent count: 8 assignments, exactly one violates -> 7.
        let inst = sat_l(3, &[&[-1, -2, 3]]);
        let sols = enumerate_solutions(&inst, Cap::default()).unwrap();
        assert_eq!(sols.len(), 7);
        for s in sols.iter() {
            assert_eq!(s.count(), 3);
        }
    }

    #[test]
    fn literal_pair_violation_rejected() {
        let inst = sat_l(3, &[&[-1, -2, 3]]);
        // l1 and ~l1 both picked
        let bad = SubsetMask::from_ids(6, &[0, 3, 1, 2]).unwrap();
        assert!(!inst.is_solution(&bad).unwrap());
        // one per pair, clause hit through ~l1
        let good = SubsetMask::from_ids(6, &[3, 1, 2]).unwrap();
        assert!(inst.is_solution(&good).unwrap());
    }

    #[test]
    fn sat_v_example_from_two_clauses() {
        let inst = sat_v(2, &[&[1, 2], &[-1, -2]]);
        assert!(inst
            .is_solution(&SubsetMask::from_ids(2, &[0]).unwrap())
            .unwrap());
        let sols = enumerate_solutions(&inst, Cap::default()).unwrap();
        assert_eq!(sols.len(), 2); // x1 alone or x2 alone
    }

    #[test]
    fn three_sat_rejects_long_clauses() {
        let cnf = CnfFormula {
            num_vars: 4,
            clauses: vec![vec![1, 2, 3, 4]],
        };
        let err = InstanceBundle::new(ProblemSpec::new(SatL::THREE_SAT), Arc::new(cnf));
        assert!(err.is_err());
    }
}
