//! Reductions among the satisfiability variants.

use std::sync::Arc;

use nps_catalog::payload::CnfFormula;
use nps_core::{Embedding, InstanceBundle, ReducedInstance, SeReduction};

use crate::registry::specs;

/// Literal universe to variable universe: each literal pair `(l, ~l)` gets a
/// fresh variable pair `(xt, xf)`; clause literals are substituted and the
/// pair-consistency clauses `(xt v xf)` and `(~xt v ~xf)` are appended.
pub fn sat_l_to_sat_v() -> SeReduction {
    SeReduction::new(specs::sat_l(), specs::sat_v(), |inst| {
        let cnf: &CnfFormula = inst.payload_as()?;
        let n = cnf.num_vars;
        // xt_i is variable i, xf_i is variable n+i (1-based in literals)
        let mut clauses: Vec<Vec<i32>> = cnf
            .clauses
            .iter()
            .map(|c| {
                c.iter()
                    .map(|&lit| {
                        let var = lit.unsigned_abs() as i32;
                        if lit > 0 {
                            var
                        } else {
                            n as i32 + var
                        }
                    })
                    .collect()
            })
            .collect();
        for i in 1..=n as i32 {
            clauses.push(vec![i, n as i32 + i]);
            clauses.push(vec![-i, -(n as i32 + i)]);
        }
        let target = InstanceBundle::new(
            specs::sat_v(),
            Arc::new(CnfFormula {
                num_vars: 2 * n,
                clauses,
            }),
        )?;
        Ok(ReducedInstance {
            target,
            embedding: Embedding::identity(2 * n),
        })
    })
}

/// Variable universe to literal universe: the instance is unchanged and each
/// variable embeds as its positive literal.
pub fn sat_v_to_sat_l() -> SeReduction {
    SeReduction::new(specs::sat_v(), specs::sat_l(), |inst| {
        let cnf: &CnfFormula = inst.payload_as()?;
        let n = cnf.num_vars;
        let target = InstanceBundle::new(specs::sat_l(), Arc::new(cnf.clone()))?;
        Ok(ReducedInstance {
            target,
            embedding: Embedding::prefix(n, 2 * n)?,
        })
    })
}

/// Splits every clause to length three. Long clauses chain through fresh
/// variable pairs; short clauses are padded by repeating a literal, which
/// keeps the original universe embedded by identity on labels.
pub fn sat_l_to_3sat_l() -> SeReduction {
    SeReduction::new(specs::sat_l(), specs::three_sat_l(), |inst| {
        let cnf: &CnfFormula = inst.payload_as()?;
        let n = cnf.num_vars;
        let mut next_fresh = n as i32;
        let mut clauses: Vec<Vec<i32>> = Vec::new();
        for clause in &cnf.clauses {
            match clause.len() {
                0 => unreachable!("validated"),
                1..=3 => {
                    let padded: Vec<i32> = clause
                        .iter()
                        .copied()
                        .cycle()
                        .take(3.max(clause.len()))
                        .collect();
                    clauses.push(padded[..3].to_vec());
                }
                _ => {
                    // (a1 a2 z1)(~z1 a3 z2)...(~z_last a_{m-1} a_m)
                    let m = clause.len();
                    let mut chain: Vec<i32> = Vec::new();
                    for _ in 0..m - 3 {
                        next_fresh += 1;
                        chain.push(next_fresh);
                    }
                    clauses.push(vec![clause[0], clause[1], chain[0]]);
                    for i in 0..m - 4 {
                        clauses.push(vec![-chain[i], clause[i + 2], chain[i + 1]]);
                    }
                    clauses.push(vec![-chain[m - 4], clause[m - 2], clause[m - 1]]);
                }
            }
        }
        let total_vars = next_fresh as usize;
        let target = InstanceBundle::new(
            specs::three_sat_l(),
            Arc::new(CnfFormula {
                num_vars: total_vars,
                clauses,
            }),
        )?;
        // positive literals keep their ids; negative literals shift with n'
        let mut map: Vec<usize> = (0..n).collect();
        map.extend((0..n).map(|i| total_vars + i));
        Ok(ReducedInstance {
            target,
            embedding: Embedding::new(map, 2 * total_vars)?,
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use nps_core::{check_se_property, enumerate_solutions, Cap};

    pub(crate) fn sat_l_instance(num_vars: usize, clauses: &[&[i32]]) -> InstanceBundle {
        let cnf = CnfFormula {
            num_vars,
            clauses: clauses.iter().map(|c| c.to_vec()).collect(),
        };
        InstanceBundle::new(specs::sat_l(), Arc::new(cnf)).unwrap()
    }

    fn sat_v_instance(num_vars: usize, clauses: &[&[i32]]) -> InstanceBundle {
        let cnf = CnfFormula {
            num_vars,
            clauses: clauses.iter().map(|c| c.to_vec()).collect(),
        };
        InstanceBundle::new(specs::sat_v(), Arc::new(cnf)).unwrap()
    }

    #[test]
    fn v_to_l_unit_clause() {
        let inst = sat_v_instance(1, &[&[1]]);
        let red = sat_v_to_sat_l();
        let out = red.apply(&inst).unwrap();
        assert_eq!(out.target.width(), 2);
        assert_eq!(out.embedding.table(), &[0]);
        assert!(check_se_property(&red, &inst, Cap::default())
            .unwrap()
            .passed());
    }

    #[test]
    fn l_to_v_builds_pair_clauses() {
        let inst = sat_l_instance(2, &[&[1, -2]]);
        let red = sat_l_to_sat_v();
        let out = red.apply(&inst).unwrap();
        let cnf: &CnfFormula = out.target.payload_as().unwrap();
        assert_eq!(cnf.num_vars, 4);
        assert_eq!(cnf.clauses.len(), 1 + 4);
        assert!(check_se_property(&red, &inst, Cap::default())
            .unwrap()
            .passed());
    }

    #[test]
    fn l_to_v_preserves_unsatisfiability() {
        let inst = sat_l_instance(1, &[&[1], &[-1]]);
        let report = check_se_property(&sat_l_to_sat_v(), &inst, Cap::default()).unwrap();
        assert!(report.passed() && report.both_empty);
    }

    #[test]
    fn three_sat_split_of_length_four() {
        let inst = sat_l_instance(4, &[&[1, 2, 3, 4]]);
        let red = sat_l_to_3sat_l();
        let out = red.apply(&inst).unwrap();
        let cnf: &CnfFormula = out.target.payload_as().unwrap();
        assert_eq!(cnf.num_vars, 5); // one fresh pair
        assert_eq!(cnf.clauses.len(), 2);
        assert!(check_se_property(&red, &inst, Cap::default())
            .unwrap()
            .passed());
    }

    #[test]
    fn three_sat_identity_on_short_clauses() {
        let inst = sat_l_instance(2, &[&[1, -2], &[2]]);
        let red = sat_l_to_3sat_l();
        let out = red.apply(&inst).unwrap();
        let cnf: &CnfFormula = out.target.payload_as().unwrap();
        assert_eq!(cnf.num_vars, 2);
        assert!(cnf.clauses.iter().all(|c| c.len() == 3));
        assert!(check_se_property(&red, &inst, Cap::default())
            .unwrap()
            .passed());
    }

    #[test]
    fn empty_clause_list_keeps_all_assignments() {
        let inst = sat_l_instance(2, &[]);
        let red = sat_l_to_3sat_l();
        let report = check_se_property(&red, &inst, Cap::default()).unwrap();
        assert!(report.passed());
        assert_eq!(report.source_solutions, 4);
    }

    #[test]
    fn composed_chain_through_three_sat() {
        let inst = sat_l_instance(4, &[&[1, 2, 3, 4]]);
        let chain = SeReduction::compose(
            &sat_l_to_3sat_l(),
            &crate::vc_edges::three_sat_l_to_vertex_cover(),
        )
        .unwrap();
        assert!(check_se_property(&chain, &inst, Cap::default())
            .unwrap()
            .passed());
    }

    #[test]
    fn identity_laws_against_ids() {
        let inst = sat_l_instance(2, &[&[1, -2]]);
        let red = sat_l_to_sat_v();
        let id_src = SeReduction::identity(specs::sat_l());
        let left = SeReduction::compose(&id_src, &red).unwrap();
        let right = SeReduction::compose(&red, &SeReduction::identity(specs::sat_v())).unwrap();
        let a = left.apply(&inst).unwrap();
        let b = right.apply(&inst).unwrap();
        let direct = red.apply(&inst).unwrap();
        assert_eq!(a.embedding.table(), direct.embedding.table());
        assert_eq!(b.embedding.table(), direct.embedding.table());
        let cap = Cap::default();
        let d = enumerate_solutions(&direct.target, cap).unwrap();
        assert_eq!(enumerate_solutions(&a.target, cap).unwrap(), d);
        assert_eq!(enumerate_solutions(&b.target, cap).unwrap(), d);
    }
}
