//! Routing reductions: the diamond-chain constructions out of 3-SAT and the
//! Hamiltonian chain down to TSP.

use std::sync::Arc;

use nps_catalog::payload::{CnfFormula, Graph, HamPathInstance, SteinerInstance, TspInstance};
use nps_core::{CoreError, Embedding, InstanceBundle, ReducedInstance, SeReduction};

use crate::registry::specs;

/// Distinct literals of a clause, in first-occurrence order.
fn distinct_literals(clause: &[i32]) -> Vec<i32> {
    let mut out = Vec::new();
    for &lit in clause {
        if !out.contains(&lit) {
            out.push(lit);
        }
    }
    out
}

/// Variable chains traversable in two directions with clause detours. The
/// first chain arc of each direction is the designated arc embedding that
/// literal; a chain traversed left-to-right sets the variable true.
pub fn three_sat_l_to_dham_path() -> SeReduction {
    SeReduction::new(specs::three_sat_l(), specs::dham_path(), |inst| {
        let cnf: &CnfFormula = inst.payload_as()?;
        let n = cnf.num_vars;
        let m = cnf.clauses.len();
        let source = 0usize;
        let sink = 1usize;
        if n == 0 {
            let graph = Graph::directed(2, &[(source, sink)])?;
            let target = InstanceBundle::new(
                specs::dham_path(),
                Arc::new(HamPathInstance {
                    graph,
                    source,
                    sink,
                }),
            )?;
            return Ok(ReducedInstance {
                target,
                embedding: Embedding::new(vec![], 1)?,
            });
        }
        let positions = 2 * m + 2;
        // chain node p (1-based) of diamond i (1-based)
        let node = |i: usize, p: usize| 2 + (i - 1) * positions + (p - 1);
        let clause_node = |j: usize| 2 + n * positions + (j - 1); // 1-based
        let mut arcs: Vec<(usize, usize)> = Vec::new();
        // designated arcs first: true arcs for each diamond, then false arcs
        for i in 1..=n {
            arcs.push((node(i, 1), node(i, 2)));
        }
        for i in 1..=n {
            arcs.push((node(i, positions), node(i, positions - 1)));
        }
        // remaining chain arcs in both directions
        for i in 1..=n {
            for p in 1..positions {
                if p != 1 {
                    arcs.push((node(i, p), node(i, p + 1)));
                }
                if p != positions - 1 {
                    arcs.push((node(i, p + 1), node(i, p)));
                }
            }
        }
        // entry, inter-diamond drops, exit
        arcs.push((source, node(1, 1)));
        arcs.push((source, node(1, positions)));
        for i in 1..n {
            for from in [node(i, 1), node(i, positions)] {
                arcs.push((from, node(i + 1, 1)));
                arcs.push((from, node(i + 1, positions)));
            }
        }
        arcs.push((node(n, 1), sink));
        arcs.push((node(n, positions), sink));
        // clause detours: slot (2j, 2j+1) read forwards for a positive
        // literal, backwards for a negative one
        for (j0, clause) in cnf.clauses.iter().enumerate() {
            let j = j0 + 1;
            let q = clause_node(j);
            for lit in distinct_literals(clause) {
                let i = lit.unsigned_abs() as usize;
                let (a, b) = (node(i, 2 * j), node(i, 2 * j + 1));
                if lit > 0 {
                    arcs.push((a, q));
                    arcs.push((q, b));
                } else {
                    arcs.push((b, q));
                    arcs.push((q, a));
                }
            }
        }
        let arc_count = arcs.len();
        let graph = Graph::directed(2 + n * positions + m, &arcs)?;
        let target = InstanceBundle::new(
            specs::dham_path(),
            Arc::new(HamPathInstance {
                graph,
                source,
                sink,
            }),
        )?;
        Ok(ReducedInstance {
            target,
            embedding: Embedding::prefix(2 * n, arc_count)?,
        })
    })
}

/// Closes the path problem into a cycle problem by one return arc.
pub fn dham_path_to_dham_cycle() -> SeReduction {
    SeReduction::new(specs::dham_path(), specs::dham_cycle(), |inst| {
        let src: &HamPathInstance = inst.payload_as()?;
        let mut arcs = src.graph.edges.clone();
        let back = (src.sink, src.source);
        if src.source == src.sink || arcs.contains(&back) {
            return Err(CoreError::InvalidInstance(
                "path instance cannot be closed: return arc already present or s = t".into(),
            ));
        }
        arcs.push(back);
        let arc_count = arcs.len();
        let graph = Graph::directed(src.graph.num_vertices, &arcs)?;
        let target = InstanceBundle::new(specs::dham_cycle(), Arc::new(graph))?;
        Ok(ReducedInstance {
            target,
            embedding: Embedding::prefix(arc_count - 1, arc_count)?,
        })
    })
}

/// Splits every vertex into an in-mid-out path; each arc becomes the
/// connector edge between its tail's out-node and its head's in-node.
pub fn dham_cycle_to_uham_cycle() -> SeReduction {
    SeReduction::new(specs::dham_cycle(), specs::uham_cycle(), |inst| {
        let g: &Graph = inst.payload_as()?;
        let n = g.num_vertices;
        let (node_in, node_mid, node_out) =
            (|v: usize| 3 * v, |v: usize| 3 * v + 1, |v: usize| 3 * v + 2);
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for &(u, v) in &g.edges {
            edges.push((node_out(u).min(node_in(v)), node_out(u).max(node_in(v))));
        }
        for v in 0..n {
            edges.push((node_in(v), node_mid(v)));
            edges.push((node_mid(v), node_out(v)));
        }
        let e_count = edges.len();
        let graph = Graph::undirected(3 * n, &edges)?;
        let target = InstanceBundle::new(specs::uham_cycle(), Arc::new(graph))?;
        Ok(ReducedInstance {
            target,
            embedding: Embedding::prefix(g.edges.len(), e_count)?,
        })
    })
}

/// Completes the graph with weight-1 edges, original edges weigh 0, budget 0.
pub fn uham_cycle_to_tsp() -> SeReduction {
    SeReduction::new(specs::uham_cycle(), specs::tsp(), |inst| {
        let g: &Graph = inst.payload_as()?;
        let n = g.num_vertices;
        let mut edges = g.edges.clone();
        let mut weights = vec![0i64; edges.len()];
        for u in 0..n {
            for v in (u + 1)..n {
                if !g.has_edge(u, v) {
                    edges.push((u, v));
                    weights.push(1);
                }
            }
        }
        let e_count = edges.len();
        let graph = Graph::undirected(n, &edges)?.with_weights(weights)?;
        let target = InstanceBundle::new(
            specs::tsp(),
            Arc::new(TspInstance {
                graph,
                threshold: 0,
            }),
        )?;
        Ok(ReducedInstance {
            target,
            embedding: Embedding::prefix(g.edges.len(), e_count)?,
        })
    })
}

/// Diamond chain of literal vertices between two terminals, with every
/// clause hanging off its literals by long unit-cost paths. Budget
/// `|L| + |C| (|L| + 1)` forces one diamond side per variable and one path
/// per clause.
pub fn three_sat_l_to_steiner_tree() -> SeReduction {
    SeReduction::new(specs::three_sat_l(), specs::steiner_tree(), |inst| {
        let cnf: &CnfFormula = inst.payload_as()?;
        let n = cnf.num_vars;
        let m = cnf.clauses.len();
        if n == 0 {
            let graph = Graph::undirected(1, &[])?.with_weights(vec![])?;
            let target = InstanceBundle::new(
                specs::steiner_tree(),
                Arc::new(SteinerInstance {
                    graph,
                    terminals: vec![0],
                    bound: 0,
                }),
            )?;
            return Ok(ReducedInstance {
                target,
                embedding: Embedding::new(vec![], 0)?,
            });
        }
        let lit_count = 2 * n;
        let s = 0usize;
        let t = 1usize;
        // hubs: hub(0) = s, hub(n) = t, hub(i) fresh for 0 < i < n
        let hub = |i: usize| match i {
            0 => s,
            x if x == n => t,
            x => 1 + x,
        };
        let pos = |i: usize| n + 1 + (i - 1); // literal l_i, 1-based
        let neg = |i: usize| n + 1 + n + (i - 1);
        let clause_terminal = |j: usize| n + 1 + 2 * n + (j - 1); // 1-based
        let mut next_vertex = n + 1 + 2 * n + m;
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let push = |edges: &mut Vec<(usize, usize)>, a: usize, b: usize| {
            edges.push((a.min(b), a.max(b)));
        };
        // designated first-half edges, ordered like the literal universe
        for i in 1..=n {
            push(&mut edges, hub(i - 1), pos(i));
        }
        for i in 1..=n {
            push(&mut edges, hub(i - 1), neg(i));
        }
        // second-half diamond edges
        for i in 1..=n {
            push(&mut edges, pos(i), hub(i));
            push(&mut edges, neg(i), hub(i));
        }
        // clause paths of length |L| + 1
        for (j0, clause) in cnf.clauses.iter().enumerate() {
            let term = clause_terminal(j0 + 1);
            for lit in distinct_literals(clause) {
                let i = lit.unsigned_abs() as usize;
                let lit_vertex = if lit > 0 { pos(i) } else { neg(i) };
                let mut prev = term;
                for _ in 0..lit_count {
                    push(&mut edges, prev, next_vertex);
                    prev = next_vertex;
                    next_vertex += 1;
                }
                push(&mut edges, prev, lit_vertex);
            }
        }
        let e_count = edges.len();
        let weights = vec![1i64; e_count];
        let graph = Graph::undirected(next_vertex, &edges)?.with_weights(weights)?;
        let mut terminals = vec![s, t];
        terminals.extend((1..=m).map(clause_terminal));
        let bound = (lit_count + m * (lit_count + 1)) as i64;
        let target = InstanceBundle::new(
            specs::steiner_tree(),
            Arc::new(SteinerInstance {
                graph,
                terminals,
                bound,
            }),
        )?;
        Ok(ReducedInstance {
            target,
            embedding: Embedding::prefix(lit_count, e_count)?,
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use nps_core::{check_se_property, enumerate_solutions, Cap};

    fn three_sat(num_vars: usize, clauses: &[&[i32]]) -> InstanceBundle {
        let cnf = CnfFormula {
            num_vars,
            clauses: clauses.iter().map(|c| c.to_vec()).collect(),
        };
        InstanceBundle::new(specs::three_sat_l(), Arc::new(cnf)).unwrap()
    }

    #[test]
    fn ham_path_single_variable_single_clause() {
        let inst = three_sat(1, &[&[1, 1, 1]]);
        let red = three_sat_l_to_dham_path();
        let report = check_se_property(&red, &inst, Cap::default()).unwrap();
        assert!(report.passed());
        assert_eq!(report.source_solutions, 1); // only l1 satisfies
    }

    #[test]
    fn ham_path_negative_clause() {
        let inst = three_sat(1, &[&[-1, -1, -1]]);
        let report = check_se_property(&three_sat_l_to_dham_path(), &inst, Cap::default()).unwrap();
        assert!(report.passed());
        assert_eq!(report.source_solutions, 1);
    }

    #[test]
    fn ham_path_unsatisfiable() {
        let inst = three_sat(1, &[&[1, 1, 1], &[-1, -1, -1]]);
        let report = check_se_property(&three_sat_l_to_dham_path(), &inst, Cap::new(20)).unwrap();
        assert!(report.passed() && report.both_empty);
    }

    #[test]
    fn ham_path_no_clauses() {
        let inst = three_sat(2, &[]);
        let report = check_se_property(&three_sat_l_to_dham_path(), &inst, Cap::new(20)).unwrap();
        assert!(report.passed());
        assert_eq!(report.source_solutions, 4);
    }

    #[test]
    fn cycle_from_path() {
        let g = Graph::directed(3, &[(0, 2), (2, 1)]).unwrap();
        let inst = InstanceBundle::new(
            specs::dham_path(),
            Arc::new(HamPathInstance {
                graph: g,
                source: 0,
                sink: 1,
            }),
        )
        .unwrap();
        let red = dham_path_to_dham_cycle();
        assert!(check_se_property(&red, &inst, Cap::default())
            .unwrap()
            .passed());
    }

    #[test]
    fn three_split_of_directed_cycle() {
        let g = Graph::directed(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let inst = InstanceBundle::new(specs::dham_cycle(), Arc::new(g)).unwrap();
        let red = dham_cycle_to_uham_cycle();
        let out = red.apply(&inst).unwrap();
        assert_eq!(out.target.width(), 3 + 6);
        let report = check_se_property(&red, &inst, Cap::default()).unwrap();
        assert!(report.passed());
        assert_eq!(report.source_solutions, 1);
    }

    #[test]
    fn three_split_of_two_cycle() {
        let g = Graph::directed(2, &[(0, 1), (1, 0)]).unwrap();
        let inst = InstanceBundle::new(specs::dham_cycle(), Arc::new(g)).unwrap();
        assert!(
            check_se_property(&dham_cycle_to_uham_cycle(), &inst, Cap::default())
                .unwrap()
                .passed()
        );
    }

    #[test]
    fn tsp_completion_of_triangle() {
        let g = Graph::undirected(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let inst = InstanceBundle::new(specs::uham_cycle(), Arc::new(g)).unwrap();
        let red = uham_cycle_to_tsp();
        let report = check_se_property(&red, &inst, Cap::default()).unwrap();
        assert!(report.passed());
        assert_eq!(report.source_solutions, 1);
    }

    #[test]
    fn tsp_completion_of_sparse_graph() {
        let g = Graph::undirected(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let inst = InstanceBundle::new(specs::uham_cycle(), Arc::new(g)).unwrap();
        assert!(
            check_se_property(&uham_cycle_to_tsp(), &inst, Cap::default())
                .unwrap()
                .passed()
        );
    }

    #[test]
    fn steiner_single_variable_single_clause() {
        let inst = three_sat(1, &[&[1, 1, 1]]);
        let red = three_sat_l_to_steiner_tree();
        let out = red.apply(&inst).unwrap();
        let tgt: &SteinerInstance = out.target.payload_as().unwrap();
        // chain 4 edges + one path of |L|+1 = 3 edges per distinct literal
        assert_eq!(tgt.bound, 2 + 3);
        assert_eq!(out.target.width(), 4 + 3);
        let report = check_se_property(&red, &inst, Cap::default()).unwrap();
        assert!(report.passed());
    }

    #[test]
    fn steiner_unsatisfiable_and_empty() {
        let unsat = three_sat(1, &[&[1, 1, 1], &[-1, -1, -1]]);
        let report =
            check_se_property(&three_sat_l_to_steiner_tree(), &unsat, Cap::new(20)).unwrap();
        assert!(report.passed() && report.both_empty);

        let chain_only = three_sat(2, &[]);
        let report =
            check_se_property(&three_sat_l_to_steiner_tree(), &chain_only, Cap::new(20)).unwrap();
        assert!(report.passed());
        assert_eq!(report.source_solutions, 4);
    }

    #[test]
    fn path_solutions_use_one_designated_arc_per_variable() {
        let inst = three_sat(1, &[&[1, 1, 1]]);
        let out = three_sat_l_to_dham_path().apply(&inst).unwrap();
        let sols = enumerate_solutions(&out.target, Cap::default()).unwrap();
        assert!(!sols.is_empty());
        let image = out.embedding.image_mask();
        for s in sols.iter() {
            assert_eq!(s.intersect(&image).count(), 1);
        }
    }
}
