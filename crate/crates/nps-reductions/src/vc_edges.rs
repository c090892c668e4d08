//! The vertex-cover family: reductions out of 3-SAT into the graph problems
//! and onward from vertex cover / independent set.

use std::sync::Arc;

use nps_catalog::payload::{
    CnfFormula, Graph, GraphWithBound, HittingSetInstance, PFacilityInstance, SetCoverInstance,
    UflInstance,
};
use nps_core::{Embedding, InstanceBundle, ReducedInstance, SeReduction};

use crate::registry::specs;

/// Clause padded to exactly three literal occurrences.
fn three_occurrences(clause: &[i32]) -> Vec<i32> {
    clause.iter().copied().cycle().take(3).collect()
}

fn literal_vertex(num_vars: usize, lit: i32) -> usize {
    nps_catalog::literal_element(num_vars, lit)
}

/// Shared skeleton of the 3-SAT graph constructions: literal vertices with
/// pair edges, one triangle per clause, connectors wired by `connect`.
fn sat_graph(cnf: &CnfFormula, connect: impl Fn(i32) -> i32) -> Graph {
    let n = cnf.num_vars;
    let m = cnf.clauses.len();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for i in 0..n {
        edges.push((i, n + i));
    }
    for (j, clause) in cnf.clauses.iter().enumerate() {
        let base = 2 * n + 3 * j;
        edges.push((base, base + 1));
        edges.push((base, base + 2));
        edges.push((base + 1, base + 2));
        for (slot, &lit) in three_occurrences(clause).iter().enumerate() {
            let lv = literal_vertex(n, connect(lit));
            let tv = base + slot;
            let e = (lv.min(tv), lv.max(tv));
            if !edges.contains(&e) {
                edges.push(e);
            }
        }
    }
    Graph::undirected(2 * n + 3 * m, &edges).expect("construction is well-formed")
}

/// Literal vertices plus one triangle per clause wired to the occurring
/// literals; covers of size `|L|/2 + 2|C|` restrict to satisfying literal
/// sets.
pub fn three_sat_l_to_vertex_cover() -> SeReduction {
    SeReduction::new(specs::three_sat_l(), specs::vertex_cover(), |inst| {
        let cnf: &CnfFormula = inst.payload_as()?;
        let graph = sat_graph(cnf, |lit| lit);
        let k = cnf.num_vars + 2 * cnf.clauses.len();
        let width = graph.num_vertices;
        let target =
            InstanceBundle::new(specs::vertex_cover(), Arc::new(GraphWithBound { graph, k }))?;
        Ok(ReducedInstance {
            target,
            embedding: Embedding::prefix(2 * cnf.num_vars, width)?,
        })
    })
}

/// Same skeleton with the triangles attached to the opposite literals;
/// independent sets of size `|L|/2 + |C|` restrict to satisfying literal sets.
pub fn three_sat_l_to_independent_set() -> SeReduction {
    SeReduction::new(specs::three_sat_l(), specs::independent_set(), |inst| {
        let cnf: &CnfFormula = inst.payload_as()?;
        let graph = sat_graph(cnf, |lit| -lit);
        let k = cnf.num_vars + cnf.clauses.len();
        let width = graph.num_vertices;
        let target = InstanceBundle::new(
            specs::independent_set(),
            Arc::new(GraphWithBound { graph, k }),
        )?;
        Ok(ReducedInstance {
            target,
            embedding: Embedding::prefix(2 * cnf.num_vars, width)?,
        })
    })
}

/// Complement graph, same bound, identity embedding.
pub fn is_to_clique_v() -> SeReduction {
    SeReduction::new(specs::independent_set(), specs::clique_v(), |inst| {
        let src: &GraphWithBound = inst.payload_as()?;
        let n = src.graph.num_vertices;
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if !src.graph.has_edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        let target = InstanceBundle::new(
            specs::clique_v(),
            Arc::new(GraphWithBound {
                graph: Graph::undirected(n, &edges)?,
                k: src.k,
            }),
        )?;
        Ok(ReducedInstance {
            target,
            embedding: Embedding::identity(n),
        })
    })
}

/// Doubled graph with spouse edges and four copies of every original edge;
/// `k' = 2k`, and each vertex embeds as its spouse edge. The spouse edges
/// come first in the edge list so the embedding is a prefix.
pub fn clique_v_to_clique_e() -> SeReduction {
    SeReduction::new(specs::clique_v(), specs::clique_e(), |inst| {
        let src: &GraphWithBound = inst.payload_as()?;
        let n = src.graph.num_vertices;
        // vertex v doubles to v (original) and n+v (copy)
        let mut edges: Vec<(usize, usize)> = (0..n).map(|v| (v, n + v)).collect();
        for &(u, v) in &src.graph.edges {
            edges.push((u, v));
            edges.push((v, n + u));
            edges.push((u, n + v));
            edges.push((n + u, n + v));
        }
        let e_count = edges.len();
        let target = InstanceBundle::new(
            specs::clique_e(),
            Arc::new(GraphWithBound {
                graph: Graph::undirected(2 * n, &edges)?,
                k: 2 * src.k,
            }),
        )?;
        Ok(ReducedInstance {
            target,
            embedding: Embedding::prefix(n, e_count)?,
        })
    })
}

/// Edge dominators make dominating sets mimic covers. Isolated vertices are
/// served by one guarded hub adjacent to all of them, so solutions stay free
/// to include or exclude the isolated vertices themselves.
pub fn vc_to_dominating_set() -> SeReduction {
    SeReduction::new(specs::vertex_cover(), specs::dominating_set(), |inst| {
        let src: &GraphWithBound = inst.payload_as()?;
        let n = src.graph.num_vertices;
        let mut isolated: Vec<usize> = (0..n).collect();
        for &(u, v) in &src.graph.edges {
            isolated.retain(|&x| x != u && x != v);
        }
        let k = if isolated.is_empty() {
            src.k
        } else {
            src.k + 1
        };
        let mut edges = src.graph.edges.clone();
        let mut next = n;
        for &(u, v) in &src.graph.edges {
            for _ in 0..k + 1 {
                edges.push((u.min(next), u.max(next)));
                edges.push((v.min(next), v.max(next)));
                next += 1;
            }
        }
        if !isolated.is_empty() {
            let hub = next;
            next += 1;
            for &v in &isolated {
                edges.push((v.min(hub), v.max(hub)));
            }
            for _ in 0..k + 1 {
                edges.push((hub, next));
                next += 1;
            }
        }
        let target = InstanceBundle::new(
            specs::dominating_set(),
            Arc::new(GraphWithBound {
                graph: Graph::undirected(next, &edges)?,
                k,
            }),
        )?;
        Ok(ReducedInstance {
            target,
            embedding: Embedding::prefix(n, next)?,
        })
    })
}

/// One set per vertex (its incident edges), ground set the edges.
pub fn vc_to_set_cover() -> SeReduction {
    SeReduction::new(specs::vertex_cover(), specs::set_cover(), |inst| {
        let src: &GraphWithBound = inst.payload_as()?;
        let n = src.graph.num_vertices;
        let mut sets = vec![Vec::new(); n];
        for (i, &(u, v)) in src.graph.edges.iter().enumerate() {
            sets[u].push(i + 1);
            sets[v].push(i + 1);
        }
        let target = InstanceBundle::new(
            specs::set_cover(),
            Arc::new(SetCoverInstance {
                num_elements: src.graph.edges.len(),
                sets,
                k: src.k,
            }),
        )?;
        Ok(ReducedInstance {
            target,
            embedding: Embedding::identity(n),
        })
    })
}

/// Ground set the vertices, one two-element set per edge.
pub fn vc_to_hitting_set() -> SeReduction {
    SeReduction::new(specs::vertex_cover(), specs::hitting_set(), |inst| {
        let src: &GraphWithBound = inst.payload_as()?;
        let n = src.graph.num_vertices;
        let sets: Vec<Vec<usize>> = src
            .graph
            .edges
            .iter()
            .map(|&(u, v)| vec![u + 1, v + 1])
            .collect();
        let target = InstanceBundle::new(
            specs::hitting_set(),
            Arc::new(HittingSetInstance {
                num_elements: n,
                sets,
                k: src.k,
            }),
        )?;
        Ok(ReducedInstance {
            target,
            embedding: Embedding::identity(n),
        })
    })
}

/// Bidirect every edge; feedback vertex sets are exactly the covers.
pub fn vc_to_fvs() -> SeReduction {
    SeReduction::new(specs::vertex_cover(), specs::fvs(), |inst| {
        let src: &GraphWithBound = inst.payload_as()?;
        let n = src.graph.num_vertices;
        let mut arcs = Vec::with_capacity(2 * src.graph.edges.len());
        for &(u, v) in &src.graph.edges {
            arcs.push((u, v));
            arcs.push((v, u));
        }
        let target = InstanceBundle::new(
            specs::fvs(),
            Arc::new(GraphWithBound {
                graph: Graph::directed(n, &arcs)?,
                k: src.k,
            }),
        )?;
        Ok(ReducedInstance {
            target,
            embedding: Embedding::identity(n),
        })
    })
}

/// Splits each vertex into an arc `(v_in, v_out)` and routes every edge
/// through bundles of subdivided arcs, more than the budget can cut, so only
/// the split arcs are worth removing. The bundle count `max(|V|, k) + 1`
/// stays above the budget even for degenerate `k > |V|`.
pub fn vc_to_fas() -> SeReduction {
    SeReduction::new(specs::vertex_cover(), specs::fas(), |inst| {
        let src: &GraphWithBound = inst.payload_as()?;
        let n = src.graph.num_vertices;
        let copies = n.max(src.k) + 1;
        // vertex v splits into v_in = 2v, v_out = 2v+1; spine arcs first
        let mut arcs: Vec<(usize, usize)> = (0..n).map(|v| (2 * v, 2 * v + 1)).collect();
        let mut next_mid = 2 * n;
        for &(u, v) in &src.graph.edges {
            for (from, to) in [(u, v), (v, u)] {
                for _ in 0..copies {
                    arcs.push((2 * from + 1, next_mid));
                    arcs.push((next_mid, 2 * to));
                    next_mid += 1;
                }
            }
        }
        let arc_count = arcs.len();
        let target = InstanceBundle::new(
            specs::fas(),
            Arc::new(GraphWithBound {
                graph: Graph::directed(next_mid, &arcs)?,
                k: src.k,
            }),
        )?;
        Ok(ReducedInstance {
            target,
            embedding: Embedding::prefix(n, arc_count)?,
        })
    })
}

/// Facilities are vertices, clients are edges, service cost 0 for incidence
/// and a sentinel above every feasible total otherwise.
fn cover_service_matrix(src: &GraphWithBound) -> (Vec<Vec<i64>>, i64) {
    let sentinel = (src.graph.num_vertices.max(src.k) + 1) as i64;
    let matrix = (0..src.graph.num_vertices)
        .map(|v| {
            src.graph
                .edges
                .iter()
                .map(|&(a, b)| if v == a || v == b { 0 } else { sentinel })
                .collect()
        })
        .collect();
    (matrix, sentinel)
}

pub fn vc_to_ufl() -> SeReduction {
    SeReduction::new(specs::vertex_cover(), specs::ufl(), |inst| {
        let src: &GraphWithBound = inst.payload_as()?;
        let (service, _) = cover_service_matrix(src);
        let n = src.graph.num_vertices;
        let target = InstanceBundle::new(
            specs::ufl(),
            Arc::new(UflInstance {
                open_costs: vec![1; n],
                service,
                threshold: src.k as i64,
            }),
        )?;
        Ok(ReducedInstance {
            target,
            embedding: Embedding::identity(n),
        })
    })
}

pub fn vc_to_p_center() -> SeReduction {
    SeReduction::new(specs::vertex_cover(), specs::p_center(), |inst| {
        let src: &GraphWithBound = inst.payload_as()?;
        let (service, _) = cover_service_matrix(src);
        let n = src.graph.num_vertices;
        let target = InstanceBundle::new(
            specs::p_center(),
            Arc::new(PFacilityInstance {
                service,
                p: src.k,
                threshold: 0,
            }),
        )?;
        Ok(ReducedInstance {
            target,
            embedding: Embedding::identity(n),
        })
    })
}

pub fn vc_to_p_median() -> SeReduction {
    SeReduction::new(specs::vertex_cover(), specs::p_median(), |inst| {
        let src: &GraphWithBound = inst.payload_as()?;
        let (service, _) = cover_service_matrix(src);
        let n = src.graph.num_vertices;
        let target = InstanceBundle::new(
            specs::p_median(),
            Arc::new(PFacilityInstance {
                service,
                p: src.k,
                threshold: 0,
            }),
        )?;
        Ok(ReducedInstance {
            target,
            embedding: Embedding::identity(n),
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

    fn cover_instance(n: usize, edges: &[(usize, usize)], k: usize) -> InstanceBundle {
        InstanceBundle::new(
            specs::vertex_cover(),
            Arc::new(GraphWithBound {
                graph: Graph::undirected(n, edges).unwrap(),
                k,
            }),
        )
        .unwrap()
    }

    #[test]
    fn fig_style_clause_to_cover() {
        // (~l1 v ~l2 v l3): 9 vertices, 9 edges, k = 5
        let inst = three_sat(3, &[&[-1, -2, 3]]);
        let red = three_sat_l_to_vertex_cover();
        let out = red.apply(&inst).unwrap();
        let tgt: &GraphWithBound = out.target.payload_as().unwrap();
        assert_eq!(tgt.graph.num_vertices, 9);
        assert_eq!(tgt.graph.edges.len(), 9);
        assert_eq!(tgt.k, 5);
        let report = check_se_property(&red, &inst, Cap::default()).unwrap();
        assert!(report.passed());
        assert_eq!(report.lifted, 7);
        assert_eq!(report.restricted, 7);
    }

    #[test]
    fn unsatisfiable_formula_has_no_small_cover() {
        let inst = three_sat(1, &[&[1], &[-1]]);
        let report =
            check_se_property(&three_sat_l_to_vertex_cover(), &inst, Cap::default()).unwrap();
        assert!(report.passed() && report.both_empty);
    }

    #[test]
    fn independent_set_edge() {
        let inst = three_sat(3, &[&[-1, -2, 3]]);
        let red = three_sat_l_to_independent_set();
        let out = red.apply(&inst).unwrap();
        let tgt: &GraphWithBound = out.target.payload_as().unwrap();
        assert_eq!(tgt.k, 4); // |L|/2 + |C|
        assert!(check_se_property(&red, &inst, Cap::default())
            .unwrap()
            .passed());
    }

    #[test]
    fn is_to_clique_complements() {
        let inst = InstanceBundle::new(
            specs::independent_set(),
            Arc::new(GraphWithBound {
                graph: Graph::undirected(3, &[]).unwrap(),
                k: 3,
            }),
        )
        .unwrap();
        let red = is_to_clique_v();
        let out = red.apply(&inst).unwrap();
        let tgt: &GraphWithBound = out.target.payload_as().unwrap();
        assert_eq!(tgt.graph.edges.len(), 3); // K3
        assert!(check_se_property(&red, &inst, Cap::default())
            .unwrap()
            .passed());
    }

    #[test]
    fn clique_e_on_single_edge() {
        // K2, k = 2: doubled graph is K4; the only solution is its full edge
        // set, restricting to both spouse edges.
        let inst = InstanceBundle::new(
            specs::clique_v(),
            Arc::new(GraphWithBound {
                graph: Graph::undirected(2, &[(0, 1)]).unwrap(),
                k: 2,
            }),
        )
        .unwrap();
        let red = clique_v_to_clique_e();
        let out = red.apply(&inst).unwrap();
        let tgt: &GraphWithBound = out.target.payload_as().unwrap();
        assert_eq!(tgt.graph.num_vertices, 4);
        assert_eq!(tgt.graph.edges.len(), 6);
        assert_eq!(tgt.k, 4);
        let report = check_se_property(&red, &inst, Cap::default()).unwrap();
        assert!(report.passed());
        let sols = enumerate_solutions(&out.target, Cap::default()).unwrap();
        assert_eq!(sols.len(), 1);
        assert_eq!(
            out.embedding.restrict(&sols.masks()[0]).unwrap().ids(),
            vec![0, 1]
        );
    }

    #[test]
    fn clique_e_single_vertex() {
        let inst = InstanceBundle::new(
            specs::clique_v(),
            Arc::new(GraphWithBound {
                graph: Graph::undirected(1, &[]).unwrap(),
                k: 1,
            }),
        )
        .unwrap();
        assert!(
            check_se_property(&clique_v_to_clique_e(), &inst, Cap::default())
                .unwrap()
                .passed()
        );
    }

    /// The doubling construction genuinely loses the embedding property when
    /// the graph has a clique larger than the bound: a mixed clique such as
    /// {a, a', b, c} over a triangle restricts to a single spouse edge.
    #[test]
    fn clique_e_fails_below_clique_number() {
        let inst = InstanceBundle::new(
            specs::clique_v(),
            Arc::new(GraphWithBound {
                graph: Graph::undirected(3, &[(0, 1), (0, 2), (1, 2)]).unwrap(),
                k: 2,
            }),
        )
        .unwrap();
        let report = check_se_property(&clique_v_to_clique_e(), &inst, Cap::default()).unwrap();
        assert!(!report.equal);
        assert!(!report.unexpected_in_target.is_empty());
        // at the clique number itself the construction is exact
        let at_omega = InstanceBundle::new(
            specs::clique_v(),
            Arc::new(GraphWithBound {
                graph: Graph::undirected(3, &[(0, 1), (0, 2), (1, 2)]).unwrap(),
                k: 3,
            }),
        )
        .unwrap();
        assert!(
            check_se_property(&clique_v_to_clique_e(), &at_omega, Cap::default())
                .unwrap()
                .passed()
        );
    }

    #[test]
    fn dominating_set_with_and_without_isolated_vertices() {
        let red = vc_to_dominating_set();
        for inst in [
            cover_instance(2, &[(0, 1)], 1),
            cover_instance(3, &[(0, 1), (0, 2), (1, 2)], 2),
            // isolated vertex 2: covers may or may not include it
            cover_instance(3, &[(0, 1)], 2),
            // edgeless graph: every small subset covers
            cover_instance(2, &[], 0),
        ] {
            let report = check_se_property(&red, &inst, Cap::default()).unwrap();
            assert!(report.passed(), "failed on {inst:?}");
        }
    }

    #[test]
    fn set_cover_and_hitting_set_edges() {
        for red in [vc_to_set_cover(), vc_to_hitting_set()] {
            for inst in [
                cover_instance(3, &[(0, 1), (0, 2), (1, 2)], 2),
                cover_instance(2, &[(0, 1)], 1),
                cover_instance(4, &[(0, 1), (0, 2), (0, 3)], 1),
            ] {
                assert!(check_se_property(&red, &inst, Cap::default())
                    .unwrap()
                    .passed());
            }
        }
    }

    #[test]
    fn fvs_and_fas_edges() {
        for inst in [
            cover_instance(2, &[(0, 1)], 1),
            cover_instance(3, &[(0, 1), (1, 2)], 1),
        ] {
            assert!(check_se_property(&vc_to_fvs(), &inst, Cap::default())
                .unwrap()
                .passed());
        }
        let single = cover_instance(2, &[(0, 1)], 1);
        let report = check_se_property(&vc_to_fas(), &single, Cap::new(20)).unwrap();
        assert!(report.passed());
        // silly budget above |V| still behaves
        let slack = cover_instance(2, &[(0, 1)], 3);
        assert!(check_se_property(&vc_to_fas(), &slack, Cap::new(22))
            .unwrap()
            .passed());
    }

    #[test]
    fn facility_edges() {
        let tri = || cover_instance(3, &[(0, 1), (0, 2), (1, 2)], 2);
        for red in [vc_to_ufl(), vc_to_p_center(), vc_to_p_median()] {
            assert!(check_se_property(&red, &tri(), Cap::default())
                .unwrap()
                .passed());
            let single = cover_instance(2, &[(0, 1)], 1);
            assert!(check_se_property(&red, &single, Cap::default())
                .unwrap()
                .passed());
        }
        // non-cover pair fails the p-median threshold
        let out = vc_to_p_median().apply(&tri()).unwrap();
        let bad = nps_core::SubsetMask::from_ids(3, &[1, 2]).unwrap();
        // {v1,v2} covers the triangle, {v0} alone does not
        assert!(out.target.is_solution(&bad).unwrap());
        let worse = nps_core::SubsetMask::from_ids(3, &[0]).unwrap();
        assert!(!out.target.is_solution(&worse).unwrap());
    }
}
