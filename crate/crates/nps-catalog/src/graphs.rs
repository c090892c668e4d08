//! Vertex- and edge-universe graph problems.

use nps_core::{CoreError, Payload, Problem, SubsetMask, UniverseElement};

use crate::payload::{Graph, GraphWithBound};

pub(crate) fn vertex_universe(n: usize) -> Vec<UniverseElement> {
    (0..n)
        .map(|i| UniverseElement::new(i, format!("v{i}")))
        .collect()
}

pub(crate) fn edge_universe(graph: &Graph) -> Vec<UniverseElement> {
    (0..graph.edges.len())
        .map(|i| UniverseElement::new(i, graph.edge_label(i)))
        .collect()
}

fn bound_payload<'a>(
    payload: &'a Payload,
    name: &str,
    directed: bool,
) -> Result<&'a GraphWithBound, CoreError> {
    let inst: &GraphWithBound = nps_core::payload_as(payload, name)?;
    inst.graph.validate()?;
    if inst.graph.directed != directed {
        return Err(CoreError::InvalidInstance(format!(
            "{name} expects a {} graph",
            if directed {
                "directed"
            } else {
                "an undirected"
            }
        )));
    }
    Ok(inst)
}

/// Topological-order existence over the arcs that survive a filter.
pub(crate) fn is_acyclic(
    num_vertices: usize,
    arcs: impl Iterator<Item = (usize, usize)> + Clone,
) -> bool {
    let mut indegree = vec![0usize; num_vertices];
    for (_, v) in arcs.clone() {
        indegree[v] += 1;
    }
    let mut queue: Vec<usize> = (0..num_vertices).filter(|&v| indegree[v] == 0).collect();
    let mut removed = 0;
    while let Some(v) = queue.pop() {
        removed += 1;
        for (a, b) in arcs.clone() {
            if a == v {
                indegree[b] -= 1;
                if indegree[b] == 0 {
                    queue.push(b);
                }
            }
        }
    }
    removed == num_vertices
}

macro_rules! vertex_bound_problem {
    ($ty:ident, $name:literal, $directed:expr, |$inst:ident, $subset:ident| $body:expr) => {
        pub struct $ty;

        impl Problem for $ty {
            fn name(&self) -> &str {
                $name
            }

            fn universe(&self, payload: &Payload) -> Result<Vec<UniverseElement>, CoreError> {
                let inst = bound_payload(payload, $name, $directed)?;
                Ok(vertex_universe(inst.graph.num_vertices))
            }

            fn universe_size(&self, payload: &Payload) -> Result<usize, CoreError> {
                Ok(nps_core::payload_as::<GraphWithBound>(payload, $name)?
                    .graph
                    .num_vertices)
            }

            fn verify(&self, payload: &Payload, $subset: &SubsetMask) -> bool {
                let $inst: &GraphWithBound = payload.downcast_ref().expect("payload type");
                $body
            }
        }
    };
}

vertex_bound_problem!(VertexCover, "vertex-cover", false, |inst, subset| {
    subset.count() <= inst.k
        && inst
            .graph
            .edges
            .iter()
            .all(|&(u, v)| subset.contains(u) || subset.contains(v))
});

vertex_bound_problem!(IndependentSet, "independent-set", false, |inst, subset| {
    subset.count() >= inst.k
        && inst
            .graph
            .edges
            .iter()
            .all(|&(u, v)| !(subset.contains(u) && subset.contains(v)))
});

vertex_bound_problem!(CliqueV, "clique-v", false, |inst, subset| {
    if subset.count() < inst.k {
        return false;
    }
    let ids = subset.ids();
    ids.iter()
        .enumerate()
        .all(|(pos, &u)| ids[pos + 1..].iter().all(|&v| inst.graph.has_edge(u, v)))
});

vertex_bound_problem!(DominatingSet, "dominating-set", false, |inst, subset| {
    if subset.count() > inst.k {
        return false;
    }
    let n = inst.graph.num_vertices;
    let mut dominated: Vec<bool> = (0..n).map(|v| subset.contains(v)).collect();
    for &(u, v) in &inst.graph.edges {
        if subset.contains(u) {
            dominated[v] = true;
        }
        if subset.contains(v) {
            dominated[u] = true;
        }
    }
    dominated.into_iter().all(|d| d)
});

vertex_bound_problem!(FeedbackVertexSet, "fvs", true, |inst, subset| {
    subset.count() <= inst.k
        && is_acyclic(
            inst.graph.num_vertices,
            inst.graph
                .edges
                .iter()
                .copied()
                .filter(|&(u, v)| !subset.contains(u) && !subset.contains(v)),
        )
});

/// Clique with the edge universe: a solution is the complete edge set of a
/// vertex clique spanning at least `k` vertices.
pub struct CliqueE;

impl Problem for CliqueE {
    fn name(&self) -> &str {
        "clique-e"
    }

    fn universe(&self, payload: &Payload) -> Result<Vec<UniverseElement>, CoreError> {
        let inst = bound_payload(payload, "clique-e", false)?;
        Ok(edge_universe(&inst.graph))
    }

    fn universe_size(&self, payload: &Payload) -> Result<usize, CoreError> {
        Ok(nps_core::payload_as::<GraphWithBound>(payload, "clique-e")?
            .graph
            .edges
            .len())
    }

    fn verify(&self, payload: &Payload, subset: &SubsetMask) -> bool {
        let inst: &GraphWithBound = payload.downcast_ref().expect("payload type");
        let mut span = SubsetMask::empty(inst.graph.num_vertices);
        for id in subset.ids() {
            let (u, v) = inst.graph.edges[id];
            span.insert(u);
            span.insert(v);
        }
        if span.count() < inst.k {
            return false;
        }
        // every pair of spanned vertices must be joined by an edge in S
        let span_ids = span.ids();
        for (pos, &u) in span_ids.iter().enumerate() {
            for &v in &span_ids[pos + 1..] {
                let present = inst
                    .graph
                    .edges
                    .iter()
                    .position(|&e| e == (u.min(v), u.max(v)))
                    .is_some_and(|i| subset.contains(i));
                if !present {
                    return false;
                }
            }
        }
        true
    }
}

/// Feedback arc set: the universe is the arc set.
pub struct FeedbackArcSet;

impl Problem for FeedbackArcSet {
    fn name(&self) -> &str {
        "fas"
    }

    fn universe(&self, payload: &Payload) -> Result<Vec<UniverseElement>, CoreError> {
        let inst = bound_payload(payload, "fas", true)?;
        Ok(edge_universe(&inst.graph))
    }

    fn universe_size(&self, payload: &Payload) -> Result<usize, CoreError> {
        Ok(nps_core::payload_as::<GraphWithBound>(payload, "fas")?
            .graph
            .edges
            .len())
    }

    fn verify(&self, payload: &Payload, subset: &SubsetMask) -> bool {
        let inst: &GraphWithBound = payload.downcast_ref().expect("payload type");
        subset.count() <= inst.k
            && is_acyclic(
                inst.graph.num_vertices,
                inst.graph
                    .edges
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| !subset.contains(i))
                    .map(|(_, &a)| a),
            )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nps_core::{InstanceBundle, ProblemSpec};
    use std::sync::Arc;

    pub(crate) fn bundle(problem: impl Problem + 'static, inst: GraphWithBound) -> InstanceBundle {
        InstanceBundle::new(ProblemSpec::new(problem), Arc::new(inst)).unwrap()
    }

    fn triangle(k: usize) -> GraphWithBound {
        GraphWithBound {
            graph: Graph::undirected(3, &[(0, 1), (0, 2), (1, 2)]).unwrap(),
            k,
        }
    }

    fn mask(width: usize, ids: &[usize]) -> SubsetMask {
        SubsetMask::from_ids(width, ids).unwrap()
    }

    #[test]
    fn vertex_cover_on_triangle() {
        let inst = bundle(VertexCover, triangle(2));
        assert!(inst.is_solution(&mask(3, &[0, 1])).unwrap());
        assert!(!inst.is_solution(&mask(3, &[0])).unwrap()); // edge (1,2) uncovered
    }

    #[test]
    fn clique_v_on_triangle() {
        let inst = bundle(CliqueV, triangle(3));
        assert!(inst.is_solution(&mask(3, &[0, 1, 2])).unwrap());
        assert!(!inst.is_solution(&mask(3, &[0, 1])).unwrap()); // too small
    }

    #[test]
    fn clique_e_on_triangle() {
        let inst = bundle(CliqueE, triangle(3));
        // all 3 edges: spans all 3 vertices, closed under the pair condition
        assert!(inst.is_solution(&mask(3, &[0, 1, 2])).unwrap());
        // two edges sharing a vertex: closing edge absent from S
        assert!(!inst.is_solution(&mask(3, &[0, 1])).unwrap());
        // a single edge spans 2 vertices < 3
        assert!(!inst.is_solution(&mask(3, &[0])).unwrap());
    }

    #[test]
    fn fas_and_fvs_on_two_cycle() {
        let g = Graph::directed(2, &[(0, 1), (1, 0)]).unwrap();
        let fas = bundle(
            FeedbackArcSet,
            GraphWithBound {
                graph: g.clone(),
                k: 1,
            },
        );
        assert!(fas.is_solution(&mask(2, &[0])).unwrap());
        assert!(!fas.is_solution(&mask(2, &[])).unwrap());

        let fvs = bundle(FeedbackVertexSet, GraphWithBound { graph: g, k: 1 });
        assert!(fvs.is_solution(&mask(2, &[0])).unwrap());
    }

    #[test]
    fn acyclic_dag_needs_nothing() {
        let g = Graph::directed(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let fas = bundle(FeedbackArcSet, GraphWithBound { graph: g, k: 0 });
        assert!(fas.is_solution(&mask(3, &[])).unwrap());
    }

    #[test]
    fn dominating_set_star() {
        let g = Graph::undirected(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let inst = bundle(DominatingSet, GraphWithBound { graph: g, k: 1 });
        assert!(inst.is_solution(&mask(4, &[0])).unwrap());
        assert!(!inst.is_solution(&mask(4, &[1])).unwrap());
    }
}
