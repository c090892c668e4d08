//! Arc- and edge-universe routing problems: Hamiltonian paths and cycles,
//! TSP, and Steiner tree.

use nps_core::{CoreError, Payload, Problem, SubsetMask, UniverseElement};

use crate::graphs::edge_universe;
use crate::payload::{Graph, HamPathInstance, SteinerInstance, TspInstance};

fn directed_degrees(graph: &Graph, subset: &SubsetMask) -> (Vec<usize>, Vec<usize>) {
    let mut indeg = vec![0usize; graph.num_vertices];
    let mut outdeg = vec![0usize; graph.num_vertices];
    for i in subset.ids() {
        let (u, v) = graph.edges[i];
        outdeg[u] += 1;
        indeg[v] += 1;
    }
    (indeg, outdeg)
}

/// Follows unique out-arcs from `start`, counting distinct visited vertices.
fn walk_directed(graph: &Graph, subset: &SubsetMask, start: usize) -> usize {
    let mut next = vec![usize::MAX; graph.num_vertices];
    for i in subset.ids() {
        let (u, v) = graph.edges[i];
        next[u] = v;
    }
    let mut seen = vec![false; graph.num_vertices];
    let mut cur = start;
    let mut count = 0;
    while !seen[cur] {
        seen[cur] = true;
        count += 1;
        if next[cur] == usize::MAX {
            break;
        }
        cur = next[cur];
    }
    count
}

fn is_directed_ham_cycle(graph: &Graph, subset: &SubsetMask) -> bool {
    let n = graph.num_vertices;
    if n == 0 || subset.count() != n {
        return false;
    }
    let (indeg, outdeg) = directed_degrees(graph, subset);
    if indeg.iter().any(|&d| d != 1) || outdeg.iter().any(|&d| d != 1) {
        return false;
    }
    walk_directed(graph, subset, 0) == n
}

fn is_undirected_ham_cycle(graph: &Graph, subset: &SubsetMask) -> bool {
    let n = graph.num_vertices;
    if n < 3 || subset.count() != n {
        return false;
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in subset.ids() {
        let (u, v) = graph.edges[i];
        adj[u].push(v);
        adj[v].push(u);
    }
    if adj.iter().any(|a| a.len() != 2) {
        return false;
    }
    // follow the cycle from vertex 0
    let mut seen = vec![false; n];
    let (mut prev, mut cur) = (usize::MAX, 0);
    let mut count = 0;
    while !seen[cur] {
        seen[cur] = true;
        count += 1;
        let step = adj[cur].iter().copied().find(|&x| x != prev);
        match step {
            Some(nxt) => {
                prev = cur;
                cur = nxt;
            }
            None => break,
        }
    }
    count == n
}

pub struct DirectedHamPath;

impl Problem for DirectedHamPath {
    fn name(&self) -> &str {
        "dham-path"
    }

    fn universe(&self, payload: &Payload) -> Result<Vec<UniverseElement>, CoreError> {
        let inst: &HamPathInstance = nps_core::payload_as(payload, self.name())?;
        inst.graph.validate()?;
        if !inst.graph.directed {
            return Err(CoreError::InvalidInstance(
                "dham-path expects a directed graph".into(),
            ));
        }
        if inst.source >= inst.graph.num_vertices || inst.sink >= inst.graph.num_vertices {
            return Err(CoreError::InvalidInstance(
                "path endpoints out of range".into(),
            ));
        }
        Ok(edge_universe(&inst.graph))
    }

    fn universe_size(&self, payload: &Payload) -> Result<usize, CoreError> {
        Ok(
            nps_core::payload_as::<HamPathInstance>(payload, self.name())?
                .graph
                .edges
                .len(),
        )
    }

    fn verify(&self, payload: &Payload, subset: &SubsetMask) -> bool {
        let inst: &HamPathInstance = payload.downcast_ref().expect("payload type");
        let g = &inst.graph;
        let n = g.num_vertices;
        if n == 0 {
            return false;
        }
        if n == 1 {
            return inst.source == inst.sink && subset.is_empty();
        }
        if inst.source == inst.sink || subset.count() != n - 1 {
            return false;
        }
        let (indeg, outdeg) = directed_degrees(g, subset);
        for v in 0..n {
            let want_in = if v == inst.source { 0 } else { 1 };
            let want_out = if v == inst.sink { 0 } else { 1 };
            if indeg[v] != want_in || outdeg[v] != want_out {
                return false;
            }
        }
        walk_directed(g, subset, inst.source) == n
    }
}

pub struct DirectedHamCycle;

impl Problem for DirectedHamCycle {
    fn name(&self) -> &str {
        "dham-cycle"
    }

    fn universe(&self, payload: &Payload) -> Result<Vec<UniverseElement>, CoreError> {
        let g: &Graph = nps_core::payload_as(payload, self.name())?;
        g.validate()?;
        if !g.directed {
            return Err(CoreError::InvalidInstance(
                "dham-cycle expects a directed graph".into(),
            ));
        }
        Ok(edge_universe(g))
    }

    fn universe_size(&self, payload: &Payload) -> Result<usize, CoreError> {
        Ok(nps_core::payload_as::<Graph>(payload, self.name())?
            .edges
            .len())
    }

    fn verify(&self, payload: &Payload, subset: &SubsetMask) -> bool {
        let g: &Graph = payload.downcast_ref().expect("payload type");
        is_directed_ham_cycle(g, subset)
    }
}

pub struct UndirectedHamCycle;

impl Problem for UndirectedHamCycle {
    fn name(&self) -> &str {
        "uham-cycle"
    }

    fn universe(&self, payload: &Payload) -> Result<Vec<UniverseElement>, CoreError> {
        let g: &Graph = nps_core::payload_as(payload, self.name())?;
        g.validate()?;
        if g.directed {
            return Err(CoreError::InvalidInstance(
                "uham-cycle expects an undirected graph".into(),
            ));
        }
        Ok(edge_universe(g))
    }

    fn universe_size(&self, payload: &Payload) -> Result<usize, CoreError> {
        Ok(nps_core::payload_as::<Graph>(payload, self.name())?
            .edges
            .len())
    }

    fn verify(&self, payload: &Payload, subset: &SubsetMask) -> bool {
        let g: &Graph = payload.downcast_ref().expect("payload type");
        is_undirected_ham_cycle(g, subset)
    }
}

pub struct Tsp;

impl Problem for Tsp {
    fn name(&self) -> &str {
        "tsp"
    }

    fn universe(&self, payload: &Payload) -> Result<Vec<UniverseElement>, CoreError> {
        let inst: &TspInstance = nps_core::payload_as(payload, self.name())?;
        inst.graph.validate()?;
        if inst.graph.directed || !inst.graph.is_complete() {
            return Err(CoreError::InvalidInstance(
                "tsp expects a complete undirected graph".into(),
            ));
        }
        if inst.graph.weights.is_none() {
            return Err(CoreError::InvalidInstance(
                "tsp requires edge weights".into(),
            ));
        }
        Ok(edge_universe(&inst.graph))
    }

    fn universe_size(&self, payload: &Payload) -> Result<usize, CoreError> {
        Ok(nps_core::payload_as::<TspInstance>(payload, self.name())?
            .graph
            .edges
            .len())
    }

    fn verify(&self, payload: &Payload, subset: &SubsetMask) -> bool {
        let inst: &TspInstance = payload.downcast_ref().expect("payload type");
        if !is_undirected_ham_cycle(&inst.graph, subset) {
            return false;
        }
        let weights = inst.graph.weights.as_ref().expect("validated");
        let total: i64 = subset.ids().into_iter().map(|i| weights[i]).sum();
        total <= inst.threshold
    }
}

pub struct SteinerTree;

impl Problem for SteinerTree {
    fn name(&self) -> &str {
        "steiner-tree"
    }

    fn universe(&self, payload: &Payload) -> Result<Vec<UniverseElement>, CoreError> {
        let inst: &SteinerInstance = nps_core::payload_as(payload, self.name())?;
        inst.graph.validate()?;
        if inst.graph.directed {
            return Err(CoreError::InvalidInstance(
                "steiner-tree expects an undirected graph".into(),
            ));
        }
        if inst.graph.weights.is_none() {
            return Err(CoreError::InvalidInstance(
                "steiner-tree requires edge weights".into(),
            ));
        }
        if inst.terminals.iter().any(|&t| t >= inst.graph.num_vertices) {
            return Err(CoreError::InvalidInstance("terminal out of range".into()));
        }
        Ok(edge_universe(&inst.graph))
    }

    fn universe_size(&self, payload: &Payload) -> Result<usize, CoreError> {
        Ok(
            nps_core::payload_as::<SteinerInstance>(payload, self.name())?
                .graph
                .edges
                .len(),
        )
    }

    fn verify(&self, payload: &Payload, subset: &SubsetMask) -> bool {
        let inst: &SteinerInstance = payload.downcast_ref().expect("payload type");
        let weights = inst.graph.weights.as_ref().expect("validated");
        let total: i64 = subset.ids().into_iter().map(|i| weights[i]).sum();
        if total > inst.bound {
            return false;
        }
        // touched vertices and union-find over selected edges
        let n = inst.graph.num_vertices;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let r = find(parent, parent[x]);
                parent[x] = r;
            }
            parent[x]
        }
        let mut touched = SubsetMask::empty(n);
        let mut components_merged = 0usize;
        for i in subset.ids() {
            let (u, v) = inst.graph.edges[i];
            touched.insert(u);
            touched.insert(v);
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru == rv {
                return false; // cycle
            }
            parent[ru] = rv;
            components_merged += 1;
        }
        let touched_count = touched.count();
        if touched_count > 0 && components_merged != touched_count - 1 {
            return false; // forest with more than one component
        }
        // all terminals lie in the single tree component (or coincide when empty)
        match inst.terminals.split_first() {
            None => true,
            Some((&first, rest)) => {
                if subset.is_empty() {
                    return rest.iter().all(|&t| t == first);
                }
                if !touched.contains(first) {
                    return false;
                }
                let root = find(&mut parent, first);
                rest.iter()
                    .all(|&t| touched.contains(t) && find(&mut parent, t) == root)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nps_core::{InstanceBundle, ProblemSpec};
    use std::sync::Arc;

    fn mask(width: usize, ids: &[usize]) -> SubsetMask {
        SubsetMask::from_ids(width, ids).unwrap()
    }

    #[test]
    fn directed_three_cycle() {
        let g = Graph::directed(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let inst = InstanceBundle::new(ProblemSpec::new(DirectedHamCycle), Arc::new(g)).unwrap();
        assert!(inst.is_solution(&mask(3, &[0, 1, 2])).unwrap());
        assert!(!inst.is_solution(&mask(3, &[0, 1])).unwrap());
    }

    #[test]
    fn dham_path_with_stray_arc() {
        let g = Graph::directed(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let inst = InstanceBundle::new(
            ProblemSpec::new(DirectedHamPath),
            Arc::new(HamPathInstance {
                graph: g,
                source: 0,
                sink: 2,
            }),
        )
        .unwrap();
        assert!(inst.is_solution(&mask(3, &[0, 1])).unwrap());
        assert!(!inst.is_solution(&mask(3, &[0, 2])).unwrap());
    }

    #[test]
    fn zero_weight_tsp_triangle() {
        let g = Graph::undirected(3, &[(0, 1), (0, 2), (1, 2)])
            .unwrap()
            .with_weights(vec![0, 0, 0])
            .unwrap();
        let inst = InstanceBundle::new(
            ProblemSpec::new(Tsp),
            Arc::new(TspInstance {
                graph: g,
                threshold: 0,
            }),
        )
        .unwrap();
        assert!(inst.is_solution(&mask(3, &[0, 1, 2])).unwrap());
    }

    #[test]
    fn tsp_rejects_incomplete_graphs() {
        let g = Graph::undirected(3, &[(0, 1)])
            .unwrap()
            .with_weights(vec![0])
            .unwrap();
        assert!(InstanceBundle::new(
            ProblemSpec::new(Tsp),
            Arc::new(TspInstance {
                graph: g,
                threshold: 0
            })
        )
        .is_err());
    }

    #[test]
    fn steiner_path_between_terminals() {
        let g = Graph::undirected(3, &[(0, 1), (1, 2)])
            .unwrap()
            .with_weights(vec![1, 1])
            .unwrap();
        let mk = |bound| SteinerInstance {
            graph: g.clone(),
            terminals: vec![0, 2],
            bound,
        };
        let inst = InstanceBundle::new(ProblemSpec::new(SteinerTree), Arc::new(mk(2))).unwrap();
        assert!(inst.is_solution(&mask(2, &[0, 1])).unwrap());
        let tight = InstanceBundle::new(ProblemSpec::new(SteinerTree), Arc::new(mk(1))).unwrap();
        assert!(!tight.is_solution(&mask(2, &[0, 1])).unwrap());
    }

    #[test]
    fn steiner_rejects_disconnected_and_cyclic() {
        let g = Graph::undirected(4, &[(0, 1), (1, 2), (0, 2), (2, 3)])
            .unwrap()
            .with_weights(vec![1, 1, 1, 1])
            .unwrap();
        let inst = InstanceBundle::new(
            ProblemSpec::new(SteinerTree),
            Arc::new(SteinerInstance {
                graph: g,
                terminals: vec![0, 3],
                bound: 4,
            }),
        )
        .unwrap();
        assert!(inst.is_solution(&mask(4, &[0, 1, 3])).unwrap());
        // contains the triangle
        assert!(!inst.is_solution(&mask(4, &[0, 1, 2, 3])).unwrap());
        // misses terminal 3
        assert!(!inst.is_solution(&mask(4, &[0, 1])).unwrap());
    }
}
