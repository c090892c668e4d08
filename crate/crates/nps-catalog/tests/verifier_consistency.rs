//! Cross-verifier invariants checked on randomized small instances.

use std::sync::Arc;

use nps_catalog::payload::{Graph, GraphWithBound};
use nps_catalog::{CliqueV, IndependentSet, UndirectedHamCycle, VertexCover};
use nps_core::{enumerate_solutions, Cap, InstanceBundle, ProblemSpec, SubsetMask};
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
            .collect();
        proptest::collection::vec(proptest::bool::ANY, pairs.len()).prop_map(move |picks| {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .zip(&picks)
                .filter(|(_, &p)| p)
                .map(|(&e, _)| e)
                .collect();
            Graph::undirected(n, &edges).unwrap()
        })
    })
}

fn bundle(problem: ProblemSpec, graph: Graph, k: usize) -> InstanceBundle {
    InstanceBundle::new(problem, Arc::new(GraphWithBound { graph, k })).unwrap()
}

fn complement_graph(g: &Graph) -> Graph {
    let mut edges = Vec::new();
    for u in 0..g.num_vertices {
        for v in (u + 1)..g.num_vertices {
            if !g.has_edge(u, v) {
                edges.push((u, v));
            }
        }
    }
    Graph::undirected(g.num_vertices, &edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// S covers G with |S| <= k  iff  V\S is independent with |V\S| >= n-k.
    #[test]
    fn vc_is_complementarity(g in graph_strategy(6), k in 0usize..7) {
        let n = g.num_vertices;
        let k = k.min(n);
        let vc = bundle(ProblemSpec::new(VertexCover), g.clone(), k);
        let is = bundle(ProblemSpec::new(IndependentSet), g, n - k);
        SubsetMask::full(n).for_each_subset(|s| {
            let cover = vc.is_solution(s).unwrap();
            let indep = is.is_solution(&s.complement()).unwrap();
            assert_eq!(cover, indep, "mask {s:?}");
        });
    }

    /// Cliques of G are independent sets of the complement, elementwise.
    #[test]
    fn clique_matches_complement_independent_set(g in graph_strategy(6), k in 0usize..7) {
        let comp = complement_graph(&g);
        let clique = bundle(ProblemSpec::new(CliqueV), g, k);
        let indep = bundle(ProblemSpec::new(IndependentSet), comp, k);
        let cap = Cap::default();
        let a = enumerate_solutions(&clique, cap).unwrap();
        let b = enumerate_solutions(&indep, cap).unwrap();
        prop_assert_eq!(a.masks(), b.masks());
    }

    /// Any accepted Hamiltonian cycle selects |V| edges with every vertex of
    /// degree exactly two.
    #[test]
    fn ham_cycle_degree_test(g in graph_strategy(6)) {
        let n = g.num_vertices;
        let edges = g.edges.clone();
        let inst = InstanceBundle::new(ProblemSpec::new(UndirectedHamCycle), Arc::new(g)).unwrap();
        for s in enumerate_solutions(&inst, Cap::default()).unwrap().iter() {
            prop_assert_eq!(s.count(), n);
            let mut deg = vec![0usize; n];
            for i in s.ids() {
                let (u, v) = edges[i];
                deg[u] += 1;
                deg[v] += 1;
            }
            prop_assert!(deg.into_iter().all(|d| d == 2));
        }
    }
}
