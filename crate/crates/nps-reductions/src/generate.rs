//! Deterministic random instance generation, one source profile per
//! registered edge. Profiles keep the *target* universe small enough for
//! exhaustive checking; the source caps in the calling suites are looser.

use std::sync::Arc;

use nps_catalog::payload::{
    CnfFormula, Graph, GraphWithBound, HamPathInstance, PartitionInstance, SubsetSumInstance,
};
use nps_core::{InstanceBundle, Payload, SeReduction, SubsetMask};

use crate::registry::specs;

/// SplitMix64: tiny, seedable, stable across platforms and releases.
#[derive(Clone, Debug)]
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `0..n` (n > 0).
    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    /// Uniform in `lo..=hi`.
    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        lo + self.below(hi - lo + 1)
    }

    pub fn chance(&mut self, num: u32, den: u32) -> bool {
        (self.next_u64() % den as u64) < num as u64
    }
}

pub fn random_cnf(
    rng: &mut Rng,
    max_vars: usize,
    max_clauses: usize,
    max_len: usize,
) -> CnfFormula {
    let num_vars = rng.range(1, max_vars);
    let num_clauses = rng.range(0, max_clauses);
    let clauses = (0..num_clauses)
        .map(|_| {
            let len = rng.range(1, max_len);
            (0..len)
                .map(|_| {
                    let var = rng.range(1, num_vars) as i32;
                    if rng.chance(1, 2) {
                        var
                    } else {
                        -var
                    }
                })
                .collect()
        })
        .collect();
    CnfFormula { num_vars, clauses }
}

pub fn random_undirected_graph(rng: &mut Rng, max_n: usize, edge_permille: usize) -> Graph {
    let n = rng.range(1, max_n);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.below(1000) < edge_permille {
                edges.push((u, v));
            }
        }
    }
    Graph::undirected(n, &edges).expect("well-formed")
}

fn random_digraph(rng: &mut Rng, max_n: usize, arc_permille: usize) -> Graph {
    let n = rng.range(1, max_n);
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.below(1000) < arc_permille {
                arcs.push((u, v));
            }
        }
    }
    Graph::directed(n, &arcs).expect("well-formed")
}

fn clique_number(g: &Graph) -> usize {
    let n = g.num_vertices;
    let mut best = 0;
    SubsetMask::full(n).for_each_subset(|s| {
        let ids = s.ids();
        let is_clique = ids
            .iter()
            .enumerate()
            .all(|(p, &u)| ids[p + 1..].iter().all(|&v| g.has_edge(u, v)));
        if is_clique {
            best = best.max(ids.len());
        }
    });
    best
}

fn bundle(spec: nps_core::ProblemSpec, payload: impl Send + Sync + 'static) -> InstanceBundle {
    let payload: Payload = Arc::new(payload);
    InstanceBundle::new(spec, payload).expect("generated instance is valid")
}

fn cover_source(rng: &mut Rng, max_n: usize, edge_permille: usize, max_k: usize) -> InstanceBundle {
    let graph = random_undirected_graph(rng, max_n, edge_permille);
    let k = rng.range(0, max_k.min(graph.num_vertices));
    bundle(specs::vertex_cover(), GraphWithBound { graph, k })
}

/// A pseudo-random source instance for the named edge, sized so that the
/// reduced target universe stays exhaustively enumerable.
pub fn random_source_for_edge(edge: &SeReduction, rng: &mut Rng) -> InstanceBundle {
    let name = edge.name();
    // rejection-sample until the materialized target fits the edge budget
    let budget = match name {
        "3sat-l->dham-path" => 22,
        "3sat-l->steiner-tree" => 19,
        _ => 18,
    };
    for _ in 0..1000 {
        let inst = raw_source(name, rng);
        match edge.apply(&inst) {
            Ok(out) if out.target.width() <= budget => return inst,
            _ => continue,
        }
    }
    panic!("generator for `{name}` failed to fit budget {budget}");
}

fn raw_source(name: &str, rng: &mut Rng) -> InstanceBundle {
    match name {
        "sat-l->sat-v" => bundle(specs::sat_l(), random_cnf(rng, 6, 4, 3)),
        "sat-v->sat-l" => bundle(specs::sat_v(), random_cnf(rng, 8, 5, 3)),
        "sat-l->3sat-l" => bundle(specs::sat_l(), random_cnf(rng, 3, 3, 5)),
        "3sat-l->vertex-cover" | "3sat-l->independent-set" => {
            bundle(specs::three_sat_l(), random_cnf(rng, 4, 2, 3))
        }
        "3sat-l->subset-sum" => bundle(specs::three_sat_l(), random_cnf(rng, 4, 3, 3)),
        "3sat-l->dham-path" => {
            let (vars, clauses) = *pick(rng, &[(1, 1), (1, 2), (2, 1), (1, 1), (2, 0)]);
            bundle(specs::three_sat_l(), random_cnf(rng, vars, clauses, 3))
        }
        "3sat-l->steiner-tree" => {
            let (vars, clauses) = *pick(rng, &[(1, 1), (1, 2), (1, 0), (2, 0)]);
            bundle(specs::three_sat_l(), random_cnf(rng, vars, clauses, 3))
        }
        "vertex-cover->dominating-set" => cover_source(rng, 4, 500, 2),
        "vertex-cover->set-cover"
        | "vertex-cover->hitting-set"
        | "vertex-cover->fvs"
        | "vertex-cover->ufl"
        | "vertex-cover->p-center"
        | "vertex-cover->p-median" => cover_source(rng, 8, 400, 8),
        "vertex-cover->fas" => cover_source(rng, 3, 700, 3),
        "independent-set->clique-v" => {
            let graph = random_undirected_graph(rng, 9, 400);
            let k = rng.range(0, graph.num_vertices);
            bundle(specs::independent_set(), GraphWithBound { graph, k })
        }
        "clique-v->clique-e" => {
            // the doubling construction is embedding-exact only at or above
            // the clique number; sample k in [omega, n]
            let graph = random_undirected_graph(rng, 4, 450);
            let omega = clique_number(&graph);
            let k = rng.range(omega, graph.num_vertices);
            bundle(specs::clique_v(), GraphWithBound { graph, k })
        }
        "subset-sum->knapsack" | "subset-sum->partition" => {
            let count = rng.range(1, 9);
            let values: Vec<u64> = (0..count).map(|_| rng.range(1, 9) as u64).collect();
            let sum: u64 = values.iter().sum();
            let target = if rng.chance(1, 10) {
                sum + rng.range(1, 5) as u64
            } else {
                rng.below(sum as usize + 1) as u64
            };
            bundle(specs::subset_sum(), SubsetSumInstance { values, target })
        }
        "partition->scheduling" => {
            let count = rng.range(1, 10);
            let values: Vec<u64> = (0..count).map(|_| rng.range(1, 9) as u64).collect();
            bundle(specs::partition(), PartitionInstance { values })
        }
        "dham-path->dham-cycle" => {
            // source vertex gets no in-arcs, sink no out-arcs (the shape of
            // every path instance the tree itself produces)
            let mut graph = random_digraph(rng, 4, 450);
            if graph.num_vertices < 2 {
                graph = Graph::directed(2, &[(0, 1)]).unwrap();
            }
            let source = 0;
            let sink = 1;
            let arcs: Vec<(usize, usize)> = graph
                .edges
                .iter()
                .copied()
                .filter(|&(u, v)| u != sink && v != source)
                .collect();
            let graph = Graph::directed(graph.num_vertices, &arcs).unwrap();
            bundle(
                specs::dham_path(),
                HamPathInstance {
                    graph,
                    source,
                    sink,
                },
            )
        }
        "dham-cycle->uham-cycle" => bundle(specs::dham_cycle(), random_digraph(rng, 4, 450)),
        "uham-cycle->tsp" => {
            let mut g = random_undirected_graph(rng, 5, 500);
            if g.num_vertices < 3 {
                g = random_undirected_graph(rng, 5, 500);
            }
            bundle(specs::uham_cycle(), g)
        }
        other => panic!("no generator for edge `{other}`"),
    }
}

fn pick<'a, T>(rng: &mut Rng, options: &'a [T]) -> &'a T {
    &options[rng.below(options.len())]
}

/// Source instances for the composed chain `sat-l -> 3sat-l -> vertex-cover`:
/// long clauses are allowed so the splitting step has work to do, while the
/// final graph stays exhaustively enumerable.
pub fn random_chain_source(rng: &mut Rng) -> InstanceBundle {
    loop {
        let cnf = random_cnf(rng, 2, 2, 4);
        // splitting adds one fresh pair and one clause per length-4 clause
        let fresh: usize = cnf.clauses.iter().filter(|c| c.len() > 3).count();
        let vars = cnf.num_vars + fresh;
        let clauses = cnf.clauses.len() + fresh;
        let target_width = 2 * vars + 3 * clauses;
        if target_width <= 18 {
            return bundle(specs::sat_l(), cnf);
        }
    }
}

/// Anchored-partition instances that are satisfiable by construction and
/// carry a twin of the anchor too heavy to ever join it: the twin witnesses
/// that the anchored variant is not universe covering. The free variant on
/// the same values is complement-closed, hence covering.
pub fn partition_covering_demo(rng: &mut Rng) -> PartitionInstance {
    let pairs = rng.range(1, 3);
    let mut rest = Vec::new();
    for _ in 0..pairs {
        let v = rng.range(1, 6) as u64;
        rest.push(v);
        rest.push(v);
    }
    let rest_sum: u64 = rest.iter().sum();
    let anchor = rest_sum / 2 + rng.range(1, 4) as u64;
    let mut values = vec![anchor, anchor];
    values.extend(rest);
    PartitionInstance { values }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rng_is_deterministic() {
        let a: Vec<u64> = {
            let mut r = Rng::new(7);
            (0..5).map(|_| r.next_u64()).collect()
        };
        let b: Vec<u64> = {
            let mut r = Rng::new(7);
            (0..5).map(|_| r.next_u64()).collect()
        };
        assert_eq!(a, b);
    }

    #[test]
    fn every_edge_has_a_generator() {
        let mut rng = Rng::new(42);
        for edge in crate::edges() {
            let inst = random_source_for_edge(edge, &mut rng);
            assert_eq!(inst.spec().name(), edge.source().name());
        }
    }

    #[test]
    fn covering_demo_instances_are_satisfiable_and_anchored_incomplete() {
        let mut rng = Rng::new(3);
        for _ in 0..10 {
            let inst = partition_covering_demo(&mut rng);
            let total: u64 = inst.values.iter().sum();
            assert_eq!(total % 2, 0);
            // anchor plus one value of each twin pair reaches half
            assert!(2 * inst.values[0] > total / 2);
        }
    }
}
