//! The reduction registry: every edge by source and target name, problem
//! resolution including model-transform prefixes, and chain composition.

use std::sync::OnceLock;

use nps_core::{CoreError, ProblemSpec, SeReduction};

use crate::transforms;
use crate::{num_edges, route_edges, sat_edges, vc_edges};

/// Cached problem-spec handles for the edge constructors.
pub(crate) mod specs {
    use nps_core::ProblemSpec;

    macro_rules! spec_fn {
        ($fn_name:ident, $name:literal) => {
            pub fn $fn_name() -> ProblemSpec {
                nps_catalog::find($name).expect("catalog problem")
            }
        };
    }

    spec_fn!(sat_l, "sat-l");
    spec_fn!(sat_v, "sat-v");
    spec_fn!(three_sat_l, "3sat-l");
    spec_fn!(vertex_cover, "vertex-cover");
    spec_fn!(independent_set, "independent-set");
    spec_fn!(clique_v, "clique-v");
    spec_fn!(clique_e, "clique-e");
    spec_fn!(dominating_set, "dominating-set");
    spec_fn!(set_cover, "set-cover");
    spec_fn!(hitting_set, "hitting-set");
    spec_fn!(fvs, "fvs");
    spec_fn!(fas, "fas");
    spec_fn!(ufl, "ufl");
    spec_fn!(p_center, "p-center");
    spec_fn!(p_median, "p-median");
    spec_fn!(subset_sum, "subset-sum");
    spec_fn!(knapsack, "knapsack");
    spec_fn!(partition, "partition");
    spec_fn!(scheduling, "scheduling");
    spec_fn!(dham_path, "dham-path");
    spec_fn!(dham_cycle, "dham-cycle");
    spec_fn!(uham_cycle, "uham-cycle");
    spec_fn!(tsp, "tsp");
    spec_fn!(steiner_tree, "steiner-tree");
}

/// All registered reduction edges, in tree order.
pub fn edges() -> &'static [SeReduction] {
    static EDGES: OnceLock<Vec<SeReduction>> = OnceLock::new();
    EDGES.get_or_init(|| {
        vec![
            sat_edges::sat_l_to_sat_v(),
            sat_edges::sat_v_to_sat_l(),
            sat_edges::sat_l_to_3sat_l(),
            vc_edges::three_sat_l_to_vertex_cover(),
            vc_edges::three_sat_l_to_independent_set(),
            num_edges::three_sat_l_to_subset_sum(),
            route_edges::three_sat_l_to_dham_path(),
            route_edges::three_sat_l_to_steiner_tree(),
            vc_edges::vc_to_dominating_set(),
            vc_edges::vc_to_set_cover(),
            vc_edges::vc_to_hitting_set(),
            vc_edges::vc_to_fvs(),
            vc_edges::vc_to_fas(),
            vc_edges::vc_to_ufl(),
            vc_edges::vc_to_p_center(),
            vc_edges::vc_to_p_median(),
            vc_edges::is_to_clique_v(),
            vc_edges::clique_v_to_clique_e(),
            num_edges::subset_sum_to_knapsack(),
            num_edges::subset_sum_to_partition(),
            num_edges::partition_to_scheduling(),
            route_edges::dham_path_to_dham_cycle(),
            route_edges::dham_cycle_to_uham_cycle(),
            route_edges::uham_cycle_to_tsp(),
        ]
    })
}

/// Finds the registered edge from `source` to `target`.
pub fn find_edge(source: &str, target: &str) -> Option<SeReduction> {
    edges()
        .iter()
        .find(|e| e.source().name() == source && e.target().name() == target)
        .cloned()
}

/// Resolves a problem name, peeling `complement:`, `literal:`, and `dual:`
/// prefixes recursively down to a catalog problem.
pub fn resolve_problem(name: &str) -> Result<ProblemSpec, CoreError> {
    if let Some(rest) = name.strip_prefix("complement:") {
        return transforms::complement_model(resolve_problem(rest)?);
    }
    if let Some(rest) = name.strip_prefix("literal:") {
        return transforms::literal_model(resolve_problem(rest)?);
    }
    if let Some(rest) = name.strip_prefix("dual:") {
        return transforms::dual_model(resolve_problem(rest)?);
    }
    nps_catalog::find(name)
        .ok_or_else(|| CoreError::InvalidInstance(format!("unknown problem `{name}`")))
}

/// The base catalog problem a (possibly transformed) name decodes with.
pub fn base_name(name: &str) -> &str {
    let mut rest = name;
    loop {
        let next = rest
            .strip_prefix("complement:")
            .or_else(|| rest.strip_prefix("literal:"))
            .or_else(|| rest.strip_prefix("dual:"));
        match next {
            Some(n) => rest = n,
            None => return rest,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ChainError {
    #[error("no registered reduction `{from}` -> `{to}`")]
    UnknownEdge { from: String, to: String },
    #[error("empty reduction chain")]
    Empty,
    #[error(transparent)]
    Core(#[from] CoreError),
}

/// Composes the chain `source -> names[0] -> names[1] -> ...` from registered
/// edges.
pub fn resolve_chain(source: &str, names: &[String]) -> Result<SeReduction, ChainError> {
    let mut iter = names.iter();
    let first = iter.next().ok_or(ChainError::Empty)?;
    let mut chain = find_edge(source, first).ok_or_else(|| ChainError::UnknownEdge {
        from: source.to_string(),
        to: first.clone(),
    })?;
    let mut at = first.clone();
    for next in iter {
        let edge = find_edge(&at, next).ok_or_else(|| ChainError::UnknownEdge {
            from: at.clone(),
            to: next.clone(),
        })?;
        chain = SeReduction::compose(&chain, &edge)?;
        at = next.clone();
    }
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twenty_four_edges_registered() {
        assert_eq!(edges().len(), 24);
        let mut names: Vec<String> = edges().iter().map(|e| e.name().to_string()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), 24);
    }

    #[test]
    fn chain_resolution() {
        let chain =
            resolve_chain("sat-l", &["3sat-l".to_string(), "vertex-cover".to_string()]).unwrap();
        assert_eq!(chain.source().name(), "sat-l");
        assert_eq!(chain.target().name(), "vertex-cover");
        assert!(matches!(
            resolve_chain("sat-l", &["tsp".to_string()]),
            Err(ChainError::UnknownEdge { .. })
        ));
    }

    #[test]
    fn transform_prefixes_resolve() {
        assert_eq!(
            resolve_problem("dual:literal:vertex-cover").unwrap().name(),
            "dual:literal:vertex-cover"
        );
        assert_eq!(base_name("dual:literal:vertex-cover"), "vertex-cover");
        assert!(resolve_problem("literal:sat-l").is_err());
        assert!(resolve_problem("no-such").is_err());
    }
}
