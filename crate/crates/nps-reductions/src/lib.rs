//! Executable solution-embedding reductions along the compendium tree, model
//! transforms, the edge registry, and deterministic instance generators.

pub mod generate;
mod instance_io;
mod num_edges;
mod registry;
mod route_edges;
mod sat_edges;
mod transforms;
mod vc_edges;

pub use instance_io::{decode_instance, encode_instance};
pub use num_edges::{
    partition_to_scheduling, subset_sum_to_knapsack, subset_sum_to_partition,
    three_sat_l_to_subset_sum,
};
pub use registry::{base_name, edges, find_edge, resolve_chain, resolve_problem, ChainError};
pub use route_edges::{
    dham_cycle_to_uham_cycle, dham_path_to_dham_cycle, three_sat_l_to_dham_path,
    three_sat_l_to_steiner_tree, uham_cycle_to_tsp,
};
pub use sat_edges::{sat_l_to_3sat_l, sat_l_to_sat_v, sat_v_to_sat_l};
pub use transforms::{complement_model, dual_model, literal_model};
pub use vc_edges::{
    clique_v_to_clique_e, is_to_clique_v, three_sat_l_to_independent_set,
    three_sat_l_to_vertex_cover, vc_to_dominating_set, vc_to_fas, vc_to_fvs, vc_to_hitting_set,
    vc_to_p_center, vc_to_p_median, vc_to_set_cover, vc_to_ufl,
};
