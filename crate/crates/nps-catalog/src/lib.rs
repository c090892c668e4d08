//! The concrete problem catalog: payload types, verifiers with explicit
//! universes, DIMACS and JSON codecs.

mod covers;
mod dimacs;
mod facility;
mod graphs;
mod json;
mod numbers;
pub mod payload;
mod routes;
mod sat;

use std::sync::OnceLock;

use nps_core::ProblemSpec;

pub use dimacs::{parse_dimacs, write_dimacs};
pub use json::{decode_payload, encode_payload, graph_from_json, graph_to_json};
pub use sat::literal_element;

pub use covers::{HittingSet, SetCover};
pub use facility::{PCenter, PMedian, Ufl};
pub use graphs::{
    CliqueE, CliqueV, DominatingSet, FeedbackArcSet, FeedbackVertexSet, IndependentSet, VertexCover,
};
pub use numbers::{Knapsack, Partition, PartitionFree, Scheduling, SubsetSum};
pub use routes::{DirectedHamCycle, DirectedHamPath, SteinerTree, Tsp, UndirectedHamCycle};
pub use sat::{SatL, SatV};

/// Every registered base problem, in catalog order.
pub fn problems() -> &'static [ProblemSpec] {
    static ALL: OnceLock<Vec<ProblemSpec>> = OnceLock::new();
    ALL.get_or_init(|| {
        vec![
            ProblemSpec::new(SatL::SAT),
            ProblemSpec::new(SatV::SAT),
            ProblemSpec::new(SatL::THREE_SAT),
            ProblemSpec::new(SatV::THREE_SAT),
            ProblemSpec::new(VertexCover),
            ProblemSpec::new(IndependentSet),
            ProblemSpec::new(CliqueV),
            ProblemSpec::new(CliqueE),
            ProblemSpec::new(DominatingSet),
            ProblemSpec::new(SetCover),
            ProblemSpec::new(HittingSet),
            ProblemSpec::new(FeedbackVertexSet),
            ProblemSpec::new(FeedbackArcSet),
            ProblemSpec::new(Ufl),
            ProblemSpec::new(PCenter),
            ProblemSpec::new(PMedian),
            ProblemSpec::new(SubsetSum),
            ProblemSpec::new(Knapsack),
            ProblemSpec::new(Partition),
            ProblemSpec::new(PartitionFree),
            ProblemSpec::new(Scheduling),
            ProblemSpec::new(DirectedHamPath),
            ProblemSpec::new(DirectedHamCycle),
            ProblemSpec::new(UndirectedHamCycle),
            ProblemSpec::new(Tsp),
            ProblemSpec::new(SteinerTree),
        ]
    })
}

/// Looks up a base problem by its registry name.
pub fn find(name: &str) -> Option<ProblemSpec> {
    problems().iter().find(|p| p.name() == name).cloned()
}
