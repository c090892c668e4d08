//! Concrete instance payload types shared by the catalog problems.

use nps_core::CoreError;
use serde::{Deserialize, Serialize};

/// CNF formula: 1-based variable indices, negative literal = negated
/// variable. Clauses must be non-empty; duplicate literals are kept as-is.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnfFormula {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    pub fn validate(&self) -> Result<(), CoreError> {
        if self.num_vars > i32::MAX as usize {
            return Err(CoreError::InvalidInstance("too many variables".into()));
        }
        for (j, clause) in self.clauses.iter().enumerate() {
            if clause.is_empty() {
                return Err(CoreError::InvalidInstance(format!("clause {j} is empty")));
            }
            for &lit in clause {
                if lit == 0 || lit.unsigned_abs() as usize > self.num_vars {
                    return Err(CoreError::InvalidInstance(format!(
                        "literal {lit} out of range in clause {j}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn max_clause_len(&self) -> usize {
        self.clauses.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// Simple graph. Undirected edges are stored with the smaller endpoint
/// first; parallel edges and self-loops are rejected. Edge ids are positions
/// in `edges`, which is what edge-universe problems key on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    pub num_vertices: usize,
    pub directed: bool,
    pub edges: Vec<(usize, usize)>,
    pub weights: Option<Vec<i64>>,
}

impl Graph {
    pub fn undirected(num_vertices: usize, edges: &[(usize, usize)]) -> Result<Self, CoreError> {
        let g = Graph {
            num_vertices,
            directed: false,
            edges: edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect(),
            weights: None,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn directed(num_vertices: usize, arcs: &[(usize, usize)]) -> Result<Self, CoreError> {
        let g = Graph {
            num_vertices,
            directed: true,
            edges: arcs.to_vec(),
            weights: None,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn with_weights(mut self, weights: Vec<i64>) -> Result<Self, CoreError> {
        self.weights = Some(weights);
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), CoreError> {
        let mut seen = std::collections::HashSet::new();
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if u >= self.num_vertices || v >= self.num_vertices {
                return Err(CoreError::InvalidInstance(format!(
                    "edge {i} endpoint out of range"
                )));
            }
            if u == v {
                return Err(CoreError::InvalidInstance(format!(
                    "edge {i} is a self-loop"
                )));
            }
            if !self.directed && u > v {
                return Err(CoreError::InvalidInstance(format!(
                    "undirected edge {i} not stored min-endpoint-first"
                )));
            }
            if !seen.insert((u, v)) {
                return Err(CoreError::InvalidInstance(format!(
                    "duplicate edge ({u},{v})"
                )));
            }
        }
        if let Some(w) = &self.weights {
            if w.len() != self.edges.len() {
                return Err(CoreError::InvalidInstance(
                    "weight list length does not match edge count".into(),
                ));
            }
            let total: i128 = w.iter().map(|&x| (x as i128).abs()).sum();
            if total > i64::MAX as i128 / 4 {
                return Err(CoreError::InvalidInstance("weight sum overflows".into()));
            }
        }
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if self.directed {
            self.edges.contains(&(u, v))
        } else {
            self.edges.contains(&(u.min(v), u.max(v)))
        }
    }

    pub fn is_complete(&self) -> bool {
        !self.directed && self.edges.len() == self.num_vertices * (self.num_vertices.max(1) - 1) / 2
    }

    pub fn edge_label(&self, i: usize) -> String {
        let (u, v) = self.edges[i];
        if self.directed {
            format!("arc({u},{v})")
        } else {
            format!("edge({u},{v})")
        }
    }
}

/// Graph plus a size bound `k`; covers VC, IS, cliques, dominating set, FVS,
/// FAS. Whether the bound is an upper or lower bound is the problem's choice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphWithBound {
    pub graph: Graph,
    pub k: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HamPathInstance {
    pub graph: Graph,
    pub source: usize,
    pub sink: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TspInstance {
    pub graph: Graph,
    pub threshold: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteinerInstance {
    pub graph: Graph,
    pub terminals: Vec<usize>,
    pub bound: i64,
}

/// Sets over a ground set `1..=num_elements`; the universe is the set list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetCoverInstance {
    pub num_elements: usize,
    pub sets: Vec<Vec<usize>>,
    pub k: usize,
}

/// Sets over a ground set `1..=num_elements`; the universe is the ground set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HittingSetInstance {
    pub num_elements: usize,
    pub sets: Vec<Vec<usize>>,
    pub k: usize,
}

fn validate_sets(num_elements: usize, sets: &[Vec<usize>]) -> Result<(), CoreError> {
    for (i, s) in sets.iter().enumerate() {
        for &e in s {
            if e == 0 || e > num_elements {
                return Err(CoreError::InvalidInstance(format!(
                    "set {i} contains element {e} outside 1..={num_elements}"
                )));
            }
        }
    }
    Ok(())
}

impl SetCoverInstance {
    pub fn validate(&self) -> Result<(), CoreError> {
        validate_sets(self.num_elements, &self.sets)
    }
}

impl HittingSetInstance {
    pub fn validate(&self) -> Result<(), CoreError> {
        validate_sets(self.num_elements, &self.sets)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UflInstance {
    pub open_costs: Vec<i64>,
    /// `service[facility][client]`
    pub service: Vec<Vec<i64>>,
    pub threshold: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PFacilityInstance {
    /// `service[facility][client]`
    pub service: Vec<Vec<i64>>,
    pub p: usize,
    pub threshold: i64,
}

pub fn validate_service(service: &[Vec<i64>], facilities: usize) -> Result<usize, CoreError> {
    if service.len() != facilities {
        return Err(CoreError::InvalidInstance(
            "service matrix row count does not match facility count".into(),
        ));
    }
    let clients = service.first().map(Vec::len).unwrap_or(0);
    let mut total: i128 = 0;
    for row in service {
        if row.len() != clients {
            return Err(CoreError::InvalidInstance("ragged service matrix".into()));
        }
        total += row.iter().map(|&x| (x as i128).abs()).sum::<i128>();
    }
    if total > i64::MAX as i128 / 4 {
        return Err(CoreError::InvalidInstance(
            "service cost sum overflows".into(),
        ));
    }
    Ok(clients)
}

fn validate_values(values: &[u64]) -> Result<(), CoreError> {
    if values.iter().any(|&v| v == 0) {
        return Err(CoreError::InvalidInstance("values must be >= 1".into()));
    }
    let total: u128 = values.iter().map(|&v| v as u128).sum();
    if total > i64::MAX as u128 / 4 {
        return Err(CoreError::InvalidInstance("value sum overflows".into()));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetSumInstance {
    pub values: Vec<u64>,
    pub target: u64,
}

impl SubsetSumInstance {
    pub fn validate(&self) -> Result<(), CoreError> {
        validate_values(&self.values)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnapsackInstance {
    pub profits: Vec<u64>,
    pub weights: Vec<u64>,
    pub weight_cap: u64,
    pub profit_goal: u64,
}

impl KnapsackInstance {
    pub fn validate(&self) -> Result<(), CoreError> {
        if self.profits.len() != self.weights.len() {
            return Err(CoreError::InvalidInstance(
                "profit and weight lists differ in length".into(),
            ));
        }
        validate_values(&self.profits)?;
        validate_values(&self.weights)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionInstance {
    pub values: Vec<u64>,
}

impl PartitionInstance {
    pub fn validate(&self) -> Result<(), CoreError> {
        validate_values(&self.values)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchedulingInstance {
    pub times: Vec<u64>,
    pub threshold: u64,
}

impl SchedulingInstance {
    pub fn validate(&self) -> Result<(), CoreError> {
        validate_values(&self.times)
    }
}
