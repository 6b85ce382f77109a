//! Exact and heuristic combinatorial solvers.
//!
//! * [`brute`] — exhaustive optima for tiny instances; the reference
//!   everything else is tested against.
//! * [`bnb`] — branch-and-bound MWIS for low-degree graphs up to a couple
//!   hundred nodes.
//! * [`treedp`] — linear-time exact optima on forests and unicyclic
//!   components, the boundary-conditioned root bonus, and conditioning on
//!   extra edges for components of small cycle excess.
//! * [`karp_sipser`] — stage-1 leaf removal for unweighted matchings.

pub mod bnb;
pub mod brute;
pub mod karp_sipser;
pub mod treedp;

use serde::Serialize;
use thiserror::Error;

use crate::graphs::{edge_key, WeightedGraph};
use crate::rde::Objective;

/// Components with cycle excess above this are not solved by conditioning.
pub const MAX_CONDITIONED_EXCESS: i64 = 14;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolveError {
    #[error("instance too large for {solver}: {detail}")]
    TooLarge { solver: &'static str, detail: String },
    #[error("component with cycle excess {excess} exceeds what the solver handles")]
    ExcessTooHigh { excess: i64 },
    #[error("input must be a tree: {0}")]
    NotATree(String),
    #[error("infeasible boundary condition: {0}")]
    InfeasibleBoundary(String),
    #[error("invalid solution: {0}")]
    InvalidSolution(String),
}

/// The optimizer's selection: nodes for independent sets, edges for
/// matchings.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Chosen {
    Nodes(Vec<u32>),
    Edges(Vec<(u32, u32)>),
}

impl Chosen {
    pub fn cardinality(&self) -> usize {
        match self {
            Chosen::Nodes(v) => v.len(),
            Chosen::Edges(v) => v.len(),
        }
    }
}

/// A solver outcome: total weight, the chosen set, and whether the value is
/// provably optimal (`exact = false` only after a budget cutoff).
#[derive(Debug, Clone, Serialize)]
pub struct SolveResult {
    pub value: f64,
    pub chosen: Chosen,
    pub exact: bool,
}

impl SolveResult {
    pub fn cardinality(&self) -> usize {
        self.chosen.cardinality()
    }

    /// Checks feasibility against `g` and that the value matches the sum of
    /// chosen weights to `1e-9`.
    pub fn validate(&self, g: &WeightedGraph) -> Result<(), SolveError> {
        let mut total = 0.0;
        match &self.chosen {
            Chosen::Nodes(nodes) => {
                let set: std::collections::HashSet<u32> = nodes.iter().copied().collect();
                if set.len() != nodes.len() {
                    return Err(SolveError::InvalidSolution("duplicate node".into()));
                }
                for &v in nodes {
                    if v as usize >= g.n() {
                        return Err(SolveError::InvalidSolution(format!("node {v} out of range")));
                    }
                    for &u in g.neighbors(v) {
                        if set.contains(&u) {
                            return Err(SolveError::InvalidSolution(format!(
                                "nodes {u} and {v} are adjacent"
                            )));
                        }
                    }
                    total += g.node_weight(v);
                }
            }
            Chosen::Edges(edges) => {
                let mut used = std::collections::HashSet::new();
                for &(u, v) in edges {
                    if !g.has_edge(u, v) {
                        return Err(SolveError::InvalidSolution(format!(
                            "edge ({u}, {v}) not in graph"
                        )));
                    }
                    if !used.insert(u) || !used.insert(v) {
                        return Err(SolveError::InvalidSolution(format!(
                            "edge ({u}, {v}) shares an endpoint"
                        )));
                    }
                    total += g.edge_weight(u, v);
                }
            }
        }
        if (total - self.value).abs() > 1e-9 {
            return Err(SolveError::InvalidSolution(format!(
                "value {} does not match chosen weight {total}",
                self.value
            )));
        }
        Ok(())
    }
}

/// Exact optimum on sparse graphs, component by component: forests and
/// unicyclic components by dynamic programming, components of excess up to
/// [`MAX_CONDITIONED_EXCESS`] by conditioning on their extra edges, and —
/// for independent sets only — anything denser by branch-and-bound.
pub fn solve_sparse_exact(
    g: &WeightedGraph,
    objective: Objective,
) -> Result<SolveResult, SolveError> {
    let mut value = 0.0;
    let mut nodes: Vec<u32> = Vec::new();
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for comp in g.components() {
        let sub = g.induced(&comp.nodes);
        let res = if comp.excess <= MAX_CONDITIONED_EXCESS {
            treedp::solve_component_conditioned(&sub, objective)?
        } else {
            match objective {
                Objective::IndependentSet => bnb::mwis_bnb(&sub)?,
                Objective::Matching => {
                    return Err(SolveError::ExcessTooHigh { excess: comp.excess })
                }
            }
        };
        value += res.value;
        match res.chosen {
            Chosen::Nodes(local) => {
                nodes.extend(local.into_iter().map(|i| comp.nodes[i as usize]));
            }
            Chosen::Edges(local) => {
                edges.extend(local.into_iter().map(|(a, b)| {
                    edge_key(comp.nodes[a as usize], comp.nodes[b as usize])
                }));
            }
        }
    }
    let chosen = match objective {
        Objective::IndependentSet => {
            nodes.sort_unstable();
            Chosen::Nodes(nodes)
        }
        Objective::Matching => {
            edges.sort_unstable();
            Chosen::Edges(edges)
        }
    };
    Ok(SolveResult { value, chosen, exact: true })
}
