//! Exhaustive reference solvers for tiny instances.

use crate::graphs::{edge_key, WeightedGraph};

use super::{Chosen, SolveError, SolveResult};

const MAX_BRUTE_NODES: usize = 24;
const MAX_BRUTE_EDGES: usize = 40;

/// Exhaustive maximum-weight independent set, `n <= 24`.
///
/// Branches on the lowest remaining node (skip it, or take it and drop its
/// neighbors), which enumerates exactly the maximal independent sets.
pub fn mwis_bruteforce(g: &WeightedGraph) -> Result<SolveResult, SolveError> {
    let n = g.n();
    if n > MAX_BRUTE_NODES {
        return Err(SolveError::TooLarge {
            solver: "mwis_bruteforce",
            detail: format!("n = {n} > {MAX_BRUTE_NODES}"),
        });
    }
    let masks: Vec<u32> = (0..n as u32)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | (1 << u)))
        .collect();
    let weights: Vec<f64> = (0..n as u32).map(|v| g.node_weight(v)).collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };

    fn rec(remaining: u32, masks: &[u32], weights: &[f64]) -> (f64, u32) {
        if remaining == 0 {
            return (0.0, 0);
        }
        let v = remaining.trailing_zeros() as usize;
        let (skip_val, skip_set) = rec(remaining & !(1 << v), masks, weights);
        let (take_val, take_set) = rec(remaining & !(1 << v) & !masks[v], masks, weights);
        let take_val = take_val + weights[v];
        if take_val > skip_val {
            (take_val, take_set | (1 << v))
        } else {
            (skip_val, skip_set)
        }
    }

    let (value, set) = rec(full, &masks, &weights);
    let nodes: Vec<u32> = (0..n as u32).filter(|&v| set & (1 << v) != 0).collect();
    Ok(SolveResult { value, chosen: Chosen::Nodes(nodes), exact: true })
}

/// Exhaustive maximum-weight matching over all matchings of the edge list.
pub fn mwm_bruteforce(g: &WeightedGraph) -> Result<SolveResult, SolveError> {
    let edges = g.edges();
    if edges.len() > MAX_BRUTE_EDGES || g.n() > 64 {
        return Err(SolveError::TooLarge {
            solver: "mwm_bruteforce",
            detail: format!("{} edges, {} nodes", edges.len(), g.n()),
        });
    }
    let weights: Vec<f64> = edges.iter().map(|&(u, v)| g.edge_weight(u, v)).collect();

    fn rec(i: usize, used: u64, edges: &[(u32, u32)], weights: &[f64]) -> (f64, Vec<usize>) {
        if i == edges.len() {
            return (0.0, Vec::new());
        }
        let (skip_val, skip_set) = rec(i + 1, used, edges, weights);
        let (u, v) = edges[i];
        let mask = (1u64 << u) | (1u64 << v);
        if used & mask == 0 {
            let (take_val, mut take_set) = rec(i + 1, used | mask, edges, weights);
            let take_val = take_val + weights[i];
            if take_val > skip_val {
                take_set.push(i);
                return (take_val, take_set);
            }
        }
        (skip_val, skip_set)
    }

    let (value, idxs) = rec(0, 0, &edges, &weights);
    let mut chosen: Vec<(u32, u32)> =
        idxs.into_iter().map(|i| edge_key(edges[i].0, edges[i].1)).collect();
    chosen.sort_unstable();
    Ok(SolveResult { value, chosen: Chosen::Edges(chosen), exact: true })
}
