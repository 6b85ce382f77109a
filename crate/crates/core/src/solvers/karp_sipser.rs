//! Stage-1 Karp–Sipser leaf removal.
//!
//! While the graph has a leaf, match the leaf to its parent and delete the
//! parent together with all its edges. The edges collected this way are
//! contained in some maximum matching of the original graph, so the optimum
//! equals the stage-1 count plus a maximum matching of the remainder (which
//! has minimum degree 2, or is empty). The chosen parents form a minimum
//! node cover of the processed part; its complement is the corresponding
//! independent set.

use crate::graphs::{edge_key, WeightedGraph};

/// Output of the stage-1 run.
#[derive(Debug, Clone)]
pub struct KarpSipserOutcome {
    /// Leaf–parent edges selected into the matching.
    pub matching: Vec<(u32, u32)>,
    /// The parents chosen at each leaf step (a node cover of the processed
    /// part).
    pub stage1_cover: Vec<u32>,
    /// Induced subgraph on the surviving nodes of degree >= 2 (weights
    /// carried over); empty when stage 1 consumed everything.
    pub remainder: WeightedGraph,
    /// Original ids of the remainder's nodes: `remainder_nodes[i]` is the
    /// id of remainder node `i`.
    pub remainder_nodes: Vec<u32>,
}

/// Runs leaf removal to exhaustion, smallest-index leaf first.
pub fn karp_sipser(g: &WeightedGraph) -> KarpSipserOutcome {
    let n = g.n();
    let mut degree: Vec<usize> = (0..n as u32).map(|v| g.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut queue: std::collections::VecDeque<u32> =
        (0..n as u32).filter(|&v| degree[v as usize] == 1).collect();
    let mut matching = Vec::new();
    let mut cover = Vec::new();

    while let Some(v) = queue.pop_front() {
        let vi = v as usize;
        if !alive[vi] || degree[vi] != 1 {
            continue;
        }
        let parent = g
            .neighbors(v)
            .iter()
            .copied()
            .find(|&u| alive[u as usize])
            .expect("degree-1 node has an alive neighbor");
        matching.push(edge_key(v, parent));
        cover.push(parent);
        alive[vi] = false;
        alive[parent as usize] = false;
        degree[vi] = 0;
        degree[parent as usize] = 0;
        for &w in g.neighbors(parent) {
            let wi = w as usize;
            if alive[wi] {
                degree[wi] -= 1;
                if degree[wi] == 1 {
                    queue.push_back(w);
                }
            }
        }
    }

    let remainder_nodes: Vec<u32> =
        (0..n as u32).filter(|&v| alive[v as usize] && degree[v as usize] >= 1).collect();
    let remainder = if remainder_nodes.is_empty() {
        // a 1-node graph with no edges stands in for "empty"
        let mut empty = WeightedGraph::from_edges(1, &[]).expect("trivial graph");
        empty.provenance = g.provenance.clone();
        empty
    } else {
        g.induced(&remainder_nodes)
    };
    KarpSipserOutcome { matching, stage1_cover: cover, remainder, remainder_nodes }
}
