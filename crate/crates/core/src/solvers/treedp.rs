//! Linear-time exact solvers on forests, unicyclic components, and
//! components of small cycle excess, plus the boundary-conditioned root
//! bonus.
//!
//! The bonus of a rooted subtree is the difference between its optimum and
//! its optimum with the root excluded (independent sets) or with the root's
//! incident edges excluded (matchings). It satisfies a one-pass bottom-up
//! recursion, which is also how the exact optima here are computed. Cycles
//! are eliminated by conditioning: every non-tree edge of a BFS spanning
//! tree is resolved by a case split (a chosen endpoint in/out for
//! independent sets, the edge used/unused for matchings), leaving pure
//! forest instances. A component of excess `k` costs `2^k` forest passes,
//! which covers every component of sparse random graphs at the scales this
//! crate targets.
//!
//! All passes are iterative; paths of a million nodes do not recurse.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::graphs::{edge_key, WeightedGraph};
use crate::rde::Objective;

use super::{Chosen, SolveError, SolveResult, MAX_CONDITIONED_EXCESS};

/// Comparisons closer than this are reported as ties.
pub const TIE_EPS: f64 = 1e-12;

// ---------------------------------------------------------------------------
// Forest dynamic programs (iterative, with reconstruction)
// ---------------------------------------------------------------------------

/// BFS order and parents of the alive part of `g`, skipping `banned` edges.
fn forest_orders(
    g: &WeightedGraph,
    alive: &[bool],
    banned: &HashSet<(u32, u32)>,
) -> (Vec<u32>, Vec<i64>) {
    let n = g.n();
    let mut order = Vec::with_capacity(n);
    let mut parent = vec![-1i64; n];
    let mut seen = vec![false; n];
    for root in 0..n as u32 {
        if !alive[root as usize] || seen[root as usize] {
            continue;
        }
        seen[root as usize] = true;
        parent[root as usize] = -2; // component root marker
        let start = order.len();
        order.push(root);
        let mut head = start;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &u in g.neighbors(v) {
                if alive[u as usize] && !seen[u as usize] && !banned.contains(&edge_key(u, v)) {
                    seen[u as usize] = true;
                    parent[u as usize] = v as i64;
                    order.push(u);
                }
            }
        }
    }
    (order, parent)
}

/// Maximum-weight independent set on the alive sub-forest of `g`.
/// Ties prefer leaving a node out.
fn is_forest_dp(g: &WeightedGraph, alive: &[bool]) -> (f64, Vec<u32>) {
    let n = g.n();
    let banned = HashSet::new();
    let (order, parent) = forest_orders(g, alive, &banned);
    let mut take = vec![0.0f64; n];
    let mut leave = vec![0.0f64; n];
    for &v in order.iter().rev() {
        let vi = v as usize;
        take[vi] = g.node_weight(v);
        leave[vi] = 0.0;
        for &c in g.neighbors(v) {
            let ci = c as usize;
            if alive[ci] && parent[ci] == v as i64 {
                take[vi] += leave[ci];
                leave[vi] += take[ci].max(leave[ci]);
            }
        }
    }
    let mut value = 0.0;
    let mut chosen = Vec::new();
    // forward reconstruction: (node, parent chosen?)
    let mut stack: Vec<(u32, bool)> = Vec::new();
    for &v in &order {
        if parent[v as usize] == -2 {
            value += take[v as usize].max(leave[v as usize]);
            stack.push((v, false));
        }
    }
    while let Some((v, parent_chosen)) = stack.pop() {
        let vi = v as usize;
        let in_set = !parent_chosen && take[vi] > leave[vi];
        if in_set {
            chosen.push(v);
        }
        for &c in g.neighbors(v) {
            if alive[c as usize] && parent[c as usize] == v as i64 {
                stack.push((c, in_set));
            }
        }
    }
    chosen.sort_unstable();
    (value, chosen)
}

/// Maximum-weight matching on the alive sub-forest of `g` (banned edges are
/// invisible). Ties prefer leaving a node unmatched.
fn m_forest_dp(
    g: &WeightedGraph,
    alive: &[bool],
    banned: &HashSet<(u32, u32)>,
) -> (f64, Vec<(u32, u32)>) {
    let n = g.n();
    let (order, parent) = forest_orders(g, alive, banned);
    // free: v unmatched within its subtree; matched: v matched to a child
    let mut free = vec![0.0f64; n];
    let mut matched = vec![f64::NEG_INFINITY; n];
    let mut mate = vec![-1i64; n];
    for &v in order.iter().rev() {
        let vi = v as usize;
        let mut sum_best = 0.0;
        let mut best_gain = f64::NEG_INFINITY;
        let mut best_child = -1i64;
        for &c in g.neighbors(v) {
            let ci = c as usize;
            if !alive[ci] || parent[ci] != v as i64 {
                continue;
            }
            let child_best = matched[ci].max(free[ci]);
            sum_best += child_best;
            let gain = g.edge_weight(v, c) + free[ci] - child_best;
            if gain > best_gain {
                best_gain = gain;
                best_child = c as i64;
            }
        }
        free[vi] = sum_best;
        if best_child >= 0 {
            matched[vi] = sum_best + best_gain;
            mate[vi] = best_child;
        }
    }
    let mut value = 0.0;
    let mut edges = Vec::new();
    // (node, must stay free?)
    let mut stack: Vec<(u32, bool)> = Vec::new();
    for &v in &order {
        if parent[v as usize] == -2 {
            value += matched[v as usize].max(free[v as usize]);
            stack.push((v, false));
        }
    }
    while let Some((v, must_free)) = stack.pop() {
        let vi = v as usize;
        let matches_down = !must_free && matched[vi] > free[vi];
        for &c in g.neighbors(v) {
            let ci = c as usize;
            if !alive[ci] || parent[ci] != v as i64 {
                continue;
            }
            if matches_down && c as i64 == mate[vi] {
                edges.push(edge_key(v, c));
                stack.push((c, true));
            } else {
                stack.push((c, false));
            }
        }
    }
    edges.sort_unstable();
    (value, edges)
}

// ---------------------------------------------------------------------------
// Conditioning on non-tree edges
// ---------------------------------------------------------------------------

/// Non-tree edges of a BFS spanning forest of the alive graph.
fn extra_edges(g: &WeightedGraph) -> Vec<(u32, u32)> {
    let alive = vec![true; g.n()];
    let banned = HashSet::new();
    let (_, parent) = forest_orders(g, &alive, &banned);
    let mut extra = Vec::new();
    for (u, v) in g.edges() {
        if parent[u as usize] != v as i64 && parent[v as usize] != u as i64 {
            extra.push((u, v));
        }
    }
    extra
}

/// Exact optimum on one connected component of cycle excess at most
/// [`MAX_CONDITIONED_EXCESS`], by a `2^excess` case split over the extra
/// edges of a spanning tree.
pub(crate) fn solve_component_conditioned(
    g: &WeightedGraph,
    objective: Objective,
) -> Result<SolveResult, SolveError> {
    let extra = extra_edges(g);
    let k = extra.len();
    if k as i64 > MAX_CONDITIONED_EXCESS {
        return Err(SolveError::ExcessTooHigh { excess: k as i64 });
    }
    let n = g.n();
    match objective {
        Objective::IndependentSet => {
            // one endpoint per extra edge: fixing those nodes in/out leaves a forest
            let mut feedback: Vec<u32> = extra.iter().map(|&(u, _)| u).collect();
            feedback.sort_unstable();
            feedback.dedup();
            let f = feedback.len();
            let mut best: Option<(f64, Vec<u32>)> = None;
            'assign: for mask in 0..(1u32 << f) {
                let mut alive = vec![true; n];
                let mut base = 0.0;
                let mut forced = Vec::new();
                for (i, &v) in feedback.iter().enumerate() {
                    if mask & (1 << i) == 0 {
                        alive[v as usize] = false;
                    }
                }
                for (i, &v) in feedback.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        // node forced in: neighbors must be out
                        for &u in g.neighbors(v) {
                            if mask & feedback_bit(&feedback, u).unwrap_or(0) != 0 {
                                continue 'assign; // two adjacent forced-in nodes
                            }
                            alive[u as usize] = false;
                        }
                        alive[v as usize] = false;
                        base += g.node_weight(v);
                        forced.push(v);
                    }
                }
                let (val, mut nodes) = is_forest_dp(g, &alive);
                let total = base + val;
                if best.as_ref().map_or(true, |(b, _)| total > *b) {
                    nodes.extend_from_slice(&forced);
                    nodes.sort_unstable();
                    best = Some((total, nodes));
                }
            }
            let (value, nodes) = best.expect("at least the all-out assignment is feasible");
            Ok(SolveResult { value, chosen: Chosen::Nodes(nodes), exact: true })
        }
        Objective::Matching => {
            let banned: HashSet<(u32, u32)> = extra.iter().map(|&(u, v)| edge_key(u, v)).collect();
            let mut best: Option<(f64, Vec<(u32, u32)>)> = None;
            'subset: for mask in 0..(1u32 << k) {
                let mut alive = vec![true; n];
                let mut base = 0.0;
                let mut used = Vec::new();
                for (i, &(u, v)) in extra.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        if !alive[u as usize] || !alive[v as usize] {
                            continue 'subset; // extra edges share an endpoint
                        }
                        alive[u as usize] = false;
                        alive[v as usize] = false;
                        base += g.edge_weight(u, v);
                        used.push(edge_key(u, v));
                    }
                }
                let (val, mut edges) = m_forest_dp(g, &alive, &banned);
                let total = base + val;
                if best.as_ref().map_or(true, |(b, _)| total > *b) {
                    edges.extend_from_slice(&used);
                    edges.sort_unstable();
                    best = Some((total, edges));
                }
            }
            let (value, edges) = best.expect("the empty subset is always feasible");
            Ok(SolveResult { value, chosen: Chosen::Edges(edges), exact: true })
        }
    }
}

fn feedback_bit(feedback: &[u32], v: u32) -> Option<u32> {
    feedback.binary_search(&v).ok().map(|i| 1 << i)
}

fn check_excess_at_most_one(g: &WeightedGraph) -> Result<(), SolveError> {
    if let Some(c) = g.components().iter().find(|c| c.excess > 1) {
        return Err(SolveError::ExcessTooHigh { excess: c.excess });
    }
    Ok(())
}

/// Exact MWIS on a graph whose components are trees or unicyclic.
pub fn mwis_forest_unicyclic(g: &WeightedGraph) -> Result<SolveResult, SolveError> {
    check_excess_at_most_one(g)?;
    super::solve_sparse_exact(g, Objective::IndependentSet)
}

/// Exact maximum-weight matching on a graph whose components are trees or
/// unicyclic.
pub fn mwm_forest_unicyclic(g: &WeightedGraph) -> Result<SolveResult, SolveError> {
    check_excess_at_most_one(g)?;
    super::solve_sparse_exact(g, Objective::Matching)
}

// ---------------------------------------------------------------------------
// Boundary-conditioned root bonus
// ---------------------------------------------------------------------------

/// Status of a designated boundary leaf.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BoundaryStatus {
    /// The leaf (independent sets) or its pendant edge (matchings) is part
    /// of the conditioned optimum, at the fixed weight.
    ForcedIn,
    /// The leaf / pendant edge is conditioned out.
    ForcedOut,
}

/// Per-leaf boundary statuses and fixed weights.
///
/// A `ForcedIn` leaf feeds its fixed weight into the bonus recursion as its
/// message; a `ForcedOut` leaf sends zero. For matchings the fixed weight
/// also replaces the pendant-edge weight, so a `ForcedIn` pendant edge is
/// unavailable to the interior (its candidate gain cancels to zero) and a
/// `ForcedOut` one is freely available.
#[derive(Debug, Clone, Default)]
pub struct BoundaryCondition {
    entries: BTreeMap<u32, (BoundaryStatus, f64)>,
}

impl BoundaryCondition {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, leaf: u32, status: BoundaryStatus, weight: f64) {
        self.entries.insert(leaf, (status, weight));
    }

    pub fn get(&self, leaf: u32) -> Option<(BoundaryStatus, f64)> {
        self.entries.get(&leaf).copied()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&u32, &(BoundaryStatus, f64))> {
        self.entries.iter()
    }
}

/// Whether the deciding comparison put the root in, out, or on a knife edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RootMembership {
    In,
    Out,
    Tie,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct TreeBonus {
    pub bonus: f64,
    pub root_in_optimum: RootMembership,
}

/// Root bonus of a tree under a boundary condition, bottom-up.
///
/// For independent sets the message of a node is
/// `max(0, w_v - Σ_children messages)`; for matchings it is
/// `max(0, max_children (w_edge - message))`. Designated boundary leaves
/// send their fixed weight (`ForcedIn`) or zero (`ForcedOut`) instead of
/// the free-leaf message. The membership call reports `Tie` when the
/// deciding comparison lands within `1e-12`.
pub fn tree_bonus(
    g: &WeightedGraph,
    root: u32,
    objective: Objective,
    boundary: &BoundaryCondition,
) -> Result<TreeBonus, SolveError> {
    let n = g.n();
    if root as usize >= n {
        return Err(SolveError::NotATree(format!("root {root} out of range")));
    }
    if g.edge_count() != n - 1 || g.components().len() != 1 {
        return Err(SolveError::NotATree(format!(
            "{} nodes, {} edges, {} components",
            n,
            g.edge_count(),
            g.components().len()
        )));
    }
    for (&leaf, &(_, w)) in boundary.iter() {
        if leaf == root {
            return Err(SolveError::InfeasibleBoundary("root cannot be a boundary leaf".into()));
        }
        if leaf as usize >= n || g.degree(leaf) != 1 {
            return Err(SolveError::InfeasibleBoundary(format!("node {leaf} is not a leaf")));
        }
        if !(w.is_finite() && w >= 0.0) {
            return Err(SolveError::InfeasibleBoundary(format!("weight {w} for leaf {leaf}")));
        }
    }
    if objective == Objective::Matching {
        // two pendant edges sharing a parent cannot both be in a matching
        let mut seen_parent = HashSet::new();
        for (&leaf, &(status, _)) in boundary.iter() {
            if status == BoundaryStatus::ForcedIn {
                let parent = g.neighbors(leaf)[0];
                if !seen_parent.insert(parent) {
                    return Err(SolveError::InfeasibleBoundary(format!(
                        "two forced-in pendant edges meet at node {parent}"
                    )));
                }
            }
        }
    }

    let (order, parent) = forest_orders_rooted(g, root);
    let mut msg = vec![0.0f64; n];
    for &v in order.iter().rev() {
        let vi = v as usize;
        let children: Vec<u32> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&c| parent[c as usize] == v as i64)
            .collect();
        if children.is_empty() {
            msg[vi] = match boundary.get(v) {
                Some((BoundaryStatus::ForcedIn, w)) => w,
                Some((BoundaryStatus::ForcedOut, _)) => 0.0,
                None => match objective {
                    Objective::IndependentSet => g.node_weight(v),
                    Objective::Matching => 0.0,
                },
            };
            continue;
        }
        msg[vi] = match objective {
            Objective::IndependentSet => {
                let pushback: f64 = children.iter().map(|&c| msg[c as usize]).sum();
                (g.node_weight(v) - pushback).max(0.0)
            }
            Objective::Matching => {
                let mut best = 0.0f64;
                for &c in &children {
                    let w = match boundary.get(c) {
                        Some((_, fixed)) => fixed,
                        None => g.edge_weight(v, c),
                    };
                    best = best.max(w - msg[c as usize]);
                }
                best
            }
        };
    }

    let children: Vec<u32> = g
        .neighbors(root)
        .iter()
        .copied()
        .filter(|&c| parent[c as usize] == root as i64)
        .collect();
    let deciding = match objective {
        Objective::IndependentSet => {
            g.node_weight(root) - children.iter().map(|&c| msg[c as usize]).sum::<f64>()
        }
        Objective::Matching => {
            let mut best = f64::NEG_INFINITY;
            for &c in &children {
                let w = match boundary.get(c) {
                    Some((_, fixed)) => fixed,
                    None => g.edge_weight(root, c),
                };
                best = best.max(w - msg[c as usize]);
            }
            best
        }
    };
    let root_in_optimum = if deciding > TIE_EPS {
        RootMembership::In
    } else if deciding < -TIE_EPS {
        RootMembership::Out
    } else {
        RootMembership::Tie
    };
    Ok(TreeBonus { bonus: msg[root as usize], root_in_optimum })
}

/// BFS order and parents rooted at `root` (the whole graph must be a tree).
fn forest_orders_rooted(g: &WeightedGraph, root: u32) -> (Vec<u32>, Vec<i64>) {
    let n = g.n();
    let mut order = Vec::with_capacity(n);
    let mut parent = vec![-1i64; n];
    parent[root as usize] = -2;
    order.push(root);
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for &u in g.neighbors(v) {
            if parent[u as usize] == -1 && u != root {
                parent[u as usize] = v as i64;
                order.push(u);
            }
        }
    }
    (order, parent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{WeightTarget, WeightedGraph};
    use crate::solvers::brute::{mwis_bruteforce, mwm_bruteforce};
    use crate::weights::WeightSpec;

    #[test]
    fn cycle_is_and_matching_match_brute_force() {
        for seed in 0..20 {
            let mut g = WeightedGraph::gen_cycle(9).unwrap();
            g.assign_weights(WeightSpec::exponential(), WeightTarget::Nodes, seed);
            g.assign_weights(WeightSpec::exponential(), WeightTarget::Edges, seed + 100);
            let is = mwis_forest_unicyclic(&g).unwrap();
            let is_ref = mwis_bruteforce(&g).unwrap();
            assert!((is.value - is_ref.value).abs() < 1e-9);
            is.validate(&g).unwrap();
            let m = mwm_forest_unicyclic(&g).unwrap();
            let m_ref = mwm_bruteforce(&g).unwrap();
            assert!((m.value - m_ref.value).abs() < 1e-9);
            m.validate(&g).unwrap();
        }
    }

    #[test]
    fn random_forests_match_brute_force() {
        for seed in 0..30 {
            // sparse gnp is mostly forest; skip non-qualifying draws
            let mut g = WeightedGraph::gen_gnp(12, 0.8, 500 + seed).unwrap();
            if g.components().iter().any(|c| c.excess > 1) {
                continue;
            }
            g.assign_weights(WeightSpec::exponential(), WeightTarget::Nodes, 600 + seed);
            g.assign_weights(WeightSpec::exponential(), WeightTarget::Edges, 700 + seed);
            let is = mwis_forest_unicyclic(&g).unwrap();
            assert!((is.value - mwis_bruteforce(&g).unwrap().value).abs() < 1e-9);
            let m = mwm_forest_unicyclic(&g).unwrap();
            assert!((m.value - mwm_bruteforce(&g).unwrap().value).abs() < 1e-9);
        }
    }

    #[test]
    fn conditioned_solver_handles_dense_small_components() {
        for seed in 0..20 {
            let mut g = WeightedGraph::gen_gnp(10, 4.0, 900 + seed).unwrap();
            g.assign_weights(WeightSpec::exponential(), WeightTarget::Nodes, 950 + seed);
            g.assign_weights(WeightSpec::exponential(), WeightTarget::Edges, 970 + seed);
            if g.components().iter().any(|c| c.excess > MAX_CONDITIONED_EXCESS) {
                continue;
            }
            let is = super::super::solve_sparse_exact(&g, Objective::IndependentSet).unwrap();
            assert!((is.value - mwis_bruteforce(&g).unwrap().value).abs() < 1e-9);
            is.validate(&g).unwrap();
            let m = super::super::solve_sparse_exact(&g, Objective::Matching).unwrap();
            assert!((m.value - mwm_bruteforce(&g).unwrap().value).abs() < 1e-9);
            m.validate(&g).unwrap();
        }
    }

    #[test]
    fn excess_two_is_rejected_by_the_strict_solvers() {
        // two triangles sharing an edge: excess 2... build K4 minus nothing
        let g = WeightedGraph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3), (1, 3)]).unwrap();
        assert!(matches!(
            mwis_forest_unicyclic(&g),
            Err(SolveError::ExcessTooHigh { excess: 2 })
        ));
        assert!(mwm_forest_unicyclic(&g).is_err());
    }

    #[test]
    fn million_node_cycle_solves_fast() {
        let mut g = WeightedGraph::gen_cycle(1_000_000).unwrap();
        g.assign_weights(WeightSpec::exponential(), WeightTarget::Nodes, 31);
        let r = mwis_forest_unicyclic(&g).unwrap();
        let per_node = r.value / 1_000_000.0;
        assert!((per_node - 2.0 / 3.0).abs() < 0.002, "{per_node}");
    }

    #[test]
    fn star_bonus_by_hand() {
        let mut g = WeightedGraph::from_edges(3, &[(0, 1), (0, 2)]).unwrap();
        g.node_weights = Some(vec![1.0, 0.3, 0.4]);
        let b = tree_bonus(&g, 0, Objective::IndependentSet, &BoundaryCondition::new()).unwrap();
        assert!((b.bonus - 0.3).abs() < 1e-12);
        assert_eq!(b.root_in_optimum, RootMembership::In);
    }

    #[test]
    fn single_node_bonus_is_its_weight() {
        let mut g = WeightedGraph::from_edges(1, &[]).unwrap();
        g.node_weights = Some(vec![0.7]);
        let b = tree_bonus(&g, 0, Objective::IndependentSet, &BoundaryCondition::new()).unwrap();
        assert!((b.bonus - 0.7).abs() < 1e-12);
    }

    #[test]
    fn boundary_statuses_steer_the_bonus() {
        // path 0 - 1 - 2, root 0; leaf 2 is the boundary
        let mut g = WeightedGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        g.node_weights = Some(vec![1.0, 2.0, 0.5]);
        let mut forced_in = BoundaryCondition::new();
        forced_in.set(2, BoundaryStatus::ForcedIn, 10.0);
        let b_in = tree_bonus(&g, 0, Objective::IndependentSet, &forced_in).unwrap();
        // leaf message 10 kills node 1, freeing the root entirely
        assert!((b_in.bonus - 1.0).abs() < 1e-12);
        let mut forced_out = BoundaryCondition::new();
        forced_out.set(2, BoundaryStatus::ForcedOut, 10.0);
        let b_out = tree_bonus(&g, 0, Objective::IndependentSet, &forced_out).unwrap();
        // leaf message 0: node 1 pushes with its full weight 2
        assert!(b_out.bonus.abs() < 1e-12);
        assert_eq!(b_out.root_in_optimum, RootMembership::Out);
    }

    #[test]
    fn matching_rejects_sibling_forced_in_leaves() {
        let g = WeightedGraph::from_edges(3, &[(0, 1), (0, 2)]).unwrap();
        let mut boundary = BoundaryCondition::new();
        boundary.set(1, BoundaryStatus::ForcedIn, 1.0);
        boundary.set(2, BoundaryStatus::ForcedIn, 1.0);
        assert!(matches!(
            tree_bonus(&g, 0, Objective::Matching, &boundary),
            Err(SolveError::InfeasibleBoundary(_))
        ));
        // for independent sets sibling leaves are not adjacent: allowed
        assert!(tree_bonus(&g, 0, Objective::IndependentSet, &boundary).is_ok());
    }

    #[test]
    fn non_tree_input_is_rejected() {
        let g = WeightedGraph::gen_cycle(4).unwrap();
        assert!(matches!(
            tree_bonus(&g, 0, Objective::IndependentSet, &BoundaryCondition::new()),
            Err(SolveError::NotATree(_))
        ));
    }
}
