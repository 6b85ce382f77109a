//! Branch-and-bound maximum-weight independent set for low-degree graphs.
//!
//! Subproblems shrink through two reductions before any branching: isolated
//! nodes are taken outright, and a degree-1 node `v` with neighbor `u` is
//! either taken (when `w_v >= w_u`, which dominates every alternative) or
//! folded into `u` (`w_u -= w_v`, take `v` iff `u` stays out). Remaining
//! graphs split into connected components solved independently; otherwise
//! the search branches on a maximum-degree node. Pruning uses a pair-cover
//! bound: vertices are greedily grouped into adjacent pairs, and no
//! independent set can beat the sum of per-pair maxima.

use std::time::{Duration, Instant};

use crate::graphs::WeightedGraph;

use super::{Chosen, SolveError, SolveResult};

pub const MAX_BNB_NODES: usize = 200;
pub const MAX_BNB_DEGREE: usize = 8;
pub const DEFAULT_BUDGET: Duration = Duration::from_secs(10);

const WORDS: usize = 4; // 256-bit node sets

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
struct Bits([u64; WORDS]);

impl Bits {
    fn full(n: usize) -> Self {
        let mut b = Bits::default();
        for v in 0..n {
            b.insert(v);
        }
        b
    }

    #[inline]
    fn insert(&mut self, v: usize) {
        self.0[v >> 6] |= 1 << (v & 63);
    }

    #[inline]
    fn remove(&mut self, v: usize) {
        self.0[v >> 6] &= !(1 << (v & 63));
    }

    #[inline]
    fn contains(&self, v: usize) -> bool {
        self.0[v >> 6] & (1 << (v & 63)) != 0
    }

    #[inline]
    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    #[inline]
    fn and(&self, other: &Bits) -> Bits {
        let mut out = Bits::default();
        for i in 0..WORDS {
            out.0[i] = self.0[i] & other.0[i];
        }
        out
    }

    #[inline]
    fn minus(&self, other: &Bits) -> Bits {
        let mut out = Bits::default();
        for i in 0..WORDS {
            out.0[i] = self.0[i] & !other.0[i];
        }
        out
    }

    #[inline]
    fn or_assign(&mut self, other: &Bits) {
        for i in 0..WORDS {
            self.0[i] |= other.0[i];
        }
    }

    #[inline]
    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some((i << 6) | b)
                }
            })
        })
    }
}

struct Searcher {
    adj: Vec<Bits>,
    weights: Vec<f64>,
    by_weight: Vec<u32>,
    deadline: Instant,
    timed_out: bool,
    tick: u32,
}

impl Searcher {
    fn expired(&mut self) -> bool {
        if self.timed_out {
            return true;
        }
        self.tick = self.tick.wrapping_add(1);
        if self.tick % 256 == 0 && Instant::now() > self.deadline {
            self.timed_out = true;
        }
        self.timed_out
    }

    fn degree(&self, v: usize, alive: &Bits) -> u32 {
        self.adj[v].and(alive).count()
    }

    /// Greedy independent set by descending weight; always feasible.
    fn greedy(&self, alive: &Bits) -> (f64, Bits) {
        let mut chosen = Bits::default();
        let mut blocked = Bits::default();
        let mut value = 0.0;
        for &v in &self.by_weight {
            let v = v as usize;
            if alive.contains(v) && !blocked.contains(v) && self.weights[v] > 0.0 {
                chosen.insert(v);
                blocked.insert(v);
                blocked.or_assign(&self.adj[v]);
                value += self.weights[v];
            }
        }
        (value, chosen)
    }

    /// Pair-cover upper bound: group vertices into adjacent pairs greedily
    /// by descending weight; an independent set takes at most the maximum
    /// of each pair.
    fn bound(&self, alive: &Bits) -> f64 {
        let mut processed = Bits::default();
        let mut total = 0.0;
        for &v in &self.by_weight {
            let v = v as usize;
            if !alive.contains(v) || processed.contains(v) {
                continue;
            }
            processed.insert(v);
            // heaviest unprocessed neighbor joins the pair; the pair
            // contributes its maximum under the current (possibly folded)
            // weights, so the stale sort order cannot undercut the bound
            let mut best: Option<usize> = None;
            for u in self.adj[v].and(alive).minus(&processed).iter() {
                if best.map_or(true, |b| self.weights[u] > self.weights[b]) {
                    best = Some(u);
                }
            }
            match best {
                Some(u) => {
                    processed.insert(u);
                    total += self.weights[v].max(self.weights[u]).max(0.0);
                }
                None => total += self.weights[v].max(0.0),
            }
        }
        total
    }

    fn component_of(&self, start: usize, alive: &Bits) -> Bits {
        let mut comp = Bits::default();
        comp.insert(start);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for u in self.adj[v].and(alive).minus(&comp).iter() {
                comp.insert(u);
                stack.push(u);
            }
        }
        comp
    }

    /// Exact optimum over `alive` if it exceeds `lb`, else `None`.
    /// When the deadline fires the greedy completion is returned instead
    /// and `timed_out` is set.
    fn solve(&mut self, alive: Bits, lb: f64) -> Option<(f64, Bits)> {
        if self.expired() {
            let (gv, gs) = self.greedy(&alive);
            return if gv > lb { Some((gv, gs)) } else { None };
        }

        let mut alive = alive;
        let mut base = 0.0;
        let mut taken = Bits::default();
        // folds are resolved innermost-last, after the recursive value is known
        let mut folds: Vec<(usize, usize)> = Vec::new();
        let mut undo: Vec<(usize, f64)> = Vec::new();

        // reductions to fixpoint
        loop {
            let mut changed = false;
            for v in alive.iter().collect::<Vec<_>>() {
                if !alive.contains(v) {
                    continue;
                }
                let deg = self.degree(v, &alive);
                if deg == 0 {
                    if self.weights[v] > 0.0 {
                        base += self.weights[v];
                        taken.insert(v);
                    }
                    alive.remove(v);
                    changed = true;
                } else if deg == 1 {
                    let u = self.adj[v].and(&alive).iter().next().unwrap();
                    if self.weights[v] >= self.weights[u] {
                        base += self.weights[v];
                        taken.insert(v);
                        alive.remove(v);
                        alive.remove(u);
                    } else {
                        base += self.weights[v];
                        undo.push((u, self.weights[u]));
                        self.weights[u] -= self.weights[v];
                        folds.push((v, u));
                        alive.remove(v);
                    }
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }

        let result = 'search: {
            if alive.is_empty() {
                break 'search if base > lb { Some((base, taken)) } else { None };
            }
            if base + self.bound(&alive) <= lb {
                break 'search None;
            }

            let first = alive.iter().next().unwrap();
            let comp = self.component_of(first, &alive);
            if comp != alive {
                // independent components: solve each exactly and combine
                let mut total = base;
                let mut set = taken;
                let mut rest = alive;
                let mut comp = comp;
                loop {
                    let (v, s) = self.solve(comp, f64::NEG_INFINITY).expect("unbounded lb");
                    total += v;
                    set.or_assign(&s);
                    rest = rest.minus(&comp);
                    match rest.iter().next() {
                        None => break,
                        Some(next) => comp = self.component_of(next, &rest),
                    }
                }
                break 'search if total > lb { Some((total, set)) } else { None };
            }

            // branch on a maximum-degree node
            let v = alive
                .iter()
                .max_by_key(|&v| (self.degree(v, &alive), std::cmp::Reverse(v)))
                .unwrap();
            let mut best: Option<(f64, Bits)> = None;
            let mut cur_lb = lb;

            // include v
            let without_nv = alive.minus(&self.adj[v]).minus(&Bits::full(0));
            let mut inc_alive = without_nv;
            inc_alive.remove(v);
            if let Some((val, mut set)) =
                self.solve(inc_alive, cur_lb - base - self.weights[v])
            {
                set.insert(v);
                let total = base + self.weights[v] + val;
                if total > cur_lb {
                    cur_lb = total;
                    let mut full = taken;
                    full.or_assign(&set);
                    best = Some((total, full));
                }
            }

            // exclude v
            let mut exc_alive = alive;
            exc_alive.remove(v);
            if let Some((val, set)) = self.solve(exc_alive, cur_lb - base) {
                let total = base + val;
                if total > cur_lb {
                    let mut full = taken;
                    full.or_assign(&set);
                    best = Some((total, full));
                }
            }
            best
        };

        // resolve folds: v joins iff u stayed out
        let result = result.map(|(val, mut set)| {
            for &(v, u) in folds.iter().rev() {
                if !set.contains(u) {
                    set.insert(v);
                }
            }
            (val, set)
        });
        for &(u, w) in undo.iter().rev() {
            self.weights[u] = w;
        }
        result
    }
}

/// Branch-and-bound MWIS with the default 10-second budget.
pub fn mwis_bnb(g: &WeightedGraph) -> Result<SolveResult, SolveError> {
    mwis_bnb_with_budget(g, DEFAULT_BUDGET)
}

/// Branch-and-bound MWIS; on budget expiry the best solution found so far
/// is returned with `exact = false`.
pub fn mwis_bnb_with_budget(
    g: &WeightedGraph,
    budget: Duration,
) -> Result<SolveResult, SolveError> {
    let n = g.n();
    if n > MAX_BNB_NODES {
        return Err(SolveError::TooLarge {
            solver: "mwis_bnb",
            detail: format!("n = {n} > {MAX_BNB_NODES}"),
        });
    }
    if g.max_degree() > MAX_BNB_DEGREE {
        return Err(SolveError::TooLarge {
            solver: "mwis_bnb",
            detail: format!("max degree {} > {MAX_BNB_DEGREE}", g.max_degree()),
        });
    }
    let mut adj = vec![Bits::default(); n];
    for v in 0..n {
        for &u in g.neighbors(v as u32) {
            adj[v].insert(u as usize);
        }
    }
    let weights: Vec<f64> = (0..n as u32).map(|v| g.node_weight(v)).collect();
    let mut by_weight: Vec<u32> = (0..n as u32).collect();
    by_weight.sort_by(|&a, &b| weights[b as usize].total_cmp(&weights[a as usize]));
    let mut searcher = Searcher {
        adj,
        weights,
        by_weight,
        deadline: Instant::now() + budget,
        timed_out: false,
        tick: 0,
    };
    let alive = Bits::full(n);
    let (greedy_value, greedy_set) = searcher.greedy(&alive);
    let (value, set) = match searcher.solve(alive, greedy_value) {
        Some(better) => better,
        None => (greedy_value, greedy_set),
    };
    let nodes: Vec<u32> = set.iter().map(|v| v as u32).collect();
    Ok(SolveResult { value, chosen: Chosen::Nodes(nodes), exact: !searcher.timed_out })
}
