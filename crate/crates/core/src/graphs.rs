//! Random graph generation and basic structure queries.
//!
//! Three models: `G(n, c/n)` by geometric edge skipping, uniform random
//! `r`-regular graphs by the configuration model (resampled from scratch
//! until simple, which keeps the law exactly uniform over simple regular
//! graphs), and the `n`-cycle. Graphs are simple and undirected; node and
//! edge weights are optional attachments.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::stream::rng_for;
use crate::weights::WeightSpec;

/// Resampling cap for the configuration model.
const REGULAR_RETRY_CAP: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("edge density c = {c} exceeds n = {n}")]
    DensityTooHigh { c: f64, n: usize },
    #[error("n*r must be even to build an r-regular graph (n = {n}, r = {r})")]
    OddDegreeSum { n: usize, r: usize },
    #[error("degree r = {r} must be below n = {n}")]
    DegreeTooHigh { r: usize, n: usize },
    #[error("no simple pairing found in {0} configuration-model attempts")]
    RetriesExhausted(usize),
    #[error("a cycle needs at least 3 nodes, got {0}")]
    CycleTooSmall(usize),
    #[error("graph must have at least one node")]
    EmptyGraph,
    #[error("invalid edge ({u}, {v}) for n = {n}")]
    InvalidEdge { u: u32, v: u32, n: usize },
    #[error("malformed edge list: {0}")]
    ParseEdgeList(String),
}

/// How a graph was produced; carried along for reproducible reporting.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Provenance {
    pub model: String,
    pub parameters: String,
    pub seed: u64,
}

impl Provenance {
    fn new(model: &str, parameters: String, seed: u64) -> Self {
        Self { model: model.to_owned(), parameters, seed }
    }
}

/// Where weights are attached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WeightTarget {
    Nodes,
    Edges,
}

/// Canonical (min, max) key for an undirected edge.
#[inline]
pub fn edge_key(u: u32, v: u32) -> (u32, u32) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A simple undirected graph with optional node and edge weights.
#[derive(Debug, Clone)]
pub struct WeightedGraph {
    n: usize,
    adj: Vec<Vec<u32>>,
    pub node_weights: Option<Vec<f64>>,
    pub edge_weights: Option<HashMap<(u32, u32), f64>>,
    pub provenance: Provenance,
}

impl WeightedGraph {
    /// Builds a graph from an edge list, rejecting self-loops, parallel
    /// edges, and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::EmptyGraph);
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u == v || u as usize >= n || v as usize >= n {
                return Err(GraphError::InvalidEdge { u, v, n });
            }
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                let v = list.windows(2).find(|w| w[0] == w[1]).unwrap()[0];
                return Err(GraphError::InvalidEdge { u: u as u32, v, n });
            }
        }
        Ok(Self {
            n,
            adj,
            node_weights: None,
            edge_weights: None,
            provenance: Provenance::new("edges", String::new(), 0),
        })
    }

    /// `G(n, c/n)`: every one of the `n(n-1)/2` pairs is an edge with
    /// probability `c/n`, generated by geometric skipping over the pair
    /// enumeration so the cost is proportional to the number of edges.
    pub fn gen_gnp(n: usize, c: f64, seed: u64) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::EmptyGraph);
        }
        if !(0.0..=n as f64).contains(&c) {
            return Err(GraphError::DensityTooHigh { c, n });
        }
        let p = c / n as f64;
        let mut edges: Vec<(u32, u32)> = Vec::new();
        if p >= 1.0 {
            for u in 0..n as u32 {
                for v in (u + 1)..n as u32 {
                    edges.push((u, v));
                }
            }
        } else if p > 0.0 {
            let mut rng = rng_for(seed, 0, 0);
            let log_q = (1.0 - p).ln();
            let total = n as u64 * (n as u64 - 1) / 2;
            let mut idx: u64 = 0;
            loop {
                // geometric gap to the next present pair
                let u: f64 = 1.0 - rng.gen::<f64>();
                let skip = (u.ln() / log_q).floor() as u64;
                idx = match idx.checked_add(skip) {
                    Some(i) => i,
                    None => break,
                };
                if idx >= total {
                    break;
                }
                edges.push(pair_from_index(idx, n as u64));
                idx += 1;
            }
        }
        let mut g = Self::from_edges(n, &edges)?;
        g.provenance = Provenance::new("gnp", format!("n={n},c={c}"), seed);
        Ok(g)
    }

    /// Uniform random simple `r`-regular graph via the configuration model:
    /// shuffle `n·r` half-edge stubs, pair them up, and resample the whole
    /// pairing whenever a self-loop or parallel edge appears.
    pub fn gen_regular(n: usize, r: usize, seed: u64) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::EmptyGraph);
        }
        if r >= n {
            return Err(GraphError::DegreeTooHigh { r, n });
        }
        if (n * r) % 2 != 0 {
            return Err(GraphError::OddDegreeSum { n, r });
        }
        if r == 0 {
            let mut g = Self::from_edges(n, &[])?;
            g.provenance = Provenance::new("regular", format!("n={n},r={r}"), seed);
            return Ok(g);
        }
        let mut stubs: Vec<u32> = (0..n as u32).flat_map(|v| std::iter::repeat(v).take(r)).collect();
        let half = stubs.len() / 2;
        for attempt in 0..REGULAR_RETRY_CAP {
            let mut rng = rng_for(seed, 1, attempt as u64);
            stubs.shuffle(&mut rng);
            let mut edges: Vec<(u32, u32)> = Vec::with_capacity(half);
            let mut seen: HashMap<(u32, u32), ()> = HashMap::with_capacity(half * 2);
            let mut simple = true;
            for i in 0..half {
                let (u, v) = (stubs[i], stubs[i + half]);
                if u == v || seen.insert(edge_key(u, v), ()).is_some() {
                    simple = false;
                    break;
                }
                edges.push((u, v));
            }
            if simple {
                let mut g = Self::from_edges(n, &edges)?;
                g.provenance = Provenance::new("regular", format!("n={n},r={r}"), seed);
                return Ok(g);
            }
        }
        Err(GraphError::RetriesExhausted(REGULAR_RETRY_CAP))
    }

    /// The cycle `0 - 1 - ... - (n-1) - 0`.
    pub fn gen_cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::CycleTooSmall(n));
        }
        let mut edges: Vec<(u32, u32)> = (0..n as u32 - 1).map(|u| (u, u + 1)).collect();
        edges.push((n as u32 - 1, 0));
        let mut g = Self::from_edges(n, &edges)?;
        g.provenance = Provenance::new("cycle", format!("n={n}"), 0);
        Ok(g)
    }

    /// Attaches i.i.d. weights from `spec` to nodes or edges.
    pub fn assign_weights(&mut self, spec: WeightSpec, target: WeightTarget, seed: u64) {
        match target {
            WeightTarget::Nodes => {
                let mut rng = rng_for(seed, 2, 0);
                self.node_weights = Some((0..self.n).map(|_| spec.sample(&mut rng)).collect());
            }
            WeightTarget::Edges => {
                let mut rng = rng_for(seed, 3, 0);
                let mut map = HashMap::new();
                for (u, v) in self.edges() {
                    map.insert((u, v), spec.sample(&mut rng));
                }
                self.edge_weights = Some(map);
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize].binary_search(&v).is_ok()
    }

    /// Edges in canonical order (u < v, lexicographic).
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n as u32 {
            for &v in &self.adj[u as usize] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn node_weight(&self, v: u32) -> f64 {
        self.node_weights.as_ref().map_or(1.0, |w| w[v as usize])
    }

    pub fn edge_weight(&self, u: u32, v: u32) -> f64 {
        self.edge_weights.as_ref().map_or(1.0, |m| m[&edge_key(u, v)])
    }

    /// Connected components with their cycle excess (edges − nodes + 1;
    /// 0 for trees, 1 for unicyclic components).
    pub fn components(&self) -> Vec<Component> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        let mut queue = Vec::new();
        for start in 0..self.n as u32 {
            if seen[start as usize] {
                continue;
            }
            seen[start as usize] = true;
            queue.clear();
            queue.push(start);
            let mut nodes = vec![start];
            let mut degree_sum = 0usize;
            while let Some(v) = queue.pop() {
                degree_sum += self.degree(v);
                for &w in self.neighbors(v) {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        queue.push(w);
                        nodes.push(w);
                    }
                }
            }
            let edges = degree_sum / 2;
            out.push(Component { excess: edges as i64 - nodes.len() as i64 + 1, nodes });
        }
        out
    }

    /// Induced subgraph on `nodes` (weights carried over); the i-th node of
    /// the result corresponds to `nodes[i]`.
    pub fn induced(&self, nodes: &[u32]) -> WeightedGraph {
        let mut index = HashMap::with_capacity(nodes.len());
        for (i, &v) in nodes.iter().enumerate() {
            index.insert(v, i as u32);
        }
        let mut edges = Vec::new();
        for (i, &v) in nodes.iter().enumerate() {
            for &w in self.neighbors(v) {
                if let Some(&j) = index.get(&w) {
                    if (i as u32) < j {
                        edges.push((i as u32, j));
                    }
                }
            }
        }
        let mut g = Self::from_edges(nodes.len(), &edges).expect("induced subgraph is simple");
        if let Some(w) = &self.node_weights {
            g.node_weights = Some(nodes.iter().map(|&v| w[v as usize]).collect());
        }
        if self.edge_weights.is_some() {
            let mut map = HashMap::new();
            for &(a, b) in &g.edges() {
                map.insert((a, b), self.edge_weight(nodes[a as usize], nodes[b as usize]));
            }
            g.edge_weights = Some(map);
        }
        g.provenance = self.provenance.clone();
        g
    }

    /// Depth-`d` neighborhood of `v`: the induced subgraph on all nodes
    /// within distance `d`, whether it is a tree, and the nodes at exactly
    /// distance `d` (as indices into the subgraph and the original graph).
    pub fn neighborhood(&self, v: u32, d: usize) -> Neighborhood {
        assert!((v as usize) < self.n, "node out of range");
        let mut dist: HashMap<u32, usize> = HashMap::new();
        dist.insert(v, 0);
        let mut order = vec![v];
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            let du = dist[&u];
            if du == d {
                continue;
            }
            for &w in self.neighbors(u) {
                if !dist.contains_key(&w) {
                    dist.insert(w, du + 1);
                    order.push(w);
                }
            }
        }
        let subgraph = self.induced(&order);
        let is_tree = subgraph.edge_count() == subgraph.n() - 1;
        let boundary: Vec<u32> =
            (0..order.len() as u32).filter(|&i| dist[&order[i as usize]] == d).collect();
        Neighborhood { subgraph, node_map: order, is_tree, boundary }
    }

    /// Writes the edge-list format: header `n m`, then one `u v [weight]`
    /// line per edge in canonical order. Weights round-trip bit-exactly.
    pub fn write_edge_list<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "{} {}", self.n, self.edge_count())?;
        for (u, v) in self.edges() {
            match &self.edge_weights {
                Some(m) => writeln!(w, "{u} {v} {}", m[&(u, v)])?,
                None => writeln!(w, "{u} {v}")?,
            }
        }
        Ok(())
    }

    /// Writes node weights as a single column, one per node.
    pub fn write_node_weights<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        if let Some(ws) = &self.node_weights {
            for x in ws {
                writeln!(w, "{x}")?;
            }
        }
        Ok(())
    }

    /// Parses the edge-list format produced by [`Self::write_edge_list`].
    pub fn read_edge_list<R: BufRead>(r: R) -> Result<Self, GraphError> {
        let bad = |msg: &str| GraphError::ParseEdgeList(msg.to_owned());
        let mut lines = r.lines();
        let header = lines
            .next()
            .ok_or_else(|| bad("missing header"))?
            .map_err(|e| bad(&e.to_string()))?;
        let mut it = header.split_whitespace();
        let n: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| bad("header must be `n m`"))?;
        let m: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| bad("header must be `n m`"))?;
        let mut edges = Vec::with_capacity(m);
        let mut weights: Vec<f64> = Vec::new();
        for line in lines {
            let line = line.map_err(|e| bad(&e.to_string()))?;
            if line.trim().is_empty() {
                continue;
            }
            let mut tok = line.split_whitespace();
            let u: u32 = tok
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| bad("edge line must start with two node ids"))?;
            let v: u32 = tok
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| bad("edge line must start with two node ids"))?;
            edges.push((u, v));
            if let Some(t) = tok.next() {
                weights.push(t.parse().map_err(|_| bad("bad edge weight"))?);
            }
        }
        if edges.len() != m {
            return Err(bad(&format!("expected {m} edges, found {}", edges.len())));
        }
        if !weights.is_empty() && weights.len() != edges.len() {
            return Err(bad("either all or no edges may carry weights"));
        }
        let mut g = Self::from_edges(n, &edges)?;
        if !weights.is_empty() {
            let mut map = HashMap::new();
            for (&(u, v), &w) in edges.iter().zip(&weights) {
                map.insert(edge_key(u, v), w);
            }
            g.edge_weights = Some(map);
        }
        Ok(g)
    }

    /// Parses a node-weight column file.
    pub fn read_node_weights<R: BufRead>(&mut self, r: R) -> Result<(), GraphError> {
        let bad = |msg: &str| GraphError::ParseEdgeList(msg.to_owned());
        let mut ws = Vec::with_capacity(self.n);
        for line in r.lines() {
            let line = line.map_err(|e| bad(&e.to_string()))?;
            if line.trim().is_empty() {
                continue;
            }
            ws.push(line.trim().parse::<f64>().map_err(|_| bad("bad node weight"))?);
        }
        if ws.len() != self.n {
            return Err(bad(&format!("expected {} node weights, found {}", self.n, ws.len())));
        }
        self.node_weights = Some(ws);
        Ok(())
    }
}

/// A connected component and its cycle excess.
#[derive(Debug, Clone)]
pub struct Component {
    pub nodes: Vec<u32>,
    /// `edges - nodes + 1`: 0 for a tree, 1 for unicyclic.
    pub excess: i64,
}

/// Result of [`WeightedGraph::neighborhood`].
#[derive(Debug, Clone)]
pub struct Neighborhood {
    pub subgraph: WeightedGraph,
    /// `node_map[i]` is the original id of subgraph node `i`; the root is 0.
    pub node_map: Vec<u32>,
    pub is_tree: bool,
    /// Subgraph indices of the nodes at exactly distance `d`.
    pub boundary: Vec<u32>,
}

/// Maps a flat index in `0..n(n-1)/2` to the corresponding pair `(u, v)`,
/// enumerating pairs as (0,1), (0,2), ..., (0,n-1), (1,2), ...
fn pair_from_index(idx: u64, n: u64) -> (u32, u32) {
    // row u starts at offset u*n - u(u+3)/2 ... solve by walking rows is
    // O(n); invert the triangular count instead.
    // pairs before row u: S(u) = u*(2n - u - 1)/2
    let mut lo = 0u64;
    let mut hi = n - 1;
    while lo < hi {
        let mid = (lo + hi + 1) / 2;
        let before = mid * (2 * n - mid - 1) / 2;
        if before <= idx {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    let u = lo;
    let before = u * (2 * n - u - 1) / 2;
    let v = u + 1 + (idx - before);
    (u as u32, v as u32)
}
