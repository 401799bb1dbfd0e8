//! Shortest-path edge betweenness with per-pair weights.
//!
//! Scores follow the ordered-pair convention: every ordered pair `(r, s)` with
//! `r` a source and `s ≠ r` reachable from it contributes `h(r, s)`, split
//! evenly over the `σ_rs` shortest paths. Summing over all sources therefore
//! counts each unordered pair twice.

use std::collections::HashSet;

use crate::error::{argument, Error, Result};
use crate::game::{pair_weights, PairWeight, PowerVector, UnitWeight};
use crate::graph::{Edge, Graph, NodeId};

/// Largest graph accepted by [`brute_betweenness`].
pub const BRUTE_BETWEENNESS_LIMIT: usize = 60;

/// Which nodes act as path origins.
#[derive(Clone, Copy, Debug)]
pub enum Sources<'a> {
    All,
    Nodes(&'a [NodeId]),
}

impl Sources<'_> {
    fn resolve(&self, g: &Graph) -> Result<Vec<NodeId>> {
        match self {
            Sources::All => Ok((0..g.node_count()).collect()),
            Sources::Nodes(list) => {
                if list.is_empty() {
                    return Err(argument("source list is empty"));
                }
                let mut seen = HashSet::with_capacity(list.len());
                for &s in *list {
                    if s >= g.node_count() {
                        return Err(argument(format!(
                            "source {s} outside 0..{}",
                            g.node_count()
                        )));
                    }
                    if !seen.insert(s) {
                        return Err(argument(format!("source {s} listed twice")));
                    }
                }
                Ok(list.to_vec())
            }
        }
    }
}

/// One score per live edge, ordered by edge.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeScores {
    entries: Vec<(Edge, f64)>,
}

impl EdgeScores {
    pub(crate) fn from_slots(g: &Graph, slot_scores: &[f64]) -> Self {
        let mut entries: Vec<(Edge, f64)> = (0..g.slot_count())
            .filter(|&s| g.slot_alive(s))
            .map(|s| (g.slot_edge(s), slot_scores[s]))
            .collect();
        entries.sort_unstable_by_key(|&(e, _)| e);
        EdgeScores { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, a: NodeId, b: NodeId) -> Option<f64> {
        let key = Edge::new(a, b);
        self.entries
            .binary_search_by_key(&key, |&(e, _)| e)
            .ok()
            .map(|i| self.entries[i].1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Edge, f64)> + '_ {
        self.entries.iter().copied()
    }

    pub fn max_score(&self) -> Option<f64> {
        self.entries.iter().map(|&(_, w)| w).reduce(f64::max)
    }

    /// Edges whose score is within `rel_tol · max` of the maximum.
    pub fn argmax(&self, rel_tol: f64) -> Vec<Edge> {
        let Some(max) = self.max_score() else {
            return Vec::new();
        };
        let cut = max - rel_tol * max.abs();
        self.entries
            .iter()
            .filter(|&&(_, w)| w >= cut)
            .map(|&(e, _)| e)
            .collect()
    }

    /// Multiplies every score by `factor`.
    pub fn scaled(mut self, factor: f64) -> Self {
        for (_, w) in &mut self.entries {
            *w *= factor;
        }
        self
    }
}

/// Reusable buffers for the per-source forward BFS and backward dependency
/// pass. Buffers are reset lazily so each call costs O(component size).
pub(crate) struct Accumulator {
    dist: Vec<usize>,
    sigma: Vec<f64>,
    delta: Vec<f64>,
    order: Vec<NodeId>,
}

const UNSEEN: usize = usize::MAX;

impl Accumulator {
    pub(crate) fn new(n: usize) -> Self {
        Accumulator {
            dist: vec![UNSEEN; n],
            sigma: vec![0.0; n],
            delta: vec![0.0; n],
            order: Vec::with_capacity(n),
        }
    }

    /// Adds the contribution of all ordered pairs `(source, t)` to
    /// `slot_scores`, each pair weighted by `target_weight(t)`.
    pub(crate) fn accumulate<W>(
        &mut self,
        g: &Graph,
        source: NodeId,
        target_weight: W,
        slot_scores: &mut [f64],
    ) where
        W: Fn(NodeId) -> f64,
    {
        self.order.clear();
        self.dist[source] = 0;
        self.sigma[source] = 1.0;
        self.order.push(source);
        let mut head = 0;
        while head < self.order.len() {
            let x = self.order[head];
            head += 1;
            let dx = self.dist[x];
            for &(w, _) in g.adjacency_slots(x) {
                if self.dist[w] == UNSEEN {
                    self.dist[w] = dx + 1;
                    self.order.push(w);
                }
                if self.dist[w] == dx + 1 {
                    self.sigma[w] += self.sigma[x];
                }
            }
        }

        for idx in (1..self.order.len()).rev() {
            let w = self.order[idx];
            let coeff = (target_weight(w) + self.delta[w]) / self.sigma[w];
            let dw = self.dist[w];
            for &(p, slot) in g.adjacency_slots(w) {
                if self.dist[p] != UNSEEN && self.dist[p] + 1 == dw {
                    let c = self.sigma[p] * coeff;
                    slot_scores[slot] += c;
                    self.delta[p] += c;
                }
            }
        }

        for &x in &self.order {
            self.dist[x] = UNSEEN;
            self.sigma[x] = 0.0;
            self.delta[x] = 0.0;
        }
    }
}

/// Weighted betweenness over slot indices, summed over `sources` in order.
pub(crate) fn slot_betweenness<H: PairWeight>(g: &Graph, h: &H, sources: &[NodeId]) -> Vec<f64> {
    let mut scores = vec![0.0; g.slot_count()];
    let mut acc = Accumulator::new(g.node_count());
    for &s in sources {
        acc.accumulate(g, s, |t| h.weight(s, t), &mut scores);
    }
    scores
}

/// Betweenness with an arbitrary symmetric or asymmetric pair weight.
pub fn weighted_edge_betweenness<H: PairWeight>(
    g: &Graph,
    h: &H,
    sources: Sources<'_>,
) -> Result<EdgeScores> {
    let sources = sources.resolve(g)?;
    Ok(EdgeScores::from_slots(g, &slot_betweenness(g, h, &sources)))
}

/// Classical shortest-path edge betweenness (every pair weighs 1).
pub fn sp_edge_betweenness(g: &Graph, sources: Sources<'_>) -> Result<EdgeScores> {
    weighted_edge_betweenness(g, &UnitWeight, sources)
}

/// Node-game betweenness: pair `(r, s)` weighs `min(φ_r, φ_s)`.
pub fn node_game_betweenness(
    g: &Graph,
    phi: &PowerVector,
    sources: Sources<'_>,
) -> Result<EdgeScores> {
    if phi.len() != g.node_count() {
        return Err(argument(format!(
            "power vector has {} entries but graph has {} nodes",
            phi.len(),
            g.node_count()
        )));
    }
    weighted_edge_betweenness(g, &pair_weights(phi), sources)
}

/// All-pairs oracle: enumerates every shortest path explicitly and credits
/// `h(r, s)/σ_rs` to each edge on each path.
pub fn brute_betweenness<H: PairWeight>(g: &Graph, h: &H) -> Result<EdgeScores> {
    let n = g.node_count();
    if n > BRUTE_BETWEENNESS_LIMIT {
        return Err(Error::Capacity {
            n,
            limit: BRUTE_BETWEENNESS_LIMIT,
        });
    }
    let mut scores = vec![0.0; g.slot_count()];
    let mut paths: Vec<Vec<usize>> = Vec::new();
    let mut trail: Vec<usize> = Vec::new();
    for r in 0..n {
        let dist = hop_distances(g, r);
        for s in 0..n {
            if s == r || dist[s].is_none() {
                continue;
            }
            paths.clear();
            walk_back(g, &dist, s, &mut trail, &mut paths);
            let share = h.weight(r, s) / paths.len() as f64;
            for path in &paths {
                for &slot in path {
                    scores[slot] += share;
                }
            }
        }
    }
    Ok(EdgeScores::from_slots(g, &scores))
}

fn hop_distances(g: &Graph, source: NodeId) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.node_count()];
    let mut frontier = vec![source];
    dist[source] = Some(0);
    let mut d = 0;
    while !frontier.is_empty() {
        d += 1;
        let mut next = Vec::new();
        for &x in &frontier {
            for w in g.neighbors(x) {
                if dist[w].is_none() {
                    dist[w] = Some(d);
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    dist
}

// Depth-first walk from `at` down the distance gradient to the node at
// distance 0, recording each complete path as a list of edge slots.
fn walk_back(
    g: &Graph,
    dist: &[Option<usize>],
    at: NodeId,
    trail: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let d = dist[at].unwrap();
    if d == 0 {
        out.push(trail.clone());
        return;
    }
    for &(p, slot) in g.adjacency_slots(at) {
        if dist[p] == Some(d - 1) {
            trail.push(slot);
            walk_back(g, dist, p, trail, out);
            trail.pop();
        }
    }
}
