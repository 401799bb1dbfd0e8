//! Divisive hierarchical clustering by repeated removal of the edge with the
//! highest betweenness.
//!
//! Three scoring flavours share one loop:
//!
//! * `Gn`: classical shortest-path betweenness, every pair weighs 1.
//! * `Gice`: node-game betweenness, pair `(r, s)` weighs `min(φ_r, φ_s)` with
//!   `φ_i = α·l_i/(2m)` refreshed from the working graph after every removal.
//! * `Gicef`: as `Gice`, but only the `⌈log n⌉` highest-power nodes of the
//!   whole graph act as path origins.
//!
//! Scores are cached per connected component. After a removal only the
//! component(s) that contained the removed edge are rescored, plus (for
//! `Gicef`) any component whose share of the source set changed. The node-game
//! weights are kept without their global `1/(2m)` factor: the factor is the
//! same for every edge, so it never changes which edge is maximal, and leaving
//! it out keeps cached scores of untouched components valid when `m` shrinks.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::betweenness::Accumulator;
use crate::error::{argument, Error, Result};
use crate::game::{power_vector, GameParams, PowerVector};
use crate::graph::{connected_components, Edge, Graph, NodeId};
use crate::partition::Partition;

/// Relative tolerance under which two edge scores count as tied.
pub const TIE_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Gn,
    Gice,
    Gicef,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Gn => "gn",
            Algorithm::Gice => "gice",
            Algorithm::Gicef => "gicef",
        })
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gn" => Ok(Algorithm::Gn),
            "gice" => Ok(Algorithm::Gice),
            "gicef" => Ok(Algorithm::Gicef),
            other => Err(argument(format!("unknown algorithm '{other}'"))),
        }
    }
}

/// Logarithm used to size the source set of `Gicef`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LogBase {
    #[default]
    Natural,
    Two,
    Ten,
}

impl LogBase {
    fn log(self, x: f64) -> f64 {
        match self {
            LogBase::Natural => x.ln(),
            LogBase::Two => x.log2(),
            LogBase::Ten => x.log10(),
        }
    }
}

/// How node power is obtained for the node-game flavours.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PowerModel {
    /// Closed-form semivalue of the linear modularity game.
    #[default]
    ModularityGame,
    /// Every node gets the same power. Only useful for testing: it makes the
    /// node-game flavours coincide with `Gn`.
    Constant,
}

#[derive(Clone, Copy, Debug)]
pub struct DivisiveConfig {
    pub algorithm: Algorithm,
    pub params: GameParams,
    /// 0 breaks ties by taking the lexicographically smallest edge; any other
    /// value seeds a uniform choice among tied edges.
    pub seed: u64,
    pub log_base: LogBase,
    pub power_model: PowerModel,
}

impl DivisiveConfig {
    pub fn new(algorithm: Algorithm) -> Self {
        DivisiveConfig {
            algorithm,
            params: GameParams::default(),
            seed: 0,
            log_base: LogBase::Natural,
            power_model: PowerModel::ModularityGame,
        }
    }

    pub fn with_params(mut self, params: GameParams) -> Self {
        self.params = params;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_log_base(mut self, base: LogBase) -> Self {
        self.log_base = base;
        self
    }

    pub fn with_power_model(mut self, model: PowerModel) -> Self {
        self.power_model = model;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RemovalEvent {
    pub edge: Edge,
    /// Whether the removal disconnected a component.
    pub split: bool,
}

/// The full sequence of removals and the partitions they produced.
///
/// `partitions()[t]` is `P_{t+1}`: the first recorded partition has one more
/// community than the initial component count, the last is all singletons.
#[derive(Clone, Debug, PartialEq)]
pub struct Dendrogram {
    algorithm: Algorithm,
    seed: u64,
    node_count: usize,
    edge_count: usize,
    initial: Partition,
    partitions: Vec<Partition>,
    events: Vec<RemovalEvent>,
}

impl Dendrogram {
    pub fn algorithm(&self) -> Algorithm {
        self.algorithm
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// Edge count of the graph the dendrogram was built from.
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Connected components of the input graph.
    pub fn initial(&self) -> &Partition {
        &self.initial
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn events(&self) -> &[RemovalEvent] {
        &self.events
    }

    /// First recorded partition with exactly `k` communities.
    pub fn partition_with(&self, k: usize) -> Option<&Partition> {
        self.partitions.iter().find(|p| p.len() == k)
    }

    /// Rebuilds a dendrogram from a removal order alone.
    pub fn replay(g: &Graph, algorithm: Algorithm, seed: u64, removals: &[Edge]) -> Result<Self> {
        let mut work = g.clone();
        let mut tracker = ComponentTracker::new(&work);
        let initial = tracker.partition();
        let mut partitions = Vec::new();
        let mut events = Vec::with_capacity(removals.len());
        for &edge in removals {
            let split = tracker
                .remove(&mut work, edge)
                .ok_or_else(|| Error::Replay(format!("edge {edge} is not present when removed")))?;
            if split {
                partitions.push(tracker.partition());
            }
            events.push(RemovalEvent { edge, split });
        }
        if work.edge_count() != 0 {
            return Err(Error::Replay(format!(
                "{} edges remain after the last removal",
                work.edge_count()
            )));
        }
        Ok(Dendrogram {
            algorithm,
            seed,
            node_count: g.node_count(),
            edge_count: g.edge_count(),
            initial,
            partitions,
            events,
        })
    }

    /// Checks the dendrogram against `g`: replaying its events must reproduce
    /// every split flag and partition, each partition must have exactly one
    /// more community than the previous one, be finer than it, and consist of
    /// connected communities in the graph state it was recorded against; the
    /// last partition must be all singletons.
    pub fn verify(&self, g: &Graph) -> Result<()> {
        if g.node_count() != self.node_count || g.edge_count() != self.edge_count {
            return Err(Error::Replay(format!(
                "dendrogram expects n={} m={}, graph has n={} m={}",
                self.node_count,
                self.edge_count,
                g.node_count(),
                g.edge_count()
            )));
        }
        let mut work = g.clone();
        let mut tracker = ComponentTracker::new(&work);
        let mut prev = tracker.partition();
        if prev != self.initial {
            return Err(Error::Replay("initial components differ".into()));
        }
        let mut recorded = self.partitions.iter();
        for (i, ev) in self.events.iter().enumerate() {
            let split = tracker.remove(&mut work, ev.edge).ok_or_else(|| {
                Error::Replay(format!("event {}: edge {} is not present", i + 1, ev.edge))
            })?;
            if split != ev.split {
                return Err(Error::Replay(format!(
                    "event {}: split flag {} but removal {} the graph",
                    i + 1,
                    ev.split,
                    if split { "splits" } else { "does not split" }
                )));
            }
            if !split {
                continue;
            }
            let current = tracker.partition();
            let Some(stored) = recorded.next() else {
                return Err(Error::Replay("fewer partitions than split events".into()));
            };
            if *stored != current {
                return Err(Error::Replay(format!(
                    "event {}: partition differs from replay",
                    i + 1
                )));
            }
            if current.len() != prev.len() + 1 || !current.is_finer_than(&prev) {
                return Err(Error::Replay(format!(
                    "event {}: partition is not a one-block refinement",
                    i + 1
                )));
            }
            if !current.is_connected_in(&work) {
                return Err(Error::Replay(format!(
                    "event {}: a community is disconnected",
                    i + 1
                )));
            }
            prev = current;
        }
        if recorded.next().is_some() {
            return Err(Error::Replay("more partitions than split events".into()));
        }
        if work.edge_count() != 0 {
            return Err(Error::Replay(format!(
                "{} edges never removed",
                work.edge_count()
            )));
        }
        if prev != Partition::singletons(self.node_count) {
            return Err(Error::Replay(
                "final partition is not all singletons".into(),
            ));
        }
        Ok(())
    }
}

/// Connected-component labels maintained under edge removal.
struct ComponentTracker {
    comp: Vec<usize>,
    members: Vec<Vec<NodeId>>,
    stack: Vec<NodeId>,
    mark: Vec<bool>,
}

impl ComponentTracker {
    fn new(g: &Graph) -> Self {
        let p = connected_components(g);
        ComponentTracker {
            comp: p.assignment().to_vec(),
            members: p.communities().to_vec(),
            stack: Vec::new(),
            mark: vec![false; g.node_count()],
        }
    }

    fn partition(&self) -> Partition {
        Partition::from_assignment(&self.comp)
    }

    /// Removes `edge` from `g`. Returns whether the removal split its
    /// component, or `None` if the edge was absent.
    fn remove(&mut self, g: &mut Graph, edge: Edge) -> Option<bool> {
        if !g.remove_edge(edge.u(), edge.v()) {
            return None;
        }
        let (u, v) = (edge.u(), edge.v());
        self.stack.clear();
        self.stack.push(u);
        self.mark[u] = true;
        let mut reached = vec![u];
        let mut found = false;
        while let Some(x) = self.stack.pop() {
            for w in g.neighbors(x) {
                if !self.mark[w] {
                    if w == v {
                        found = true;
                    }
                    self.mark[w] = true;
                    self.stack.push(w);
                    reached.push(w);
                }
            }
            if found {
                break;
            }
        }
        for &x in &reached {
            self.mark[x] = false;
        }
        if found {
            return Some(false);
        }
        // `reached` is now the full side of u.
        let old = self.comp[u];
        let new = self.members.len();
        for &x in &reached {
            self.comp[x] = new;
        }
        self.members[old].retain(|&x| self.comp[x] == old);
        reached.sort_unstable();
        self.members.push(reached);
        Some(true)
    }
}

/// Number of sources used by `Gicef` on a graph with `n` nodes.
pub fn source_count(n: usize, base: LogBase) -> usize {
    if n <= 1 {
        return 1;
    }
    (base.log(n as f64).ceil() as usize).max(1)
}

/// The `⌈ln n⌉` highest-power nodes, ties by smallest id.
pub fn select_sources(phi: &PowerVector, n: usize) -> Vec<NodeId> {
    select_sources_with(phi, n, LogBase::Natural)
}

pub fn select_sources_with(phi: &PowerVector, n: usize, base: LogBase) -> Vec<NodeId> {
    let k = source_count(n, base).min(phi.len());
    let mut top = phi.ranking();
    top.truncate(k);
    top.sort_unstable();
    top
}

pub fn run_divisive(
    g: &Graph,
    algorithm: Algorithm,
    params: GameParams,
    seed: u64,
) -> Result<Dendrogram> {
    run_divisive_with(
        g,
        &DivisiveConfig::new(algorithm)
            .with_params(params)
            .with_seed(seed),
    )
}

pub fn run_divisive_with(g: &Graph, cfg: &DivisiveConfig) -> Result<Dendrogram> {
    if g.edge_count() == 0 {
        return Err(Error::Degenerate("graph has no edges".into()));
    }
    let n = g.node_count();
    let mut work = g.clone();
    let mut tracker = ComponentTracker::new(&work);
    let initial = tracker.partition();
    let mut scorer = Scorer::new(&work, cfg);
    let mut rng = (cfg.seed != 0).then(|| ChaCha8Rng::seed_from_u64(cfg.seed));

    for c in 0..tracker.members.len() {
        scorer.rescore(&work, &tracker.members[c]);
    }

    let mut partitions = Vec::with_capacity(n.saturating_sub(initial.len()));
    let mut events = Vec::with_capacity(g.edge_count());
    let mut tied: Vec<Edge> = Vec::new();
    while work.edge_count() > 0 {
        let max = (0..work.slot_count())
            .filter(|&s| work.slot_alive(s))
            .map(|s| scorer.scores[s])
            .fold(f64::NEG_INFINITY, f64::max);
        let cut = max - TIE_TOLERANCE * max.abs();
        tied.clear();
        tied.extend(
            (0..work.slot_count())
                .filter(|&s| work.slot_alive(s) && scorer.scores[s] >= cut)
                .map(|s| work.slot_edge(s)),
        );
        tied.sort_unstable();
        let edge = match rng.as_mut() {
            Some(rng) if tied.len() > 1 => tied[rng.gen_range(0..tied.len())],
            _ => tied[0],
        };

        let split = tracker
            .remove(&mut work, edge)
            .expect("chosen edge is live");
        events.push(RemovalEvent { edge, split });
        if split {
            partitions.push(tracker.partition());
        }
        if work.edge_count() == 0 {
            break;
        }

        let mut dirty = vec![tracker.comp[edge.u()], tracker.comp[edge.v()]];
        dirty.extend(
            scorer
                .refresh_sources(&work, cfg)
                .into_iter()
                .map(|x| tracker.comp[x]),
        );
        dirty.sort_unstable();
        dirty.dedup();
        for c in dirty {
            scorer.rescore(&work, &tracker.members[c]);
        }
    }

    Ok(Dendrogram {
        algorithm: cfg.algorithm,
        seed: cfg.seed,
        node_count: n,
        edge_count: g.edge_count(),
        initial,
        partitions,
        events,
    })
}

struct Scorer {
    algorithm: Algorithm,
    unit: bool,
    alpha: f64,
    log_base: LogBase,
    params: GameParams,
    /// Source mask for `Gicef`; all true otherwise.
    is_source: Vec<bool>,
    scores: Vec<f64>,
    acc: Accumulator,
}

impl Scorer {
    fn new(g: &Graph, cfg: &DivisiveConfig) -> Self {
        let n = g.node_count();
        let mut s = Scorer {
            algorithm: cfg.algorithm,
            unit: cfg.algorithm == Algorithm::Gn || cfg.power_model == PowerModel::Constant,
            alpha: cfg.params.alpha(),
            log_base: cfg.log_base,
            params: cfg.params,
            is_source: vec![cfg.algorithm != Algorithm::Gicef; n],
            scores: vec![0.0; g.slot_count()],
            acc: Accumulator::new(n),
        };
        s.refresh_sources(g, cfg);
        s
    }

    /// Recomputes the `Gicef` source set from current powers. Returns nodes
    /// whose membership changed.
    fn refresh_sources(&mut self, g: &Graph, cfg: &DivisiveConfig) -> Vec<NodeId> {
        if self.algorithm != Algorithm::Gicef {
            return Vec::new();
        }
        let n = g.node_count();
        let phi = match cfg.power_model {
            PowerModel::Constant => PowerVector::constant(n, 1.0),
            PowerModel::ModularityGame => power_vector(g, self.params),
        }
        .expect("graph has edges");
        let mut next = vec![false; n];
        for s in select_sources_with(&phi, n, self.log_base) {
            next[s] = true;
        }
        let changed = (0..n).filter(|&x| next[x] != self.is_source[x]).collect();
        self.is_source = next;
        changed
    }

    fn rescore(&mut self, g: &Graph, members: &[NodeId]) {
        for &x in members {
            for &(_, slot) in g.adjacency_slots(x) {
                self.scores[slot] = 0.0;
            }
        }
        if members.len() < 2 {
            return;
        }
        for &s in members {
            if !self.is_source[s] {
                continue;
            }
            if self.unit {
                self.acc.accumulate(g, s, |_| 1.0, &mut self.scores);
            } else {
                let alpha = self.alpha;
                let ds = g.degree(s);
                self.acc.accumulate(
                    g,
                    s,
                    |t| alpha * ds.min(g.degree(t)) as f64,
                    &mut self.scores,
                );
            }
        }
    }
}
