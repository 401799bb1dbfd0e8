//! The linear modularity game and node power.
//!
//! `v(S) = α·l_in(S)/m − β·l_out(S)/m`. Every semivalue whose coefficients are
//! symmetric in the number of neighbours of `i` inside the coalition
//! (Shapley and Banzhaf among them) pays node `i` exactly `α·l_i/(2m)`, so the
//! power vector is computed in closed form from degrees. The exhaustive
//! coalition sums are kept as oracles.

use crate::error::{argument, Error, Result};
use crate::graph::{Graph, NodeId};

/// Largest player count accepted by [`semivalue_bruteforce`].
pub const BRUTE_FORCE_LIMIT: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GameParams {
    alpha: f64,
    beta: f64,
}

impl GameParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(argument(format!("alpha must be positive, got {alpha}")));
        }
        if !(beta.is_finite() && beta >= 0.0) {
            return Err(argument(format!("beta must be nonnegative, got {beta}")));
        }
        Ok(GameParams { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

impl Default for GameParams {
    fn default() -> Self {
        GameParams {
            alpha: 1.0,
            beta: 1.0,
        }
    }
}

/// Per-node power `φ`.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerVector {
    phi: Vec<f64>,
}

impl PowerVector {
    pub fn from_values(phi: Vec<f64>) -> Result<Self> {
        if let Some(bad) = phi.iter().find(|x| !(x.is_finite() && **x >= 0.0)) {
            return Err(argument(format!(
                "power values must be finite and nonnegative, got {bad}"
            )));
        }
        Ok(PowerVector { phi })
    }

    /// Every node gets the same power `c`.
    pub fn constant(n: usize, c: f64) -> Result<Self> {
        Self::from_values(vec![c; n])
    }

    pub fn len(&self) -> usize {
        self.phi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phi.is_empty()
    }

    pub fn get(&self, node: NodeId) -> f64 {
        self.phi[node]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.phi
    }

    pub fn total(&self) -> f64 {
        self.phi.iter().sum()
    }

    /// Node ids sorted by decreasing power, ties by increasing id.
    pub fn ranking(&self) -> Vec<NodeId> {
        let mut ids: Vec<NodeId> = (0..self.phi.len()).collect();
        ids.sort_by(|&a, &b| self.phi[b].total_cmp(&self.phi[a]).then(a.cmp(&b)));
        ids
    }
}

/// `φ_i = α·l_i/(2m)` from the current degrees and edge count.
pub fn power_vector(g: &Graph, params: GameParams) -> Result<PowerVector> {
    let m = g.edge_count();
    if m == 0 {
        return Err(Error::Degenerate(
            "power is undefined on a graph without edges".into(),
        ));
    }
    let scale = params.alpha / (2.0 * m as f64);
    Ok(PowerVector {
        phi: (0..g.node_count())
            .map(|i| scale * g.degree(i) as f64)
            .collect(),
    })
}

/// `v_mod(S)`. A graph without edges has `v ≡ 0`.
pub fn v_mod(g: &Graph, coalition: &[NodeId], params: GameParams) -> Result<f64> {
    let n = g.node_count();
    let mut inside = vec![false; n];
    for &x in coalition {
        if x >= n {
            return Err(argument(format!("node {x} outside 0..{n}")));
        }
        inside[x] = true;
    }
    let m = g.edge_count();
    if m == 0 {
        return Ok(0.0);
    }
    let (mut l_in, mut l_out) = (0usize, 0usize);
    for e in g.edges() {
        match (inside[e.u()], inside[e.v()]) {
            (true, true) => l_in += 1,
            (true, false) | (false, true) => l_out += 1,
            _ => {}
        }
    }
    let m = m as f64;
    Ok(params.alpha * l_in as f64 / m - params.beta * l_out as f64 / m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Semivalue {
    Shapley,
    Banzhaf,
}

impl Semivalue {
    /// Weight `P(S)` of a coalition of size `s` not containing the player,
    /// in a game with `n` players.
    pub fn coefficient(self, n: usize, s: usize) -> f64 {
        debug_assert!(n >= 1 && s < n);
        match self {
            // s!(n-1-s)!/n! = 1 / (n · C(n-1, s))
            Semivalue::Shapley => 1.0 / (n as f64 * binomial(n - 1, s)),
            Semivalue::Banzhaf => 0.5f64.powi((n - 1) as i32),
        }
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

/// Semivalue of node `i` by summing weighted marginal contributions over all
/// `2^(n-1)` coalitions that exclude it.
pub fn semivalue_bruteforce(
    g: &Graph,
    i: NodeId,
    params: GameParams,
    kind: Semivalue,
) -> Result<f64> {
    let n = g.node_count();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::Capacity {
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    if i >= n {
        return Err(argument(format!("node {i} outside 0..{n}")));
    }
    let m = g.edge_count();
    if m == 0 {
        return Ok(0.0);
    }

    let adj: Vec<u32> = (0..n)
        .map(|x| g.neighbors(x).fold(0u32, |bits, w| bits | (1 << w)))
        .collect();
    let full: u32 = (1u32 << n) - 1;
    let value = |set: u32| -> f64 {
        let (mut twice_in, mut out) = (0u32, 0u32);
        let mut rest = set;
        while rest != 0 {
            let x = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            twice_in += (adj[x] & set).count_ones();
            out += (adj[x] & !set & full).count_ones();
        }
        let m = m as f64;
        params.alpha * (twice_in / 2) as f64 / m - params.beta * out as f64 / m
    };

    let others: Vec<usize> = (0..n).filter(|&x| x != i).collect();
    let coeffs: Vec<f64> = (0..n).map(|s| kind.coefficient(n, s)).collect();
    let mut total = 0.0;
    for mask in 0u32..(1u32 << others.len()) {
        let mut set = 0u32;
        let mut rest = mask;
        while rest != 0 {
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            set |= 1 << others[b];
        }
        let marginal = value(set | (1 << i)) - value(set);
        total += coeffs[mask.count_ones() as usize] * marginal;
    }
    Ok(total)
}

/// Importance of the communication between two nodes.
pub trait PairWeight {
    fn weight(&self, r: NodeId, s: NodeId) -> f64;
}

/// Every pair counts once. Recovers classical shortest-path betweenness.
#[derive(Clone, Copy, Debug, Default)]
pub struct UnitWeight;

impl PairWeight for UnitWeight {
    fn weight(&self, _r: NodeId, _s: NodeId) -> f64 {
        1.0
    }
}

/// `h(r, s) = min(φ_r, φ_s)`, evaluated on demand.
#[derive(Clone, Copy, Debug)]
pub struct MinPower<'a> {
    phi: &'a [f64],
}

impl PairWeight for MinPower<'_> {
    fn weight(&self, r: NodeId, s: NodeId) -> f64 {
        self.phi[r].min(self.phi[s])
    }
}

pub fn pair_weights(phi: &PowerVector) -> MinPower<'_> {
    MinPower { phi: &phi.phi }
}
