#![allow(dead_code)]

use std::path::Path;

use nodegame::{parse_edge_list, Graph, NodeId};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn data_graph(name: &str) -> Graph {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name);
    parse_edge_list(std::fs::File::open(path).unwrap()).unwrap()
}

pub fn labelled(g: &Graph, blocks: &[&[&str]]) -> nodegame::Partition {
    let ids: Vec<Vec<NodeId>> = blocks
        .iter()
        .map(|b| b.iter().map(|l| g.node_by_label(l).unwrap()).collect())
        .collect();
    nodegame::Partition::from_communities(g.node_count(), &ids).unwrap()
}

/// Erdős–Rényi graph on `n` nodes.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Random spanning tree plus independent extra edges with probability `p`.
pub fn random_connected_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut order: Vec<NodeId> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        edges.push((order[i], parent));
    }
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Random labelling of `0..n` into at most `k` groups.
pub fn random_assignment<R: Rng>(rng: &mut R, n: usize, k: usize) -> Vec<usize> {
    (0..n).map(|_| rng.gen_range(0..k.max(1))).collect()
}

/// Length and count of shortest `s`–`t` paths, found by enumerating every
/// simple path. `None` when `t` is unreachable.
pub fn simple_path_count(g: &Graph, s: NodeId, t: NodeId) -> Option<(usize, usize)> {
    fn walk(
        g: &Graph,
        at: NodeId,
        t: NodeId,
        depth: usize,
        on: &mut [bool],
        best: &mut Option<(usize, usize)>,
    ) {
        if at == t {
            *best = match *best {
                Some((d, c)) if d == depth => Some((d, c + 1)),
                Some((d, _)) if d < depth => *best,
                _ => Some((depth, 1)),
            };
            return;
        }
        if matches!(*best, Some((d, _)) if depth >= d) {
            return;
        }
        for w in g.neighbors(at) {
            if !on[w] {
                on[w] = true;
                walk(g, w, t, depth + 1, on, best);
                on[w] = false;
            }
        }
    }
    let mut on = vec![false; g.node_count()];
    on[s] = true;
    let mut best = None;
    walk(g, s, t, 0, &mut on, &mut best);
    best
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300) || (a - b).abs() <= f64::MIN_POSITIVE
}
