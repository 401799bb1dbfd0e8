//! Undirected simple graphs, edge-list ingestion and BFS primitives.
//!
//! Nodes carry arbitrary string labels externally and dense ids `0..n`
//! internally. The only mutation after construction is edge removal, which is
//! what the divisive loop needs.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::io::{BufRead, BufReader, Read};
use std::str::FromStr;

use crate::error::{argument, Error, Result};
use crate::partition::Partition;

pub type NodeId = usize;

/// An unordered node pair stored with the smaller id first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    u: NodeId,
    v: NodeId,
}

impl Edge {
    pub fn new(a: NodeId, b: NodeId) -> Self {
        if a <= b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn u(&self) -> NodeId {
        self.u
    }

    pub fn v(&self) -> NodeId {
        self.v
    }

    pub fn other(&self, node: NodeId) -> NodeId {
        if node == self.u {
            self.v
        } else {
            self.u
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

/// Undirected simple graph.
///
/// Edges live in slots that are never reused, so a slot index is a stable
/// edge handle for the lifetime of the graph (including across removals).
#[derive(Clone, Debug)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, NodeId>,
    // (neighbor, slot), sorted by neighbor
    adjacency: Vec<Vec<(NodeId, usize)>>,
    slots: Vec<Edge>,
    alive: Vec<bool>,
    edge_count: usize,
    duplicates: usize,
}

impl Graph {
    /// Edgeless graph whose node labels are the decimal ids `0..n`.
    pub fn new(n: usize) -> Self {
        Self::with_labels((0..n).map(|i| i.to_string()).collect())
            .expect("decimal labels are unique")
    }

    /// Edgeless graph with the given labels; labels must be unique.
    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(argument(format!("duplicate node label '{l}'")));
            }
        }
        let n = labels.len();
        Ok(Graph {
            labels,
            index,
            adjacency: vec![Vec::new(); n],
            slots: Vec::new(),
            alive: Vec::new(),
            edge_count: 0,
            duplicates: 0,
        })
    }

    /// Builds a graph on `n` nodes (labels `0..n`) from id pairs.
    /// Duplicate pairs collapse; self-loops and out-of-range ids are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let mut g = Graph::new(n);
        for (a, b) in edges {
            g.insert_edge(a, b)?;
        }
        Ok(g)
    }

    /// Inserts an edge during construction. Returns false for a duplicate.
    pub(crate) fn insert_edge(&mut self, a: NodeId, b: NodeId) -> Result<bool> {
        let n = self.node_count();
        if a >= n || b >= n {
            return Err(argument(format!(
                "edge ({a}, {b}) references a node outside 0..{n}"
            )));
        }
        if a == b {
            return Err(argument(format!("self-loop on node {a}")));
        }
        if self.has_edge(a, b) {
            self.duplicates += 1;
            return Ok(false);
        }
        let slot = self.slots.len();
        self.slots.push(Edge::new(a, b));
        self.alive.push(true);
        for (x, y) in [(a, b), (b, a)] {
            let adj = &mut self.adjacency[x];
            let pos = adj.partition_point(|&(w, _)| w < y);
            adj.insert(pos, (y, slot));
        }
        self.edge_count += 1;
        Ok(true)
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, node: NodeId) -> usize {
        self.adjacency[node].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn neighbors(&self, node: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.adjacency[node].iter().map(|&(w, _)| w)
    }

    pub fn has_edge(&self, a: NodeId, b: NodeId) -> bool {
        self.slot_of(a, b).is_some()
    }

    /// Live edges in lexicographic order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out: Vec<Edge> = self
            .slots
            .iter()
            .zip(&self.alive)
            .filter(|(_, &a)| a)
            .map(|(&e, _)| e)
            .collect();
        out.sort_unstable();
        out
    }

    pub fn label(&self, node: NodeId) -> &str {
        &self.labels[node]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn node_by_label(&self, label: &str) -> Option<NodeId> {
        self.index.get(label).copied()
    }

    /// Number of duplicate edge lines collapsed during construction.
    pub fn duplicate_count(&self) -> usize {
        self.duplicates
    }

    /// Removes the edge `{a, b}`. Returns false if it was not present.
    pub fn remove_edge(&mut self, a: NodeId, b: NodeId) -> bool {
        let Some(slot) = self.slot_of(a, b) else {
            return false;
        };
        self.alive[slot] = false;
        self.adjacency[a].retain(|&(w, _)| w != b);
        self.adjacency[b].retain(|&(w, _)| w != a);
        self.edge_count -= 1;
        true
    }

    pub(crate) fn slot_of(&self, a: NodeId, b: NodeId) -> Option<usize> {
        let adj = self.adjacency.get(a)?;
        adj.binary_search_by_key(&b, |&(w, _)| w)
            .ok()
            .map(|i| adj[i].1)
    }

    pub(crate) fn slot_count(&self) -> usize {
        self.slots.len()
    }

    pub(crate) fn slot_edge(&self, slot: usize) -> Edge {
        self.slots[slot]
    }

    pub(crate) fn slot_alive(&self, slot: usize) -> bool {
        self.alive[slot]
    }

    pub(crate) fn adjacency_slots(&self, node: NodeId) -> &[(NodeId, usize)] {
        &self.adjacency[node]
    }

    /// Serializes live edges as "u v" label lines in lexicographic id order.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for e in self.edges() {
            out.push_str(&self.labels[e.u]);
            out.push(' ');
            out.push_str(&self.labels[e.v]);
            out.push('\n');
        }
        out
    }
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_edge_list(s.as_bytes())
    }
}

/// Parses the edge-list format: one `u v` pair per line, `#` comments and
/// blank lines ignored. Labels get dense ids in order of first appearance.
pub fn parse_edge_list<R: Read>(reader: R) -> Result<Graph> {
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, NodeId> = HashMap::new();
    let mut pairs: Vec<(NodeId, NodeId, usize)> = Vec::new();

    let mut intern = |label: &str, labels: &mut Vec<String>| -> NodeId {
        if let Some(&id) = index.get(label) {
            return id;
        }
        let id = labels.len();
        labels.push(label.to_owned());
        index.insert(label.to_owned(), id);
        id
    };

    for (i, line) in BufReader::new(reader).lines().enumerate() {
        let lineno = i + 1;
        let line = line.map_err(|e| Error::Parse {
            line: lineno,
            message: e.to_string(),
        })?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected two node labels, found {}", tokens.len()),
            });
        }
        if tokens[0] == tokens[1] {
            return Err(Error::SelfLoop {
                line: lineno,
                label: tokens[0].to_owned(),
            });
        }
        let a = intern(tokens[0], &mut labels);
        let b = intern(tokens[1], &mut labels);
        pairs.push((a, b, lineno));
    }

    let mut g = Graph::with_labels(labels)?;
    for (a, b, _) in pairs {
        g.insert_edge(a, b)?;
    }
    Ok(g)
}

/// Maximal connected components, as a partition of the node set.
pub fn connected_components(g: &Graph) -> Partition {
    let n = g.node_count();
    let mut assignment = vec![usize::MAX; n];
    let mut next = 0;
    let mut stack = Vec::new();
    for start in 0..n {
        if assignment[start] != usize::MAX {
            continue;
        }
        assignment[start] = next;
        stack.push(start);
        while let Some(x) = stack.pop() {
            for w in g.neighbors(x) {
                if assignment[w] == usize::MAX {
                    assignment[w] = next;
                    stack.push(w);
                }
            }
        }
        next += 1;
    }
    Partition::from_assignment(&assignment)
}

/// Single-source shortest-path structure for an unweighted graph.
#[derive(Clone, Debug, PartialEq)]
pub struct SsspResult {
    pub source: NodeId,
    /// Hop distance, `None` when unreachable.
    pub dist: Vec<Option<usize>>,
    /// Number of distinct shortest paths from the source; 0 when unreachable.
    pub sigma: Vec<f64>,
    pub preds: Vec<Vec<NodeId>>,
    /// Reached nodes in non-decreasing distance.
    pub order: Vec<NodeId>,
}

pub fn bfs_sssp(g: &Graph, source: NodeId) -> Result<SsspResult> {
    let n = g.node_count();
    if source >= n {
        return Err(argument(format!("source {source} outside 0..{n}")));
    }
    let mut dist = vec![None; n];
    let mut sigma = vec![0.0; n];
    let mut preds = vec![Vec::new(); n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::new();

    dist[source] = Some(0);
    sigma[source] = 1.0;
    queue.push_back(source);
    while let Some(x) = queue.pop_front() {
        order.push(x);
        let dx = dist[x].unwrap();
        for w in g.neighbors(x) {
            match dist[w] {
                None => {
                    dist[w] = Some(dx + 1);
                    queue.push_back(w);
                    sigma[w] += sigma[x];
                    preds[w].push(x);
                }
                Some(dw) if dw == dx + 1 => {
                    sigma[w] += sigma[x];
                    preds[w].push(x);
                }
                _ => {}
            }
        }
    }
    Ok(SsspResult {
        source,
        dist,
        sigma,
        preds,
        order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example3() -> Graph {
        "1 2\n2 3\n2 4\n3 5\n4 5\n5 6".parse().unwrap()
    }

    fn id(g: &Graph, label: &str) -> NodeId {
        g.node_by_label(label).unwrap()
    }

    #[test]
    fn parses_four_cycle() {
        let g: Graph = "1 2\n1 3\n2 4\n3 4".parse().unwrap();
        assert_eq!(g.node_count(), 4);
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.degrees(), vec![2, 2, 2, 2]);
    }

    #[test]
    fn empty_stream_is_empty_graph() {
        let g = parse_edge_list(&b""[..]).unwrap();
        assert_eq!(g.node_count(), 0);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn duplicates_collapse() {
        let g: Graph = "a b\na b\nb a".parse().unwrap();
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.duplicate_count(), 2);
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let g: Graph = "# header\n\n  \n1 2\n# 3 4\n2 3\n".parse().unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.node_count(), 3);
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let err = "1 2\n3\n".parse::<Graph>().unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
        let err = "1 2 3".parse::<Graph>().unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn self_loop_rejected() {
        let err = "1 2\n\n4 4".parse::<Graph>().unwrap_err();
        assert_eq!(
            err,
            Error::SelfLoop {
                line: 3,
                label: "4".into()
            }
        );
    }

    #[test]
    fn labels_follow_first_appearance() {
        let g: Graph = "x y\nz x".parse().unwrap();
        assert_eq!(g.labels(), &["x", "y", "z"]);
        assert!(g.has_edge(0, 2));
    }

    #[test]
    fn components_of_cycle_and_edgeless() {
        let g: Graph = "1 2\n1 3\n2 4\n3 4".parse().unwrap();
        assert_eq!(connected_components(&g).len(), 1);
        let e = Graph::new(3);
        let p = connected_components(&e);
        assert_eq!(p.len(), 3);
        assert!(p.communities().iter().all(|c| c.len() == 1));
    }

    #[test]
    fn example3_components_after_pendant_cuts() {
        let mut g = example3();
        let (n1, n2, n5, n6) = (id(&g, "1"), id(&g, "2"), id(&g, "5"), id(&g, "6"));
        assert!(g.remove_edge(n1, n2));
        assert!(g.remove_edge(n6, n5));
        assert!(!g.remove_edge(n1, n2));
        let p = connected_components(&g);
        assert_eq!(p.len(), 3);
        let mut sets: Vec<Vec<&str>> = p
            .communities()
            .iter()
            .map(|c| c.iter().map(|&i| g.label(i)).collect())
            .collect();
        sets.sort();
        assert_eq!(sets, vec![vec!["1"], vec!["2", "3", "4", "5"], vec!["6"]]);
    }

    #[test]
    fn example3_sigma_to_far_pendant() {
        let g = example3();
        let r = bfs_sssp(&g, id(&g, "1")).unwrap();
        let six = id(&g, "6");
        assert_eq!(r.dist[six], Some(4));
        assert_eq!(r.sigma[six], 2.0);
        assert_eq!(r.dist[r.source], Some(0));
        assert_eq!(r.sigma[r.source], 1.0);
    }

    #[test]
    fn four_cycle_opposite_corner_has_two_paths() {
        let g: Graph = "1 2\n1 3\n2 4\n3 4".parse().unwrap();
        let r = bfs_sssp(&g, id(&g, "1")).unwrap();
        assert_eq!(r.sigma[id(&g, "4")], 2.0);
        assert_eq!(r.preds[id(&g, "4")].len(), 2);
    }

    #[test]
    fn unreachable_nodes_have_zero_sigma() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let r = bfs_sssp(&g, 0).unwrap();
        assert_eq!(r.dist[2], None);
        assert_eq!(r.sigma[3], 0.0);
        assert_eq!(r.order, vec![0, 1]);
    }

    #[test]
    fn unknown_source_is_argument_error() {
        let g = example3();
        assert!(matches!(bfs_sssp(&g, 6), Err(Error::Argument(_))));
    }
}
