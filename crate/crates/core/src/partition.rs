use crate::error::{argument, Result};
use crate::graph::{Graph, NodeId};

/// Edge tallies of one community against a graph.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CommunityTally {
    /// Edges with both endpoints inside the community.
    pub l_in: usize,
    /// Edges with exactly one endpoint inside the community.
    pub l_out: usize,
    /// Sum of member degrees.
    pub degree_sum: usize,
}

/// A non-overlapping cover of the node set `0..n`.
///
/// Stored canonically: communities are ordered by their smallest member and
/// each community lists its members in increasing order, so two partitions
/// with the same blocks compare equal regardless of how they were built.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    assignment: Vec<usize>,
    communities: Vec<Vec<NodeId>>,
}

impl Partition {
    /// Builds from an arbitrary labelling; labels are renumbered canonically.
    pub fn from_assignment(labels: &[usize]) -> Self {
        let mut remap = std::collections::HashMap::new();
        let mut assignment = Vec::with_capacity(labels.len());
        let mut communities: Vec<Vec<NodeId>> = Vec::new();
        for (node, &l) in labels.iter().enumerate() {
            let c = *remap.entry(l).or_insert_with(|| {
                communities.push(Vec::new());
                communities.len() - 1
            });
            communities[c].push(node);
            assignment.push(c);
        }
        Partition {
            assignment,
            communities,
        }
    }

    /// Builds from explicit blocks, validating that they are disjoint and
    /// cover `0..n`.
    pub fn from_communities(n: usize, blocks: &[Vec<NodeId>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for (c, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(argument("empty community"));
            }
            for &node in block {
                if node >= n {
                    return Err(argument(format!("node {node} outside 0..{n}")));
                }
                if labels[node] != usize::MAX {
                    return Err(argument(format!("node {node} appears in two communities")));
                }
                labels[node] = c;
            }
        }
        if let Some(missing) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(argument(format!("node {missing} is not covered")));
        }
        Ok(Self::from_assignment(&labels))
    }

    pub fn singletons(n: usize) -> Self {
        Self::from_assignment(&(0..n).collect::<Vec<_>>())
    }

    pub fn whole(n: usize) -> Self {
        Self::from_assignment(&vec![0; n])
    }

    /// Number of communities.
    pub fn len(&self) -> usize {
        self.communities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.communities.is_empty()
    }

    pub fn node_count(&self) -> usize {
        self.assignment.len()
    }

    pub fn community_of(&self, node: NodeId) -> usize {
        self.assignment[node]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn communities(&self) -> &[Vec<NodeId>] {
        &self.communities
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.communities.iter().map(Vec::len).collect()
    }

    /// True when every block of `self` lies inside some block of `coarser`.
    pub fn is_finer_than(&self, coarser: &Partition) -> bool {
        if self.node_count() != coarser.node_count() {
            return false;
        }
        self.communities.iter().all(|block| {
            let c = coarser.assignment[block[0]];
            block.iter().all(|&x| coarser.assignment[x] == c)
        })
    }

    /// Per-community `l_in`, `l_out` and degree sums against `g`.
    pub fn tallies(&self, g: &Graph) -> Result<Vec<CommunityTally>> {
        self.check_covers(g)?;
        let mut t = vec![CommunityTally::default(); self.len()];
        for e in g.edges() {
            let (cu, cv) = (self.assignment[e.u()], self.assignment[e.v()]);
            if cu == cv {
                t[cu].l_in += 1;
            } else {
                t[cu].l_out += 1;
                t[cv].l_out += 1;
            }
        }
        for (node, &c) in self.assignment.iter().enumerate() {
            t[c].degree_sum += g.degree(node);
        }
        Ok(t)
    }

    /// True when every community induces a connected subgraph of `g`.
    pub fn is_connected_in(&self, g: &Graph) -> bool {
        if self.check_covers(g).is_err() {
            return false;
        }
        let mut seen = vec![false; self.node_count()];
        let mut stack = Vec::new();
        for block in &self.communities {
            let c = self.assignment[block[0]];
            let mut reached = 1;
            seen[block[0]] = true;
            stack.push(block[0]);
            while let Some(x) = stack.pop() {
                for w in g.neighbors(x) {
                    if !seen[w] && self.assignment[w] == c {
                        seen[w] = true;
                        reached += 1;
                        stack.push(w);
                    }
                }
            }
            if reached != block.len() {
                return false;
            }
        }
        true
    }

    pub(crate) fn check_covers(&self, g: &Graph) -> Result<()> {
        if self.node_count() != g.node_count() {
            return Err(argument(format!(
                "partition covers {} nodes but graph has {}",
                self.node_count(),
                g.node_count()
            )));
        }
        Ok(())
    }
}
