//! Partition quality: modularity, size homogeneity and agreement with a
//! reference partition.

use crate::divisive::Dendrogram;
use crate::error::{argument, Error, Result};
use crate::graph::Graph;
use crate::partition::Partition;

/// Algebraically equivalent ways of evaluating modularity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModularityForm {
    /// `1/2m · Σ_ij [A_ij − l_i l_j / 2m] δ(c_i, c_j)` over all node pairs.
    Pairwise,
    /// The same sum regrouped cluster by cluster.
    Clusterwise,
    /// `Σ_r [l_in/m − (l_in/m + l_out/2m)²]` from per-cluster edge tallies.
    InOut,
}

/// Modularity of `p` on `g`. `g` should be the original, unreduced graph.
pub fn modularity(g: &Graph, p: &Partition, form: ModularityForm) -> Result<f64> {
    p.check_covers(g)?;
    let m = g.edge_count();
    if m == 0 {
        return Err(Error::Degenerate(
            "modularity is undefined without edges".into(),
        ));
    }
    let two_m = 2.0 * m as f64;
    let q = match form {
        ModularityForm::Pairwise => {
            let n = g.node_count();
            let deg = g.degrees();
            let mut row = vec![0.0; n];
            let mut total = 0.0;
            for i in 0..n {
                for w in g.neighbors(i) {
                    row[w] = 1.0;
                }
                for j in 0..n {
                    if p.community_of(i) == p.community_of(j) {
                        total += row[j] - (deg[i] * deg[j]) as f64 / two_m;
                    }
                }
                for w in g.neighbors(i) {
                    row[w] = 0.0;
                }
            }
            total / two_m
        }
        ModularityForm::Clusterwise => {
            let deg = g.degrees();
            let mut total = 0.0;
            for block in p.communities() {
                for &i in block {
                    for &j in block {
                        let a = if g.has_edge(i, j) { 1.0 } else { 0.0 };
                        total += a - (deg[i] * deg[j]) as f64 / two_m;
                    }
                }
            }
            total / two_m
        }
        ModularityForm::InOut => {
            let m = m as f64;
            p.tallies(g)?
                .iter()
                .map(|t| {
                    let inside = t.l_in as f64 / m;
                    let reach = inside + t.l_out as f64 / (2.0 * m);
                    inside - reach * reach
                })
                .sum()
        }
    };
    Ok(q)
}

/// Coefficient of variation of community sizes, with the population
/// standard deviation.
pub fn coefficient_of_variation(sizes: &[usize]) -> f64 {
    if sizes.is_empty() {
        return 0.0;
    }
    let k = sizes.len() as f64;
    let mean = sizes.iter().sum::<usize>() as f64 / k;
    let var = sizes
        .iter()
        .map(|&s| (s as f64 - mean).powi(2))
        .sum::<f64>()
        / k;
    var.sqrt() / mean
}

/// Per-step modularity and homogeneity of a dendrogram.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricsVector {
    pub q: Vec<f64>,
    pub cv: Vec<f64>,
    pub k_at_step: Vec<usize>,
}

impl MetricsVector {
    pub fn len(&self) -> usize {
        self.q.len()
    }

    pub fn is_empty(&self) -> bool {
        self.q.is_empty()
    }
}

pub fn metrics_vector(g: &Graph, d: &Dendrogram) -> Result<MetricsVector> {
    if d.node_count() != g.node_count() || d.edge_count() != g.edge_count() {
        return Err(argument(format!(
            "dendrogram was built on n={} m={}, graph has n={} m={}",
            d.node_count(),
            d.edge_count(),
            g.node_count(),
            g.edge_count()
        )));
    }
    let mut mv = MetricsVector {
        q: Vec::with_capacity(d.partitions().len()),
        cv: Vec::with_capacity(d.partitions().len()),
        k_at_step: Vec::with_capacity(d.partitions().len()),
    };
    for p in d.partitions() {
        mv.q.push(modularity(g, p, ModularityForm::InOut)?);
        mv.cv.push(coefficient_of_variation(&p.sizes()));
        mv.k_at_step.push(p.len());
    }
    Ok(mv)
}

/// Normalization of the mutual information.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum NmiNormalization {
    /// `2·I / (H_p + H_r)`.
    #[default]
    Arithmetic,
    /// `I / max(H_p, H_r)`.
    Max,
}

/// Normalized mutual information with the arithmetic-mean normalization.
pub fn nmi(p: &Partition, reference: &Partition) -> Result<f64> {
    nmi_with(p, reference, NmiNormalization::Arithmetic)
}

pub fn nmi_with(p: &Partition, reference: &Partition, norm: NmiNormalization) -> Result<f64> {
    let n = p.node_count();
    if n != reference.node_count() {
        return Err(argument(format!(
            "partitions cover {} and {} nodes",
            n,
            reference.node_count()
        )));
    }
    if n == 0 {
        return Ok(1.0);
    }
    let (kp, kr) = (p.len(), reference.len());
    let mut joint = vec![0usize; kp * kr];
    for node in 0..n {
        joint[p.community_of(node) * kr + reference.community_of(node)] += 1;
    }
    let nf = n as f64;
    let entropy = |sizes: Vec<usize>| -> f64 {
        sizes
            .into_iter()
            .filter(|&c| c > 0)
            .map(|c| {
                let x = c as f64 / nf;
                -x * x.ln()
            })
            .sum()
    };
    let (pa, pb) = (p.sizes(), reference.sizes());
    let mut info = 0.0;
    for a in 0..kp {
        for b in 0..kr {
            let c = joint[a * kr + b];
            if c > 0 {
                let c = c as f64;
                info += c / nf * (c * nf / (pa[a] as f64 * pb[b] as f64)).ln();
            }
        }
    }
    let (ha, hb) = (entropy(pa), entropy(pb));
    if ha == 0.0 && hb == 0.0 {
        return Ok(1.0);
    }
    let denom = match norm {
        NmiNormalization::Arithmetic => (ha + hb) / 2.0,
        NmiNormalization::Max => ha.max(hb),
    };
    Ok((info / denom).clamp(0.0, 1.0))
}
