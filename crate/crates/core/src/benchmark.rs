//! Planted-partition benchmark: equal-size blocks, each pair joined
//! independently with `p_in` inside a block and `p_out` across blocks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::divisive::{run_divisive_with, Algorithm, DivisiveConfig};
use crate::error::{argument, Result};
use crate::game::GameParams;
use crate::graph::Graph;
use crate::partition::Partition;
use crate::quality::{modularity, nmi, ModularityForm};

pub const DEFAULT_BLOCK_COUNT: usize = 4;
pub const DEFAULT_BLOCK_SIZE: usize = 32;
pub const DEFAULT_MEAN_DEGREE: f64 = 16.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BenchmarkSpec {
    pub n: usize,
    pub block_count: usize,
    pub block_size: usize,
    pub k_expected: f64,
    pub z_out: f64,
    pub mu: f64,
    pub p_in: f64,
    pub p_out: f64,
    pub seed: u64,
}

/// The standard 128-node, four-block configuration with mean degree 16.
pub fn benchmark_spec(z_out: f64) -> Result<BenchmarkSpec> {
    BenchmarkSpec::custom(
        DEFAULT_BLOCK_COUNT,
        DEFAULT_BLOCK_SIZE,
        DEFAULT_MEAN_DEGREE,
        z_out,
        0,
    )
}

impl BenchmarkSpec {
    /// `z_out` of the `k_expected` expected neighbours lie outside the block.
    pub fn custom(
        block_count: usize,
        block_size: usize,
        k_expected: f64,
        z_out: f64,
        seed: u64,
    ) -> Result<Self> {
        if block_count < 2 || block_size < 2 {
            return Err(argument("need at least two blocks of at least two nodes"));
        }
        if !(z_out > 0.0 && z_out < k_expected) {
            return Err(argument(format!(
                "z_out must lie in (0, {k_expected}), got {z_out}"
            )));
        }
        let n = block_count * block_size;
        let p_in = (k_expected - z_out) / (block_size - 1) as f64;
        let p_out = z_out / (n - block_size) as f64;
        if p_in > 1.0 || p_out > 1.0 {
            return Err(argument(format!(
                "mean degree {k_expected} is not reachable with blocks of {block_size}"
            )));
        }
        Ok(BenchmarkSpec {
            n,
            block_count,
            block_size,
            k_expected,
            z_out,
            mu: z_out / k_expected,
            p_in,
            p_out,
            seed,
        })
    }

    /// Explicit edge probabilities; `z_out`, `mu` and `k_expected` follow.
    pub fn from_probabilities(
        block_count: usize,
        block_size: usize,
        p_in: f64,
        p_out: f64,
        seed: u64,
    ) -> Result<Self> {
        if block_count < 1 || block_size < 1 {
            return Err(argument("need at least one non-empty block"));
        }
        for p in [p_in, p_out] {
            if !(0.0..=1.0).contains(&p) {
                return Err(argument(format!("probability {p} outside [0, 1]")));
            }
        }
        let n = block_count * block_size;
        let z_in = p_in * (block_size - 1) as f64;
        let z_out = p_out * (n - block_size) as f64;
        let k = z_in + z_out;
        Ok(BenchmarkSpec {
            n,
            block_count,
            block_size,
            k_expected: k,
            z_out,
            mu: if k > 0.0 { z_out / k } else { 0.0 },
            p_in,
            p_out,
            seed,
        })
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Blocks of consecutive node ids.
    pub fn planted(&self) -> Partition {
        Partition::from_assignment(&(0..self.n).map(|i| i / self.block_size).collect::<Vec<_>>())
    }
}

/// One benchmark graph, labelled `1..=n`, and its planted partition.
pub fn generate(spec: &BenchmarkSpec) -> (Graph, Partition) {
    let mut g = Graph::with_labels((1..=spec.n).map(|i| i.to_string()).collect())
        .expect("numeric labels are distinct");
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for a in 0..spec.n {
        for b in a + 1..spec.n {
            let p = if a / spec.block_size == b / spec.block_size {
                spec.p_in
            } else {
                spec.p_out
            };
            if rng.gen::<f64>() < p {
                g.insert_edge(a, b).expect("a < b");
            }
        }
    }
    (g, spec.planted())
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunRecord {
    pub graph_seed: u64,
    pub tie_seed: u64,
    pub edge_count: usize,
    /// Communities in the partition compared with the planted one.
    pub k: usize,
    pub nmi: f64,
    pub q: f64,
    pub planted_q: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchmarkSummary {
    pub spec: BenchmarkSpec,
    pub algorithm: Algorithm,
    pub mean_nmi: f64,
    pub mean_q: f64,
    pub mean_planted_q: f64,
    pub runs: Vec<RunRecord>,
}

/// Generates `runs` graphs and clusters each one.
///
/// Graph seeds and tie-breaking seeds come from two independent streams
/// derived from `seed`. `random_ties = false` uses deterministic
/// lexicographic tie-breaking instead. Each dendrogram is compared at the
/// first partition with as many communities as planted blocks, or at the
/// initial components when the graph already has more.
pub fn run_benchmark(
    spec: &BenchmarkSpec,
    runs: usize,
    algorithm: Algorithm,
    params: GameParams,
    seed: u64,
    random_ties: bool,
) -> Result<BenchmarkSummary> {
    if runs == 0 {
        return Err(argument("runs must be at least 1"));
    }
    let mut graph_seeds = ChaCha8Rng::seed_from_u64(seed);
    let mut tie_seeds = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut records = Vec::with_capacity(runs);
    for _ in 0..runs {
        let graph_seed = graph_seeds.gen::<u64>();
        let tie_seed = if random_ties {
            tie_seeds.gen::<u64>().max(1)
        } else {
            0
        };
        let (g, planted) = generate(&spec.with_seed(graph_seed));
        let cfg = DivisiveConfig::new(algorithm)
            .with_params(params)
            .with_seed(tie_seed);
        let d = run_divisive_with(&g, &cfg)?;
        let p = d.partition_with(spec.block_count).unwrap_or(d.initial());
        records.push(RunRecord {
            graph_seed,
            tie_seed,
            edge_count: g.edge_count(),
            k: p.len(),
            nmi: nmi(p, &planted)?,
            q: modularity(&g, p, ModularityForm::InOut)?,
            planted_q: modularity(&g, &planted, ModularityForm::InOut)?,
        });
    }
    let mean = |f: fn(&RunRecord) -> f64| records.iter().map(f).sum::<f64>() / runs as f64;
    Ok(BenchmarkSummary {
        spec: *spec,
        algorithm,
        mean_nmi: mean(|r| r.nmi),
        mean_q: mean(|r| r.q),
        mean_planted_q: mean(|r| r.planted_q),
        runs: records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_probabilities() {
        let s = benchmark_spec(1.6).unwrap();
        assert_eq!(s.n, 128);
        assert!((s.mu - 0.1).abs() < 1e-12);
        assert!((s.p_out - 1.6 / 96.0).abs() < 1e-15);
        assert!((s.p_in - 14.4 / 31.0).abs() < 1e-15);
        assert!((31.0 * s.p_in + 96.0 * s.p_out - 16.0).abs() < 1e-12);
        assert!((benchmark_spec(8.0).unwrap().mu - 0.5).abs() < 1e-15);
        assert!(benchmark_spec(1e-9).unwrap().p_out < 1e-10);
    }

    #[test]
    fn out_of_range_z_out() {
        for z in [0.0, -1.0, 16.0, 20.0, f64::NAN] {
            assert!(benchmark_spec(z).is_err(), "{z}");
        }
    }

    #[test]
    fn extreme_probabilities_give_cliques() {
        let spec = BenchmarkSpec::from_probabilities(4, 32, 1.0, 0.0, 7).unwrap();
        let (g, planted) = generate(&spec);
        assert_eq!(g.edge_count(), 4 * 32 * 31 / 2);
        assert_eq!(crate::graph::connected_components(&g), planted);
        assert!(g.degrees().iter().all(|&d| d == 31));
    }

    #[test]
    fn generation_is_deterministic() {
        let spec = benchmark_spec(4.8).unwrap().with_seed(11);
        let (a, _) = generate(&spec);
        let (b, _) = generate(&spec);
        assert_eq!(a.edges(), b.edges());
        let (c, _) = generate(&spec.with_seed(12));
        assert_ne!(a.edges(), c.edges());
    }

    #[test]
    fn planted_labels() {
        let (g, p) = generate(&benchmark_spec(1.6).unwrap());
        assert_eq!(g.label(0), "1");
        assert_eq!(g.label(127), "128");
        assert_eq!(p.sizes(), vec![32; 4]);
        assert_eq!(p.community_of(31), 0);
        assert_eq!(p.community_of(32), 1);
    }

    #[test]
    fn small_sweep_runs() {
        let spec = BenchmarkSpec::custom(3, 8, 5.0, 0.5, 0).unwrap();
        let s = run_benchmark(&spec, 3, Algorithm::Gice, GameParams::default(), 5, true).unwrap();
        assert_eq!(s.runs.len(), 3);
        assert!((0.0..=1.0).contains(&s.mean_nmi));
        let again =
            run_benchmark(&spec, 3, Algorithm::Gice, GameParams::default(), 5, true).unwrap();
        assert_eq!(s, again);
    }
}
