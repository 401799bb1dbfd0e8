mod common;

use common::{
    random_assignment, random_connected_graph, random_graph, rel_close, simple_path_count,
};
use nodegame::divisive::PowerModel;
use nodegame::{
    bfs_sssp, brute_betweenness, coefficient_of_variation, connected_components, modularity, nmi,
    node_game_betweenness, pair_weights, power_vector, run_divisive_with, select_sources_with,
    semivalue_bruteforce, sp_edge_betweenness, weighted_edge_betweenness, Algorithm, Dendrogram,
    DivisiveConfig, GameParams, Graph, LogBase, ModularityForm, Partition, Semivalue, Sources,
    UnitWeight,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const ALGORITHMS: [Algorithm; 3] = [Algorithm::Gn, Algorithm::Gice, Algorithm::Gicef];

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n, 0.05f64..0.9).prop_flat_map(|(n, p)| {
        prop::collection::vec(prop::bool::weighted(p), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for a in 0..n {
                for b in a + 1..n {
                    if bits[k] {
                        edges.push((a, b));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn arb_nonempty_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    arb_graph(max_n).prop_filter("needs an edge", |g| g.edge_count() > 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn sigma_counts_every_shortest_path(g in arb_graph(7)) {
        for s in 0..g.node_count() {
            let r = bfs_sssp(&g, s).unwrap();
            for t in 0..g.node_count() {
                match simple_path_count(&g, s, t) {
                    None => prop_assert!(r.dist[t].is_none()),
                    Some((d, c)) => {
                        prop_assert_eq!(r.dist[t], Some(d));
                        prop_assert_eq!(r.sigma[t], c as f64);
                    }
                }
            }
        }
    }

    #[test]
    fn removal_never_shortens_paths(g in arb_nonempty_graph(10), pick in any::<prop::sample::Index>()) {
        let edges = g.edges();
        let e = edges[pick.index(edges.len())];
        let mut h = g.clone();
        prop_assert!(h.remove_edge(e.u(), e.v()));
        prop_assert!(!h.has_edge(e.u(), e.v()));
        prop_assert_eq!(h.edge_count(), g.edge_count() - 1);
        for s in 0..g.node_count() {
            let (before, after) = (bfs_sssp(&g, s).unwrap(), bfs_sssp(&h, s).unwrap());
            for t in 0..g.node_count() {
                match (before.dist[t], after.dist[t]) {
                    (None, Some(_)) => prop_assert!(false, "removal connected a pair"),
                    (Some(a), Some(b)) => {
                        prop_assert!(b >= a);
                        if a == b {
                            prop_assert!(after.sigma[t] <= before.sigma[t]);
                        }
                    }
                    _ => {}
                }
            }
        }
    }

    #[test]
    fn edge_list_round_trip(g in arb_graph(12)) {
        let text = g.to_edge_list();
        let back: Graph = text.parse().unwrap();
        let relabel = |h: &Graph| -> Vec<(String, String)> {
            h.edges()
                .into_iter()
                .map(|e| {
                    let (x, y) = (h.label(e.u()).to_owned(), h.label(e.v()).to_owned());
                    if x <= y { (x, y) } else { (y, x) }
                })
                .collect()
        };
        let mut a = relabel(&g);
        let mut b = relabel(&back);
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
        prop_assert_eq!(back.to_edge_list().lines().count(), g.edge_count());
    }

    #[test]
    fn modularity_forms_agree(g in arb_nonempty_graph(20), k in 1usize..6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = Partition::from_assignment(&random_assignment(&mut rng, g.node_count(), k));
        let a = modularity(&g, &p, ModularityForm::Pairwise).unwrap();
        let b = modularity(&g, &p, ModularityForm::Clusterwise).unwrap();
        let c = modularity(&g, &p, ModularityForm::InOut).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 && (a - c).abs() <= 1e-12, "{} {} {}", a, b, c);
        prop_assert!((-0.5 - 1e-12..=1.0).contains(&c));
    }

    #[test]
    fn nmi_is_symmetric_and_bounded(n in 1usize..30, ka in 1usize..6, kb in 1usize..6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = Partition::from_assignment(&random_assignment(&mut rng, n, ka));
        let b = Partition::from_assignment(&random_assignment(&mut rng, n, kb));
        let ab = nmi(&a, &b).unwrap();
        let ba = nmi(&b, &a).unwrap();
        prop_assert!((ab - ba).abs() < 1e-12);
        prop_assert!((0.0..=1.0).contains(&ab));
        prop_assert!((nmi(&a, &a).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cv_ignores_scale_and_order(sizes in prop::collection::vec(1usize..50, 1..10), c in 1usize..7) {
        let base = coefficient_of_variation(&sizes);
        let scaled: Vec<usize> = sizes.iter().map(|s| s * c).collect();
        let mut reversed = sizes.clone();
        reversed.reverse();
        prop_assert!((coefficient_of_variation(&scaled) - base).abs() < 1e-12);
        prop_assert!((coefficient_of_variation(&reversed) - base).abs() < 1e-12);
        prop_assert!(base >= 0.0);
    }

    #[test]
    fn alpha_scales_power_and_scores(g in arb_nonempty_graph(12), alpha in 0.05f64..20.0) {
        let one = power_vector(&g, GameParams::default()).unwrap();
        let scaled = power_vector(&g, GameParams::new(alpha, 1.0).unwrap()).unwrap();
        prop_assert_eq!(one.ranking(), scaled.ranking());
        prop_assert!((one.total() - 1.0).abs() < 1e-12);
        let b1 = node_game_betweenness(&g, &one, Sources::All).unwrap();
        let ba = node_game_betweenness(&g, &scaled, Sources::All).unwrap();
        for ((e1, w1), (ea, wa)) in b1.iter().zip(ba.iter()) {
            prop_assert_eq!(e1, ea);
            prop_assert!(rel_close(w1 * alpha, wa, 1e-12));
        }
    }

    #[test]
    fn semivalues_ignore_beta(g in arb_nonempty_graph(8), beta in 0.0f64..5.0) {
        let a = GameParams::new(1.0, 0.0).unwrap();
        let b = GameParams::new(1.0, beta).unwrap();
        for i in 0..g.node_count() {
            for kind in [Semivalue::Shapley, Semivalue::Banzhaf] {
                let x = semivalue_bruteforce(&g, i, a, kind).unwrap();
                let y = semivalue_bruteforce(&g, i, b, kind).unwrap();
                prop_assert!((x - y).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn sources_decompose_the_total(g in arb_nonempty_graph(12)) {
        let phi = power_vector(&g, GameParams::default()).unwrap();
        let h = pair_weights(&phi);
        let all = weighted_edge_betweenness(&g, &h, Sources::All).unwrap();
        let mut acc = vec![0.0; all.len()];
        for s in 0..g.node_count() {
            let one = weighted_edge_betweenness(&g, &h, Sources::Nodes(&[s])).unwrap();
            for (slot, (_, w)) in acc.iter_mut().zip(one.iter()) {
                *slot += w;
            }
        }
        for ((_, w), sum) in all.iter().zip(&acc) {
            prop_assert!(rel_close(w, *sum, 1e-12));
        }
    }

    #[test]
    fn fast_matches_brute_on_small_graphs(g in arb_nonempty_graph(9)) {
        let phi = power_vector(&g, GameParams::default()).unwrap();
        let pairs = [
            (sp_edge_betweenness(&g, Sources::All).unwrap(), brute_betweenness(&g, &UnitWeight).unwrap()),
            (node_game_betweenness(&g, &phi, Sources::All).unwrap(), brute_betweenness(&g, &pair_weights(&phi)).unwrap()),
        ];
        for (fast, brute) in pairs {
            for ((ef, wf), (eb, wb)) in fast.iter().zip(brute.iter()) {
                prop_assert_eq!(ef, eb);
                prop_assert!(rel_close(wf, wb, 1e-9), "{}: {} vs {}", ef, wf, wb);
            }
        }
    }

    #[test]
    fn bridges_carry_every_crossing_pair(a in 1usize..8, b in 1usize..8, seed in any::<u64>()) {
        // Two random connected blobs joined by one edge; the bridge lies on
        // every path between them, in both directions.
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let left = random_connected_graph(&mut rng, a, 0.4);
        let right = random_connected_graph(&mut rng, b, 0.4);
        let mut edges: Vec<(usize, usize)> = left.edges().iter().map(|e| (e.u(), e.v())).collect();
        edges.extend(right.edges().iter().map(|e| (e.u() + a, e.v() + a)));
        edges.push((0, a));
        let g = Graph::from_edges(a + b, edges).unwrap();
        let w = sp_edge_betweenness(&g, Sources::All).unwrap().get(0, a).unwrap();
        // Sum of fractional path shares; exact only up to rounding.
        let expect = 2.0 * (a * b) as f64;
        prop_assert!(rel_close(w, expect, 1e-12), "{} vs {}", w, expect);
    }
}

/// Fresh, uncached scores of the current graph for `algorithm`.
fn fresh_scores(g: &Graph, algorithm: Algorithm) -> nodegame::EdgeScores {
    match algorithm {
        Algorithm::Gn => sp_edge_betweenness(g, Sources::All).unwrap(),
        Algorithm::Gice => {
            let phi = power_vector(g, GameParams::default()).unwrap();
            node_game_betweenness(g, &phi, Sources::All).unwrap()
        }
        Algorithm::Gicef => {
            let phi = power_vector(g, GameParams::default()).unwrap();
            let sources = select_sources_with(&phi, g.node_count(), LogBase::Natural);
            node_game_betweenness(g, &phi, Sources::Nodes(&sources)).unwrap()
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dendrogram_invariants(g in arb_nonempty_graph(16), seed in 0u64..4) {
        let k0 = connected_components(&g).len();
        for alg in ALGORITHMS {
            let cfg = DivisiveConfig::new(alg).with_seed(seed);
            let d = run_divisive_with(&g, &cfg).unwrap();
            prop_assert_eq!(d.partitions().len(), g.node_count() - k0);
            prop_assert_eq!(d.events().len(), g.edge_count());
            prop_assert_eq!(d.partitions()[0].len(), k0 + 1);
            d.verify(&g).unwrap();
            let removals: Vec<_> = d.events().iter().map(|e| e.edge).collect();
            prop_assert_eq!(&Dendrogram::replay(&g, alg, seed, &removals).unwrap(), &d);
            prop_assert_eq!(&run_divisive_with(&g, &cfg).unwrap(), &d);
        }
    }

    #[test]
    fn every_removal_is_a_fresh_argmax(g in arb_nonempty_graph(14)) {
        // The incremental loop caches per-component scores; recomputing from
        // scratch at every step must agree on which edges are maximal.
        for alg in ALGORITHMS {
            let d = run_divisive_with(&g, &DivisiveConfig::new(alg)).unwrap();
            let mut work = g.clone();
            for ev in d.events() {
                let scores = fresh_scores(&work, alg);
                let top = scores.max_score().unwrap();
                let mine = scores.get(ev.edge.u(), ev.edge.v()).unwrap();
                prop_assert!(mine >= top * (1.0 - 1e-9), "{:?} removed {} scoring {} < {}", alg, ev.edge, mine, top);
                let tied = scores.argmax(1e-10);
                prop_assert_eq!(tied[0], ev.edge, "{:?}: deterministic mode takes the smallest tied edge", alg);
                work.remove_edge(ev.edge.u(), ev.edge.v());
            }
        }
    }

    #[test]
    fn constant_power_reduces_gice_to_gn(g in arb_nonempty_graph(16), seed in 0u64..3) {
        let gn = run_divisive_with(&g, &DivisiveConfig::new(Algorithm::Gn).with_seed(seed)).unwrap();
        let gice = run_divisive_with(
            &g,
            &DivisiveConfig::new(Algorithm::Gice).with_seed(seed).with_power_model(PowerModel::Constant),
        )
        .unwrap();
        prop_assert_eq!(gn.events(), gice.events());
        prop_assert_eq!(gn.partitions(), gice.partitions());
    }
}

#[test]
fn random_graphs_with_isolated_nodes() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let g = random_graph(&mut rng, 25, 0.06);
        if g.edge_count() == 0 {
            continue;
        }
        for alg in ALGORITHMS {
            let d = run_divisive_with(&g, &DivisiveConfig::new(alg).with_seed(7)).unwrap();
            d.verify(&g).unwrap();
            assert_eq!(d.partitions().last().unwrap(), &Partition::singletons(25));
        }
    }
}
