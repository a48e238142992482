mod common;

use common::rng;
use nigpart::gen;
use nigpart::gpvs::{
    coarsen, find_separator, initial_separator, rebalance, refine, Balance, CsrGraph, GpvsConfig, Separator, Side,
};
use nigpart::oracle::optimal_separator;
use proptest::prelude::*;
use rand::Rng;

fn graph(seed: u64, max_n: usize) -> CsrGraph {
    let mut r = rng(seed);
    let n = r.gen_range(1..=max_n);
    if r.gen_bool(0.5) {
        gen::random_connected_graph(&mut r, n, (2.0 / n as f64).min(1.0), 4)
    } else {
        let p = r.gen_range(0.0..0.3);
        let g = gen::random_graph(&mut r, n, p);
        let w = (0..n).map(|_| r.gen_range(1..=4)).collect();
        g.with_vertex_weights(w).unwrap()
    }
}

/// Random labeling made valid by moving every `B` vertex with an `A`
/// neighbor into the separator.
fn random_valid_separator(g: &CsrGraph, seed: u64) -> Separator {
    let mut r = rng(seed);
    let mut sides: Vec<Side> = (0..g.num_vertices())
        .map(|_| [Side::A, Side::B, Side::S][r.gen_range(0..3)])
        .collect();
    for v in 0..g.num_vertices() {
        if sides[v] == Side::B && g.neighbors(v).iter().any(|&u| sides[u] == Side::A) {
            sides[v] = Side::S;
        }
    }
    Separator::from_sides(g, sides)
}

fn no_ab_edge(g: &CsrGraph, sep: &Separator) -> bool {
    (0..g.num_vertices()).all(|v| {
        sep.side(v) != Side::A || g.neighbors(v).iter().all(|&u| sep.side(u) != Side::B)
    })
}

fn conserved(g: &CsrGraph, sep: &Separator) -> bool {
    let mut w = [0i64; 3];
    for v in 0..g.num_vertices() {
        let i = match sep.side(v) {
            Side::A => 0,
            Side::B => 1,
            Side::S => 2,
        };
        w[i] += g.vertex_weight(v);
    }
    w == [sep.weight_a(), sep.weight_b(), sep.weight_s()]
}

#[test]
fn documented_small_graphs() {
    let cfg = GpvsConfig::default();
    let single = CsrGraph::unit(1, &[]).unwrap();
    let s = find_separator(&single, &cfg);
    assert_eq!((s.weight_a(), s.weight_b(), s.weight_s()), (1, 0, 0));
    let path = CsrGraph::unit(3, &[(0, 1), (1, 2)]).unwrap();
    assert_eq!(find_separator(&path, &cfg).weight_s(), 1);
    let tri = CsrGraph::unit(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
    assert_eq!(find_separator(&tri, &cfg).weight_s(), 1);
    let k4 = CsrGraph::unit(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
    assert_eq!(find_separator(&k4, &cfg).weight_s(), 2);
}

proptest! {
    #[test]
    fn every_stage_keeps_separation(seed: u64, eps in 0.0f64..0.3) {
        let g = graph(seed, 150);
        let cfg = GpvsConfig { epsilon: eps, rng_seed: seed, coarsen_until: 20, ..Default::default() };
        let init = initial_separator(&g, &cfg);
        let refined = refine(&g, init.clone(), &cfg).unwrap();
        let rebalanced = rebalance(&g, refined.clone(), &cfg);
        let found = find_separator(&g, &cfg);
        for s in [&init, &refined, &rebalanced, &found] {
            prop_assert!(no_ab_edge(&g, s));
            prop_assert!(conserved(&g, s));
        }
    }

    #[test]
    fn refine_never_grows_separator(seed: u64) {
        let g = graph(seed, 80);
        let cfg = GpvsConfig { rng_seed: seed, ..Default::default() };
        let start = random_valid_separator(&g, seed ^ 7);
        let out = refine(&g, start.clone(), &cfg).unwrap();
        prop_assert!(no_ab_edge(&g, &out));
        prop_assert!(out.weight_s() <= start.weight_s());
    }

    #[test]
    fn coarsening_conserves_weight(seed: u64) {
        let g = graph(seed, 300);
        let cfg = GpvsConfig { rng_seed: seed, coarsen_until: 10, ..Default::default() };
        let hier = coarsen(&g, &cfg);
        for lvl in 0..hier.num_levels() {
            prop_assert_eq!(hier.graph(lvl).total_weight(), g.total_weight());
        }
        for lvl in 0..hier.num_levels() - 1 {
            let (fine, coarse) = (hier.graph(lvl), hier.graph(lvl + 1));
            let mut sums = vec![0i64; coarse.num_vertices()];
            for (v, &c) in hier.map(lvl).iter().enumerate() {
                sums[c] += fine.vertex_weight(v);
            }
            prop_assert_eq!(&sums[..], coarse.vertex_weights());
            // a fine edge between different coarse vertices must survive
            for (u, v) in fine.edges() {
                let (cu, cv) = (hier.map(lvl)[u], hier.map(lvl)[v]);
                if cu != cv {
                    prop_assert!(coarse.neighbors(cu).contains(&cv));
                }
            }
        }
    }

    #[test]
    fn same_seed_same_separator(seed: u64) {
        let g = graph(seed, 200);
        let cfg = GpvsConfig { rng_seed: seed, ..Default::default() };
        prop_assert_eq!(find_separator(&g, &cfg), find_separator(&g, &cfg));
    }

    #[test]
    fn never_beats_the_exhaustive_optimum(seed: u64) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=10);
        let g = gen::random_connected_graph(&mut r, n, 0.3, 3);
        let cfg = GpvsConfig { epsilon: 0.2, rng_seed: seed, ..Default::default() };
        let sep = find_separator(&g, &cfg);
        let opt = optimal_separator(&g, 0.2).unwrap();
        if Balance::for_config(&g, &cfg).separator_is_balanced(&sep) {
            prop_assert!(sep.weight_s() >= opt.best_sep_weight);
        }
        let witness = Separator::from_sides(&g, opt.separator_witness.clone());
        prop_assert!(no_ab_edge(&g, &witness));
        prop_assert_eq!(witness.weight_s(), opt.best_sep_weight);
    }
}
