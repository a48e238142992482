mod common;

use std::collections::BTreeSet;

use common::{recount, rng};
use nigpart::gen;
use nigpart::hgraph::{Hypergraph, PartitionVector};
use nigpart::nig::WeightScheme;
use nigpart::rbpart::{assign_vertices, partition, postprocess_balance, Metric, NetAssignment, RbConfig, RbNodeKind};
use proptest::prelude::*;
use rand::Rng;

fn hypergraph(seed: u64, max_v: usize, max_n: usize) -> Hypergraph {
    let mut r = rng(seed);
    let (nv, nn) = (r.gen_range(1..=max_v), r.gen_range(0..=max_n));
    let size = r.gen_range(1..=6);
    let weighted = r.gen_bool(0.5);
    gen::random_hypergraph(&mut r, nv, nn, size, weighted)
}

fn cfg(k: usize, metric: Metric, seed: u64) -> RbConfig {
    RbConfig {
        k,
        metric,
        rng_seed: seed,
        ..Default::default()
    }
}

#[test]
fn h0_both_metrics() {
    for metric in [Metric::Cutnet, Metric::Connectivity] {
        let mut r = partition(&common::h0(), &cfg(2, metric, 0)).unwrap();
        r.partition.canonicalize();
        assert_eq!(r.partition.parts(), &[0, 0, 1, 1]);
        assert_eq!((r.report.cutnet_cost, r.report.connectivity_minus1_cost), (1, 1));
        assert_eq!(r.tree[0].separator, vec![1]);
    }
}

#[test]
fn single_part_is_trivial() {
    let h = hypergraph(3, 20, 20);
    let r = partition(&h, &cfg(1, Metric::Connectivity, 0)).unwrap();
    assert!(r.partition.parts().iter().all(|&p| p == 0));
    assert_eq!((r.report.cutnet_cost, r.report.connectivity_minus1_cost), (0, 0));
}

#[test]
fn stranded_vertex_goes_to_lightest_part() {
    let h = Hypergraph::build(3, 3, &[(0, 0), (1, 1), (2, 2)], vec![5, 3, 1], vec![1; 3]).unwrap();
    let nets = NetAssignment {
        part_sets_of_net: vec![vec![0], vec![1], vec![]],
        removed_at: vec![None, None, Some(0..2)],
    };
    let pv = assign_vertices(&h, &nets, &[], &cfg(2, Metric::Cutnet, 0)).unwrap();
    assert_eq!(pv.parts(), &[0, 1, 1]);
}

#[test]
fn postprocess_h0_example() {
    let h = common::h0();
    let pv = PartitionVector::from_parts(&h, 2, vec![0, 0, 0, 1]).unwrap();
    let out = postprocess_balance(&h, pv, &RbConfig::default()).unwrap();
    assert_eq!(out.parts(), &[0, 0, 1, 1]);
}

#[test]
fn hundred_random_hypergraphs_assign_cleanly() {
    for seed in 0..100 {
        let h = hypergraph(seed, 30, 30);
        let k = 2 + (seed as usize % 5);
        for metric in [Metric::Cutnet, Metric::Connectivity] {
            let r = partition(&h, &cfg(k, metric, seed)).unwrap();
            assert!(r.partition.is_complete());
            assert!(r.partition.parts().iter().all(|&p| p < k));
            let leaves: BTreeSet<usize> = r
                .tree
                .iter()
                .filter_map(|n| match n.kind {
                    RbNodeKind::Leaf { part } => Some(part),
                    _ => None,
                })
                .collect();
            assert_eq!(leaves, (0..k).collect());
        }
    }
}

proptest! {
    #[test]
    fn cut_nets_are_separator_nets(seed: u64, k in 2usize..6, postprocess: bool) {
        let h = hypergraph(seed, 16, 20);
        let mut c = cfg(k, Metric::Cutnet, seed);
        c.postprocess = postprocess;
        let r = partition(&h, &c).unwrap();
        let removed: BTreeSet<usize> = r.tree.iter().flat_map(|n| n.separator.iter().copied()).collect();
        let sep_cost: i64 = r.tree.iter().map(|n| n.separator_cost).sum();
        for n in 0..h.num_nets() {
            let span: BTreeSet<usize> = h.pins(n).iter().map(|&v| r.partition.part_of(v)).collect();
            if span.len() > 1 {
                prop_assert!(removed.contains(&n));
            }
        }
        prop_assert!(recount(&h, r.partition.parts()).0 <= sep_cost);
    }

    #[test]
    fn connectivity_bounded_by_separator_cost(seed: u64, k in 2usize..6, postprocess: bool) {
        let h = hypergraph(seed, 16, 20);
        let mut c = cfg(k, Metric::Connectivity, seed);
        c.postprocess = postprocess;
        let r = partition(&h, &c).unwrap();
        let sep_cost: i64 = r.tree.iter().map(|n| n.separator_cost).sum();
        prop_assert!(recount(&h, r.partition.parts()).1 <= sep_cost);
        prop_assert_eq!(r.stats.total_separator_cost, sep_cost);
    }

    #[test]
    fn postprocess_is_monotone(seed: u64, k in 2usize..5) {
        let h = hypergraph(seed, 20, 20);
        let mut r = rng(seed ^ 3);
        let parts: Vec<usize> = (0..h.num_vertices()).map(|_| r.gen_range(0..k)).collect();
        let pv = PartitionVector::from_parts(&h, k, parts.clone()).unwrap();
        let before_max = pv.max_part_weight();
        let out = postprocess_balance(&h, pv, &RbConfig { k, ..Default::default() }).unwrap();
        let (c0, n0) = recount(&h, &parts);
        let (c1, n1) = recount(&h, out.parts());
        prop_assert!(c1 <= c0);
        prop_assert!(n1 <= n0);
        prop_assert!(out.max_part_weight() <= before_max);
    }

    #[test]
    fn degrade_budget_is_respected(seed: u64, f in 0.0f64..1.0) {
        let h = hypergraph(seed, 20, 20);
        let mut r = rng(seed ^ 5);
        let parts: Vec<usize> = (0..h.num_vertices()).map(|_| r.gen_range(0..3)).collect();
        let pv = PartitionVector::from_parts(&h, 3, parts.clone()).unwrap();
        let c = RbConfig { k: 3, allow_cut_degrade: Some(f), ..Default::default() };
        let out = postprocess_balance(&h, pv, &c).unwrap();
        let (c0, n0) = recount(&h, &parts);
        let (c1, n1) = recount(&h, out.parts());
        prop_assert!(c1 <= c0 + (f * c0 as f64).floor() as i64);
        prop_assert!(n1 <= n0 + (f * n0 as f64).floor() as i64);
    }

    #[test]
    fn unit_cutnet_leaf_nets_stay_internal(seed: u64, k in 2usize..5) {
        let h = hypergraph(seed, 16, 20);
        let mut c = cfg(k, Metric::Cutnet, seed);
        c.scheme = WeightScheme::Unit;
        c.postprocess = false;
        let r = partition(&h, &c).unwrap();
        for node in &r.tree {
            if let RbNodeKind::Leaf { part } = node.kind {
                for &n in &node.nets {
                    prop_assert!(h.pins(n).iter().all(|&v| r.partition.part_of(v) == part));
                }
            }
        }
    }

    #[test]
    fn same_input_same_partition(seed: u64, k in 2usize..8) {
        let h = hypergraph(seed, 40, 40);
        let c = cfg(k, Metric::Connectivity, seed);
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let a = one.install(|| partition(&h, &c).unwrap());
        let b = four.install(|| partition(&h, &c).unwrap());
        prop_assert_eq!(a.partition, b.partition);
        prop_assert_eq!(a.tree, b.tree);
    }
}
