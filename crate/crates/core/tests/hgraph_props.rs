mod common;

use common::{recount, rng};
use nigpart::gen;
use nigpart::hgraph::{evaluate, Hypergraph, PartitionVector};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn instance(seed: u64, max_v: usize, max_n: usize, k: usize) -> (Hypergraph, Vec<usize>) {
    let mut r = rng(seed);
    let nv = r.gen_range(1..=max_v);
    let nn = r.gen_range(0..=max_n);
    let h = gen::random_hypergraph(&mut r, nv, nn, 5, true);
    let parts = (0..nv).map(|_| r.gen_range(0..k)).collect();
    (h, parts)
}

#[test]
fn recount_example_eight_vertices_three_parts() {
    for seed in 0..50 {
        let mut r = rng(seed);
        let h = gen::random_hypergraph(&mut r, 8, 6, 4, true);
        let parts: Vec<usize> = (0..8).map(|_| r.gen_range(0..3)).collect();
        let pv = PartitionVector::from_parts(&h, 3, parts.clone()).unwrap();
        let rep = evaluate(&h, &pv).unwrap();
        assert_eq!((rep.cutnet_cost, rep.connectivity_minus1_cost), recount(&h, &parts));
    }
}

#[test]
fn empty_pin_list() {
    let h = Hypergraph::build(3, 2, &[], vec![1; 3], vec![1; 2]).unwrap();
    assert_eq!(h.num_pins(), 0);
    assert!((0..3).all(|v| h.degree(v) == 0));
    let pv = PartitionVector::from_parts(&h, 2, vec![0, 1, 1]).unwrap();
    let rep = evaluate(&h, &pv).unwrap();
    assert_eq!(rep.lambda_of, vec![0, 0]);
    assert_eq!(rep.cutnet_cost, 0);
}

proptest! {
    #[test]
    fn costs_match_recount(seed: u64, k in 1usize..6) {
        let (h, parts) = instance(seed, 12, 10, k);
        let pv = PartitionVector::from_parts(&h, k, parts.clone()).unwrap();
        let rep = evaluate(&h, &pv).unwrap();
        prop_assert_eq!((rep.cutnet_cost, rep.connectivity_minus1_cost), recount(&h, &parts));
        let mut w = vec![0; k];
        for (v, &p) in parts.iter().enumerate() {
            w[p] += h.vertex_weight(v);
        }
        prop_assert_eq!(rep.part_weights, w);
    }

    #[test]
    fn two_way_metrics_coincide(seed: u64) {
        let (h, parts) = instance(seed, 12, 10, 2);
        let pv = PartitionVector::from_parts(&h, 2, parts).unwrap();
        let rep = evaluate(&h, &pv).unwrap();
        prop_assert_eq!(rep.cutnet_cost, rep.connectivity_minus1_cost);
    }

    #[test]
    fn relabeling_parts_changes_nothing(seed: u64, k in 1usize..6) {
        let (h, parts) = instance(seed, 12, 10, k);
        let mut perm: Vec<usize> = (0..k).collect();
        perm.shuffle(&mut rng(seed ^ 1));
        let relabeled: Vec<usize> = parts.iter().map(|&p| perm[p]).collect();
        let a = evaluate(&h, &PartitionVector::from_parts(&h, k, parts).unwrap()).unwrap();
        let b = evaluate(&h, &PartitionVector::from_parts(&h, k, relabeled).unwrap()).unwrap();
        prop_assert_eq!(a.cutnet_cost, b.cutnet_cost);
        prop_assert_eq!(a.connectivity_minus1_cost, b.connectivity_minus1_cost);
        prop_assert_eq!(&a.lambda_of, &b.lambda_of);
        prop_assert_eq!(a.max_imbalance_vertex, b.max_imbalance_vertex);
        prop_assert_eq!(a.max_imbalance_internal_nets, b.max_imbalance_internal_nets);
        for p in 0..k {
            prop_assert_eq!(a.part_weights[p], b.part_weights[perm[p]]);
            prop_assert_eq!(a.internal_nets_per_part[p], b.internal_nets_per_part[perm[p]]);
        }
    }

    #[test]
    fn zero_weight_isolated_vertex_is_inert(seed: u64, k in 1usize..5, extra_part in 0usize..5) {
        let (h, parts) = instance(seed, 12, 10, k);
        let n = h.num_vertices();
        let mut w = h.vertex_weights().to_vec();
        w.push(0);
        let bigger = Hypergraph::build(n + 1, h.num_nets(), &h.pin_list(), w, h.net_costs().to_vec()).unwrap();
        let mut parts2 = parts.clone();
        parts2.push(extra_part % k);
        let a = evaluate(&h, &PartitionVector::from_parts(&h, k, parts).unwrap()).unwrap();
        let b = evaluate(&bigger, &PartitionVector::from_parts(&bigger, k, parts2).unwrap()).unwrap();
        prop_assert_eq!(a.cutnet_cost, b.cutnet_cost);
        prop_assert_eq!(a.connectivity_minus1_cost, b.connectivity_minus1_cost);
        prop_assert_eq!(&a.lambda_of, &b.lambda_of);
        prop_assert_eq!(&a.internal_nets_per_part, &b.internal_nets_per_part);
        prop_assert_eq!(&a.part_weights, &b.part_weights);
        prop_assert_eq!(a.max_imbalance_vertex, b.max_imbalance_vertex);
    }

    #[test]
    fn merging_parts_never_raises_cost(seed: u64, k in 2usize..6, x in 0usize..6, y in 0usize..6) {
        let (h, parts) = instance(seed, 12, 8, k);
        let (from, into) = (x % k, y % k);
        let merged: Vec<usize> = parts.iter().map(|&p| if p == from { into } else { p }).collect();
        let (cut0, conn0) = recount(&h, &parts);
        let a = evaluate(&h, &PartitionVector::from_parts(&h, k, merged).unwrap()).unwrap();
        prop_assert!(a.cutnet_cost <= cut0);
        prop_assert!(a.connectivity_minus1_cost <= conn0);
    }
}
