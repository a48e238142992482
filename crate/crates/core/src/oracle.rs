//! Exhaustive reference solvers for small instances.
//!
//! Nothing here shares bookkeeping with the partitioner: every labeling is
//! scored from scratch.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::gpvs::{Balance, CsrGraph, Side};
use crate::hgraph::Hypergraph;

pub const MAX_BIPARTITION_VERTICES: usize = 16;
pub const MAX_SEPARATOR_VERTICES: usize = 12;
pub const MAX_PAIRWISE_NETS: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct OracleResult {
    pub best_cutnet: i64,
    pub best_connectivity: i64,
    pub best_sep_weight: i64,
    /// Part per vertex achieving `best_cutnet`.
    pub cutnet_witness: Vec<usize>,
    /// Part per vertex achieving `best_connectivity`.
    pub connectivity_witness: Vec<usize>,
    /// Side per vertex achieving `best_sep_weight`.
    pub separator_witness: Vec<Side>,
}

/// Whether a 2-way split with part weights `w0`, `w1` is balanced: no part
/// exceeds `(1 + epsilon) * ceil(W / 2)`.
pub fn bipartition_is_balanced(w0: i64, w1: i64, epsilon: f64) -> bool {
    let half = (w0 + w1 + 1) / 2;
    let cap = (1.0 + epsilon) * half as f64;
    w0 as f64 <= cap && w1 as f64 <= cap
}

/// Minimum cutnet and connectivity-1 cost over all balanced 2-way splits.
/// Vertex 0 is fixed to part 0, so witnesses are canonical. If no split is
/// balanced, minimizes over the splits with the smallest heavier part.
pub fn optimal_bipartition(h: &Hypergraph, epsilon: f64) -> Result<OracleResult> {
    let n = h.num_vertices();
    if n > MAX_BIPARTITION_VERTICES {
        return Err(Error::TooLarge {
            size: n,
            max: MAX_BIPARTITION_VERTICES,
        });
    }
    let total: i64 = h.vertex_weights().iter().sum();
    let masks: Vec<u32> = (0u32..(1u32 << n)).filter(|m| m & 1 == 0).collect();
    let heavier = |mask: u32| {
        let w1: i64 = (0..n).filter(|&v| mask >> v & 1 == 1).map(|v| h.vertex_weight(v)).sum();
        w1.max(total - w1)
    };
    let balanced: Vec<u32> = masks
        .iter()
        .copied()
        .filter(|&m| {
            let w1 = heavier(m);
            bipartition_is_balanced(w1, total - w1, epsilon)
        })
        .collect();
    let pool = if balanced.is_empty() {
        let least = masks.iter().map(|&m| heavier(m)).min().unwrap_or(0);
        masks.into_iter().filter(|&m| heavier(m) == least).collect()
    } else {
        balanced
    };

    let mut best_cut = (i64::MAX, 0u32);
    let mut best_conn = (i64::MAX, 0u32);
    for mask in pool {
        let mut cut = 0;
        for net in 0..h.num_nets() {
            let parts: BTreeSet<u32> = h.pins(net).iter().map(|&v| mask >> v & 1).collect();
            if parts.len() > 1 {
                cut += h.net_cost(net);
            }
        }
        // with two parts, lambda - 1 is 1 exactly for cut nets
        if cut < best_cut.0 {
            best_cut = (cut, mask);
        }
        if cut < best_conn.0 {
            best_conn = (cut, mask);
        }
    }
    let witness = |mask: u32| (0..n).map(|v| (mask >> v & 1) as usize).collect::<Vec<_>>();
    Ok(OracleResult {
        best_cutnet: best_cut.0,
        best_connectivity: best_conn.0,
        best_sep_weight: 0,
        cutnet_witness: witness(best_cut.1),
        connectivity_witness: witness(best_conn.1),
        separator_witness: Vec::new(),
    })
}

/// Cheapest `(A, B, S)` labeling with no `A`-`B` edge that is balanced
/// under [`Balance`] with an even target. Enumerates labelings depth-first,
/// abandoning a branch only once it already holds an `A`-`B` edge.
pub fn optimal_separator(g: &CsrGraph, epsilon: f64) -> Result<OracleResult> {
    let n = g.num_vertices();
    if n > MAX_SEPARATOR_VERTICES {
        return Err(Error::TooLarge {
            size: n,
            max: MAX_SEPARATOR_VERTICES,
        });
    }
    let bal = Balance::new(g, 0.5, epsilon);
    let mut labels = vec![Side::S; n];
    let mut best: Option<(i64, Vec<Side>)> = None;
    enumerate(g, &bal, 0, &mut labels, &mut best);
    let (w, witness) = best.expect("the all-separator labeling is always balanced");
    Ok(OracleResult {
        best_cutnet: 0,
        best_connectivity: 0,
        best_sep_weight: w,
        cutnet_witness: Vec::new(),
        connectivity_witness: Vec::new(),
        separator_witness: witness,
    })
}

fn enumerate(
    g: &CsrGraph,
    bal: &Balance,
    v: usize,
    labels: &mut Vec<Side>,
    best: &mut Option<(i64, Vec<Side>)>,
) {
    if v == g.num_vertices() {
        let mut w = [0i64; 3];
        for (u, s) in labels.iter().enumerate() {
            let i = match s {
                Side::A => 0,
                Side::B => 1,
                Side::S => 2,
            };
            w[i] += g.vertex_weight(u);
        }
        if bal.is_balanced(w[0], w[1]) && best.as_ref().is_none_or(|(b, _)| w[2] < *b) {
            *best = Some((w[2], labels.clone()));
        }
        return;
    }
    for side in [Side::A, Side::B, Side::S] {
        let clash = side != Side::S
            && g.neighbors(v)
                .iter()
                .any(|&u| u < v && labels[u] == side.other());
        if clash {
            continue;
        }
        labels[v] = side;
        enumerate(g, bal, v + 1, labels, best);
    }
    labels[v] = Side::S;
}

/// All net pairs `(i, j)`, `i < j`, whose pin sets intersect.
pub fn pairwise_nig(h: &Hypergraph) -> Result<Vec<(usize, usize)>> {
    let m = h.num_nets();
    if m > MAX_PAIRWISE_NETS {
        return Err(Error::TooLarge {
            size: m,
            max: MAX_PAIRWISE_NETS,
        });
    }
    let sets: Vec<BTreeSet<usize>> = (0..m).map(|n| h.pins(n).iter().copied().collect()).collect();
    let mut edges = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            if !sets[i].is_disjoint(&sets[j]) {
                edges.push((i, j));
            }
        }
    }
    Ok(edges)
}
