//! Hypergraph storage, K-way partition vectors and cutsize evaluation.
//!
//! A [`Hypergraph`] keeps both incidence directions in CSR form: net → pins
//! and vertex → nets. Both lists are sorted and duplicate-free, so the two
//! directions are exact transposes of each other.

use serde::Serialize;

use crate::error::{Error, Result};

/// Part id of a vertex that has not been placed yet.
pub const UNASSIGNED: usize = usize::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    num_vertices: usize,
    num_nets: usize,
    net_ptr: Vec<usize>,
    net_pins: Vec<usize>,
    vertex_ptr: Vec<usize>,
    vertex_nets: Vec<usize>,
    vertex_weights: Vec<i64>,
    net_costs: Vec<i64>,
}

impl Hypergraph {
    /// Builds a validated hypergraph from a list of `(net, vertex)` pins.
    ///
    /// Duplicate pins are collapsed; use [`Hypergraph::build_counted`] to
    /// learn how many were dropped.
    pub fn build(
        num_vertices: usize,
        num_nets: usize,
        pins: &[(usize, usize)],
        vertex_weights: Vec<i64>,
        net_costs: Vec<i64>,
    ) -> Result<Self> {
        Self::build_counted(num_vertices, num_nets, pins, vertex_weights, net_costs).map(|(h, _)| h)
    }

    /// Same as [`Hypergraph::build`], also returning the number of collapsed
    /// duplicate pins.
    pub fn build_counted(
        num_vertices: usize,
        num_nets: usize,
        pins: &[(usize, usize)],
        vertex_weights: Vec<i64>,
        net_costs: Vec<i64>,
    ) -> Result<(Self, usize)> {
        if vertex_weights.len() != num_vertices {
            return Err(Error::InvalidWeight(format!(
                "{} vertex weights given for {} vertices",
                vertex_weights.len(),
                num_vertices
            )));
        }
        if net_costs.len() != num_nets {
            return Err(Error::InvalidWeight(format!(
                "{} net costs given for {} nets",
                net_costs.len(),
                num_nets
            )));
        }
        if let Some(v) = vertex_weights.iter().position(|&w| w < 0) {
            return Err(Error::InvalidWeight(format!(
                "vertex {} has negative weight {}",
                v, vertex_weights[v]
            )));
        }
        if let Some(n) = net_costs.iter().position(|&c| c < 0) {
            return Err(Error::InvalidWeight(format!(
                "net {} has negative cost {}",
                n, net_costs[n]
            )));
        }
        for &(net, vertex) in pins {
            if net >= num_nets || vertex >= num_vertices {
                return Err(Error::InvalidPin { net, vertex });
            }
        }

        let mut sorted = pins.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let duplicates = pins.len() - sorted.len();
        if duplicates > 0 {
            log::warn!("collapsed {} duplicate pins", duplicates);
        }

        let mut net_ptr = vec![0usize; num_nets + 1];
        for &(net, _) in &sorted {
            net_ptr[net + 1] += 1;
        }
        for i in 0..num_nets {
            net_ptr[i + 1] += net_ptr[i];
        }
        let net_pins: Vec<usize> = sorted.iter().map(|&(_, v)| v).collect();

        // Transpose by counting sort; visiting nets in order keeps each
        // vertex's net list sorted.
        let mut vertex_ptr = vec![0usize; num_vertices + 1];
        for &v in &net_pins {
            vertex_ptr[v + 1] += 1;
        }
        for i in 0..num_vertices {
            vertex_ptr[i + 1] += vertex_ptr[i];
        }
        let mut fill = vertex_ptr.clone();
        let mut vertex_nets = vec![0usize; net_pins.len()];
        for &(net, v) in &sorted {
            vertex_nets[fill[v]] = net;
            fill[v] += 1;
        }

        let h = Hypergraph {
            num_vertices,
            num_nets,
            net_ptr,
            net_pins,
            vertex_ptr,
            vertex_nets,
            vertex_weights,
            net_costs,
        };
        Ok((h, duplicates))
    }

    /// Unit vertex weights and unit net costs.
    pub fn from_nets(num_vertices: usize, nets: &[Vec<usize>]) -> Result<Self> {
        let pins: Vec<(usize, usize)> = nets
            .iter()
            .enumerate()
            .flat_map(|(n, pins)| pins.iter().map(move |&v| (n, v)))
            .collect();
        Self::build(
            num_vertices,
            nets.len(),
            &pins,
            vec![1; num_vertices],
            vec![1; nets.len()],
        )
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_nets(&self) -> usize {
        self.num_nets
    }

    pub fn num_pins(&self) -> usize {
        self.net_pins.len()
    }

    /// Sorted vertex list of `net`.
    pub fn pins(&self, net: usize) -> &[usize] {
        &self.net_pins[self.net_ptr[net]..self.net_ptr[net + 1]]
    }

    /// Sorted net list of `vertex`.
    pub fn nets_of(&self, vertex: usize) -> &[usize] {
        &self.vertex_nets[self.vertex_ptr[vertex]..self.vertex_ptr[vertex + 1]]
    }

    pub fn degree(&self, vertex: usize) -> usize {
        self.vertex_ptr[vertex + 1] - self.vertex_ptr[vertex]
    }

    pub fn net_size(&self, net: usize) -> usize {
        self.net_ptr[net + 1] - self.net_ptr[net]
    }

    pub fn vertex_weight(&self, vertex: usize) -> i64 {
        self.vertex_weights[vertex]
    }

    pub fn vertex_weights(&self) -> &[i64] {
        &self.vertex_weights
    }

    pub fn net_cost(&self, net: usize) -> i64 {
        self.net_costs[net]
    }

    pub fn net_costs(&self) -> &[i64] {
        &self.net_costs
    }

    pub fn total_vertex_weight(&self) -> i64 {
        self.vertex_weights.iter().sum()
    }

    /// All pins as `(net, vertex)` pairs in net-major order.
    pub fn pin_list(&self) -> Vec<(usize, usize)> {
        (0..self.num_nets)
            .flat_map(|n| self.pins(n).iter().map(move |&v| (n, v)))
            .collect()
    }
}

/// A K-way assignment of hypergraph vertices with cached part weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionVector {
    k: usize,
    part_of: Vec<usize>,
    part_weights: Vec<i64>,
}

impl PartitionVector {
    pub fn unassigned(h: &Hypergraph, k: usize) -> Self {
        PartitionVector {
            k,
            part_of: vec![UNASSIGNED; h.num_vertices()],
            part_weights: vec![0; k],
        }
    }

    /// Wraps an explicit part list. Entries may be [`UNASSIGNED`].
    pub fn from_parts(h: &Hypergraph, k: usize, parts: Vec<usize>) -> Result<Self> {
        if parts.len() != h.num_vertices() {
            return Err(Error::Config(format!(
                "partition has {} entries for {} vertices",
                parts.len(),
                h.num_vertices()
            )));
        }
        let mut part_weights = vec![0; k];
        for (v, &p) in parts.iter().enumerate() {
            if p == UNASSIGNED {
                continue;
            }
            if p >= k {
                return Err(Error::Config(format!(
                    "vertex {} assigned to part {} but k = {}",
                    v, p, k
                )));
            }
            part_weights[p] += h.vertex_weight(v);
        }
        Ok(PartitionVector {
            k,
            part_of: parts,
            part_weights,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn part_of(&self, v: usize) -> usize {
        self.part_of[v]
    }

    pub fn parts(&self) -> &[usize] {
        &self.part_of
    }

    pub fn part_weights(&self) -> &[i64] {
        &self.part_weights
    }

    pub fn max_part_weight(&self) -> i64 {
        self.part_weights.iter().copied().max().unwrap_or(0)
    }

    /// Places `v` (weight `w`) into `part`, moving it out of its current part
    /// if it has one.
    pub fn assign(&mut self, v: usize, part: usize, w: i64) {
        let old = self.part_of[v];
        if old != UNASSIGNED {
            self.part_weights[old] -= w;
        }
        self.part_of[v] = part;
        self.part_weights[part] += w;
    }

    pub fn first_unassigned(&self) -> Option<usize> {
        self.part_of.iter().position(|&p| p == UNASSIGNED)
    }

    pub fn is_complete(&self) -> bool {
        self.first_unassigned().is_none()
    }

    /// Relabels parts in order of first appearance along the vertex order,
    /// so vertex 0 lies in part 0. Parts that hold no vertex take the
    /// remaining ids in their original order.
    pub fn canonicalize(&mut self) {
        let mut relabel = vec![UNASSIGNED; self.k];
        let mut next = 0;
        for &p in &self.part_of {
            if p != UNASSIGNED && relabel[p] == UNASSIGNED {
                relabel[p] = next;
                next += 1;
            }
        }
        for slot in relabel.iter_mut() {
            if *slot == UNASSIGNED {
                *slot = next;
                next += 1;
            }
        }
        for p in self.part_of.iter_mut() {
            if *p != UNASSIGNED {
                *p = relabel[*p];
            }
        }
        let mut weights = vec![0; self.k];
        for (old, &w) in self.part_weights.iter().enumerate() {
            weights[relabel[old]] = w;
        }
        self.part_weights = weights;
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CutReport {
    pub k: usize,
    pub cutnet_cost: i64,
    pub connectivity_minus1_cost: i64,
    /// Number of distinct parts touched by each net (0 for empty nets).
    pub lambda_of: Vec<usize>,
    pub internal_nets_per_part: Vec<usize>,
    pub part_weights: Vec<i64>,
    pub max_imbalance_vertex: f64,
    pub max_imbalance_internal_nets: f64,
}

impl CutReport {
    pub fn num_cut_nets(&self) -> usize {
        self.lambda_of.iter().filter(|&&l| l > 1).count()
    }
}

/// `max / mean - 1`, or 0 when everything is zero.
pub fn imbalance(values: &[i64]) -> f64 {
    let total: i64 = values.iter().sum();
    if values.is_empty() || total <= 0 {
        return 0.0;
    }
    let max = values.iter().copied().max().unwrap_or(0) as f64;
    let mean = total as f64 / values.len() as f64;
    max / mean - 1.0
}

/// Computes both cutsize metrics and balance ratios for a complete partition.
pub fn evaluate(h: &Hypergraph, pv: &PartitionVector) -> Result<CutReport> {
    if let Some(v) = pv.first_unassigned() {
        return Err(Error::IncompletePartition { vertex: v });
    }
    let k = pv.k();
    let mut lambda_of = vec![0usize; h.num_nets()];
    let mut internal = vec![0usize; k];
    let mut seen = vec![usize::MAX; k];
    let mut cutnet_cost = 0i64;
    let mut conn_cost = 0i64;

    for net in 0..h.num_nets() {
        let mut lambda = 0;
        let mut last = UNASSIGNED;
        for &v in h.pins(net) {
            let p = pv.part_of(v);
            if seen[p] != net {
                seen[p] = net;
                lambda += 1;
                last = p;
            }
        }
        lambda_of[net] = lambda;
        if lambda == 1 {
            internal[last] += 1;
        } else if lambda > 1 {
            cutnet_cost += h.net_cost(net);
            conn_cost += h.net_cost(net) * (lambda as i64 - 1);
        }
    }

    let internal_i64: Vec<i64> = internal.iter().map(|&c| c as i64).collect();
    Ok(CutReport {
        k,
        cutnet_cost,
        connectivity_minus1_cost: conn_cost,
        lambda_of,
        internal_nets_per_part: internal,
        part_weights: pv.part_weights().to_vec(),
        max_imbalance_vertex: imbalance(pv.part_weights()),
        max_imbalance_internal_nets: imbalance(&internal_i64),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn h0() -> Hypergraph {
        Hypergraph::from_nets(4, &[vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap()
    }

    #[test]
    fn h0_degrees() {
        let h = h0();
        assert_eq!(h.degree(0), 1);
        assert_eq!(h.degree(1), 2);
        assert_eq!(h.degree(2), 2);
        assert_eq!(h.degree(3), 1);
        assert_eq!(h.num_pins(), 6);
        assert_eq!(h.nets_of(1), &[0, 1]);
    }

    #[test]
    fn empty_pin_list() {
        let h = Hypergraph::build(3, 2, &[], vec![1; 3], vec![1; 2]).unwrap();
        assert_eq!(h.net_size(0), 0);
        assert_eq!(h.net_size(1), 0);
        assert!((0..3).all(|v| h.degree(v) == 0));
    }

    #[test]
    fn duplicate_pins_collapse() {
        let (h, dups) =
            Hypergraph::build_counted(1, 1, &[(0, 0), (0, 0)], vec![1], vec![1]).unwrap();
        assert_eq!(h.pins(0), &[0]);
        assert_eq!(dups, 1);
    }

    #[test]
    fn bad_inputs() {
        assert!(matches!(
            Hypergraph::build(2, 1, &[(0, 2)], vec![1; 2], vec![1]),
            Err(Error::InvalidPin { net: 0, vertex: 2 })
        ));
        assert!(matches!(
            Hypergraph::build(2, 1, &[(1, 0)], vec![1; 2], vec![1]),
            Err(Error::InvalidPin { .. })
        ));
        assert!(matches!(
            Hypergraph::build(2, 1, &[], vec![1, -1], vec![1]),
            Err(Error::InvalidWeight(_))
        ));
        assert!(matches!(
            Hypergraph::build(2, 1, &[], vec![1, 1], vec![-3]),
            Err(Error::InvalidWeight(_))
        ));
    }

    #[test]
    fn evaluate_single_cut() {
        let h = h0();
        let pv = PartitionVector::from_parts(&h, 2, vec![0, 0, 1, 1]).unwrap();
        let r = evaluate(&h, &pv).unwrap();
        assert_eq!(r.lambda_of, vec![1, 2, 1]);
        assert_eq!(r.cutnet_cost, 1);
        assert_eq!(r.connectivity_minus1_cost, 1);
        assert_eq!(r.internal_nets_per_part, vec![1, 1]);
        assert_eq!(r.max_imbalance_vertex, 0.0);
    }

    #[test]
    fn evaluate_all_internal() {
        let h = h0();
        let pv = PartitionVector::from_parts(&h, 2, vec![0; 4]).unwrap();
        let r = evaluate(&h, &pv).unwrap();
        assert_eq!(r.cutnet_cost, 0);
        assert_eq!(r.connectivity_minus1_cost, 0);
        assert!((r.max_imbalance_vertex - 1.0).abs() < 1e-12);
    }

    #[test]
    fn evaluate_rejects_unassigned() {
        let h = h0();
        let pv = PartitionVector::from_parts(&h, 2, vec![0, UNASSIGNED, 1, 1]).unwrap();
        assert!(matches!(
            evaluate(&h, &pv),
            Err(Error::IncompletePartition { vertex: 1 })
        ));
    }

    #[test]
    fn empty_nets_have_zero_lambda() {
        let h = Hypergraph::build(2, 2, &[(0, 0), (0, 1)], vec![1; 2], vec![5, 7]).unwrap();
        let pv = PartitionVector::from_parts(&h, 2, vec![0, 1]).unwrap();
        let r = evaluate(&h, &pv).unwrap();
        assert_eq!(r.lambda_of, vec![2, 0]);
        assert_eq!(r.cutnet_cost, 5);
        assert_eq!(r.connectivity_minus1_cost, 5);
    }

    #[test]
    fn canonicalize_puts_vertex_zero_in_part_zero() {
        let h = h0();
        let mut pv = PartitionVector::from_parts(&h, 3, vec![2, 2, 0, 0]).unwrap();
        pv.canonicalize();
        assert_eq!(pv.parts(), &[0, 0, 1, 1]);
        assert_eq!(pv.part_weights(), &[2, 2, 0]);
    }
}
