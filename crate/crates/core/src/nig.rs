//! Net intersection graph (NIG) construction and NIG vertex weighting.
//!
//! Every net of the hypergraph becomes a NIG vertex, and every hypergraph
//! vertex contributes a clique over the nets it connects. Two NIG vertices
//! are adjacent iff their nets share a pin. Intersection multiplicity is not
//! kept: all NIG edges have weight 1.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gpvs::CsrGraph;
use crate::hgraph::Hypergraph;

/// Default bound on the predicted clique-expansion size, `sum(deg(v)^2)`.
pub const DEFAULT_EDGE_CAP: u64 = 1 << 31;

/// Default fixed-point scale for [`WeightScheme::Shared`].
pub const DEFAULT_SCALE: i64 = 1024;

/// How NIG vertices are weighted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum WeightScheme {
    /// Every net weighs 1, so NIG vertex balance is internal-net balance.
    Unit,
    /// Each hypergraph vertex splits its weight evenly over its nets:
    /// `weight(n) = round(scale * sum_{v in pins(n)} w(v) / deg(v))`.
    ///
    /// This even split is our own approximation of hypergraph vertex
    /// balance; it is one reasonable scheme among several.
    Shared,
}

#[derive(Clone, Debug)]
pub struct NigOptions {
    /// Abort with [`Error::CliqueBlowup`] when `sum(deg(v)^2)` over the
    /// vertices used for clique generation exceeds this.
    pub edge_cap: u64,
    /// Hypergraph vertices with more nets than this generate no clique and
    /// are reported as free vertices. This is an approximation: nets of a
    /// free vertex may end up in different parts. Off by default.
    pub max_clique_degree: Option<usize>,
}

impl Default for NigOptions {
    fn default() -> Self {
        NigOptions {
            edge_cap: DEFAULT_EDGE_CAP,
            max_clique_degree: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NigGraph {
    graph: CsrGraph,
    origin_net: Vec<usize>,
    free_vertices: Vec<usize>,
}

impl NigGraph {
    pub fn num_vertices(&self) -> usize {
        self.graph.num_vertices()
    }

    pub fn num_edges(&self) -> usize {
        self.graph.num_edges()
    }

    pub fn neighbors(&self, n: usize) -> &[usize] {
        self.graph.neighbors(n)
    }

    pub fn vertex_weights(&self) -> &[i64] {
        self.graph.vertex_weights()
    }

    pub fn origin_net(&self, n: usize) -> usize {
        self.origin_net[n]
    }

    /// Hypergraph vertices excluded from clique generation by
    /// [`NigOptions::max_clique_degree`].
    pub fn free_vertices(&self) -> &[usize] {
        &self.free_vertices
    }

    pub fn graph(&self) -> &CsrGraph {
        &self.graph
    }

    pub fn into_graph(self) -> CsrGraph {
        self.graph
    }

    /// Sorted `(n_i, n_j)` pairs with `n_i < n_j`.
    pub fn edge_set(&self) -> Vec<(usize, usize)> {
        self.graph.edges().collect()
    }
}

pub fn build_nig(h: &Hypergraph) -> Result<NigGraph> {
    build_nig_with(h, &NigOptions::default())
}

/// Builds the NIG with unit vertex weights.
///
/// Each net's neighbor list is gathered independently with a per-thread
/// timestamped marker, then sorted, so the result does not depend on the
/// thread count or on pin input order.
pub fn build_nig_with(h: &Hypergraph, opts: &NigOptions) -> Result<NigGraph> {
    let num_nets = h.num_nets();
    let in_clique: Vec<bool> = (0..h.num_vertices())
        .map(|v| opts.max_clique_degree.is_none_or(|d| h.degree(v) <= d))
        .collect();
    let free_vertices: Vec<usize> = (0..h.num_vertices()).filter(|&v| !in_clique[v]).collect();

    let predicted: u64 = (0..h.num_vertices())
        .filter(|&v| in_clique[v])
        .map(|v| (h.degree(v) as u64).pow(2))
        .sum();
    if predicted > opts.edge_cap {
        return Err(Error::CliqueBlowup {
            predicted,
            cap: opts.edge_cap,
        });
    }

    let lists: Vec<Vec<usize>> = (0..num_nets)
        .into_par_iter()
        .with_min_len(256)
        .map_init(
            || vec![usize::MAX; num_nets],
            |mark, n| {
                mark[n] = n;
                let mut nbrs = Vec::new();
                for &v in h.pins(n) {
                    if !in_clique[v] {
                        continue;
                    }
                    for &m in h.nets_of(v) {
                        if mark[m] != n {
                            mark[m] = n;
                            nbrs.push(m);
                        }
                    }
                }
                nbrs.sort_unstable();
                nbrs
            },
        )
        .collect();

    let mut xadj = Vec::with_capacity(num_nets + 1);
    xadj.push(0);
    let total: usize = lists.iter().map(Vec::len).sum();
    let mut adjncy = Vec::with_capacity(total);
    for l in &lists {
        adjncy.extend_from_slice(l);
        xadj.push(adjncy.len());
    }
    let adjwgt = vec![1; adjncy.len()];
    let graph = CsrGraph::from_csr_unchecked(xadj, adjncy, adjwgt, vec![1; num_nets]);
    Ok(NigGraph {
        graph,
        origin_net: (0..num_nets).collect(),
        free_vertices,
    })
}

/// Returns a copy of `g` weighted by `scheme`. `scale` only matters for
/// [`WeightScheme::Shared`].
pub fn assign_weights(
    g: &NigGraph,
    h: &Hypergraph,
    scheme: WeightScheme,
    scale: i64,
) -> Result<NigGraph> {
    if scale < 1 {
        return Err(Error::Config(format!("weight scale must be >= 1, got {}", scale)));
    }
    if g.num_vertices() != h.num_nets() || g.origin_net.iter().any(|&n| n >= h.num_nets()) {
        return Err(Error::ModelMismatch(format!(
            "graph has {} vertices, hypergraph has {} nets",
            g.num_vertices(),
            h.num_nets()
        )));
    }
    let weights: Vec<i64> = match scheme {
        WeightScheme::Unit => vec![1; g.num_vertices()],
        WeightScheme::Shared => (0..g.num_vertices())
            .map(|i| {
                let net = g.origin_net[i];
                let share: f64 = h
                    .pins(net)
                    .iter()
                    .map(|&v| h.vertex_weight(v) as f64 / h.degree(v) as f64)
                    .sum();
                (scale as f64 * share).round() as i64
            })
            .collect(),
    };
    Ok(NigGraph {
        graph: g.graph.clone().with_vertex_weights(weights)?,
        origin_net: g.origin_net.clone(),
        free_vertices: g.free_vertices.clone(),
    })
}
