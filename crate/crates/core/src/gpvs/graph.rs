use crate::error::{Error, Result};

/// Undirected graph in CSR form with integer vertex and edge weights.
///
/// Neighbor lists are sorted and duplicate-free, the adjacency is symmetric
/// and there are no self-loops. `adjwgt[i]` is the weight of the edge stored
/// at `adjncy[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsrGraph {
    xadj: Vec<usize>,
    adjncy: Vec<usize>,
    adjwgt: Vec<i64>,
    vwgt: Vec<i64>,
}

impl CsrGraph {
    /// Validates and wraps raw CSR arrays.
    pub fn from_csr(
        xadj: Vec<usize>,
        adjncy: Vec<usize>,
        adjwgt: Vec<i64>,
        vwgt: Vec<i64>,
    ) -> Result<Self> {
        let g = CsrGraph {
            xadj,
            adjncy,
            adjwgt,
            vwgt,
        };
        g.validate()?;
        Ok(g)
    }

    pub(crate) fn from_csr_unchecked(
        xadj: Vec<usize>,
        adjncy: Vec<usize>,
        adjwgt: Vec<i64>,
        vwgt: Vec<i64>,
    ) -> Self {
        let g = CsrGraph {
            xadj,
            adjncy,
            adjwgt,
            vwgt,
        };
        debug_assert!(g.validate().is_ok(), "{:?}", g.validate());
        g
    }

    /// Builds a graph with unit edge weights from an undirected edge list.
    /// Duplicate edges collapse; self-loops are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)], vwgt: Vec<i64>) -> Result<Self> {
        if vwgt.len() != n {
            return Err(Error::InvalidGraph(format!(
                "{} vertex weights for {} vertices",
                vwgt.len(),
                n
            )));
        }
        let mut arcs = Vec::with_capacity(edges.len() * 2);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge ({}, {}) out of range", u, v)));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop on {}", u)));
            }
            arcs.push((u, v));
            arcs.push((v, u));
        }
        arcs.sort_unstable();
        arcs.dedup();
        let mut xadj = vec![0usize; n + 1];
        for &(u, _) in &arcs {
            xadj[u + 1] += 1;
        }
        for i in 0..n {
            xadj[i + 1] += xadj[i];
        }
        let adjncy: Vec<usize> = arcs.iter().map(|&(_, v)| v).collect();
        let adjwgt = vec![1; adjncy.len()];
        CsrGraph::from_csr(xadj, adjncy, adjwgt, vwgt)
    }

    pub fn unit(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::from_edges(n, edges, vec![1; n])
    }

    fn validate(&self) -> Result<()> {
        let n = self.vwgt.len();
        if self.xadj.len() != n + 1 || self.xadj[0] != 0 {
            return Err(Error::InvalidGraph("xadj has wrong shape".into()));
        }
        if *self.xadj.last().unwrap() != self.adjncy.len() || self.adjwgt.len() != self.adjncy.len()
        {
            return Err(Error::InvalidGraph("adjacency arrays have wrong length".into()));
        }
        if self.vwgt.iter().any(|&w| w < 0) {
            return Err(Error::InvalidGraph("negative vertex weight".into()));
        }
        if self.adjwgt.iter().any(|&w| w <= 0) {
            return Err(Error::InvalidGraph("nonpositive edge weight".into()));
        }
        for u in 0..n {
            if self.xadj[u] > self.xadj[u + 1] {
                return Err(Error::InvalidGraph("xadj not monotone".into()));
            }
            let nbrs = self.neighbors(u);
            for (i, &v) in nbrs.iter().enumerate() {
                if v >= n {
                    return Err(Error::InvalidGraph(format!("neighbor {} out of range", v)));
                }
                if v == u {
                    return Err(Error::InvalidGraph(format!("self-loop on {}", u)));
                }
                if i > 0 && nbrs[i - 1] >= v {
                    return Err(Error::InvalidGraph(format!(
                        "neighbor list of {} not sorted or has duplicates",
                        u
                    )));
                }
                match self.neighbors(v).binary_search(&u) {
                    Ok(j) if self.adjwgt[self.xadj[v] + j] == self.adjwgt[self.xadj[u] + i] => {}
                    _ => {
                        return Err(Error::InvalidGraph(format!(
                            "edge ({}, {}) not symmetric",
                            u, v
                        )))
                    }
                }
            }
        }
        Ok(())
    }

    pub fn num_vertices(&self) -> usize {
        self.vwgt.len()
    }

    /// Undirected edge count.
    pub fn num_edges(&self) -> usize {
        self.adjncy.len() / 2
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adjncy[self.xadj[u]..self.xadj[u + 1]]
    }

    pub fn edge_weights(&self, u: usize) -> &[i64] {
        &self.adjwgt[self.xadj[u]..self.xadj[u + 1]]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.xadj[u + 1] - self.xadj[u]
    }

    pub fn vertex_weight(&self, u: usize) -> i64 {
        self.vwgt[u]
    }

    pub fn vertex_weights(&self) -> &[i64] {
        &self.vwgt
    }

    pub fn total_weight(&self) -> i64 {
        self.vwgt.iter().sum()
    }

    pub fn max_vertex_weight(&self) -> i64 {
        self.vwgt.iter().copied().max().unwrap_or(0)
    }

    pub fn with_vertex_weights(mut self, vwgt: Vec<i64>) -> Result<Self> {
        if vwgt.len() != self.num_vertices() || vwgt.iter().any(|&w| w < 0) {
            return Err(Error::InvalidGraph("bad vertex weight vector".into()));
        }
        self.vwgt = vwgt;
        Ok(self)
    }

    /// Undirected edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.num_vertices()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Subgraph induced by `keep` (sorted, duplicate-free). Vertex `i` of the
    /// result is `keep[i]`.
    pub fn induced_subgraph(&self, keep: &[usize]) -> CsrGraph {
        let mut local = vec![usize::MAX; self.num_vertices()];
        for (i, &v) in keep.iter().enumerate() {
            local[v] = i;
        }
        let mut xadj = Vec::with_capacity(keep.len() + 1);
        xadj.push(0);
        let mut adjncy = Vec::new();
        let mut adjwgt = Vec::new();
        let mut vwgt = Vec::with_capacity(keep.len());
        for &v in keep {
            for (&u, &w) in self.neighbors(v).iter().zip(self.edge_weights(v)) {
                if local[u] != usize::MAX {
                    adjncy.push(local[u]);
                    adjwgt.push(w);
                }
            }
            xadj.push(adjncy.len());
            vwgt.push(self.vwgt[v]);
        }
        // keep is sorted, so local ids are monotone and lists stay sorted
        CsrGraph::from_csr_unchecked(xadj, adjncy, adjwgt, vwgt)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_edges_dedups() {
        let g = CsrGraph::unit(3, &[(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(g.num_edges(), 2);
        assert_eq!(g.neighbors(1), &[0, 2]);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn rejects_asymmetric() {
        let r = CsrGraph::from_csr(vec![0, 1, 1], vec![1], vec![1], vec![1, 1]);
        assert!(matches!(r, Err(Error::InvalidGraph(_))));
        assert!(CsrGraph::unit(2, &[(0, 0)]).is_err());
    }

    #[test]
    fn induced() {
        let g = CsrGraph::unit(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let s = g.induced_subgraph(&[0, 1, 3]);
        assert_eq!(s.num_vertices(), 3);
        assert_eq!(s.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2)]);
    }
}
