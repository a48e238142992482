use rand::seq::SliceRandom;
use rand::Rng;

use super::{CsrGraph, GpvsConfig};

/// A coarsening hierarchy. Level 0 is the input graph; `map(l)[v]` is the
/// vertex of level `l + 1` that absorbed vertex `v` of level `l`.
#[derive(Clone, Debug)]
pub struct Hierarchy {
    graphs: Vec<CsrGraph>,
    maps: Vec<Vec<usize>>,
}

impl Hierarchy {
    pub fn num_levels(&self) -> usize {
        self.graphs.len()
    }

    pub fn graph(&self, level: usize) -> &CsrGraph {
        &self.graphs[level]
    }

    pub fn map(&self, level: usize) -> &[usize] {
        &self.maps[level]
    }

    pub fn coarsest(&self) -> &CsrGraph {
        self.graphs.last().expect("hierarchy holds at least the input")
    }
}

/// Heavy-edge matching coarsening until at most `cfg.coarsen_until`
/// vertices remain or a level shrinks the graph by less than 10%.
pub fn coarsen(g: &CsrGraph, cfg: &GpvsConfig) -> Hierarchy {
    coarsen_with(g, cfg, &mut cfg.rng())
}

pub(crate) fn coarsen_with<R: Rng>(g: &CsrGraph, cfg: &GpvsConfig, rng: &mut R) -> Hierarchy {
    let mut graphs = vec![g.clone()];
    let mut maps = Vec::new();
    // Coarse vertices heavier than this stop absorbing neighbors, so the
    // coarsest graph still admits a balanced split.
    let limit = {
        let total = g.total_weight() as f64;
        let target = cfg.coarsen_until.max(1) as f64;
        ((1.5 * total / target).ceil() as i64).max(g.max_vertex_weight())
    };
    loop {
        let cur = graphs.last().unwrap();
        let n = cur.num_vertices();
        if n <= cfg.coarsen_until || cur.num_edges() == 0 {
            break;
        }
        let (coarse, map) = contract(cur, &heavy_edge_matching(cur, limit, rng));
        if coarse.num_vertices() as f64 > 0.9 * n as f64 {
            break;
        }
        graphs.push(coarse);
        maps.push(map);
    }
    Hierarchy { graphs, maps }
}

/// `mate[v]` is the partner of `v`, or `v` itself when unmatched.
pub(crate) fn heavy_edge_matching<R: Rng>(g: &CsrGraph, limit: i64, rng: &mut R) -> Vec<usize> {
    let n = g.num_vertices();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut mate = vec![usize::MAX; n];
    for &v in &order {
        if mate[v] != usize::MAX {
            continue;
        }
        let wv = g.vertex_weight(v);
        let mut best = v;
        let mut best_w = 0;
        // neighbors are sorted, so a strict comparison keeps the smallest id on ties
        for (&u, &w) in g.neighbors(v).iter().zip(g.edge_weights(v)) {
            if mate[u] == usize::MAX && w > best_w && wv + g.vertex_weight(u) <= limit {
                best = u;
                best_w = w;
            }
        }
        mate[v] = best;
        mate[best] = v;
    }
    mate
}

fn contract(g: &CsrGraph, mate: &[usize]) -> (CsrGraph, Vec<usize>) {
    let n = g.num_vertices();
    let mut map = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for v in 0..n {
        if mate[v] >= v {
            map[v] = reps.len();
            map[mate[v]] = reps.len();
            reps.push(v);
        }
    }
    let cn = reps.len();
    let mut xadj = Vec::with_capacity(cn + 1);
    xadj.push(0);
    let mut adjncy = Vec::new();
    let mut adjwgt = Vec::new();
    let mut vwgt = Vec::with_capacity(cn);
    let mut slot = vec![usize::MAX; cn];
    let mut row: Vec<(usize, i64)> = Vec::new();
    for (c, &v) in reps.iter().enumerate() {
        row.clear();
        let members: &[usize] = if mate[v] == v { &[v][..] } else { &[v, mate[v]][..] };
        let mut w = 0;
        for &m in members {
            w += g.vertex_weight(m);
            for (&u, &ew) in g.neighbors(m).iter().zip(g.edge_weights(m)) {
                let cu = map[u];
                if cu == c {
                    continue;
                }
                if slot[cu] == usize::MAX {
                    slot[cu] = row.len();
                    row.push((cu, ew));
                } else {
                    row[slot[cu]].1 += ew;
                }
            }
        }
        for &(cu, _) in &row {
            slot[cu] = usize::MAX;
        }
        row.sort_unstable();
        adjncy.extend(row.iter().map(|&(u, _)| u));
        adjwgt.extend(row.iter().map(|&(_, w)| w));
        xadj.push(adjncy.len());
        vwgt.push(w);
    }
    (CsrGraph::from_csr_unchecked(xadj, adjncy, adjwgt, vwgt), map)
}
