//! Random and structured instance generators for tests, the `verify`
//! command and benchmarks.

use rand::seq::index::sample;
use rand::Rng;

use crate::gpvs::CsrGraph;
use crate::hgraph::Hypergraph;
use crate::ingest::SparseMatrixPattern;

/// Nets of 1..=`max_net_size` distinct random pins. With `weighted`, vertex
/// weights are drawn from 1..=5 and net costs from 1..=3.
pub fn random_hypergraph<R: Rng>(
    rng: &mut R,
    num_vertices: usize,
    num_nets: usize,
    max_net_size: usize,
    weighted: bool,
) -> Hypergraph {
    let mut pins = Vec::new();
    if num_vertices > 0 {
        for net in 0..num_nets {
            let size = rng.gen_range(1..=max_net_size.clamp(1, num_vertices));
            for v in sample(rng, num_vertices, size) {
                pins.push((net, v));
            }
        }
    }
    let (vw, nc) = if weighted {
        (
            (0..num_vertices).map(|_| rng.gen_range(1..=5)).collect(),
            (0..num_nets).map(|_| rng.gen_range(1..=3)).collect(),
        )
    } else {
        (vec![1; num_vertices], vec![1; num_nets])
    };
    Hypergraph::build(num_vertices, num_nets, &pins, vw, nc).expect("generated pins are in range")
}

/// Erdős–Rényi graph with unit weights.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, edge_prob: f64) -> CsrGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(edge_prob) {
                edges.push((u, v));
            }
        }
    }
    CsrGraph::unit(n, &edges).expect("generated edges are valid")
}

/// Random spanning tree plus independent extra edges; vertex weights in
/// 1..=`max_weight`.
pub fn random_connected_graph<R: Rng>(
    rng: &mut R,
    n: usize,
    extra_edge_prob: f64,
    max_weight: i64,
) -> CsrGraph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(extra_edge_prob) {
                edges.push((u, v));
            }
        }
    }
    let weights = (0..n).map(|_| rng.gen_range(1..=max_weight.max(1))).collect();
    CsrGraph::from_edges(n, &edges, weights).expect("generated edges are valid")
}

/// Each entry present independently with probability `density`.
pub fn random_pattern<R: Rng>(rng: &mut R, rows: usize, cols: usize, density: f64) -> SparseMatrixPattern {
    let mut entries = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            if rng.gen_bool(density) {
                entries.push((i, j));
            }
        }
    }
    SparseMatrixPattern::new(rows, cols, entries).expect("entries in range")
}

/// 5-point Laplacian stencil on an `nx` x `ny` grid.
pub fn laplacian_2d(nx: usize, ny: usize) -> SparseMatrixPattern {
    let id = |x: usize, y: usize| y * nx + x;
    let mut entries = Vec::new();
    for y in 0..ny {
        for x in 0..nx {
            let r = id(x, y);
            entries.push((r, r));
            if x > 0 {
                entries.push((r, id(x - 1, y)));
            }
            if x + 1 < nx {
                entries.push((r, id(x + 1, y)));
            }
            if y > 0 {
                entries.push((r, id(x, y - 1)));
            }
            if y + 1 < ny {
                entries.push((r, id(x, y + 1)));
            }
        }
    }
    SparseMatrixPattern::new(nx * ny, nx * ny, entries).expect("entries in range")
}

/// 7-point Laplacian stencil on an `n`^3 grid.
pub fn laplacian_3d(n: usize) -> SparseMatrixPattern {
    let id = |x: usize, y: usize, z: usize| (z * n + y) * n + x;
    let mut entries = Vec::new();
    for z in 0..n {
        for y in 0..n {
            for x in 0..n {
                let r = id(x, y, z);
                entries.push((r, r));
                let mut link = |c: usize| entries.push((r, c));
                if x > 0 {
                    link(id(x - 1, y, z));
                }
                if x + 1 < n {
                    link(id(x + 1, y, z));
                }
                if y > 0 {
                    link(id(x, y - 1, z));
                }
                if y + 1 < n {
                    link(id(x, y + 1, z));
                }
                if z > 0 {
                    link(id(x, y, z - 1));
                }
                if z + 1 < n {
                    link(id(x, y, z + 1));
                }
            }
        }
    }
    SparseMatrixPattern::new(n * n * n, n * n * n, entries).expect("entries in range")
}

/// Unsymmetric banded matrix: row `i` has entries in columns
/// `i - lower ..= i + upper`, each kept with probability `fill`, plus the
/// diagonal.
pub fn random_banded<R: Rng>(
    rng: &mut R,
    n: usize,
    lower: usize,
    upper: usize,
    fill: f64,
) -> SparseMatrixPattern {
    let mut entries = Vec::new();
    for i in 0..n {
        entries.push((i, i));
        let lo = i.saturating_sub(lower);
        let hi = (i + upper).min(n - 1);
        for j in lo..=hi {
            if j != i && rng.gen_bool(fill) {
                entries.push((i, j));
            }
        }
    }
    SparseMatrixPattern::new(n, n, entries).expect("entries in range")
}

/// Rectangular LP-style constraint matrix with `blocks` diagonal blocks of
/// `rows_per_block` x `cols_per_block`, each row holding `per_row` random
/// columns of its block, plus `linking_rows` rows touching random columns
/// anywhere.
pub fn random_block_angular<R: Rng>(
    rng: &mut R,
    blocks: usize,
    rows_per_block: usize,
    cols_per_block: usize,
    per_row: usize,
    linking_rows: usize,
) -> SparseMatrixPattern {
    let cols = blocks * cols_per_block;
    let rows = blocks * rows_per_block + linking_rows;
    let mut entries = Vec::new();
    for b in 0..blocks {
        for r in 0..rows_per_block {
            let row = b * rows_per_block + r;
            for c in sample(rng, cols_per_block, per_row.min(cols_per_block)) {
                entries.push((row, b * cols_per_block + c));
            }
        }
    }
    for l in 0..linking_rows {
        let row = blocks * rows_per_block + l;
        for c in sample(rng, cols, per_row.min(cols)) {
            entries.push((row, c));
        }
    }
    SparseMatrixPattern::new(rows, cols, entries).expect("entries in range")
}
