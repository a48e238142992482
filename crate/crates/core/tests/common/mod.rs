#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::Path;

use nigpart::gen;
use nigpart::hgraph::Hypergraph;
use nigpart::ingest::{read_matrix_market, write_matrix_market, SparseMatrixPattern};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn h0() -> Hypergraph {
    Hypergraph::from_nets(4, &[vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Cutnet and connectivity-1 recomputed from a plain part vector.
pub fn recount(h: &Hypergraph, parts: &[usize]) -> (i64, i64) {
    let mut cut = 0;
    let mut conn = 0;
    for n in 0..h.num_nets() {
        let span: BTreeSet<usize> = h.pins(n).iter().map(|&v| parts[v]).collect();
        if span.len() > 1 {
            cut += h.net_cost(n);
            conn += h.net_cost(n) * (span.len() as i64 - 1);
        }
    }
    (cut, conn)
}

/// Net pairs sharing a row of the pattern, via the product `A^T A`
/// computed column by column over a dense row membership.
pub fn ata_pairs(m: &SparseMatrixPattern) -> Vec<(usize, usize)> {
    let mut cols_of_row = vec![Vec::new(); m.rows];
    for &(i, j) in &m.entries {
        cols_of_row[i].push(j);
    }
    let mut set = BTreeSet::new();
    for a in 0..m.cols {
        for b in a + 1..m.cols {
            let hit = cols_of_row
                .iter()
                .any(|r| r.contains(&a) && r.contains(&b));
            if hit {
                set.insert((a, b));
            }
        }
    }
    set.into_iter().collect()
}

/// Five deterministic sparse matrices between 10^3 and 10^5 nonzeros,
/// written as Matrix Market files into `dir` and read back.
pub fn matrix_suite(dir: &Path) -> Vec<(String, SparseMatrixPattern)> {
    let mut r = rng(2024);
    let mats = vec![
        ("lap2d_60".to_string(), gen::laplacian_2d(60, 60)),
        ("lap3d_16".to_string(), gen::laplacian_3d(16)),
        ("banded_3000".to_string(), gen::random_banded(&mut r, 3000, 5, 8, 0.5)),
        (
            "blockang_8x250".to_string(),
            gen::random_block_angular(&mut r, 8, 250, 300, 6, 40),
        ),
        ("random_1500".to_string(), gen::random_pattern(&mut r, 1500, 1500, 0.003)),
    ];
    mats.into_iter()
        .map(|(name, m)| {
            let path = dir.join(format!("{}.mtx", name));
            write_matrix_market(&m, &path).unwrap();
            let back = read_matrix_market(&path).unwrap();
            assert_eq!(back, m);
            (name, back)
        })
        .collect()
}
