//! Multilevel graph partitioning by vertex separator.
//!
//! [`find_separator`] splits a weighted graph into `(A, B, S)` with no edge
//! between `A` and `B`, minimizing the weight of `S` while keeping the
//! weights of `A` and `B` near a target ratio. The separator vertex `S`
//! weight is not part of the balance constraint.
//!
//! The pipeline is heavy-edge matching coarsening, breadth-first initial
//! separators on the coarsest graph, then projection back up with an FM-style
//! vertex separator refinement at every level.

mod coarsen;
mod graph;
mod initial;
mod refine;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

pub use coarsen::{coarsen, Hierarchy};
pub use graph::CsrGraph;
pub use initial::initial_separator;
pub use refine::{rebalance, refine};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    A,
    B,
    S,
}

impl Side {
    fn index(self) -> usize {
        match self {
            Side::A => 0,
            Side::B => 1,
            Side::S => 2,
        }
    }

    /// The part opposite to `A` or `B`.
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
            Side::S => Side::S,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separator {
    side_of: Vec<Side>,
    weights: [i64; 3],
}

impl Separator {
    pub fn from_sides(g: &CsrGraph, side_of: Vec<Side>) -> Self {
        assert_eq!(side_of.len(), g.num_vertices());
        let mut weights = [0i64; 3];
        for (v, s) in side_of.iter().enumerate() {
            weights[s.index()] += g.vertex_weight(v);
        }
        Separator { side_of, weights }
    }

    /// Everything on side `A`.
    pub fn all_a(g: &CsrGraph) -> Self {
        Self::from_sides(g, vec![Side::A; g.num_vertices()])
    }

    pub fn side(&self, v: usize) -> Side {
        self.side_of[v]
    }

    pub fn sides(&self) -> &[Side] {
        &self.side_of
    }

    pub fn weight(&self, side: Side) -> i64 {
        self.weights[side.index()]
    }

    pub fn weight_a(&self) -> i64 {
        self.weights[0]
    }

    pub fn weight_b(&self) -> i64 {
        self.weights[1]
    }

    pub fn weight_s(&self) -> i64 {
        self.weights[2]
    }

    pub fn len(&self) -> usize {
        self.side_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.side_of.is_empty()
    }

    pub fn vertices_on(&self, side: Side) -> Vec<usize> {
        (0..self.side_of.len())
            .filter(|&v| self.side_of[v] == side)
            .collect()
    }

    pub(crate) fn set(&mut self, g: &CsrGraph, v: usize, side: Side) {
        let w = g.vertex_weight(v);
        self.weights[self.side_of[v].index()] -= w;
        self.weights[side.index()] += w;
        self.side_of[v] = side;
    }

    /// First edge joining `A` to `B`, if any.
    pub fn violating_edge(&self, g: &CsrGraph) -> Option<(usize, usize)> {
        g.edges().find(|&(u, v)| {
            let (su, sv) = (self.side_of[u], self.side_of[v]);
            su != Side::S && sv != Side::S && su != sv
        })
    }

    /// Full check: separation property and recorded weights.
    pub fn check(&self, g: &CsrGraph) -> Result<()> {
        if self.side_of.len() != g.num_vertices() {
            return Err(Error::InvalidGraph(format!(
                "separator covers {} vertices, graph has {}",
                self.side_of.len(),
                g.num_vertices()
            )));
        }
        if let Some((u, v)) = self.violating_edge(g) {
            return Err(Error::InvalidSeparator { u, v });
        }
        let fresh = Separator::from_sides(g, self.side_of.clone());
        if fresh.weights != self.weights {
            return Err(Error::InvalidGraph(format!(
                "recorded side weights {:?} differ from recount {:?}",
                self.weights, fresh.weights
            )));
        }
        Ok(())
    }
}

/// Balance test on the `A`/`B` weights; the separator does not count.
///
/// With `T = w_A + w_B`, side `A` may weigh at most
/// `max((1 + epsilon) * ratio * T, ratio * T + granularity)` and side `B`
/// likewise with `1 - ratio`, where `granularity` is the largest vertex
/// weight of the graph. The second term only binds when the relative
/// allowance is smaller than one vertex.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Balance {
    pub target_ratio: f64,
    pub epsilon: f64,
    pub granularity: i64,
}

impl Balance {
    pub fn new(g: &CsrGraph, target_ratio: f64, epsilon: f64) -> Self {
        Balance {
            target_ratio,
            epsilon,
            granularity: g.max_vertex_weight(),
        }
    }

    pub fn for_config(g: &CsrGraph, cfg: &GpvsConfig) -> Self {
        Self::new(g, cfg.target_ratio, cfg.epsilon)
    }

    /// Largest balanced weight of side `A` and of side `B` when the two
    /// sides hold `wa + wb` in total.
    pub fn caps(&self, wa: i64, wb: i64) -> (f64, f64) {
        let t = (wa + wb) as f64;
        let f = 1.0 + self.epsilon;
        let g = self.granularity as f64;
        let cap = |share: f64| (f * share * t).max(share * t + g);
        (cap(self.target_ratio), cap(1.0 - self.target_ratio))
    }

    /// How far either side exceeds its cap; 0 when balanced.
    pub fn violation(&self, wa: i64, wb: i64) -> f64 {
        let (ca, cb) = self.caps(wa, wb);
        (wa as f64 - ca).max(wb as f64 - cb).max(0.0)
    }

    pub fn is_balanced(&self, wa: i64, wb: i64) -> bool {
        self.violation(wa, wb) <= 0.0
    }

    /// Distance of `w_A` from its exact target share; used to break ties.
    pub fn deviation(&self, wa: i64, wb: i64) -> f64 {
        (wa as f64 - self.target_ratio * (wa + wb) as f64).abs()
    }

    pub fn separator_is_balanced(&self, sep: &Separator) -> bool {
        self.is_balanced(sep.weight_a(), sep.weight_b())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GpvsConfig {
    pub epsilon: f64,
    /// Stop coarsening at or below this many vertices.
    pub coarsen_until: usize,
    pub num_initial_tries: usize,
    pub max_refine_passes: usize,
    pub rng_seed: u64,
    /// Desired `w_A / (w_A + w_B)`.
    pub target_ratio: f64,
}

impl Default for GpvsConfig {
    fn default() -> Self {
        GpvsConfig {
            epsilon: 0.10,
            coarsen_until: 100,
            num_initial_tries: 4,
            max_refine_passes: 10,
            rng_seed: 0,
            target_ratio: 0.5,
        }
    }
}

impl GpvsConfig {
    pub(crate) fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.rng_seed)
    }
}

/// Runs the full multilevel pipeline. The result always satisfies the
/// separation property; it is balanced whenever the search reaches a
/// balanced state.
pub fn find_separator(g: &CsrGraph, cfg: &GpvsConfig) -> Separator {
    if g.num_vertices() == 0 {
        return Separator::from_sides(g, Vec::new());
    }
    let mut rng = cfg.rng();
    let hierarchy = coarsen::coarsen_with(g, cfg, &mut rng);
    let coarsest = hierarchy.coarsest();

    let mut best: Option<(Separator, bool)> = None;
    for cand in initial::candidates(coarsest, cfg, &mut rng) {
        let cand = improve(coarsest, cand, cfg);
        let bal = Balance::for_config(coarsest, cfg);
        let balanced = bal.separator_is_balanced(&cand);
        let better = match &best {
            None => true,
            Some((b, b_bal)) => {
                (balanced && !b_bal)
                    || (balanced == *b_bal && cand.weight_s() < b.weight_s())
                    || (!balanced
                        && !b_bal
                        && cand.weight_s() == b.weight_s()
                        && bal.violation(cand.weight_a(), cand.weight_b())
                            < bal.violation(b.weight_a(), b.weight_b()))
            }
        };
        if better {
            best = Some((cand, balanced));
        }
    }
    let mut sep = best.expect("at least one initial try").0;

    for level in (0..hierarchy.num_levels() - 1).rev() {
        let fine = hierarchy.graph(level);
        let map = hierarchy.map(level);
        let sides: Vec<Side> = map.iter().map(|&c| sep.side(c)).collect();
        sep = Separator::from_sides(fine, sides);
        sep = improve(fine, sep, cfg);
    }
    debug_assert!(sep.check(g).is_ok());
    sep
}

fn improve(g: &CsrGraph, sep: Separator, cfg: &GpvsConfig) -> Separator {
    let sep = refine(g, sep, cfg).expect("engine separators keep the separation property");
    let bal = Balance::for_config(g, cfg);
    if bal.separator_is_balanced(&sep) {
        return sep;
    }
    let sep = rebalance(g, sep, cfg);
    refine(g, sep, cfg).expect("engine separators keep the separation property")
}
