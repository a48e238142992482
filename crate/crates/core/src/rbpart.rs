//! K-way hypergraph partitioning by recursive bisection of the net
//! intersection graph.
//!
//! Each bisection step runs [`find_separator`] on the step's NIG subgraph.
//! Separator vertices (nets) are then either dropped from both halves
//! ([`Metric::Cutnet`], separator-vertex removal) or copied into both halves
//! ([`Metric::Connectivity`], separator-vertex splitting, each copy keeping
//! its neighbors inside that half). The leaves give every net a set of parts;
//! because every hypergraph vertex forms a clique over its nets, its
//! non-separator nets always fall on one side, which pins the vertex to a
//! single part. Vertices left without a part are placed on the lightest
//! admissible part, and an optional pass then moves boundary vertices off
//! the heaviest parts without raising either cutsize.

use std::ops::Range;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gpvs::{find_separator, Balance, CsrGraph, GpvsConfig, Side};
use crate::hgraph::{evaluate, CutReport, Hypergraph, PartitionVector, UNASSIGNED};
use crate::nig::{assign_weights, build_nig_with, NigOptions, WeightScheme, DEFAULT_SCALE};

/// Maximum number of balance post-processing passes.
pub const MAX_POSTPROCESS_PASSES: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
pub enum Metric {
    /// Cost of every net spanning more than one part; separator nets are
    /// removed at each step.
    #[serde(rename = "cutnet")]
    #[value(name = "cutnet")]
    Cutnet,
    /// `sum c(n) * (lambda(n) - 1)`; separator nets are split into both
    /// halves at each step.
    #[serde(rename = "conn")]
    #[value(name = "conn")]
    Connectivity,
}

#[derive(Clone, Debug)]
pub struct RbConfig {
    pub k: usize,
    pub metric: Metric,
    /// Imbalance tolerance applied at every bisection step.
    pub epsilon: f64,
    pub scheme: WeightScheme,
    /// Fixed-point scale for [`WeightScheme::Shared`].
    pub scale: i64,
    pub postprocess: bool,
    /// Lets post-processing raise each cutsize by up to this fraction of its
    /// pre-pass value in exchange for balance. `None` forbids any increase.
    pub allow_cut_degrade: Option<f64>,
    pub rng_seed: u64,
    /// Engine settings; `epsilon`, `target_ratio` and `rng_seed` are
    /// overridden per step.
    pub gpvs: GpvsConfig,
    pub nig: NigOptions,
}

impl Default for RbConfig {
    fn default() -> Self {
        RbConfig {
            k: 2,
            metric: Metric::Connectivity,
            epsilon: 0.10,
            scheme: WeightScheme::Shared,
            scale: DEFAULT_SCALE,
            postprocess: true,
            allow_cut_degrade: None,
            rng_seed: 0,
            gpvs: GpvsConfig::default(),
            nig: NigOptions::default(),
        }
    }
}

impl RbConfig {
    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::Config("k must be at least 1".into()));
        }
        if !self.epsilon.is_finite() || self.epsilon < 0.0 {
            return Err(Error::Config(format!("epsilon must be >= 0, got {}", self.epsilon)));
        }
        if self.scale < 1 {
            return Err(Error::Config(format!("scale must be >= 1, got {}", self.scale)));
        }
        if let Some(d) = self.allow_cut_degrade {
            if !d.is_finite() || d < 0.0 {
                return Err(Error::Config(format!(
                    "cut degrade limit must be >= 0, got {}",
                    d
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum RbNodeKind {
    Leaf { part: usize },
    /// Heap-numbered ids of the two children.
    Split { a: u64, b: u64 },
}

/// One bisection step. Ids are heap-numbered: the root is 1 and the
/// children of `id` are `2 * id` and `2 * id + 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RbNode {
    pub id: u64,
    pub depth: usize,
    pub first_part: usize,
    pub num_parts: usize,
    /// Original net ids of this step's NIG vertices (split copies carry
    /// the id of the net they copy).
    pub nets: Vec<usize>,
    pub separator: Vec<usize>,
    pub separator_cost: i64,
    pub weight_a: i64,
    pub weight_b: i64,
    pub weight_s: i64,
    /// Whether the step met its balance constraint.
    pub balanced: bool,
    pub kind: RbNodeKind,
}

impl RbNode {
    pub fn parts(&self) -> Range<usize> {
        self.first_part..self.first_part + self.num_parts
    }
}

/// Where each original net ended up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetAssignment {
    /// Sorted leaf parts reached by the net's copies. Empty for nets
    /// removed as separators.
    pub part_sets_of_net: Vec<Vec<usize>>,
    /// Part range of the step that removed the net, for removed nets.
    pub removed_at: Vec<Option<Range<usize>>>,
}

impl NetAssignment {
    /// Number of leaf parts the net's copies reached.
    pub fn lambda_hat(&self, net: usize) -> usize {
        self.part_sets_of_net[net].len()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct PhaseTimings {
    pub nig_build_ms: f64,
    pub rb_ms: f64,
    pub assign_ms: f64,
    pub postprocess_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RbNodeStats {
    pub id: u64,
    pub depth: usize,
    pub num_parts: usize,
    pub num_nets: usize,
    pub weight_a: i64,
    pub weight_b: i64,
    pub weight_s: i64,
    pub separator_cost: i64,
    pub balanced: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RbStats {
    pub nig_vertices: usize,
    pub nig_edges: usize,
    pub total_separator_cost: i64,
    pub unbalanced_steps: usize,
    pub stranded_vertices: usize,
    pub postprocess_moves: usize,
    pub nodes: Vec<RbNodeStats>,
    #[serde(skip)]
    pub timings: PhaseTimings,
}

#[derive(Clone, Debug)]
pub struct RbResult {
    pub partition: PartitionVector,
    pub report: CutReport,
    pub stats: RbStats,
    /// Steps in preorder.
    pub tree: Vec<RbNode>,
    pub nets: NetAssignment,
}

fn ms_since(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

/// Partitions `h` into `cfg.k` parts.
pub fn partition(h: &Hypergraph, cfg: &RbConfig) -> Result<RbResult> {
    cfg.validate()?;
    let mut timings = PhaseTimings::default();

    let t = Instant::now();
    let nig = build_nig_with(h, &cfg.nig)?;
    let nig = assign_weights(&nig, h, cfg.scheme, cfg.scale)?;
    timings.nig_build_ms = ms_since(t);

    let t = Instant::now();
    let origin: Vec<usize> = (0..nig.num_vertices()).map(|i| nig.origin_net(i)).collect();
    let free_vertices = nig.free_vertices().to_vec();
    let (nig_vertices, nig_edges) = (nig.num_vertices(), nig.num_edges());
    let mut out = Subtree::default();
    let ctx = Ctx { h, cfg };
    ctx.bisect(nig.into_graph(), origin, 1, 0, 0, cfg.k, &mut out);
    timings.rb_ms = ms_since(t);

    let t = Instant::now();
    let nets = out.net_assignment(h.num_nets());
    let (mut pv, stranded) = assign_vertices_counted(h, &nets, &free_vertices, cfg)?;
    timings.assign_ms = ms_since(t);

    let t = Instant::now();
    let mut moves = 0;
    if cfg.postprocess && cfg.k > 1 {
        // under the cutnet metric, nets kept whole by the bisection stay uncut
        let protected: Option<Vec<bool>> = (cfg.metric == Metric::Cutnet)
            .then(|| nets.removed_at.iter().map(Option::is_none).collect());
        let (p, m) = postprocess_counted(h, pv, cfg, protected.as_deref())?;
        pv = p;
        moves = m;
    }
    timings.postprocess_ms = ms_since(t);

    let report = evaluate(h, &pv)?;
    let tree = out.nodes;
    let stats = RbStats {
        nig_vertices,
        nig_edges,
        total_separator_cost: tree.iter().map(|n| n.separator_cost).sum(),
        unbalanced_steps: tree.iter().filter(|n| !n.balanced).count(),
        stranded_vertices: stranded,
        postprocess_moves: moves,
        nodes: tree
            .iter()
            .filter(|n| matches!(n.kind, RbNodeKind::Split { .. }))
            .map(|n| RbNodeStats {
                id: n.id,
                depth: n.depth,
                num_parts: n.num_parts,
                num_nets: n.nets.len(),
                weight_a: n.weight_a,
                weight_b: n.weight_b,
                weight_s: n.weight_s,
                separator_cost: n.separator_cost,
                balanced: n.balanced,
            })
            .collect(),
        timings,
    };
    Ok(RbResult {
        partition: pv,
        report,
        stats,
        tree,
        nets,
    })
}

#[derive(Default)]
struct Subtree {
    nodes: Vec<RbNode>,
    /// `(net, part)` for every net copy that reached a leaf.
    placements: Vec<(usize, usize)>,
    /// `(net, parts of the removing step)`.
    removed: Vec<(usize, Range<usize>)>,
}

impl Subtree {
    fn append(&mut self, mut other: Subtree) {
        self.nodes.append(&mut other.nodes);
        self.placements.append(&mut other.placements);
        self.removed.append(&mut other.removed);
    }

    fn net_assignment(&self, num_nets: usize) -> NetAssignment {
        let mut part_sets_of_net = vec![Vec::new(); num_nets];
        for &(net, part) in &self.placements {
            part_sets_of_net[net].push(part);
        }
        for s in part_sets_of_net.iter_mut() {
            s.sort_unstable();
            s.dedup();
        }
        let mut removed_at = vec![None; num_nets];
        for (net, range) in &self.removed {
            removed_at[*net] = Some(range.clone());
        }
        NetAssignment {
            part_sets_of_net,
            removed_at,
        }
    }
}

struct Ctx<'a> {
    h: &'a Hypergraph,
    cfg: &'a RbConfig,
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Per-step seed; depends only on the run seed and the step id.
fn step_seed(seed: u64, id: u64) -> u64 {
    splitmix64(seed ^ splitmix64(id))
}

impl Ctx<'_> {
    #[allow(clippy::too_many_arguments)]
    fn bisect(
        &self,
        graph: CsrGraph,
        origin: Vec<usize>,
        id: u64,
        depth: usize,
        first_part: usize,
        num_parts: usize,
        out: &mut Subtree,
    ) {
        if num_parts == 1 {
            out.placements
                .extend(origin.iter().map(|&net| (net, first_part)));
            out.nodes.push(RbNode {
                id,
                depth,
                first_part,
                num_parts,
                nets: origin,
                separator: Vec::new(),
                separator_cost: 0,
                weight_a: graph.total_weight(),
                weight_b: 0,
                weight_s: 0,
                balanced: true,
                kind: RbNodeKind::Leaf { part: first_part },
            });
            return;
        }

        let parts_a = num_parts.div_ceil(2);
        let parts_b = num_parts - parts_a;
        let gcfg = GpvsConfig {
            epsilon: self.cfg.epsilon,
            target_ratio: parts_a as f64 / num_parts as f64,
            rng_seed: step_seed(self.cfg.rng_seed, id),
            ..self.cfg.gpvs.clone()
        };
        let sep = find_separator(&graph, &gcfg);
        let balanced = Balance::for_config(&graph, &gcfg).separator_is_balanced(&sep);
        if !balanced {
            log::debug!(
                "step {} unbalanced: A={} B={} S={}",
                id,
                sep.weight_a(),
                sep.weight_b(),
                sep.weight_s()
            );
        }

        let side_a = sep.vertices_on(Side::A);
        let side_b = sep.vertices_on(Side::B);
        let side_s = sep.vertices_on(Side::S);
        let separator: Vec<usize> = side_s.iter().map(|&v| origin[v]).collect();
        let separator_cost = separator.iter().map(|&n| self.h.net_cost(n)).sum();

        let (keep_a, keep_b) = match self.cfg.metric {
            Metric::Cutnet => {
                let range = first_part..first_part + num_parts;
                out.removed
                    .extend(separator.iter().map(|&n| (n, range.clone())));
                (side_a, side_b)
            }
            Metric::Connectivity => (merge_sorted(&side_a, &side_s), merge_sorted(&side_b, &side_s)),
        };
        let origin_a: Vec<usize> = keep_a.iter().map(|&v| origin[v]).collect();
        let origin_b: Vec<usize> = keep_b.iter().map(|&v| origin[v]).collect();
        let graph_a = graph.induced_subgraph(&keep_a);
        let graph_b = graph.induced_subgraph(&keep_b);

        out.nodes.push(RbNode {
            id,
            depth,
            first_part,
            num_parts,
            nets: origin,
            separator,
            separator_cost,
            weight_a: sep.weight_a(),
            weight_b: sep.weight_b(),
            weight_s: sep.weight_s(),
            balanced,
            kind: RbNodeKind::Split {
                a: 2 * id,
                b: 2 * id + 1,
            },
        });
        drop(graph);

        let (left, right) = rayon::join(
            || {
                let mut sub = Subtree::default();
                self.bisect(graph_a, origin_a, 2 * id, depth + 1, first_part, parts_a, &mut sub);
                sub
            },
            || {
                let mut sub = Subtree::default();
                self.bisect(
                    graph_b,
                    origin_b,
                    2 * id + 1,
                    depth + 1,
                    first_part + parts_a,
                    parts_b,
                    &mut sub,
                );
                sub
            },
        );
        out.append(left);
        out.append(right);
    }
}

fn merge_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut v = Vec::with_capacity(a.len() + b.len());
    v.extend_from_slice(a);
    v.extend_from_slice(b);
    v.sort_unstable();
    v
}

/// Parts a stranded vertex may go to.
enum Candidates {
    Range(Range<usize>),
    Set(Vec<usize>),
}

impl Candidates {
    fn lightest(&self, pv: &PartitionVector) -> usize {
        let w = pv.part_weights();
        let pick = |it: &mut dyn Iterator<Item = usize>| {
            it.min_by_key(|&p| (w[p], p)).expect("nonempty candidate set")
        };
        match self {
            Candidates::Range(r) => pick(&mut r.clone()),
            Candidates::Set(s) => pick(&mut s.iter().copied()),
        }
    }
}

/// Derives the hypergraph vertex partition from the net placements.
///
/// A vertex goes to the single part its non-separator nets reached
/// (cutnet) or to the intersection of its nets' part sets (connectivity).
/// Vertices without a forced part are placed heaviest first on the
/// currently lightest admissible part: the part range of the step that
/// removed their last net, the intersection set, or all parts for vertices
/// without nets. `free_vertices` are vertices that took no part in NIG
/// construction; they go to the lightest part their nets reached.
pub fn assign_vertices(
    h: &Hypergraph,
    nets: &NetAssignment,
    free_vertices: &[usize],
    cfg: &RbConfig,
) -> Result<PartitionVector> {
    assign_vertices_counted(h, nets, free_vertices, cfg).map(|(pv, _)| pv)
}

fn assign_vertices_counted(
    h: &Hypergraph,
    nets: &NetAssignment,
    free_vertices: &[usize],
    cfg: &RbConfig,
) -> Result<(PartitionVector, usize)> {
    let k = cfg.k;
    let mut pv = PartitionVector::unassigned(h, k);
    let mut is_free = vec![false; h.num_vertices()];
    for &v in free_vertices {
        is_free[v] = true;
    }
    let mut stranded: Vec<(usize, Candidates)> = Vec::new();

    for v in 0..h.num_vertices() {
        let vnets = h.nets_of(v);
        if vnets.is_empty() {
            stranded.push((v, Candidates::Range(0..k)));
            continue;
        }
        if is_free[v] {
            let mut parts: Vec<usize> = vnets
                .iter()
                .flat_map(|&n| nets.part_sets_of_net[n].iter().copied())
                .collect();
            parts.sort_unstable();
            parts.dedup();
            let cands = if parts.is_empty() {
                deepest_removal(nets, vnets).unwrap_or(Candidates::Range(0..k))
            } else {
                Candidates::Set(parts)
            };
            stranded.push((v, cands));
            continue;
        }
        match cfg.metric {
            Metric::Cutnet => {
                let mut part = UNASSIGNED;
                for &n in vnets {
                    for &p in &nets.part_sets_of_net[n] {
                        if part == UNASSIGNED {
                            part = p;
                        } else if part != p {
                            return Err(Error::Consistency { vertex: v });
                        }
                    }
                }
                if part == UNASSIGNED {
                    let cands = deepest_removal(nets, vnets).unwrap_or(Candidates::Range(0..k));
                    stranded.push((v, cands));
                } else {
                    pv.assign(v, part, h.vertex_weight(v));
                }
            }
            Metric::Connectivity => {
                let mut common = nets.part_sets_of_net[vnets[0]].clone();
                for &n in &vnets[1..] {
                    let other = &nets.part_sets_of_net[n];
                    common.retain(|p| other.binary_search(p).is_ok());
                }
                match common.len() {
                    0 => return Err(Error::Consistency { vertex: v }),
                    1 => pv.assign(v, common[0], h.vertex_weight(v)),
                    _ => stranded.push((v, Candidates::Set(common))),
                }
            }
        }
    }

    let count = stranded.len();
    stranded.sort_by_key(|(v, _)| (std::cmp::Reverse(h.vertex_weight(*v)), *v));
    for (v, cands) in stranded {
        let p = cands.lightest(&pv);
        pv.assign(v, p, h.vertex_weight(v));
    }
    Ok((pv, count))
}

/// Smallest removal range among `vnets`; ranges of one vertex's removed
/// nets are nested along a single root-to-leaf path.
fn deepest_removal(nets: &NetAssignment, vnets: &[usize]) -> Option<Candidates> {
    vnets
        .iter()
        .filter_map(|&n| nets.removed_at[n].clone())
        .min_by_key(|r| (r.len(), r.start))
        .map(Candidates::Range)
}

/// Per-net pin counts per part.
struct NetSpans {
    counts: Vec<Vec<(usize, usize)>>,
}

impl NetSpans {
    fn new(h: &Hypergraph, pv: &PartitionVector) -> Self {
        let counts = (0..h.num_nets())
            .map(|n| {
                let mut c: Vec<(usize, usize)> = Vec::new();
                for &v in h.pins(n) {
                    let p = pv.part_of(v);
                    match c.binary_search_by_key(&p, |&(q, _)| q) {
                        Ok(i) => c[i].1 += 1,
                        Err(i) => c.insert(i, (p, 1)),
                    }
                }
                c
            })
            .collect();
        NetSpans { counts }
    }

    fn count(&self, net: usize, part: usize) -> usize {
        let c = &self.counts[net];
        c.binary_search_by_key(&part, |&(q, _)| q)
            .map(|i| c[i].1)
            .unwrap_or(0)
    }

    fn lambda(&self, net: usize) -> usize {
        self.counts[net].len()
    }

    fn move_pin(&mut self, net: usize, from: usize, to: usize) {
        let c = &mut self.counts[net];
        let i = c.binary_search_by_key(&from, |&(q, _)| q).expect("pin present");
        c[i].1 -= 1;
        if c[i].1 == 0 {
            c.remove(i);
        }
        match c.binary_search_by_key(&to, |&(q, _)| q) {
            Ok(i) => c[i].1 += 1,
            Err(i) => c.insert(i, (to, 1)),
        }
    }

    /// `(delta cutnet, delta connectivity-1)` of moving `v` from `from` to `to`.
    fn delta(&self, h: &Hypergraph, v: usize, from: usize, to: usize) -> (i64, i64) {
        let mut d_cut = 0;
        let mut d_conn = 0;
        for &n in h.nets_of(v) {
            let lambda = self.lambda(n) as i64;
            let after = lambda - (self.count(n, from) == 1) as i64 + (self.count(n, to) == 0) as i64;
            let c = h.net_cost(n);
            d_conn += c * (after - lambda);
            d_cut += c * ((after > 1) as i64 - (lambda > 1) as i64);
        }
        (d_cut, d_conn)
    }
}

/// Greedy balance repair. Each pass visits boundary vertices (at least one
/// cut net, or no nets at all) by decreasing weight and moves a vertex off a
/// heaviest part onto the lightest part already reached by one of its nets,
/// when that part stays strictly lighter than the source was and neither
/// cutsize grows. With `allow_cut_degrade = Some(f)` any part is
/// eligible as long as each cutsize grows by at most `f` times its value
/// before the pass.
pub fn postprocess_balance(
    h: &Hypergraph,
    pv: PartitionVector,
    cfg: &RbConfig,
) -> Result<PartitionVector> {
    postprocess_counted(h, pv, cfg, None).map(|(pv, _)| pv)
}

/// `protected` marks nets that no move may cut.
fn postprocess_counted(
    h: &Hypergraph,
    mut pv: PartitionVector,
    cfg: &RbConfig,
    protected: Option<&[bool]>,
) -> Result<(PartitionVector, usize)> {
    if let Some(v) = pv.first_unassigned() {
        return Err(Error::IncompletePartition { vertex: v });
    }
    let k = pv.k();
    let mut spans = NetSpans::new(h, &pv);
    let (mut cut_budget, mut conn_budget) = match cfg.allow_cut_degrade {
        None => (0, 0),
        Some(f) => {
            let r = evaluate(h, &pv)?;
            (
                (f * r.cutnet_cost as f64).floor() as i64,
                (f * r.connectivity_minus1_cost as f64).floor() as i64,
            )
        }
    };
    let mut moves = 0;

    for _ in 0..MAX_POSTPROCESS_PASSES {
        let mut boundary: Vec<usize> = (0..h.num_vertices())
            .filter(|&v| {
                h.vertex_weight(v) > 0
                    && (h.degree(v) == 0 || h.nets_of(v).iter().any(|&n| spans.lambda(n) > 1))
            })
            .collect();
        boundary.sort_by_key(|&v| (std::cmp::Reverse(h.vertex_weight(v)), v));

        let mut moved_this_pass = 0;
        for v in boundary {
            let from = pv.part_of(v);
            let w = h.vertex_weight(v);
            let weights = pv.part_weights();
            if weights[from] != pv.max_part_weight() {
                continue;
            }
            let mut options: Vec<usize> = (0..k)
                .filter(|&q| q != from && weights[q] + w < weights[from])
                .collect();
            options.sort_by_key(|&q| (weights[q], q));

            let cuts_protected = protected.is_some_and(|p| {
                h.nets_of(v)
                    .iter()
                    .any(|&n| p[n] && h.net_size(n) > 1 && spans.lambda(n) == 1)
            });
            if cuts_protected {
                continue;
            }
            let target = options.into_iter().find_map(|q| {
                let (d_cut, d_conn) = spans.delta(h, v, from, q);
                let adjacent = h.degree(v) == 0 || h.nets_of(v).iter().any(|&n| spans.count(n, q) > 0);
                let fits = if cfg.allow_cut_degrade.is_some() {
                    d_cut <= cut_budget && d_conn <= conn_budget
                } else {
                    adjacent && d_cut <= 0 && d_conn <= 0
                };
                fits.then_some((q, d_cut, d_conn))
            });
            if let Some((q, d_cut, d_conn)) = target {
                debug_assert!(cfg.allow_cut_degrade.is_some() || (d_cut <= 0 && d_conn <= 0));
                for &n in h.nets_of(v) {
                    spans.move_pin(n, from, q);
                }
                pv.assign(v, q, w);
                cut_budget -= d_cut.max(0);
                conn_budget -= d_conn.max(0);
                moved_this_pass += 1;
            }
        }
        moves += moved_this_pass;
        if moved_this_pass == 0 {
            break;
        }
    }
    Ok((pv, moves))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h0() -> Hypergraph {
        Hypergraph::from_nets(4, &[vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap()
    }

    #[test]
    fn h0_bisection_both_metrics() {
        for metric in [Metric::Cutnet, Metric::Connectivity] {
            let cfg = RbConfig {
                k: 2,
                metric,
                ..Default::default()
            };
            let mut r = partition(&h0(), &cfg).unwrap();
            let root = &r.tree[0];
            assert_eq!(root.separator, vec![1]);
            r.partition.canonicalize();
            assert_eq!(r.partition.parts(), &[0, 0, 1, 1]);
            assert_eq!(r.report.cutnet_cost, 1);
            assert_eq!(r.report.connectivity_minus1_cost, 1);
        }
    }

    #[test]
    fn k1_is_trivial() {
        let cfg = RbConfig {
            k: 1,
            ..Default::default()
        };
        let r = partition(&h0(), &cfg).unwrap();
        assert_eq!(r.partition.parts(), &[0, 0, 0, 0]);
        assert_eq!(r.report.cutnet_cost, 0);
        assert_eq!(r.report.connectivity_minus1_cost, 0);
        assert_eq!(r.tree.len(), 1);
    }

    #[test]
    fn leaf_count_matches_k() {
        let h = Hypergraph::from_nets(
            8,
            &[vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 5], vec![5, 6], vec![6, 7]],
        )
        .unwrap();
        for k in 1..=7 {
            let cfg = RbConfig {
                k,
                ..Default::default()
            };
            let r = partition(&h, &cfg).unwrap();
            let leaves: Vec<usize> = r
                .tree
                .iter()
                .filter_map(|n| match n.kind {
                    RbNodeKind::Leaf { part } => Some(part),
                    _ => None,
                })
                .collect();
            assert_eq!(leaves, (0..k).collect::<Vec<_>>());
            assert!(r.partition.parts().iter().all(|&p| p < k));
        }
    }

    #[test]
    fn forced_assignment_h0() {
        let h = h0();
        let nets = NetAssignment {
            part_sets_of_net: vec![vec![0], vec![], vec![1]],
            removed_at: vec![None, Some(0..2), None],
        };
        let cfg = RbConfig {
            k: 2,
            metric: Metric::Cutnet,
            ..Default::default()
        };
        let pv = assign_vertices(&h, &nets, &[], &cfg).unwrap();
        assert_eq!(pv.parts(), &[0, 0, 1, 1]);
    }

    #[test]
    fn stranded_vertex_goes_to_lightest_part() {
        // v0 (w5) alone in n0 -> part 0; v1 (w3) alone in n1 -> part 1;
        // v2 only in the removed net n2.
        let h = Hypergraph::build(3, 3, &[(0, 0), (1, 1), (2, 2)], vec![5, 3, 1], vec![1; 3])
            .unwrap();
        let nets = NetAssignment {
            part_sets_of_net: vec![vec![0], vec![1], vec![]],
            removed_at: vec![None, None, Some(0..2)],
        };
        let cfg = RbConfig {
            k: 2,
            metric: Metric::Cutnet,
            ..Default::default()
        };
        let pv = assign_vertices(&h, &nets, &[], &cfg).unwrap();
        assert_eq!(pv.part_of(2), 1);
    }

    #[test]
    fn inconsistent_placement_detected() {
        let h = h0();
        let nets = NetAssignment {
            part_sets_of_net: vec![vec![0], vec![1], vec![1]],
            removed_at: vec![None; 3],
        };
        let cfg = RbConfig {
            k: 2,
            metric: Metric::Cutnet,
            ..Default::default()
        };
        assert!(matches!(
            assign_vertices(&h, &nets, &[], &cfg),
            Err(Error::Consistency { vertex: 1 })
        ));
    }

    #[test]
    fn postprocess_h0() {
        let h = h0();
        let pv = PartitionVector::from_parts(&h, 2, vec![0, 0, 0, 1]).unwrap();
        let out = postprocess_balance(&h, pv, &RbConfig::default()).unwrap();
        assert_eq!(out.parts(), &[0, 0, 1, 1]);
    }

    #[test]
    fn postprocess_keeps_balanced() {
        let h = h0();
        let pv = PartitionVector::from_parts(&h, 2, vec![0, 0, 1, 1]).unwrap();
        let out = postprocess_balance(&h, pv.clone(), &RbConfig::default()).unwrap();
        assert_eq!(out, pv);
    }

    #[test]
    fn degrade_budget_allows_costly_move() {
        // one heavy part, a 2-pin net whose move would cut it
        let h = Hypergraph::from_nets(4, &[vec![0, 1], vec![2, 3], vec![1, 2]]).unwrap();
        let pv = PartitionVector::from_parts(&h, 2, vec![0, 0, 0, 0]).unwrap();
        let strict = postprocess_balance(&h, pv.clone(), &RbConfig::default()).unwrap();
        // no cut nets: nothing is on the boundary
        assert_eq!(strict, pv);

        let pv = PartitionVector::from_parts(&h, 2, vec![0, 0, 0, 1]).unwrap();
        let before = evaluate(&h, &pv).unwrap();
        let cfg = RbConfig {
            allow_cut_degrade: Some(1.0),
            ..Default::default()
        };
        let out = postprocess_balance(&h, pv, &cfg).unwrap();
        let after = evaluate(&h, &out).unwrap();
        assert!(out.max_part_weight() < 3);
        assert!(after.cutnet_cost <= 2 * before.cutnet_cost);
    }

    #[test]
    fn seeds_depend_on_step_id() {
        assert_ne!(step_seed(7, 1), step_seed(7, 2));
        assert_eq!(step_seed(7, 3), step_seed(7, 3));
    }
}
