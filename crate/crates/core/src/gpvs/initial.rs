use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::Rng;

use super::{Balance, CsrGraph, GpvsConfig, Separator, Side};

/// Best of `cfg.num_initial_tries` breadth-first separators: the lightest
/// balanced one, or the least imbalanced one if none is balanced.
pub fn initial_separator(g: &CsrGraph, cfg: &GpvsConfig) -> Separator {
    let bal = Balance::for_config(g, cfg);
    let cands = candidates(g, cfg, &mut cfg.rng());
    let key = |s: &Separator| {
        let viol = bal.violation(s.weight_a(), s.weight_b());
        (viol > 0.0, if viol > 0.0 { viol } else { 0.0 }, s.weight_s())
    };
    cands
        .into_iter()
        .min_by(|x, y| key(x).partial_cmp(&key(y)).expect("finite keys"))
        .expect("at least one try")
}

pub(crate) fn candidates<R: Rng>(g: &CsrGraph, cfg: &GpvsConfig, rng: &mut R) -> Vec<Separator> {
    if g.num_vertices() == 0 {
        return vec![Separator::from_sides(g, Vec::new())];
    }
    (0..cfg.num_initial_tries.max(1))
        .map(|_| {
            let sides = grow_region(g, cfg.target_ratio, rng);
            edge_cut_to_separator(g, sides, &Balance::for_config(g, cfg))
        })
        .collect()
}

/// Breadth-first growth of side `A` from a random vertex until it holds at
/// least `ratio` of the total weight. Exhausted components restart from a
/// random unvisited vertex.
fn grow_region<R: Rng>(g: &CsrGraph, ratio: f64, rng: &mut R) -> Vec<Side> {
    let n = g.num_vertices();
    let target = ratio * g.total_weight() as f64;
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut next_seed = order.into_iter();

    let mut sides = vec![Side::B; n];
    let mut queued = vec![false; n];
    let mut queue = VecDeque::new();
    let mut weight = 0i64;
    while (weight as f64) < target {
        let v = match queue.pop_front() {
            Some(v) => v,
            None => match next_seed.by_ref().find(|&v| !queued[v]) {
                Some(v) => {
                    queued[v] = true;
                    v
                }
                None => break,
            },
        };
        sides[v] = Side::A;
        weight += g.vertex_weight(v);
        for &u in g.neighbors(v) {
            if !queued[u] {
                queued[u] = true;
                queue.push_back(u);
            }
        }
    }
    sides
}

/// Covers every cut edge of an edge bisection by moving its lighter endpoint
/// (the `A` endpoint on ties) into the separator, then returns separator
/// vertices that touch only one side to that side when balance allows.
fn edge_cut_to_separator(g: &CsrGraph, sides: Vec<Side>, bal: &Balance) -> Separator {
    let mut sep = Separator::from_sides(g, sides);
    for u in 0..g.num_vertices() {
        for &v in g.neighbors(u) {
            let (su, sv) = (sep.side(u), sep.side(v));
            if su == Side::S || sv == Side::S || su == sv {
                continue;
            }
            let (a, b) = if su == Side::A { (u, v) } else { (v, u) };
            let pick = if g.vertex_weight(b) < g.vertex_weight(a) { b } else { a };
            sep.set(g, pick, Side::S);
            if pick == u {
                break;
            }
        }
    }

    for v in 0..g.num_vertices() {
        if sep.side(v) != Side::S {
            continue;
        }
        let touches = |side: Side| g.neighbors(v).iter().any(|&u| sep.side(u) == side);
        let (ta, tb) = (touches(Side::A), touches(Side::B));
        let w = g.vertex_weight(v);
        let mut options = Vec::new();
        if !tb {
            options.push((Side::A, sep.weight_a() + w, sep.weight_b()));
        }
        if !ta {
            options.push((Side::B, sep.weight_a(), sep.weight_b() + w));
        }
        // lighter destination first
        options.sort_by_key(|&(side, _, _)| (sep.weight(side), side == Side::B));
        let current = bal.violation(sep.weight_a(), sep.weight_b());
        if let Some(&(side, _, _)) = options
            .iter()
            .find(|&&(_, wa, wb)| bal.violation(wa, wb) <= current)
        {
            sep.set(g, v, side);
        }
    }
    sep
}
