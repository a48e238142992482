//! FM-style vertex separator refinement.
//!
//! Moving a separator vertex `s` to side `X` pulls every neighbor of `s` on
//! the opposite side into the separator, so
//! `gain(s -> X) = w(s) - sum of w(u) over neighbors u of s on the other side`.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

use super::{Balance, CsrGraph, GpvsConfig, Separator, Side};

/// Lazily invalidated max-heap of candidate moves for one destination side.
struct MoveQueue {
    heap: BinaryHeap<(i64, Reverse<usize>, u32)>,
    stamp: Vec<u32>,
}

impl MoveQueue {
    fn new(n: usize) -> Self {
        MoveQueue {
            heap: BinaryHeap::new(),
            stamp: vec![0; n],
        }
    }

    fn push(&mut self, v: usize, gain: i64) {
        self.stamp[v] = self.stamp[v].wrapping_add(1);
        self.heap.push((gain, Reverse(v), self.stamp[v]));
    }

    fn remove(&mut self, v: usize) {
        self.stamp[v] = self.stamp[v].wrapping_add(1);
    }

    /// Best live entry as `(gain, vertex)`, dropping stale ones.
    fn peek(&mut self, live: impl Fn(usize) -> bool) -> Option<(i64, usize)> {
        while let Some(&(gain, Reverse(v), stamp)) = self.heap.peek() {
            if stamp == self.stamp[v] && live(v) {
                return Some((gain, v));
            }
            self.heap.pop();
        }
        None
    }

    fn clear(&mut self) {
        self.heap.clear();
    }
}

fn side_slot(side: Side) -> usize {
    match side {
        Side::A => 0,
        Side::B => 1,
        Side::S => unreachable!("separator is not a destination"),
    }
}

/// Weight of the neighbors of `v` that lie on `side`.
fn neighbor_weight(g: &CsrGraph, sep: &Separator, v: usize, side: Side) -> i64 {
    g.neighbors(v)
        .iter()
        .filter(|&&u| sep.side(u) == side)
        .map(|&u| g.vertex_weight(u))
        .sum()
}

/// Moves `v` to `to`, pulling its neighbors on the other side into the
/// separator. Returns the pulled vertices.
fn apply_move(g: &CsrGraph, sep: &mut Separator, v: usize, to: Side) -> Vec<usize> {
    let from_other = to.other();
    let pulled: Vec<usize> = g
        .neighbors(v)
        .iter()
        .copied()
        .filter(|&u| sep.side(u) == from_other)
        .collect();
    sep.set(g, v, to);
    for &u in &pulled {
        sep.set(g, u, Side::S);
    }
    pulled
}

/// Quality of a state during a pass; smaller is better.
#[derive(Clone, Copy, Debug)]
struct StateKey {
    unbalanced: bool,
    weight_s: i64,
    violation: f64,
    deviation: f64,
}

impl StateKey {
    fn of(sep: &Separator, bal: &Balance) -> Self {
        let violation = bal.violation(sep.weight_a(), sep.weight_b());
        StateKey {
            unbalanced: violation > 0.0,
            weight_s: sep.weight_s(),
            violation,
            deviation: bal.deviation(sep.weight_a(), sep.weight_b()),
        }
    }

    fn cmp(&self, other: &Self) -> Ordering {
        self.unbalanced
            .cmp(&other.unbalanced)
            .then(self.weight_s.cmp(&other.weight_s))
            .then(self.violation.total_cmp(&other.violation))
            .then(self.deviation.total_cmp(&other.deviation))
    }
}

/// Runs up to `max_refine_passes` FM passes over `sep`. The result never has a heavier
/// separator than the input and keeps the separation property.
pub fn refine(g: &CsrGraph, sep: Separator, cfg: &GpvsConfig) -> Result<Separator> {
    if let Some((u, v)) = sep.violating_edge(g) {
        return Err(Error::InvalidSeparator { u, v });
    }
    let bal = Balance::for_config(g, cfg);
    let mut sep = sep;
    let mut queues = [MoveQueue::new(g.num_vertices()), MoveQueue::new(g.num_vertices())];
    let mut locked = vec![false; g.num_vertices()];
    for _ in 0..cfg.max_refine_passes {
        if !fm_pass(g, &mut sep, &bal, &mut queues, &mut locked) {
            break;
        }
    }
    Ok(sep)
}

/// One FM pass with rollback to the best prefix. Returns whether the state
/// improved.
fn fm_pass(
    g: &CsrGraph,
    sep: &mut Separator,
    bal: &Balance,
    queues: &mut [MoveQueue; 2],
    locked: &mut [bool],
) -> bool {
    let n = g.num_vertices();
    let stall_limit = (n / 100).clamp(50, 500);
    let start_s = sep.weight_s();
    let mut best = StateKey::of(sep, bal);
    let mut best_len = 0usize;
    // (vertex, previous side) in move order
    let mut log: Vec<(usize, Side)> = Vec::new();
    let mut moved: Vec<usize> = Vec::new();
    let mut stall = 0usize;

    for q in queues.iter_mut() {
        q.clear();
    }
    for v in 0..n {
        if sep.side(v) == Side::S {
            push_gains(g, sep, v, queues);
        }
    }

    loop {
        let live = |v: usize| sep.side(v) == Side::S && !locked[v];
        let cand_a = queues[0].peek(live);
        let cand_b = queues[1].peek(live);
        let (v, to) = match (cand_a, cand_b) {
            (None, None) => break,
            (Some((_, v)), None) => (v, Side::A),
            (None, Some((_, v))) => (v, Side::B),
            (Some((ga, va)), Some((gb, vb))) => match ga.cmp(&gb) {
                Ordering::Greater => (va, Side::A),
                Ordering::Less => (vb, Side::B),
                Ordering::Equal => {
                    if sep.weight_a() <= sep.weight_b() {
                        (va, Side::A)
                    } else {
                        (vb, Side::B)
                    }
                }
            },
        };

        // balance check on the resulting state
        let w = g.vertex_weight(v);
        let pulled_w = neighbor_weight(g, sep, v, to.other());
        let (wa, wb) = match to {
            Side::A => (sep.weight_a() + w, sep.weight_b() - pulled_w),
            _ => (sep.weight_a() - pulled_w, sep.weight_b() + w),
        };
        let before = bal.violation(sep.weight_a(), sep.weight_b());
        let after = bal.violation(wa, wb);
        if after > 0.0 && after >= before {
            queues[side_slot(to)].remove(v);
            continue;
        }

        log.push((v, Side::S));
        let pulled = apply_move(g, sep, v, to);
        for &u in &pulled {
            log.push((u, to.other()));
        }
        locked[v] = true;
        moved.push(v);
        queues[0].remove(v);
        queues[1].remove(v);

        // refresh gains of separator vertices whose neighborhood changed
        for &x in g.neighbors(v).iter().chain(pulled.iter()) {
            if sep.side(x) == Side::S && !locked[x] {
                push_gains(g, sep, x, queues);
            }
        }
        for &u in &pulled {
            for &x in g.neighbors(u) {
                if sep.side(x) == Side::S && !locked[x] {
                    push_gains(g, sep, x, queues);
                }
            }
        }

        let key = StateKey::of(sep, bal);
        if key.weight_s <= start_s && key.cmp(&best) == Ordering::Less {
            best = key;
            best_len = log.len();
            stall = 0;
        } else {
            stall += 1;
            if stall > stall_limit {
                break;
            }
        }
    }

    for &(v, prev) in log[best_len..].iter().rev() {
        sep.set(g, v, prev);
    }
    for v in moved {
        locked[v] = false;
    }
    best_len > 0
}

fn push_gains(g: &CsrGraph, sep: &Separator, v: usize, queues: &mut [MoveQueue; 2]) {
    let w = g.vertex_weight(v);
    queues[0].push(v, w - neighbor_weight(g, sep, v, Side::B));
    queues[1].push(v, w - neighbor_weight(g, sep, v, Side::A));
}

/// Greedy repair of an unbalanced separator: moves separator vertices, or
/// vertices of the heavy side, onto the light side (pulling their heavy-side
/// neighbors into the separator) while each move lowers the balance
/// violation. Picks the cheapest such move each step. May grow the
/// separator.
pub fn rebalance(g: &CsrGraph, sep: Separator, cfg: &GpvsConfig) -> Separator {
    let bal = Balance::for_config(g, cfg);
    let mut sep = sep;
    let viol = |s: &Separator| bal.violation(s.weight_a(), s.weight_b());
    if viol(&sep) <= 0.0 {
        return sep;
    }
    let (cap_a, _) = bal.caps(sep.weight_a(), sep.weight_b());
    let cap_over_a = sep.weight_a() as f64 - cap_a;
    let heavy = if cap_over_a > 0.0 { Side::A } else { Side::B };
    let light = heavy.other();

    let n = g.num_vertices();
    let mut queue = MoveQueue::new(n);
    let mut locked = vec![false; n];
    let gain = |sep: &Separator, v: usize| -> i64 {
        let pulled = neighbor_weight(g, sep, v, heavy);
        if sep.side(v) == Side::S {
            g.vertex_weight(v) - pulled
        } else {
            -pulled
        }
    };
    for v in 0..n {
        if sep.side(v) != light {
            queue.push(v, gain(&sep, v));
        }
    }

    while viol(&sep) > 0.0 {
        let Some((_, v)) = queue.peek(|v| !locked[v] && sep.side(v) != light) else {
            break;
        };
        let w = g.vertex_weight(v);
        let pulled_w = neighbor_weight(g, &sep, v, heavy);
        let heavy_loss = if sep.side(v) == heavy { w + pulled_w } else { pulled_w };
        let (wa, wb) = match light {
            Side::A => (sep.weight_a() + w, sep.weight_b() - heavy_loss),
            _ => (sep.weight_a() - heavy_loss, sep.weight_b() + w),
        };
        if bal.violation(wa, wb) >= viol(&sep) {
            queue.remove(v);
            locked[v] = true;
            continue;
        }
        let pulled = apply_move(g, &mut sep, v, light);
        locked[v] = true;
        queue.remove(v);
        for &x in g.neighbors(v).iter().chain(pulled.iter()) {
            if !locked[x] && sep.side(x) != light {
                queue.push(x, gain(&sep, x));
            }
        }
        for &u in &pulled {
            for &x in g.neighbors(u) {
                if !locked[x] && sep.side(x) != light {
                    queue.push(x, gain(&sep, x));
                }
            }
        }
    }
    sep
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> CsrGraph {
        CsrGraph::unit(3, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn path_refines_to_middle() {
        let g = path3();
        let sep = Separator::from_sides(&g, vec![Side::S, Side::S, Side::B]);
        let out = refine(&g, sep, &GpvsConfig::default()).unwrap();
        assert_eq!(out.sides(), &[Side::A, Side::S, Side::B]);
    }

    #[test]
    fn optimal_is_kept() {
        let g = path3();
        let sep = Separator::from_sides(&g, vec![Side::A, Side::S, Side::B]);
        let out = refine(&g, sep, &GpvsConfig::default()).unwrap();
        assert_eq!(out.weight_s(), 1);
    }

    #[test]
    fn invalid_input_rejected() {
        let g = path3();
        let sep = Separator::from_sides(&g, vec![Side::A, Side::B, Side::B]);
        assert!(matches!(
            refine(&g, sep, &GpvsConfig::default()),
            Err(Error::InvalidSeparator { .. })
        ));
    }

    #[test]
    fn rebalance_fixes_lopsided_split() {
        let edges: Vec<(usize, usize)> = (0..9).map(|i| (i, i + 1)).collect();
        let g = CsrGraph::unit(10, &edges).unwrap();
        let mut sides = vec![Side::A; 10];
        sides[9] = Side::B;
        sides[8] = Side::S;
        let sep = Separator::from_sides(&g, sides);
        let cfg = GpvsConfig::default();
        let bal = Balance::for_config(&g, &cfg);
        assert!(!bal.separator_is_balanced(&sep));
        let out = rebalance(&g, sep, &cfg);
        out.check(&g).unwrap();
        assert!(bal.separator_is_balanced(&out));
    }
}
