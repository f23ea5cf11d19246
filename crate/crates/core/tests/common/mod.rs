//! Independent reference oracles used by the integration suites.
//!
//! Everything here recomputes results from first principles (exhaustive
//! enumeration over bitsets) and deliberately shares no code with the
//! solver paths it checks.

use std::collections::BTreeSet;

use planar_story::crossing::CrossingGraph;
use planar_story::rng::{rng_from_seed, SeededRng};
use rand::Rng;

/// Maximum minimum-frame size over all planar stories, by exhaustive
/// search over (initial independent set, insertion order) with a
/// cannot-improve cutoff. Intended for n <= 9.
pub fn naive_story_mu(x: &CrossingGraph) -> usize {
    let n = x.n();
    if n == 0 {
        return 0;
    }
    assert!(n <= 16, "the naive oracle is exponential");
    let nbr: Vec<u32> = (0..n)
        .map(|v| x.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect();
    let full: u32 = if n == 32 { !0 } else { (1 << n) - 1 };
    let mut best = 0usize;

    // Enumerate every nonempty independent set as the initial frame.
    for initial in 1..=full {
        if initial & full != initial {
            continue;
        }
        if !independent(&nbr, initial) {
            continue;
        }
        let start_min = initial.count_ones() as usize;
        if start_min <= best {
            continue;
        }
        extend(&nbr, full, 0, initial, start_min, &mut best);
    }
    best
}

fn independent(nbr: &[u32], set: u32) -> bool {
    let mut bits = set;
    while bits != 0 {
        let v = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        if nbr[v] & set != 0 {
            return false;
        }
    }
    true
}

fn extend(nbr: &[u32], full: u32, past: u32, current: u32, running_min: usize, best: &mut usize) {
    let future = full & !past & !current;
    if future == 0 {
        if running_min > *best {
            *best = running_min;
        }
        return;
    }
    // Extending can only lower the running minimum.
    if running_min <= *best {
        return;
    }
    let mut bits = future;
    while bits != 0 {
        let v = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let new_current = (current & !nbr[v]) | (1 << v);
        let new_past = past | (current & nbr[v]);
        let new_min = running_min.min(new_current.count_ones() as usize);
        extend(nbr, full, new_past, new_current, new_min, best);
    }
}

/// Pareto frontier of disjoint independent-set size pairs by enumerating
/// all 3^n colorings. Intended for n <= 12. Returned sorted by decreasing
/// first component.
pub fn brute_pareto_frontier(x: &CrossingGraph) -> Vec<(usize, usize)> {
    let n = x.n();
    assert!(n <= 14, "3^n oracle");
    let nbr: Vec<u32> = (0..n)
        .map(|v| x.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let total = 3usize.pow(n as u32);
    for mut code in 0..total {
        let mut reds = 0u32;
        let mut blues = 0u32;
        for v in 0..n {
            match code % 3 {
                1 => reds |= 1 << v,
                2 => blues |= 1 << v,
                _ => {}
            }
            code /= 3;
        }
        if independent(&nbr, reds) && independent(&nbr, blues) {
            pairs.push((reds.count_ones() as usize, blues.count_ones() as usize));
        }
    }
    // Quadratic dominance filter; slow but transparently correct.
    pairs.sort_unstable();
    pairs.dedup();
    let mut frontier: Vec<(usize, usize)> = pairs
        .iter()
        .copied()
        .filter(|&(a, b)| {
            !pairs
                .iter()
                .any(|&(a2, b2)| (a2, b2) != (a, b) && a2 >= a && b2 >= b)
        })
        .collect();
    frontier.sort_unstable_by(|l, r| r.0.cmp(&l.0).then(l.1.cmp(&r.1)));
    frontier
}

/// max over the brute-force frontier of min(alpha, beta).
pub fn brute_max_pair_min(x: &CrossingGraph) -> usize {
    brute_pareto_frontier(x)
        .iter()
        .map(|&(a, b)| a.min(b))
        .max()
        .unwrap_or(0)
}

/// Does the graph contain two disjoint independent sets of size >= t each?
/// Branch and bound over u64 bitsets; works for n <= 64.
pub fn has_disjoint_pair_of_size(x: &CrossingGraph, t: usize) -> bool {
    let n = x.n();
    assert!(n <= 64);
    if t == 0 {
        return true;
    }
    let nbr: Vec<u64> = x.neighbor_masks().expect("n <= 64");
    let full: u64 = if n == 64 { !0 } else { (1u64 << n) - 1 };

    // Enumerate independent sets of size >= t; for each, ask whether the
    // complement still holds an independent set of size >= t.
    fn first_sets(
        nbr: &[u64],
        n: usize,
        idx: usize,
        chosen: u64,
        count: usize,
        t: usize,
        full: u64,
    ) -> bool {
        if count >= t {
            let rest = full & !chosen;
            if has_independent_subset(nbr, rest, t) {
                return true;
            }
            // Larger supersets only shrink the complement.
            return false;
        }
        if idx == n || count + (n - idx) < t {
            return false;
        }
        if chosen & nbr[idx] == 0
            && first_sets(nbr, n, idx + 1, chosen | (1 << idx), count + 1, t, full)
        {
            return true;
        }
        first_sets(nbr, n, idx + 1, chosen, count, t, full)
    }

    first_sets(&nbr, n, 0, 0, 0, t, full)
}

/// Decision form: does `allowed` contain an independent set of size >= t?
pub fn has_independent_subset(nbr: &[u64], allowed: u64, t: usize) -> bool {
    fn rec(nbr: &[u64], cands: u64, count: usize, t: usize) -> bool {
        if count >= t {
            return true;
        }
        if count + (cands.count_ones() as usize) < t {
            return false;
        }
        let v = cands.trailing_zeros() as usize;
        if rec(nbr, cands & !nbr[v] & !(1u64 << v), count + 1, t) {
            return true;
        }
        rec(nbr, cands & !(1u64 << v), count, t)
    }
    if t == 0 {
        return true;
    }
    if (allowed.count_ones() as usize) < t {
        return false;
    }
    rec(nbr, allowed, 0, t)
}

/// Random simple graph on n vertices with m edges (uniform pair draw).
pub fn random_graph(n: usize, m: usize, seed: u64) -> CrossingGraph {
    let mut rng = rng_from_seed(seed);
    random_graph_with_rng(n, m, &mut rng)
}

pub fn random_graph_with_rng(n: usize, m: usize, rng: &mut SeededRng) -> CrossingGraph {
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            pairs.push((u, v));
        }
    }
    let m = m.min(pairs.len());
    for i in 0..m {
        let j = rng.gen_range(i..pairs.len());
        pairs.swap(i, j);
    }
    CrossingGraph::from_edges(n, &pairs[..m]).expect("distinct pairs")
}

/// Random disjoint union of paths (>= 2 vertices) and cycles (>= 3) with
/// n vertices total and no isolated vertex.
pub fn random_paths_and_cycles(n: usize, seed: u64) -> CrossingGraph {
    assert!(n >= 2);
    let mut rng = rng_from_seed(seed);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut next = 0usize;
    while next < n {
        let remaining = n - next;
        let is_cycle = remaining >= 3 && rng.gen_range(0..2) == 1;
        let min_len = if is_cycle { 3 } else { 2 };
        // Leave room so the remainder stays buildable (0 or >= 2).
        let mut len = rng.gen_range(min_len..=remaining.min(6).max(min_len));
        if remaining - len == 1 {
            len += 1;
        }
        let len = len.min(remaining);
        for i in 0..(len - 1) {
            edges.push((next + i, next + i + 1));
        }
        if is_cycle && len >= 3 {
            edges.push((next, next + len - 1));
        }
        next += len;
    }
    CrossingGraph::from_edges(n, &edges).expect("paths and cycles are simple")
}

/// Collects the union set of a story's frames for coverage checks.
pub fn union_of_frames(frames: &[BTreeSet<usize>]) -> BTreeSet<usize> {
    frames.iter().flatten().copied().collect()
}
