//! Exact solving: a memoized depth-first search over story states.
//!
//! A state is the pair of bitsets (past, current); the inserted vertex
//! moves from future to current and drags its crossed current vertices
//! into past, so the reachable continuations depend on the state alone.
//! The decision procedure for a target minimum frame size `m` enumerates
//! independent starting frames of size at least `m`, then searches
//! insertions that never let a frame drop below `m`, caching failed states.
//! The optimizer walks `m` downward from the Corollary-3 pair bound to the
//! best heuristic value; the first feasible target is optimal.

use std::collections::hash_map::Entry;
use std::collections::{BTreeSet, HashMap};
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::crossing::CrossingGraph;
use crate::greedy::{run_heuristic, GreedyConfig};
use crate::story::{pair_bound, simulate, PlanarStory};

/// Resource limits for an exact solve.
#[derive(Clone, Debug)]
pub struct ExactLimits {
    /// Hard cap on the instance size (bitset width allows up to 63).
    pub max_vertices: usize,
    pub time_budget: Duration,
    /// Byte budget for the failed-state memo; eviction keeps the search
    /// correct, only slower.
    pub memo_bytes: usize,
    /// Width cap used when computing the pair upper bound.
    pub width_cap: usize,
}

impl Default for ExactLimits {
    fn default() -> Self {
        ExactLimits {
            max_vertices: 22,
            time_budget: Duration::from_secs(60),
            memo_bytes: 64 << 20,
            width_cap: 12,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactStatus {
    Optimal,
    /// Budget ran out: the best story found so far and the smallest target
    /// not yet refuted (for the optimality-gap report).
    Timeout {
        best_known: usize,
        upper_bound: usize,
    },
    /// Instance exceeds `max_vertices`.
    TooLarge,
}

/// Outcome of [`exact_solve`].
#[derive(Clone, Debug)]
pub struct ExactResult {
    pub mu_star: usize,
    pub witness: Option<PlanarStory>,
    pub nodes_explored: u64,
    pub status: ExactStatus,
}

/// Outcome of [`exact_decision`].
#[derive(Clone, Debug)]
pub struct DecisionResult {
    pub feasible: bool,
    pub witness: Option<PlanarStory>,
    pub nodes_explored: u64,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("instance has {n} vertices, above the cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("time budget exceeded")]
    Timeout,
    #[error("forced initial frame is not an independent set")]
    ForcedInitialNotIndependent,
}

struct TimedOut;

/// Failed-state memo with a byte budget; when full, the least recently
/// touched half is dropped.
struct Memo {
    map: HashMap<(u64, u64), u64>,
    capacity: usize,
    clock: u64,
}

const MEMO_ENTRY_BYTES: usize = 48;

impl Memo {
    fn new(byte_budget: usize) -> Self {
        Memo {
            map: HashMap::new(),
            capacity: (byte_budget / MEMO_ENTRY_BYTES).max(1024),
            clock: 0,
        }
    }

    fn contains(&mut self, key: (u64, u64)) -> bool {
        self.clock += 1;
        match self.map.entry(key) {
            Entry::Occupied(mut e) => {
                *e.get_mut() = self.clock;
                true
            }
            Entry::Vacant(_) => false,
        }
    }

    fn insert(&mut self, key: (u64, u64)) {
        if self.map.len() >= self.capacity {
            let mut stamps: Vec<u64> = self.map.values().copied().collect();
            stamps.sort_unstable();
            let median = stamps[stamps.len() / 2];
            self.map.retain(|_, stamp| *stamp > median);
        }
        self.clock += 1;
        self.map.insert(key, self.clock);
    }
}

struct Search<'a> {
    x: &'a CrossingGraph,
    nbr: Vec<u64>,
    full: u64,
    m: usize,
    deadline: Instant,
    nodes: u64,
    memo: Memo,
}

impl<'a> Search<'a> {
    fn new(x: &'a CrossingGraph, m: usize, deadline: Instant, memo_bytes: usize) -> Self {
        let nbr = x.neighbor_masks().expect("instance size checked by caller");
        let n = x.n();
        Search {
            x,
            nbr,
            full: if n == 64 { !0 } else { (1u64 << n) - 1 },
            m,
            deadline,
            nodes: 0,
            memo: Memo::new(memo_bytes),
        }
    }

    fn tick(&mut self) -> Result<(), TimedOut> {
        self.nodes += 1;
        if self.nodes % 4096 == 0 && Instant::now() > self.deadline {
            return Err(TimedOut);
        }
        Ok(())
    }

    /// Is there an insertion sequence from (past, current) keeping every
    /// frame at size >= m? Fills `order` with the witness on success.
    fn dfs(&mut self, past: u64, cur: u64, order: &mut Vec<usize>) -> Result<bool, TimedOut> {
        self.tick()?;
        let future = self.full & !past & !cur;
        if future == 0 {
            return Ok(true);
        }
        if self.memo.contains((past, cur)) {
            return Ok(false);
        }

        // Try low-current-degree insertions first; they keep frames large.
        let mut candidates: Vec<(u32, usize)> = Vec::new();
        let mut bits = future;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            candidates.push(((cur & self.nbr[v]).count_ones(), v));
        }
        candidates.sort_unstable();

        for (_, v) in candidates {
            let new_cur = (cur & !self.nbr[v]) | (1u64 << v);
            if (new_cur.count_ones() as usize) < self.m {
                continue;
            }
            let new_past = past | (cur & self.nbr[v]);
            order.push(v);
            if self.dfs(new_past, new_cur, order)? {
                return Ok(true);
            }
            order.pop();
        }
        self.memo.insert((past, cur));
        Ok(false)
    }

    /// Enumerates independent sets of size >= m over vertices idx.. and
    /// runs the story search from each complete one.
    fn enumerate_starts(
        &mut self,
        idx: usize,
        chosen: u64,
        count: usize,
        order: &mut Vec<usize>,
    ) -> Result<Option<u64>, TimedOut> {
        let n = self.x.n();
        if count + (n - idx) < self.m {
            return Ok(None);
        }
        if idx == n {
            if count >= self.m && self.dfs(0, chosen, order)? {
                return Ok(Some(chosen));
            }
            return Ok(None);
        }
        self.tick()?;
        // Include idx when it stays independent; inclusion first biases the
        // enumeration toward large initial frames.
        if chosen & self.nbr[idx] == 0 {
            if let Some(hit) =
                self.enumerate_starts(idx + 1, chosen | (1 << idx), count + 1, order)?
            {
                return Ok(Some(hit));
            }
        }
        self.enumerate_starts(idx + 1, chosen, count, order)
    }
}

fn mask_to_set(mask: u64) -> BTreeSet<usize> {
    let mut set = BTreeSet::new();
    let mut bits = mask;
    while bits != 0 {
        set.insert(bits.trailing_zeros() as usize);
        bits &= bits - 1;
    }
    set
}

/// Decides whether `x` admits a planar story with minimum frame size at
/// least `m`, optionally forcing the initial frame.
pub fn exact_decision(
    x: &CrossingGraph,
    m: usize,
    limits: &ExactLimits,
    forced_initial: Option<&BTreeSet<usize>>,
) -> Result<DecisionResult, ExactError> {
    let n = x.n();
    if n > limits.max_vertices || n > 63 {
        return Err(ExactError::TooLarge {
            n,
            cap: limits.max_vertices.min(63),
        });
    }
    let deadline = Instant::now() + limits.time_budget;
    decision_inner(x, m, deadline, limits.memo_bytes, forced_initial)
}

fn decision_inner(
    x: &CrossingGraph,
    m: usize,
    deadline: Instant,
    memo_bytes: usize,
    forced_initial: Option<&BTreeSet<usize>>,
) -> Result<DecisionResult, ExactError> {
    let n = x.n();
    if n == 0 {
        return Ok(DecisionResult {
            feasible: m == 0,
            witness: (m == 0).then(PlanarStory::empty),
            nodes_explored: 0,
        });
    }
    // Any valid story has a nonempty initial frame and every later frame
    // contains its inserted vertex, so mu >= 1 always holds.
    let m = m.max(1);

    let mut search = Search::new(x, m, deadline, memo_bytes);
    let mut order: Vec<usize> = Vec::with_capacity(n);

    let start = match forced_initial {
        Some(initial) => {
            if !x.is_independent(initial) {
                return Err(ExactError::ForcedInitialNotIndependent);
            }
            if initial.len() < m || initial.is_empty() {
                None
            } else {
                let mask = initial.iter().fold(0u64, |acc, &v| acc | (1 << v));
                match search.dfs(0, mask, &mut order) {
                    Ok(true) => Some(mask),
                    Ok(false) => None,
                    Err(TimedOut) => return Err(ExactError::Timeout),
                }
            }
        }
        None => match search.enumerate_starts(0, 0, 0, &mut order) {
            Ok(hit) => hit,
            Err(TimedOut) => return Err(ExactError::Timeout),
        },
    };

    match start {
        Some(mask) => {
            let story = PlanarStory::new(mask_to_set(mask), order);
            debug_assert!(simulate(x, &story).map(|t| t.mu >= m).unwrap_or(false));
            Ok(DecisionResult {
                feasible: true,
                witness: Some(story),
                nodes_explored: search.nodes,
            })
        }
        None => Ok(DecisionResult {
            feasible: false,
            witness: None,
            nodes_explored: search.nodes,
        }),
    }
}

/// Computes the optimal minimum frame size with a witness story.
///
/// Upper bound: the treewidth-DP pair bound (falling back to half the
/// vertex count). Lower bound: the better of two quick greedy runs. The
/// target is then lowered from the upper bound until a decision succeeds.
pub fn exact_solve(x: &CrossingGraph, limits: &ExactLimits) -> ExactResult {
    let n = x.n();
    if n == 0 {
        return ExactResult {
            mu_star: 0,
            witness: Some(PlanarStory::empty()),
            nodes_explored: 0,
            status: ExactStatus::Optimal,
        };
    }
    if n > limits.max_vertices || n > 63 {
        return ExactResult {
            mu_star: 0,
            witness: None,
            nodes_explored: 0,
            status: ExactStatus::TooLarge,
        };
    }
    let deadline = Instant::now() + limits.time_budget;

    let ub = pair_bound(x, limits.width_cap, Some(deadline))
        .known()
        .unwrap_or(n / 2)
        .min(n / 2);

    // Greedy incumbent; the trivial single-vertex start is the fallback.
    let mut best_mu = 1usize;
    let mut best_story = PlanarStory::new(
        BTreeSet::from([0usize]),
        (1..n).collect(),
    );
    for name in ["ag-1c2a", "ag-1b2a"] {
        let cfg = GreedyConfig::from_name(name, 0).expect("known name");
        if let Ok(run) = run_heuristic(x, &cfg, Some(deadline)) {
            if run.trace.mu >= best_mu {
                best_mu = run.trace.mu;
                best_story = run.story;
            }
        }
    }

    let mut nodes = 0u64;
    for m in ((best_mu + 1)..=ub).rev() {
        match decision_inner(x, m, deadline, limits.memo_bytes, None) {
            Ok(result) => {
                nodes += result.nodes_explored;
                if result.feasible {
                    return ExactResult {
                        mu_star: m,
                        witness: result.witness,
                        nodes_explored: nodes,
                        status: ExactStatus::Optimal,
                    };
                }
            }
            Err(ExactError::Timeout) => {
                return ExactResult {
                    mu_star: best_mu,
                    witness: Some(best_story),
                    nodes_explored: nodes,
                    status: ExactStatus::Timeout {
                        best_known: best_mu,
                        upper_bound: m,
                    },
                };
            }
            Err(_) => unreachable!("size was checked above"),
        }
    }
    ExactResult {
        mu_star: best_mu,
        witness: Some(best_story),
        nodes_explored: nodes,
        status: ExactStatus::Optimal,
    }
}

/// Exact maximum independent set of a graph with at most 64 vertices, by
/// branch and bound on bitsets.
pub fn max_independent_set(x: &CrossingGraph) -> BTreeSet<usize> {
    let n = x.n();
    assert!(n <= 64, "bitset MIS supports at most 64 vertices");
    if n == 0 {
        return BTreeSet::new();
    }
    let nbr = x.neighbor_masks().expect("n <= 64");
    let full = if n == 64 { !0u64 } else { (1u64 << n) - 1 };
    let mut best = 0u64;

    fn rec(nbr: &[u64], cands: u64, chosen: u64, best: &mut u64) {
        if cands == 0 {
            if chosen.count_ones() > best.count_ones() {
                *best = chosen;
            }
            return;
        }
        if chosen.count_ones() + cands.count_ones() <= best.count_ones() {
            return;
        }
        // Branch on the candidate with the most candidate neighbors.
        let mut pick = 0;
        let mut pick_deg = 0;
        let mut bits = cands;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let deg = (nbr[v] & cands).count_ones();
            if deg >= pick_deg {
                pick_deg = deg;
                pick = v;
            }
        }
        rec(
            nbr,
            cands & !nbr[pick] & !(1u64 << pick),
            chosen | (1u64 << pick),
            best,
        );
        rec(nbr, cands & !(1u64 << pick), chosen, best);
    }

    rec(&nbr, full, 0, &mut best);
    mask_to_set(best)
}
