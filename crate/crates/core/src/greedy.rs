//! Simple Greedy and Advanced Greedy heuristics.
//!
//! Both build the story frame by frame: vertices are current (in the
//! frame), past (removed, never to return) or future (not yet inserted).
//! Simple Greedy always inserts a future vertex of minimum current degree.
//! Advanced Greedy fixes a target final frame `I_tau` up front and only
//! admits a future vertex if it is outside `I_tau` or no longer crossed by
//! any future vertex, which guarantees the target survives to the end.
//!
//! Phase 1 computes the initial frame (and for Advanced Greedy the final
//! frame): variant `1a` takes a Pareto-optimal maximum pair from the
//! treewidth DP (or the linear-time construction when the maximum degree is
//! at most two), `1b` grows the initial set greedily by minimum degree and
//! makes the final set a maximal independent set of the rest, `1c` grows
//! both sets alternately. All tie-breaking is uniform under the seed.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::crossing::CrossingGraph;
use crate::pareto::{self, PairError};
use crate::rng::{rng_from_seed, SeededRng};
use crate::story::{simulate, PlanarStory, StoryError, StoryTrace};
use crate::treewidth::{min_fill_in_decomposition, TreewidthError};
use rand::Rng;

/// Phase-1 strategy for choosing the initial (and final) frame.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase1 {
    /// `1a`: Pareto-optimal maximum pair via the treewidth DP.
    Dp,
    /// `1b`: grow I_1 by minimum degree, then a maximal I_tau.
    MinDegree,
    /// `1c`: grow I_1 and I_tau alternately by minimum degree.
    Alternating,
    /// Caller-supplied (I_1, I_tau).
    GivenPair,
    /// Simple Greedy from a caller-supplied (or default) initial frame.
    GivenInitial,
}

/// Phase-2 tie-breaking among admissible minimum-current-degree vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase2 {
    /// `2a`: uniform over the tie set E'.
    Uniform,
    /// `2b`: uniform over the subset E'' of E' whose current neighborhoods
    /// are crossed by the most future vertices.
    FutureImpact,
}

/// Full configuration of one heuristic run; the seed determines every
/// random choice.
#[derive(Clone, Debug)]
pub struct GreedyConfig {
    pub phase1: Phase1,
    pub phase2: Phase2,
    pub seed: u64,
    /// Required iff `phase1 == GivenPair`.
    pub pair_override: Option<(BTreeSet<usize>, BTreeSet<usize>)>,
    /// Optional with `phase1 == GivenInitial`; defaults to the variant-1b
    /// initial set extended to a maximal independent set.
    pub initial_override: Option<BTreeSet<usize>>,
    /// Width cap for the phase-1a decomposition.
    pub width_cap: usize,
}

pub const DEFAULT_WIDTH_CAP: usize = 12;

impl GreedyConfig {
    pub fn new(phase1: Phase1, phase2: Phase2, seed: u64) -> Self {
        GreedyConfig {
            phase1,
            phase2,
            seed,
            pair_override: None,
            initial_override: None,
            width_cap: DEFAULT_WIDTH_CAP,
        }
    }

    /// Parses a heuristic name: `simple` or `ag-1x2y` with x in {a, b, c}
    /// and y in {a, b}.
    pub fn from_name(name: &str, seed: u64) -> Option<Self> {
        let (phase1, phase2) = match name {
            "simple" => (Phase1::GivenInitial, Phase2::Uniform),
            "ag-1a2a" => (Phase1::Dp, Phase2::Uniform),
            "ag-1a2b" => (Phase1::Dp, Phase2::FutureImpact),
            "ag-1b2a" => (Phase1::MinDegree, Phase2::Uniform),
            "ag-1b2b" => (Phase1::MinDegree, Phase2::FutureImpact),
            "ag-1c2a" => (Phase1::Alternating, Phase2::Uniform),
            "ag-1c2b" => (Phase1::Alternating, Phase2::FutureImpact),
            _ => return None,
        };
        Some(GreedyConfig::new(phase1, phase2, seed))
    }

    pub fn name(&self) -> String {
        let p1 = match self.phase1 {
            Phase1::Dp => "1a",
            Phase1::MinDegree => "1b",
            Phase1::Alternating => "1c",
            Phase1::GivenPair => "given-pair",
            Phase1::GivenInitial => return "simple".into(),
        };
        let p2 = match self.phase2 {
            Phase2::Uniform => "2a",
            Phase2::FutureImpact => "2b",
        };
        format!("ag-{p1}{p2}")
    }
}

/// All accepted heuristic names, in CLI order.
pub const HEURISTIC_NAMES: [&str; 7] = [
    "simple", "ag-1a2a", "ag-1a2b", "ag-1b2a", "ag-1b2b", "ag-1c2a", "ag-1c2b",
];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GreedyError {
    #[error("initial frame is not independent")]
    InitialNotIndependent,
    #[error("phase-1 pair is invalid: {0}")]
    InvalidPair(&'static str),
    #[error("config error: {0}")]
    InvalidConfig(&'static str),
    #[error("no admissible vertex although the future set is nonempty")]
    Deadlock,
    #[error("a target final-frame vertex was removed before the last frame")]
    TargetLost,
    #[error("variant 1a unavailable: decomposition width {attained} exceeds cap {cap}")]
    PairUnavailable { cap: usize, attained: usize },
    #[error("heuristic time budget exceeded")]
    BudgetExceeded,
    #[error("story error: {0}")]
    Story(#[from] StoryError),
}

/// Result of a heuristic run: the story, its trace, the phase-1 pair when
/// one was computed, and the wall time.
#[derive(Clone, Debug)]
pub struct HeuristicRun {
    pub story: PlanarStory,
    pub trace: StoryTrace,
    pub pair: Option<(BTreeSet<usize>, BTreeSet<usize>)>,
    pub elapsed: Duration,
}

// ---------------------------------------------------------------------------
// Minimum-degree pool
// ---------------------------------------------------------------------------

/// Candidate vertices bucketed by their degree inside the candidate set,
/// with seeded-uniform choice inside the minimum bucket.
struct MinDegreePool {
    alive: Vec<bool>,
    deg: Vec<usize>,
    buckets: Vec<BTreeSet<usize>>,
    size: usize,
}

impl MinDegreePool {
    fn new(x: &CrossingGraph, member: impl Fn(usize) -> bool) -> Self {
        let n = x.n();
        let alive: Vec<bool> = (0..n).map(&member).collect();
        let deg: Vec<usize> = (0..n)
            .map(|v| {
                if alive[v] {
                    x.neighbors(v).iter().filter(|&&w| alive[w]).count()
                } else {
                    0
                }
            })
            .collect();
        let mut buckets = vec![BTreeSet::new(); n.max(1)];
        let mut size = 0;
        for v in 0..n {
            if alive[v] {
                buckets[deg[v]].insert(v);
                size += 1;
            }
        }
        MinDegreePool {
            alive,
            deg,
            buckets,
            size,
        }
    }

    fn is_empty(&self) -> bool {
        self.size == 0
    }

    fn remove(&mut self, x: &CrossingGraph, v: usize) {
        if !self.alive[v] {
            return;
        }
        self.alive[v] = false;
        self.buckets[self.deg[v]].remove(&v);
        self.size -= 1;
        for &w in x.neighbors(v) {
            if self.alive[w] {
                self.buckets[self.deg[w]].remove(&w);
                self.deg[w] -= 1;
                self.buckets[self.deg[w]].insert(w);
            }
        }
    }

    fn pick_min(&self, rng: &mut SeededRng) -> Option<usize> {
        let bucket = self.buckets.iter().find(|b| !b.is_empty())?;
        let k = rng.gen_range(0..bucket.len());
        bucket.iter().nth(k).copied()
    }
}

// ---------------------------------------------------------------------------
// Phase 1 variants
// ---------------------------------------------------------------------------

/// Variant `1b`: grow I_1 by repeatedly taking a minimum-degree vertex of
/// X - I_1 - N(I_1) while |I_1| <= floor(n/2) - 1 and candidates remain
/// (so I_1 can reach floor(n/2)), then build I_tau as a maximal independent
/// set of X - I_1 the same way.
pub fn phase1_variant_b(x: &CrossingGraph, seed: u64) -> (BTreeSet<usize>, BTreeSet<usize>) {
    let mut rng = rng_from_seed(seed);
    phase1_variant_b_with_rng(x, &mut rng)
}

fn phase1_variant_b_with_rng(
    x: &CrossingGraph,
    rng: &mut SeededRng,
) -> (BTreeSet<usize>, BTreeSet<usize>) {
    let n = x.n();
    let mut i1 = BTreeSet::new();
    if n == 0 {
        return (i1, BTreeSet::new());
    }
    let cap = n / 2;
    let mut pool = MinDegreePool::new(x, |_| true);
    while i1.len() + 1 <= cap && !pool.is_empty() {
        let v = pool.pick_min(rng).expect("pool is nonempty");
        i1.insert(v);
        pool.remove(x, v);
        for &w in x.neighbors(v) {
            pool.remove(x, w);
        }
    }
    let itau = greedy_maximal_set(x, rng, |v| !i1.contains(&v));
    (i1, itau)
}

/// Maximal independent set over `member` vertices by repeated
/// minimum-degree choice.
fn greedy_maximal_set(
    x: &CrossingGraph,
    rng: &mut SeededRng,
    member: impl Fn(usize) -> bool,
) -> BTreeSet<usize> {
    let mut pool = MinDegreePool::new(x, member);
    let mut set = BTreeSet::new();
    while let Some(v) = pool.pick_min(rng) {
        set.insert(v);
        pool.remove(x, v);
        for &w in x.neighbors(v) {
            pool.remove(x, w);
        }
    }
    set
}

/// Variant `1c`: alternately grow I_1 and I_tau by a minimum-degree vertex
/// of X - I_1 - I_tau - N(I_i); a side without candidates passes its turn.
/// The sets are swapped at the end so that |I_1| <= |I_tau|.
pub fn phase1_variant_c(x: &CrossingGraph, seed: u64) -> (BTreeSet<usize>, BTreeSet<usize>) {
    let mut rng = rng_from_seed(seed);
    let mut pools = [
        MinDegreePool::new(x, |_| true),
        MinDegreePool::new(x, |_| true),
    ];
    let mut sets = [BTreeSet::new(), BTreeSet::new()];
    let mut side = 0;
    while !pools[0].is_empty() || !pools[1].is_empty() {
        if let Some(v) = pools[side].pick_min(&mut rng) {
            sets[side].insert(v);
            pools[side].remove(x, v);
            for &w in x.neighbors(v) {
                pools[side].remove(x, w);
            }
            pools[1 - side].remove(x, v);
        }
        side = 1 - side;
    }
    let [i1, itau] = sets;
    if i1.len() > itau.len() {
        (itau, i1)
    } else {
        (i1, itau)
    }
}

/// Variant `1a`: a Pareto-optimal maximum pair of disjoint independent
/// sets. Graphs of maximum degree two take the linear-time construction;
/// everything else goes through a Minimum Fill-in decomposition and the
/// pair DP, failing with the attained width past `width_cap`.
pub fn phase1_variant_a(
    x: &CrossingGraph,
    width_cap: usize,
    seed: u64,
    deadline: Option<Instant>,
) -> Result<(BTreeSet<usize>, BTreeSet<usize>), GreedyError> {
    if x.max_degree() <= 2 {
        let pair = pareto::degree2_maximum_pair(x).expect("degree checked");
        return Ok((pair.i1, pair.itau));
    }
    let td = match min_fill_in_decomposition(x, width_cap, seed) {
        Ok(td) => td,
        Err(TreewidthError::WidthCapExceeded { cap, attained }) => {
            return Err(GreedyError::PairUnavailable { cap, attained })
        }
        Err(_) => return Err(GreedyError::InvalidPair("decomposition failed")),
    };
    match pareto::maximum_pair_with_deadline(x, &td, deadline) {
        Ok(pair) => Ok(pair),
        Err(PairError::Timeout) => Err(GreedyError::BudgetExceeded),
        Err(_) => Err(GreedyError::InvalidPair("pair DP failed")),
    }
}

// ---------------------------------------------------------------------------
// Phase 2 engine
// ---------------------------------------------------------------------------

struct Engine<'a> {
    x: &'a CrossingGraph,
    current: Vec<bool>,
    future: Vec<bool>,
    in_target: Vec<bool>,
    current_degree: Vec<usize>,
    future_degree: Vec<usize>,
    future_count: usize,
    // Stamped scratch space for the 2b tie-break.
    stamp: Vec<u32>,
    stamp_value: u32,
}

impl<'a> Engine<'a> {
    fn new(x: &'a CrossingGraph, initial: &BTreeSet<usize>, target: &BTreeSet<usize>) -> Self {
        let n = x.n();
        let mut current = vec![false; n];
        for &v in initial {
            current[v] = true;
        }
        let mut in_target = vec![false; n];
        for &v in target {
            in_target[v] = true;
        }
        let future: Vec<bool> = (0..n).map(|v| !current[v]).collect();
        let current_degree: Vec<usize> = (0..n)
            .map(|v| x.neighbors(v).iter().filter(|&&w| current[w]).count())
            .collect();
        let future_degree: Vec<usize> = (0..n)
            .map(|v| x.neighbors(v).iter().filter(|&&w| future[w]).count())
            .collect();
        let future_count = future.iter().filter(|&&f| f).count();
        Engine {
            x,
            current,
            future,
            in_target,
            current_degree,
            future_degree,
            future_count,
            stamp: vec![0; n],
            stamp_value: 0,
        }
    }

    /// Admissible future vertices of minimum current degree.
    fn tie_set(&self) -> Vec<usize> {
        let mut min_deg = usize::MAX;
        let mut set = Vec::new();
        for v in 0..self.x.n() {
            if !self.future[v] {
                continue;
            }
            if self.in_target[v] && self.future_degree[v] > 0 {
                continue;
            }
            match self.current_degree[v].cmp(&min_deg) {
                std::cmp::Ordering::Less => {
                    min_deg = self.current_degree[v];
                    set.clear();
                    set.push(v);
                }
                std::cmp::Ordering::Equal => set.push(v),
                std::cmp::Ordering::Greater => {}
            }
        }
        set
    }

    /// Number of future vertices (other than `e`) crossing at least one
    /// current neighbor of `e` -- the edges that would profit from the
    /// removals `e` triggers.
    fn future_impact(&mut self, e: usize) -> usize {
        self.stamp_value += 1;
        let mut count = 0;
        for &u in self.x.neighbors(e) {
            if !self.current[u] {
                continue;
            }
            for &w in self.x.neighbors(u) {
                if self.future[w] && w != e && self.stamp[w] != self.stamp_value {
                    self.stamp[w] = self.stamp_value;
                    count += 1;
                }
            }
        }
        count
    }

    fn insert(&mut self, v: usize) {
        self.future[v] = false;
        self.future_count -= 1;
        for &w in self.x.neighbors(v).to_vec().iter() {
            self.future_degree[w] -= 1;
        }
        let removed: Vec<usize> = self
            .x
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| self.current[u])
            .collect();
        for u in removed {
            self.current[u] = false;
            for &w in self.x.neighbors(u) {
                self.current_degree[w] -= 1;
            }
        }
        self.current[v] = true;
        for &w in self.x.neighbors(v) {
            self.current_degree[w] += 1;
        }
    }
}

/// Advanced Greedy phase 2 from a disjoint pair of independent sets.
///
/// Every step inserts an admissible future vertex of minimum current
/// degree, breaking ties per `phase2`; admissibility keeps the target
/// final frame intact, so the last frame contains all of `itau`.
pub fn advanced_greedy(
    x: &CrossingGraph,
    i1: &BTreeSet<usize>,
    itau: &BTreeSet<usize>,
    phase2: Phase2,
    seed: u64,
) -> Result<PlanarStory, GreedyError> {
    let mut rng = rng_from_seed(seed);
    advanced_greedy_with_rng(x, i1, itau, phase2, &mut rng)
}

fn advanced_greedy_with_rng(
    x: &CrossingGraph,
    i1: &BTreeSet<usize>,
    itau: &BTreeSet<usize>,
    phase2: Phase2,
    rng: &mut SeededRng,
) -> Result<PlanarStory, GreedyError> {
    let n = x.n();
    if n == 0 {
        return Ok(PlanarStory::empty());
    }
    if i1.iter().chain(itau.iter()).any(|&v| v >= n) {
        return Err(GreedyError::InvalidPair("vertex id out of range"));
    }
    if !x.is_independent(i1) || !x.is_independent(itau) {
        return Err(GreedyError::InvalidPair("sets are not independent"));
    }
    if !i1.is_disjoint(itau) {
        return Err(GreedyError::InvalidPair("sets are not disjoint"));
    }
    if i1.is_empty() {
        return Err(GreedyError::InvalidPair("initial frame is empty"));
    }

    let mut engine = Engine::new(x, i1, itau);
    let mut order = Vec::with_capacity(engine.future_count);
    while engine.future_count > 0 {
        let tie = engine.tie_set();
        if tie.is_empty() {
            // Unreachable: a future vertex outside the target is always
            // admissible, and once only target vertices remain their future
            // degrees are zero because the target is independent.
            return Err(GreedyError::Deadlock);
        }
        let chosen = match phase2 {
            Phase2::Uniform => tie[rng.gen_range(0..tie.len())],
            Phase2::FutureImpact => {
                let scores: Vec<usize> = tie.iter().map(|&e| engine.future_impact(e)).collect();
                let best = *scores.iter().max().expect("tie set is nonempty");
                let refined: Vec<usize> = tie
                    .iter()
                    .zip(&scores)
                    .filter(|(_, &s)| s == best)
                    .map(|(&e, _)| e)
                    .collect();
                refined[rng.gen_range(0..refined.len())]
            }
        };
        engine.insert(chosen);
        order.push(chosen);
    }
    if itau.iter().any(|&v| !engine.current[v]) {
        return Err(GreedyError::TargetLost);
    }
    Ok(PlanarStory::new(i1.clone(), order))
}

/// Simple Greedy: no target frame, minimum current degree with uniform
/// tie-breaking under the seed.
pub fn simple_greedy(
    x: &CrossingGraph,
    initial: &BTreeSet<usize>,
    seed: u64,
) -> Result<PlanarStory, GreedyError> {
    let mut rng = rng_from_seed(seed);
    if x.n() == 0 {
        return Ok(PlanarStory::empty());
    }
    if !x.is_independent(initial) {
        return Err(GreedyError::InitialNotIndependent);
    }
    advanced_greedy_with_rng(x, initial, &BTreeSet::new(), Phase2::Uniform, &mut rng)
        .map_err(|e| match e {
            GreedyError::InvalidPair("initial frame is empty") => e,
            GreedyError::InvalidPair(_) => GreedyError::InitialNotIndependent,
            other => other,
        })
}

/// The default Simple Greedy start: the variant-1b initial set extended to
/// a maximal independent set (the size cap becomes irrelevant once the set
/// is grown to maximality).
pub fn default_simple_initial(x: &CrossingGraph, seed: u64) -> BTreeSet<usize> {
    let mut rng = rng_from_seed(seed);
    greedy_maximal_set(x, &mut rng, |_| true)
}

/// Dispatches a full heuristic run: phase 1 per the config, then the greedy
/// insertion loop, then the simulated trace. `deadline` bounds the phase-1a
/// DP; runs that finish are returned even if close to the limit.
pub fn run_heuristic(
    x: &CrossingGraph,
    cfg: &GreedyConfig,
    deadline: Option<Instant>,
) -> Result<HeuristicRun, GreedyError> {
    let start = Instant::now();
    if cfg.pair_override.is_some() && cfg.phase1 != Phase1::GivenPair {
        return Err(GreedyError::InvalidConfig(
            "pair_override requires phase1 = given-pair",
        ));
    }
    if cfg.initial_override.is_some() && cfg.phase1 != Phase1::GivenInitial {
        return Err(GreedyError::InvalidConfig(
            "initial_override requires phase1 = given-initial",
        ));
    }

    let (story, pair) = match cfg.phase1 {
        Phase1::GivenInitial => {
            let initial = match &cfg.initial_override {
                Some(set) => set.clone(),
                None => default_simple_initial(x, cfg.seed),
            };
            (simple_greedy(x, &initial, cfg.seed)?, None)
        }
        Phase1::GivenPair => {
            let (i1, itau) = cfg
                .pair_override
                .clone()
                .ok_or(GreedyError::InvalidConfig("given-pair needs pair_override"))?;
            let story = advanced_greedy(x, &i1, &itau, cfg.phase2, cfg.seed)?;
            (story, Some((i1, itau)))
        }
        Phase1::Dp | Phase1::MinDegree | Phase1::Alternating => {
            let (i1, itau) = match cfg.phase1 {
                Phase1::Dp => phase1_variant_a(x, cfg.width_cap, cfg.seed, deadline)?,
                Phase1::MinDegree => phase1_variant_b(x, cfg.seed),
                _ => phase1_variant_c(x, cfg.seed),
            };
            if x.n() == 0 {
                (PlanarStory::empty(), None)
            } else {
                let story = advanced_greedy(x, &i1, &itau, cfg.phase2, cfg.seed)?;
                (story, Some((i1, itau)))
            }
        }
    };
    let trace = simulate(x, &story)?;
    Ok(HeuristicRun {
        story,
        trace,
        pair,
        elapsed: start.elapsed(),
    })
}
