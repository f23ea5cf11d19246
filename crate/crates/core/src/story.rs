//! Planar stories over a crossing graph: simulation, validation, bounds.
//!
//! A story is stored as its initial frame plus the insertion order; the
//! frame sequence is a pure function of those two, so traces are always
//! derived and never serialized in a way that could go inconsistent.

use std::collections::BTreeSet;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::crossing::CrossingGraph;
use crate::exact::max_independent_set;
use crate::pareto;
use crate::treewidth;

/// A planar story in crossing-graph form: the initial independent set and
/// the order in which the remaining vertices enter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarStory {
    #[serde(rename = "initial")]
    pub initial_frame: BTreeSet<usize>,
    #[serde(rename = "order")]
    pub insertion_order: Vec<usize>,
}

impl PlanarStory {
    pub fn new(initial_frame: BTreeSet<usize>, insertion_order: Vec<usize>) -> Self {
        PlanarStory {
            initial_frame,
            insertion_order,
        }
    }

    /// The single-frame story of the empty crossing graph.
    pub fn empty() -> Self {
        PlanarStory {
            initial_frame: BTreeSet::new(),
            insertion_order: Vec::new(),
        }
    }

    /// Number of frames the story produces.
    pub fn frame_count(&self) -> usize {
        self.insertion_order.len() + 1
    }
}

/// The derived frame sequence of a story.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StoryTrace {
    /// Frames F_1 .. F_tau as vertex sets.
    pub frames: Vec<BTreeSet<usize>>,
    /// Sizes m_1 .. m_tau.
    pub frame_sizes: Vec<usize>,
    /// Minimum frame size mu(sigma).
    pub mu: usize,
    /// For each vertex, the first frame index (0-based) it is absent from
    /// after having been present; `None` if it survives to the last frame.
    pub removed_at: Vec<Option<usize>>,
}

impl StoryTrace {
    /// Frame sizes with crossing-free edges added back for user-facing
    /// reports on the geometric graph. Comparisons between algorithms always
    /// use the unadjusted sizes.
    pub fn adjusted_frame_sizes(&self, free_edge_count: usize) -> Vec<usize> {
        self.frame_sizes.iter().map(|s| s + free_edge_count).collect()
    }

    /// Display value of mu including crossing-free edges.
    pub fn adjusted_mu(&self, free_edge_count: usize) -> usize {
        self.mu + free_edge_count
    }
}

/// Frame sizes and mu adjusted for crossing-free edges (display values),
/// paired with the core value used for algorithm comparisons.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreeEdgeReport {
    pub frame_sizes: Vec<usize>,
    pub display_mu: usize,
    pub core_mu: usize,
    pub free_edge_count: usize,
}

/// Applies the crossing-free-edge adjustment to a trace.
pub fn report_with_free_edges(trace: &StoryTrace, free_edge_count: usize) -> FreeEdgeReport {
    FreeEdgeReport {
        frame_sizes: trace.adjusted_frame_sizes(free_edge_count),
        display_mu: trace.adjusted_mu(free_edge_count),
        core_mu: trace.mu,
        free_edge_count,
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StoryError {
    #[error("initial frame is not independent: {u} and {v} cross")]
    InitialNotIndependent { u: usize, v: usize },
    #[error("initial frame is empty but the crossing graph is not")]
    InitialEmpty,
    #[error("vertex {vertex} out of range")]
    UnknownVertex { vertex: usize },
    #[error("vertex {vertex} appears twice in the insertion order")]
    DuplicateInsertion { vertex: usize },
    #[error("vertex {vertex} is in both the initial frame and the insertion order")]
    InsertedTwice { vertex: usize },
    #[error("vertex {vertex} is in no frame (coverage gap)")]
    CoverageGap { vertex: usize },
    #[error("the given initial set is not independent")]
    BoundInitialNotIndependent,
}

/// One violated story condition, as reported by [`validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum StoryViolation {
    /// Two crossing vertices share the initial frame.
    FrameNotIndependent { u: usize, v: usize },
    /// Empty initial frame on a nonempty crossing graph.
    EmptyInitialFrame,
    /// Id outside the vertex range.
    UnknownVertex { vertex: usize },
    /// Same vertex inserted more than once.
    DuplicateInsertion { vertex: usize },
    /// Vertex both in the initial frame and inserted later.
    InsertedTwice { vertex: usize },
    /// Vertex never shown in any frame.
    CoverageGap { vertex: usize },
}

/// Outcome of checking a story against the planar-story conditions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<StoryViolation>,
}

impl ValidationReport {
    pub fn accepted(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check_story(x: &CrossingGraph, story: &PlanarStory) -> Vec<StoryViolation> {
    let n = x.n();
    let mut violations = Vec::new();
    if story.initial_frame.is_empty() && n > 0 {
        violations.push(StoryViolation::EmptyInitialFrame);
    }
    for &v in &story.initial_frame {
        if v >= n {
            violations.push(StoryViolation::UnknownVertex { vertex: v });
        }
    }
    if let Some((u, v)) = x.independence_violation(&story.initial_frame) {
        violations.push(StoryViolation::FrameNotIndependent { u, v });
    }
    let mut seen = story.initial_frame.clone();
    for &v in &story.insertion_order {
        if v >= n {
            violations.push(StoryViolation::UnknownVertex { vertex: v });
            continue;
        }
        if story.initial_frame.contains(&v) {
            violations.push(StoryViolation::InsertedTwice { vertex: v });
        } else if !seen.insert(v) {
            violations.push(StoryViolation::DuplicateInsertion { vertex: v });
        }
    }
    for v in 0..n {
        if !seen.contains(&v) {
            violations.push(StoryViolation::CoverageGap { vertex: v });
        }
    }
    violations
}

/// Checks a story against the planar-story definition without running it:
/// an independent nonempty initial frame and an insertion order that is a
/// permutation of the remaining vertices (which also makes the frames cover
/// the whole vertex set). Violations are collected, not raised.
pub fn validate(x: &CrossingGraph, story: &PlanarStory) -> ValidationReport {
    ValidationReport {
        violations: check_story(x, story),
    }
}

/// Derives the frame sequence of a valid story.
///
/// Frame `i+1` is `(F_i \ N(v)) + {v}` for the inserted vertex `v`; the
/// size delta at each step is one minus the current degree of `v`.
pub fn simulate(x: &CrossingGraph, story: &PlanarStory) -> Result<StoryTrace, StoryError> {
    // Surface the first violation as an error.
    for violation in check_story(x, story) {
        return Err(match violation {
            StoryViolation::FrameNotIndependent { u, v } => {
                StoryError::InitialNotIndependent { u, v }
            }
            StoryViolation::EmptyInitialFrame => StoryError::InitialEmpty,
            StoryViolation::UnknownVertex { vertex } => StoryError::UnknownVertex { vertex },
            StoryViolation::DuplicateInsertion { vertex } => {
                StoryError::DuplicateInsertion { vertex }
            }
            StoryViolation::InsertedTwice { vertex } => StoryError::InsertedTwice { vertex },
            StoryViolation::CoverageGap { vertex } => StoryError::CoverageGap { vertex },
        });
    }

    let mut frames = Vec::with_capacity(story.frame_count());
    let mut removed_at = vec![None; x.n()];
    let mut current = story.initial_frame.clone();
    frames.push(current.clone());
    for &v in &story.insertion_order {
        let frame_index = frames.len();
        let removed: Vec<usize> = x
            .neighbors(v)
            .iter()
            .copied()
            .filter(|u| current.contains(u))
            .collect();
        for u in removed {
            current.remove(&u);
            removed_at[u] = Some(frame_index);
        }
        current.insert(v);
        frames.push(current.clone());
    }
    let frame_sizes: Vec<usize> = frames.iter().map(|f| f.len()).collect();
    let mu = frame_sizes.iter().copied().min().unwrap_or(0);
    Ok(StoryTrace {
        frames,
        frame_sizes,
        mu,
        removed_at,
    })
}

// ---------------------------------------------------------------------------
// Upper bounds
// ---------------------------------------------------------------------------

/// A bound that may be unavailable when its delegate exceeded a cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "value", rename_all = "snake_case")]
pub enum BoundValue {
    Known(usize),
    Unavailable,
}

impl BoundValue {
    pub fn known(&self) -> Option<usize> {
        match self {
            BoundValue::Known(v) => Some(*v),
            BoundValue::Unavailable => None,
        }
    }
}

/// Upper bounds on the optimal minimum frame size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    /// floor(|V(X)| / 2): frames F_1 and F_tau are disjoint.
    pub half_edges: usize,
    /// min{|I_1|, |I_2|} over a maximum pair of disjoint independent sets.
    pub pair_bound: BoundValue,
    /// For a fixed initial frame F: min{|F|, alpha(X - F)}.
    pub initial_frame_bound: Option<BoundValue>,
}

/// Computes the story upper bounds for `x`.
///
/// The pair bound is delegated to the treewidth DP (Minimum Fill-in
/// decomposition first) and reported unavailable when the decomposition
/// exceeds `width_cap`. When an initial frame is supplied, the bound for
/// stories starting at it is the minimum of its size and an exact maximum
/// independent set of the rest of the graph.
pub fn upper_bounds(
    x: &CrossingGraph,
    initial: Option<&BTreeSet<usize>>,
    width_cap: usize,
) -> Result<Bounds, StoryError> {
    let half_edges = x.n() / 2;

    let pair_bound = pair_bound(x, width_cap, None);

    let initial_frame_bound = match initial {
        None => None,
        Some(frame) => {
            if !x.is_independent(frame) {
                return Err(StoryError::BoundInitialNotIndependent);
            }
            let rest: BTreeSet<usize> = (0..x.n()).filter(|v| !frame.contains(v)).collect();
            let (sub, _) = x.induced(&rest);
            Some(match independent_set_size(&sub, width_cap) {
                Some(alpha) => BoundValue::Known(frame.len().min(alpha)),
                None => BoundValue::Unavailable,
            })
        }
    };

    Ok(Bounds {
        half_edges,
        pair_bound,
        initial_frame_bound,
    })
}

/// min{|I_1|, |I_2|} of a maximum pair of disjoint independent sets, via the
/// treewidth DP; `Unavailable` past the width cap or deadline.
pub fn pair_bound(x: &CrossingGraph, width_cap: usize, deadline: Option<Instant>) -> BoundValue {
    if x.n() == 0 {
        return BoundValue::Known(0);
    }
    match treewidth::min_fill_in_decomposition(x, width_cap, 0) {
        Ok(td) => match pareto::pareto_pairs_with_deadline(x, &td, deadline) {
            Ok(list) => BoundValue::Known(list.max_min()),
            Err(_) => BoundValue::Unavailable,
        },
        Err(_) => BoundValue::Unavailable,
    }
}

/// Exact independent-set size of a (sub)graph: bitset branch and bound for
/// up to 64 vertices, otherwise the treewidth DP; `None` when neither route
/// applies within the width cap.
fn independent_set_size(x: &CrossingGraph, width_cap: usize) -> Option<usize> {
    if x.n() <= 64 {
        return Some(max_independent_set(x).len());
    }
    let td = treewidth::min_fill_in_decomposition(x, width_cap, 0).ok()?;
    let list = pareto::pareto_pairs_with_deadline(x, &td, None).ok()?;
    Some(list.max_single())
}

/// Story plus derived values in the JSON interchange shape
/// (`initial`/`order` plus `frame_sizes`, `mu`, `free_edge_count`).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TraceReport {
    pub initial: Vec<usize>,
    pub order: Vec<usize>,
    pub frame_sizes: Vec<usize>,
    pub mu: usize,
    pub free_edge_count: usize,
}

impl TraceReport {
    pub fn new(story: &PlanarStory, trace: &StoryTrace, free_edge_count: usize) -> Self {
        TraceReport {
            initial: story.initial_frame.iter().copied().collect(),
            order: story.insertion_order.clone(),
            frame_sizes: trace.frame_sizes.clone(),
            mu: trace.mu,
            free_edge_count,
        }
    }
}
