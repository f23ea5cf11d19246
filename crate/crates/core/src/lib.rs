//! Solver toolkit for maximizing the minimum frame size of a planar story.
//!
//! A *planar story* of a geometric graph shows the graph as a sequence of
//! crossing-free frames: the first frame is a planar subgraph, every later
//! frame inserts exactly one new edge and drops the current edges crossed by
//! it, and an edge that leaves never returns. In the *crossing graph* (one
//! vertex per crossing edge, adjacent iff the segments cross) frames are
//! independent sets, which is the representation all solvers here work on.
//!
//! The crate provides:
//!
//! - [`geometry`]: geometric graphs with exact rational coordinates and an
//!   exact segment-crossing predicate (generic over the coordinate scalar);
//! - [`crossing`]: the crossing-graph substrate and its text format;
//! - [`story`]: story simulation, validation and upper bounds;
//! - [`greedy`]: the Simple/Advanced greedy heuristics with their phase-1
//!   (`1a`/`1b`/`1c`) and phase-2 (`2a`/`2b`) variants;
//! - [`treewidth`] and [`pareto`]: Minimum Fill-in tree decompositions and
//!   the 3-coloring dynamic program for Pareto-optimal maximum pairs of
//!   disjoint independent sets;
//! - [`exact`]: a memoized exact search plus a maximum-independent-set
//!   routine used by the bounds;
//! - [`ilp`]: an LP-format exporter of the exact integer program and a
//!   decoder for external solver solutions;
//! - [`gen`]: seeded instance generators with machine-checked structure.

pub mod crossing;
pub mod exact;
pub mod gen;
pub mod geometry;
pub mod greedy;
pub mod ilp;
pub mod pareto;
pub mod rng;
pub mod story;
pub mod treewidth;

/// Canonical coordinate scalar: arbitrary-precision rationals, so all
/// crossing decisions are exact and platform-independent.
pub type Coord = num_rational::BigRational;

/// A point of a geometric graph in the canonical exact representation.
pub type Point2D = geometry::Point2<Coord>;

/// Geometric graph with exact rational coordinates (the canonical input).
pub type GeometricGraph = geometry::GeomGraph<Coord>;

pub use crossing::CrossingGraph;
pub use story::{PlanarStory, StoryTrace};
pub use treewidth::TreeDecomposition;
