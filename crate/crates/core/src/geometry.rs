//! Geometric graphs and the exact segment-crossing predicate.
//!
//! Points, orientation tests and the crossing predicate are generic over the
//! coordinate scalar: any ordered ring exposed through `num-traits` works.
//! The canonical instantiation is [`crate::Coord`] (arbitrary-precision
//! rationals), which makes every crossing decision exact — degenerate
//! force-directed layouts are resolved identically on every platform, with
//! no epsilon anywhere. `f64` coordinates satisfy the same bounds and are
//! used internally by the layout engine before snapping to rationals.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Num;
use thiserror::Error;

use crate::crossing::CrossingGraph;
use crate::Coord;

/// Coordinate scalar bound: an ordered ring with cloneable values.
pub trait Scalar: Clone + Num + PartialOrd {}
impl<T: Clone + Num + PartialOrd> Scalar for T {}

/// A point in the plane.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point2<T> {
    pub x: T,
    pub y: T,
}

impl<T> Point2<T> {
    pub fn new(x: T, y: T) -> Self {
        Point2 { x, y }
    }
}

/// Side of the oriented line `a -> b` on which a query point lies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Clockwise,
    Collinear,
    CounterClockwise,
}

/// Exact orientation of `c` relative to the directed line through `a`, `b`.
///
/// Evaluates the sign of the cross product `(b - a) x (c - a)`. With an
/// exact scalar the result is exact; with floats it is the usual inexact
/// test (finite inputs assumed).
pub fn orient2d<T: Scalar>(a: &Point2<T>, b: &Point2<T>, c: &Point2<T>) -> Orientation {
    let lhs = (b.x.clone() - a.x.clone()) * (c.y.clone() - a.y.clone());
    let rhs = (b.y.clone() - a.y.clone()) * (c.x.clone() - a.x.clone());
    match lhs.partial_cmp(&rhs) {
        Some(std::cmp::Ordering::Greater) => Orientation::CounterClockwise,
        Some(std::cmp::Ordering::Less) => Orientation::Clockwise,
        _ => Orientation::Collinear,
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeometryError {
    #[error("degenerate zero-length segment")]
    DegenerateSegment,
    #[error("edge {index}: self-loop on vertex {vertex}")]
    SelfLoop { index: usize, vertex: usize },
    #[error("edge {index}: duplicate of edge ({u}, {v})")]
    DuplicateEdge { index: usize, u: usize, v: usize },
    #[error("edge {index}: vertex id {vertex} out of range (n = {n})")]
    VertexOutOfRange { index: usize, vertex: usize, n: usize },
    #[error("vertices {i} and {j} share identical coordinates")]
    CoincidentVertices { i: usize, j: usize },
}

/// `r` is known to be collinear with `p`-`q`; is it inside the closed
/// bounding box of the segment (equivalently, on the closed segment)?
fn on_segment<T: Scalar>(p: &Point2<T>, q: &Point2<T>, r: &Point2<T>) -> bool {
    let within = |lo: &T, hi: &T, v: &T| {
        if lo <= hi {
            lo <= v && v <= hi
        } else {
            hi <= v && v <= lo
        }
    };
    within(&p.x, &q.x, &r.x) && within(&p.y, &q.y, &r.y)
}

/// Decides whether two closed segments cross.
///
/// Two segments cross iff they share a point that is interior to at least
/// one of them. Consequences:
///
/// - a proper X-crossing is a crossing;
/// - a T-contact (an endpoint of one segment interior to the other) is a
///   crossing;
/// - collinear segments with overlapping interiors cross;
/// - segments sharing only a common endpoint do not cross.
///
/// Overlapping or touching edges cannot coexist in a planar frame, while a
/// shared endpoint is an ordinary incidence of the graph.
pub fn segments_cross<T: Scalar>(
    a1: &Point2<T>,
    a2: &Point2<T>,
    b1: &Point2<T>,
    b2: &Point2<T>,
) -> Result<bool, GeometryError> {
    if a1 == a2 || b1 == b2 {
        return Err(GeometryError::DegenerateSegment);
    }

    let o1 = orient2d(a1, a2, b1);
    let o2 = orient2d(a1, a2, b2);
    let o3 = orient2d(b1, b2, a1);
    let o4 = orient2d(b1, b2, a2);

    if o1 == Orientation::Collinear && o2 == Orientation::Collinear {
        // All four points on one line: the segments cross iff their
        // overlap has positive length. A single shared point on the line
        // is necessarily a common endpoint.
        let use_x = a1.x != a2.x;
        let key = |p: &Point2<T>| if use_x { p.x.clone() } else { p.y.clone() };
        let (alo, ahi) = minmax(key(a1), key(a2));
        let (blo, bhi) = minmax(key(b1), key(b2));
        let lo = if alo < blo { blo } else { alo };
        let hi = if ahi < bhi { ahi } else { bhi };
        return Ok(lo < hi);
    }

    let shares_endpoint = a1 == b1 || a1 == b2 || a2 == b1 || a2 == b2;
    let intersects = (o1 != o2 && o3 != o4)
        || (o1 == Orientation::Collinear && on_segment(a1, a2, b1))
        || (o2 == Orientation::Collinear && on_segment(a1, a2, b2))
        || (o3 == Orientation::Collinear && on_segment(b1, b2, a1))
        || (o4 == Orientation::Collinear && on_segment(b1, b2, a2));

    // Non-collinear segments meet in at most one point; if that point is a
    // common endpoint it is interior to neither segment.
    Ok(intersects && !shares_endpoint)
}

fn minmax<T: PartialOrd>(a: T, b: T) -> (T, T) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// A graph drawn in the plane: vertices are points, edges straight segments.
#[derive(Clone, Debug, PartialEq)]
pub struct GeomGraph<T> {
    vertices: Vec<Point2<T>>,
    edges: Vec<(usize, usize)>,
}

impl<T: Scalar> GeomGraph<T> {
    /// Validates and builds a geometric graph.
    ///
    /// Rejects self-loops, duplicate (unordered) edges, out-of-range vertex
    /// ids and coincident vertex coordinates. Edge endpoints are stored with
    /// the smaller id first.
    pub fn new(
        vertices: Vec<Point2<T>>,
        edges: Vec<(usize, usize)>,
    ) -> Result<Self, GeometryError> {
        let n = vertices.len();
        let mut seen = BTreeSet::new();
        let mut normalized = Vec::with_capacity(edges.len());
        for (index, &(u, v)) in edges.iter().enumerate() {
            if u >= n {
                return Err(GeometryError::VertexOutOfRange { index, vertex: u, n });
            }
            if v >= n {
                return Err(GeometryError::VertexOutOfRange { index, vertex: v, n });
            }
            if u == v {
                return Err(GeometryError::SelfLoop { index, vertex: u });
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(GeometryError::DuplicateEdge {
                    index,
                    u: key.0,
                    v: key.1,
                });
            }
            normalized.push(key);
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if vertices[i] == vertices[j] {
                    return Err(GeometryError::CoincidentVertices { i, j });
                }
            }
        }
        Ok(GeomGraph {
            vertices,
            edges: normalized,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[Point2<T>] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Whether the segments of edges `i` and `j` cross.
    pub fn edges_cross(&self, i: usize, j: usize) -> Result<bool, GeometryError> {
        let (a, b) = self.edges[i];
        let (c, d) = self.edges[j];
        segments_cross(
            &self.vertices[a],
            &self.vertices[b],
            &self.vertices[c],
            &self.vertices[d],
        )
    }
}

/// Builds the crossing graph of a geometric graph.
///
/// One X-vertex per edge of `g`, adjacent iff the segments cross; the test
/// is the plain pairwise predicate over all edge pairs. Crossing-free edges
/// become isolated X-vertices and are removed, with `free_edge_count`
/// recording how many; `edge_labels` maps each X-vertex back to the index
/// of its edge in `g`.
pub fn build_crossing_graph<T: Scalar>(g: &GeomGraph<T>) -> CrossingGraph {
    let m = g.edge_count();
    let mut edges = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            // Graph invariants rule out zero-length segments.
            if g.edges_cross(i, j).expect("segments are non-degenerate") {
                edges.push((i, j));
            }
        }
    }
    CrossingGraph::with_remark1_filter(m, &edges)
}

// ---------------------------------------------------------------------------
// Decimal parsing and geometric-graph JSON
// ---------------------------------------------------------------------------

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("{context}: expected {expected}")]
    Shape { context: String, expected: String },
    #[error("{context}: invalid decimal literal {literal:?}")]
    Decimal { context: String, literal: String },
    #[error("{context}: {source}")]
    Graph {
        context: String,
        source: GeometryError,
    },
}

/// Parses a decimal literal (optionally signed, with fraction and exponent)
/// into an exact rational. `NaN`/`inf` spellings are rejected along with
/// anything else that is not a finite decimal number.
pub fn parse_decimal(text: &str) -> Result<BigRational, ()> {
    let s = text.trim();
    let (sign, s) = match s.as_bytes().first() {
        Some(b'+') => (1, &s[1..]),
        Some(b'-') => (-1, &s[1..]),
        _ => (1, s),
    };
    let (mantissa, exp_part) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], Some(&s[pos + 1..])),
        None => (s, None),
    };
    let (int_part, frac_part) = match mantissa.find('.') {
        Some(pos) => (&mantissa[..pos], &mantissa[pos + 1..]),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(());
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(());
    }
    let digits: String = [int_part, frac_part].concat();
    let mut numer: BigInt = digits.parse().map_err(|_| ())?;
    let mut denom = BigInt::from(10u8).pow(frac_part.len() as u32);
    if let Some(exp) = exp_part {
        let exp: i64 = exp.parse().map_err(|_| ())?;
        let scale = BigInt::from(10u8).pow(exp.unsigned_abs() as u32);
        if exp >= 0 {
            numer *= scale;
        } else {
            denom *= scale;
        }
    }
    Ok(BigRational::new(BigInt::from(sign) * numer, denom))
}

/// Renders a rational as a decimal string when its denominator is a product
/// of 2s and 5s, falling back to `p/q` notation otherwise.
pub fn coord_to_string(c: &Coord) -> String {
    let mut den = c.denom().clone();
    let mut twos = 0u32;
    let mut fives = 0u32;
    let two = BigInt::from(2u8);
    let five = BigInt::from(5u8);
    while (&den % &two) == BigInt::from(0u8) {
        den /= &two;
        twos += 1;
    }
    while (&den % &five) == BigInt::from(0u8) {
        den /= &five;
        fives += 1;
    }
    if den != BigInt::from(1u8) {
        return format!("{}/{}", c.numer(), c.denom());
    }
    let places = twos.max(fives);
    let scale = BigInt::from(10u8).pow(places);
    let scaled = c * BigRational::from_integer(scale);
    debug_assert!(scaled.is_integer());
    let digits = scaled.to_integer();
    let neg = digits < BigInt::from(0);
    let mut body = digits.magnitude().to_string();
    if (places as usize) >= body.len() {
        let pad = places as usize - body.len() + 1;
        body = format!("{}{}", "0".repeat(pad), body);
    }
    if places > 0 {
        body.insert(body.len() - places as usize, '.');
    }
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

fn coord_from_json(value: &serde_json::Value, context: &str) -> Result<Coord, ParseError> {
    let literal = match value {
        serde_json::Value::Number(n) => n.to_string(),
        serde_json::Value::String(s) => s.clone(),
        other => {
            return Err(ParseError::Shape {
                context: context.to_string(),
                expected: format!("a number or decimal string, found {other}"),
            })
        }
    };
    parse_decimal(&literal).map_err(|()| ParseError::Decimal {
        context: context.to_string(),
        literal,
    })
}

/// Parses the geometric-graph JSON format:
/// `{"vertices": [[x, y], ...], "edges": [[u, v], ...]}` where coordinates
/// are JSON numbers or decimal strings, parsed exactly.
pub fn parse_geometric_graph(text: &str) -> Result<GeomGraph<Coord>, ParseError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
    let obj = value.as_object().ok_or_else(|| ParseError::Shape {
        context: "top level".into(),
        expected: "a JSON object".into(),
    })?;
    let raw_vertices = obj
        .get("vertices")
        .and_then(|v| v.as_array())
        .ok_or_else(|| ParseError::Shape {
            context: "top level".into(),
            expected: "a \"vertices\" array".into(),
        })?;
    let raw_edges = obj
        .get("edges")
        .and_then(|v| v.as_array())
        .ok_or_else(|| ParseError::Shape {
            context: "top level".into(),
            expected: "an \"edges\" array".into(),
        })?;

    let mut vertices = Vec::with_capacity(raw_vertices.len());
    for (i, entry) in raw_vertices.iter().enumerate() {
        let pair = entry.as_array().filter(|a| a.len() == 2).ok_or_else(|| {
            ParseError::Shape {
                context: format!("vertex {i}"),
                expected: "a [x, y] pair".into(),
            }
        })?;
        let x = coord_from_json(&pair[0], &format!("vertex {i} x"))?;
        let y = coord_from_json(&pair[1], &format!("vertex {i} y"))?;
        vertices.push(Point2::new(x, y));
    }

    let mut edges = Vec::with_capacity(raw_edges.len());
    for (i, entry) in raw_edges.iter().enumerate() {
        let pair = entry.as_array().filter(|a| a.len() == 2).ok_or_else(|| {
            ParseError::Shape {
                context: format!("edge {i}"),
                expected: "a [u, v] pair".into(),
            }
        })?;
        let endpoint = |v: &serde_json::Value| -> Option<usize> {
            v.as_u64().and_then(|x| usize::try_from(x).ok())
        };
        let u = endpoint(&pair[0]).ok_or_else(|| ParseError::Shape {
            context: format!("edge {i}"),
            expected: "non-negative integer vertex ids".into(),
        })?;
        let v = endpoint(&pair[1]).ok_or_else(|| ParseError::Shape {
            context: format!("edge {i}"),
            expected: "non-negative integer vertex ids".into(),
        })?;
        edges.push((u, v));
    }

    GeomGraph::new(vertices, edges).map_err(|source| ParseError::Graph {
        context: "geometric graph".into(),
        source,
    })
}

/// Serializes a geometric graph into the JSON interchange format, writing
/// coordinates as decimal strings (bit-stable across platforms).
pub fn geometric_graph_to_json(g: &GeomGraph<Coord>) -> String {
    let mut out = String::from("{\n  \"vertices\": [\n");
    for (i, p) in g.vertices().iter().enumerate() {
        let sep = if i + 1 == g.vertex_count() { "" } else { "," };
        out.push_str(&format!(
            "    [\"{}\", \"{}\"]{sep}\n",
            coord_to_string(&p.x),
            coord_to_string(&p.y)
        ));
    }
    out.push_str("  ],\n  \"edges\": [\n");
    for (i, (u, v)) in g.edges().iter().enumerate() {
        let sep = if i + 1 == g.edge_count() { "" } else { "," };
        out.push_str(&format!("    [{u}, {v}]{sep}\n"));
    }
    out.push_str("  ]\n}\n");
    out
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Orientation::Clockwise => write!(f, "clockwise"),
            Orientation::Collinear => write!(f, "collinear"),
            Orientation::CounterClockwise => write!(f, "counterclockwise"),
        }
    }
}
