//! Exact integer program export and solution decoding.
//!
//! Variables: binary `x_e_t` (edge e shown in frame t), binary lifting
//! variable `z_e_t` (edge e appears in frame t), continuous `y_min >= 0`.
//! The model maximizes `y_min` subject to:
//!
//! - (2) crossing edges never share a frame;
//! - (3) every edge is shown at least once;
//! - (4) every frame has at least `y_min` edges;
//! - (5) every edge appears exactly once;
//! - (6)/(7) an edge can only be shown if it was shown in the previous
//!   frame or appears right now, so each edge occupies one contiguous run;
//! - (8) at most one edge appears per frame after the first.
//!
//! Files are written in the solver-agnostic LP text format (plus a JSON
//! mirror); solutions are read back as `name value` lines.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde_json::json;
use thiserror::Error;

use crate::crossing::CrossingGraph;
use crate::story::{simulate, validate, PlanarStory};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    X { edge: usize, t: usize },
    Z { edge: usize, t: usize },
    YMin,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X { edge, t } => write!(f, "x_{edge}_{t}"),
            Var::Z { edge, t } => write!(f, "z_{edge}_{t}"),
            Var::YMin => write!(f, "y_min"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

impl Sense {
    fn lp_symbol(self) -> &'static str {
        match self {
            Sense::Le => "<=",
            Sense::Ge => ">=",
            Sense::Eq => "=",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub name: String,
    /// Paper constraint group (2..=8).
    pub group: u8,
    pub terms: Vec<(Var, i64)>,
    pub sense: Sense,
    pub rhs: i64,
}

/// The full model for one instance and frame horizon.
#[derive(Clone, Debug)]
pub struct IlpModel {
    pub tau: usize,
    pub n: usize,
    pub x_edges: Vec<(usize, usize)>,
    pub constraints: Vec<Constraint>,
}

impl IlpModel {
    /// Builds the model with frame horizon `tau >= 1`. Every story has at
    /// most `n` frames, so `tau = n` is always sufficient; trailing no-op
    /// frames are harmless to the maximized minimum.
    pub fn build(x: &CrossingGraph, tau: usize) -> Self {
        assert!(tau >= 1, "the model needs at least one frame");
        let n = x.n();
        let x_edges = x.edges();
        let mut constraints = Vec::new();

        for t in 1..=tau {
            for &(e, f) in &x_edges {
                constraints.push(Constraint {
                    name: format!("c2_t{t}_{e}_{f}"),
                    group: 2,
                    terms: vec![(Var::X { edge: e, t }, 1), (Var::X { edge: f, t }, 1)],
                    sense: Sense::Le,
                    rhs: 1,
                });
            }
        }
        for e in 0..n {
            constraints.push(Constraint {
                name: format!("c3_{e}"),
                group: 3,
                terms: (1..=tau).map(|t| (Var::X { edge: e, t }, 1)).collect(),
                sense: Sense::Ge,
                rhs: 1,
            });
        }
        for t in 1..=tau {
            let mut terms: Vec<(Var, i64)> =
                (0..n).map(|e| (Var::X { edge: e, t }, 1)).collect();
            terms.push((Var::YMin, -1));
            constraints.push(Constraint {
                name: format!("c4_t{t}"),
                group: 4,
                terms,
                sense: Sense::Ge,
                rhs: 0,
            });
        }
        for e in 0..n {
            constraints.push(Constraint {
                name: format!("c5_{e}"),
                group: 5,
                terms: (1..=tau).map(|t| (Var::Z { edge: e, t }, 1)).collect(),
                sense: Sense::Eq,
                rhs: 1,
            });
        }
        for e in 0..n {
            for t in 2..=tau {
                constraints.push(Constraint {
                    name: format!("c6_{e}_t{t}"),
                    group: 6,
                    terms: vec![
                        (Var::Z { edge: e, t }, 1),
                        (Var::X { edge: e, t: t - 1 }, 1),
                        (Var::X { edge: e, t }, -1),
                    ],
                    sense: Sense::Ge,
                    rhs: 0,
                });
            }
        }
        for e in 0..n {
            constraints.push(Constraint {
                name: format!("c7_{e}"),
                group: 7,
                terms: vec![(Var::Z { edge: e, t: 1 }, 1), (Var::X { edge: e, t: 1 }, -1)],
                sense: Sense::Ge,
                rhs: 0,
            });
        }
        for t in 2..=tau {
            constraints.push(Constraint {
                name: format!("c8_t{t}"),
                group: 8,
                terms: (0..n).map(|e| (Var::Z { edge: e, t }, 1)).collect(),
                sense: Sense::Le,
                rhs: 1,
            });
        }

        IlpModel {
            tau,
            n,
            x_edges,
            constraints,
        }
    }

    pub fn group_count(&self, group: u8) -> usize {
        self.constraints.iter().filter(|c| c.group == group).count()
    }

    /// All binary variables, x block then z block, in (edge, t) order.
    pub fn binaries(&self) -> Vec<Var> {
        let mut vars = Vec::with_capacity(2 * self.n * self.tau);
        for e in 0..self.n {
            for t in 1..=self.tau {
                vars.push(Var::X { edge: e, t });
            }
        }
        for e in 0..self.n {
            for t in 1..=self.tau {
                vars.push(Var::Z { edge: e, t });
            }
        }
        vars
    }

    /// Serializes the model in LP text format.
    pub fn to_lp(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "\\ planar story ILP: n_x={} tau={}\n",
            self.n, self.tau
        ));
        out.push_str("Maximize\n obj: y_min\nSubject To\n");
        for c in &self.constraints {
            out.push_str(&format!(" {}:", c.name));
            for (i, (var, coef)) in c.terms.iter().enumerate() {
                debug_assert!(*coef == 1 || *coef == -1);
                let sign = if *coef < 0 {
                    "-"
                } else if i == 0 {
                    ""
                } else {
                    "+"
                };
                if sign.is_empty() {
                    out.push_str(&format!(" {var}"));
                } else {
                    out.push_str(&format!(" {sign} {var}"));
                }
            }
            out.push_str(&format!(" {} {}\n", c.sense.lp_symbol(), c.rhs));
        }
        out.push_str("Bounds\n 0 <= y_min\nBinaries\n");
        let binaries = self.binaries();
        for chunk in binaries.chunks(8) {
            let names: Vec<String> = chunk.iter().map(|v| v.to_string()).collect();
            out.push_str(&format!(" {}\n", names.join(" ")));
        }
        out.push_str("End\n");
        out
    }

    /// JSON mirror of the model for tests and tooling without an LP parser.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "tau": self.tau,
            "n_x": self.n,
            "x_edges": self.x_edges,
            "objective": "y_min",
            "constraint_counts": {
                "c2": self.group_count(2),
                "c3": self.group_count(3),
                "c4": self.group_count(4),
                "c5": self.group_count(5),
                "c6": self.group_count(6),
                "c7": self.group_count(7),
                "c8": self.group_count(8),
            },
            "constraints": self.constraints.iter().map(|c| {
                json!({
                    "name": c.name,
                    "group": c.group,
                    "terms": c.terms.iter()
                        .map(|(v, k)| json!([v.to_string(), k]))
                        .collect::<Vec<_>>(),
                    "sense": c.sense.lp_symbol(),
                    "rhs": c.rhs,
                })
            }).collect::<Vec<_>>(),
            "binaries": self.binaries().iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        })
    }
}

/// The default frame horizon: one frame per crossing edge (at least one).
pub fn default_tau(x: &CrossingGraph) -> usize {
    x.n().max(1)
}

/// A smaller horizon that still fits every story starting from an initial
/// frame of at least `initial_size` edges.
pub fn shrunken_tau(x: &CrossingGraph, initial_size: usize) -> usize {
    (x.n() + 1).saturating_sub(initial_size).max(1)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolutionError {
    #[error("line {line}: expected \"name value\"")]
    Malformed { line: usize },
    #[error("variable {name} is not assigned")]
    Missing { name: String },
    #[error("solution violates constraint {constraint}: {detail}")]
    Violated { constraint: String, detail: String },
}

/// Parses `name value` lines ('#' comments allowed).
pub fn parse_solution(text: &str) -> Result<HashMap<String, f64>, SolutionError> {
    let mut values = HashMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let (Some(name), Some(value), None) = (it.next(), it.next(), it.next()) else {
            return Err(SolutionError::Malformed { line: idx + 1 });
        };
        let value: f64 = value
            .parse()
            .map_err(|_| SolutionError::Malformed { line: idx + 1 })?;
        values.insert(name.to_string(), value);
    }
    Ok(values)
}

fn is_one(v: f64) -> bool {
    v > 0.5
}

/// Reconstructs a story from a solved model: the initial frame is read from
/// the first-frame x variables, the insertion order from the z activations
/// in frame order (no-op frames skipped). The story is validated and
/// simulated; its mu is returned alongside.
pub fn decode_ilp_solution(
    x: &CrossingGraph,
    tau: usize,
    values: &HashMap<String, f64>,
) -> Result<(PlanarStory, usize), SolutionError> {
    let n = x.n();
    let fetch = |var: Var| -> Result<f64, SolutionError> {
        let name = var.to_string();
        values
            .get(&name)
            .copied()
            .ok_or(SolutionError::Missing { name })
    };

    // Appearance time of every edge: exactly one z per edge (5), at most
    // one appearance per frame past the first (8).
    let mut entering = vec![0usize; n];
    for e in 0..n {
        let mut times: Vec<usize> = Vec::new();
        for t in 1..=tau {
            if is_one(fetch(Var::Z { edge: e, t })?) {
                times.push(t);
            }
        }
        if times.len() != 1 {
            return Err(SolutionError::Violated {
                constraint: "(5)".into(),
                detail: format!("edge {e} appears {} times", times.len()),
            });
        }
        entering[e] = times[0];
    }
    for t in 2..=tau {
        let count = entering.iter().filter(|&&et| et == t).count();
        if count > 1 {
            return Err(SolutionError::Violated {
                constraint: "(8)".into(),
                detail: format!("{count} edges appear in frame {t}"),
            });
        }
    }

    let mut initial = BTreeSet::new();
    for e in 0..n {
        let shown_first = is_one(fetch(Var::X { edge: e, t: 1 })?);
        let appears_first = entering[e] == 1;
        if shown_first != appears_first {
            return Err(SolutionError::Violated {
                constraint: "(7)".into(),
                detail: format!(
                    "edge {e}: x_{e}_1 = {} but z says appearance at frame {}",
                    shown_first as u8, entering[e]
                ),
            });
        }
        if shown_first {
            initial.insert(e);
        }
    }

    let mut later: Vec<(usize, usize)> = (0..n)
        .filter(|&e| entering[e] >= 2)
        .map(|e| (entering[e], e))
        .collect();
    later.sort_unstable();
    let story = PlanarStory::new(initial, later.into_iter().map(|(_, e)| e).collect());

    let report = validate(x, &story);
    if !report.accepted() {
        return Err(SolutionError::Violated {
            constraint: "(2)".into(),
            detail: format!("decoded story is invalid: {:?}", report.violations[0]),
        });
    }
    let trace = simulate(x, &story).expect("validated story simulates");
    Ok((story, trace.mu))
}
