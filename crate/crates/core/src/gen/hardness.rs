//! Hardness-proof constructions as generators with known ground truth.

use std::collections::BTreeSet;

use serde::Serialize;

use super::GenError;
use crate::crossing::CrossingGraph;
use crate::exact::max_independent_set;
use crate::story::{simulate, PlanarStory};

/// The caterpillar family on `3l + 3` vertices whose min-frame optimal
/// stories must start from a non-maximal independent set.
///
/// Vertex ids: `r = 0`, `u = 1`, `v = 2`, `w_i = 3 + i`, `u_i = 3 + l + i`,
/// `v_i = 3 + 2l + i` for `i` in `0..l`. The hub `r` is adjacent to `u`,
/// `v` and all `w_i`; `u` and `v` carry `l` private leaves each.
#[derive(Clone, Debug, Serialize)]
pub struct Fig3Instance {
    #[serde(skip)]
    pub graph: CrossingGraph,
    pub l: usize,
    /// Optimal minimum frame size: 3l/2 + 1.
    pub mu: usize,
    /// Every story starting from a maximal independent set stays at or
    /// below this: l + 2.
    pub maximal_start_bound: usize,
    /// A story achieving `mu`.
    pub witness: PlanarStory,
    /// All five maximal independent sets (four up to the u/v symmetry).
    pub maximal_independent_sets: Vec<BTreeSet<usize>>,
}

pub fn gen_fig3_family(l: usize) -> Result<Fig3Instance, GenError> {
    if l < 4 || l % 2 != 0 {
        return Err(GenError::Invalid("the family needs an even l >= 4".into()));
    }
    let w = |i: usize| 3 + i;
    let u_leaf = |i: usize| 3 + l + i;
    let v_leaf = |i: usize| 3 + 2 * l + i;

    let mut edges = vec![(0usize, 1usize), (0, 2)];
    for i in 0..l {
        edges.push((0, w(i)));
        edges.push((1, u_leaf(i)));
        edges.push((2, v_leaf(i)));
    }
    let graph = CrossingGraph::from_edges(3 * l + 3, &edges).expect("family edges are simple");

    // Initial frame {u_1..u_l, v, w_1..w_{l/2}}, then insert
    // v_1..v_l, r, w_{l/2+1}..w_l, u.
    let mut initial: BTreeSet<usize> = (0..l).map(u_leaf).collect();
    initial.insert(2);
    initial.extend((0..l / 2).map(w));
    let mut order: Vec<usize> = (0..l).map(v_leaf).collect();
    order.push(0);
    order.extend((l / 2..l).map(w));
    order.push(1);
    let witness = PlanarStory::new(initial, order);

    let mu = 3 * l / 2 + 1;
    let trace = simulate(&graph, &witness).expect("the witness story is valid");
    assert_eq!(trace.mu, mu, "witness story must achieve the recorded mu");
    assert_eq!(trace.frame_sizes[0], mu);
    assert_eq!(*trace.frame_sizes.last().unwrap(), mu);

    let all_w: BTreeSet<usize> = (0..l).map(w).collect();
    let all_u: BTreeSet<usize> = (0..l).map(u_leaf).collect();
    let all_v: BTreeSet<usize> = (0..l).map(v_leaf).collect();
    let union = |parts: &[&BTreeSet<usize>], extra: &[usize]| -> BTreeSet<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::new();
        for part in parts {
            set.extend(part.iter().copied());
        }
        set.extend(extra.iter().copied());
        set
    };
    let maximal_independent_sets = vec![
        union(&[&all_u, &all_v], &[0]),    // contains r
        union(&[&all_w], &[1, 2]),         // contains u and v
        union(&[&all_w, &all_v], &[1]),    // contains u only
        union(&[&all_w, &all_u], &[2]),    // contains v only
        union(&[&all_w, &all_u, &all_v], &[]),
    ];
    for set in &maximal_independent_sets {
        assert!(graph.is_independent(set));
        let maximal = (0..graph.n())
            .all(|x| set.contains(&x) || graph.neighbors(x).iter().any(|y| set.contains(y)));
        assert!(maximal, "recorded sets must be maximal");
    }

    Ok(Fig3Instance {
        graph,
        l,
        mu,
        maximal_start_bound: l + 2,
        witness,
        maximal_independent_sets,
    })
}

/// Disjoint union of a host graph and a star with `k + 1` leaves: the
/// resulting instance has mu >= k + 1 iff the host has an independent set
/// of size >= k.
#[derive(Clone, Debug, Serialize)]
pub struct StarPlusInstance {
    #[serde(skip)]
    pub graph: CrossingGraph,
    pub k: usize,
    pub host_vertices: usize,
    /// Exact independence number of the host when it is small enough to
    /// compute directly.
    pub host_alpha: Option<usize>,
    pub center: usize,
}

pub fn gen_star_plus(h: &CrossingGraph, k: usize) -> Result<StarPlusInstance, GenError> {
    if (0..h.n()).any(|v| h.degree(v) == 0) {
        return Err(GenError::Invalid(
            "host graph must not contain isolated vertices".into(),
        ));
    }
    if k == 0 {
        return Err(GenError::Invalid("k must be positive".into()));
    }
    let center = h.n();
    let mut edges = h.edges();
    for leaf in 1..=(k + 1) {
        edges.push((center, center + leaf));
    }
    let graph = CrossingGraph::from_edges(h.n() + k + 2, &edges).expect("star edges are simple");
    let host_alpha = (h.n() <= 30).then(|| max_independent_set(h).len());
    Ok(StarPlusInstance {
        graph,
        k,
        host_vertices: h.n(),
        host_alpha,
        center,
    })
}

// ---------------------------------------------------------------------------
// NAE-3SAT construction
// ---------------------------------------------------------------------------

/// A literal over 0-based variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Lit {
    pub var: usize,
    pub negated: bool,
}

pub type Clause = [Lit; 3];

/// Crossing graph of the balanced-pair hardness construction: one triangle
/// per clause, one cycle of length twice the occurrence count per variable,
/// and a matching-label edge from each clause literal into its variable
/// cycle. Two disjoint independent sets of size `4p` each exist iff the
/// formula is NAE-satisfiable.
#[derive(Clone, Debug, Serialize)]
pub struct NaeInstance {
    #[serde(skip)]
    pub graph: CrossingGraph,
    pub p: usize,
    /// Required size of both independent sets: 4p.
    pub target: usize,
    pub var_count: usize,
    /// Brute-force NAE satisfiability (present for up to 20 variables).
    pub nae_satisfiable: Option<bool>,
}

pub fn gen_nae3sat(clauses: &[Clause]) -> Result<NaeInstance, GenError> {
    if clauses.is_empty() {
        return Err(GenError::Invalid("at least one clause is required".into()));
    }
    for (i, clause) in clauses.iter().enumerate() {
        for a in 0..3 {
            for b in (a + 1)..3 {
                if clause[a].var == clause[b].var {
                    return Err(GenError::Invalid(format!(
                        "clause {i} mentions variable {} twice",
                        clause[a].var
                    )));
                }
            }
        }
    }
    let p = clauses.len();
    let var_count = clauses
        .iter()
        .flat_map(|c| c.iter().map(|lit| lit.var))
        .max()
        .unwrap()
        + 1;

    // Occurrences per variable in clause order.
    let mut occurrences: Vec<Vec<(usize, usize)>> = vec![Vec::new(); var_count];
    for (c, clause) in clauses.iter().enumerate() {
        for (pos, lit) in clause.iter().enumerate() {
            occurrences[lit.var].push((c, pos));
        }
    }

    // Clause triangles occupy ids 0..3p, variable cycles follow.
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for c in 0..p {
        let base = 3 * c;
        edges.push((base, base + 1));
        edges.push((base + 1, base + 2));
        edges.push((base, base + 2));
    }
    let mut next = 3 * p;
    let mut cycle_base = vec![0usize; var_count];
    for x in 0..var_count {
        let d = occurrences[x].len();
        if d == 0 {
            continue;
        }
        cycle_base[x] = next;
        let len = 2 * d;
        if len == 2 {
            edges.push((next, next + 1));
        } else {
            for i in 0..len {
                let a = next + i;
                let b = next + (i + 1) % len;
                edges.push((a.min(b), a.max(b)));
            }
        }
        next += len;
    }
    // Connect each clause literal to the same-label cycle vertex of its
    // occurrence slot: even offsets are positive, odd offsets negative.
    for x in 0..var_count {
        for (j, &(c, pos)) in occurrences[x].iter().enumerate() {
            let w = 3 * c + pos;
            let cycle_vertex = cycle_base[x] + 2 * j + usize::from(clauses[c][pos].negated);
            edges.push((w.min(cycle_vertex), w.max(cycle_vertex)));
        }
    }

    let graph = CrossingGraph::from_edges(next, &edges).expect("construction is simple");
    assert_eq!(graph.n(), 9 * p, "3p triangle vertices plus 6p cycle vertices");
    assert!((0..graph.n()).all(|v| graph.degree(v) >= 1));

    let nae_satisfiable = (var_count <= 20).then(|| nae_satisfiable(clauses, var_count));
    Ok(NaeInstance {
        graph,
        p,
        target: 4 * p,
        var_count,
        nae_satisfiable,
    })
}

/// Truth-table NAE check: some assignment leaves every clause with at least
/// one true and one false literal.
pub fn nae_satisfiable(clauses: &[Clause], var_count: usize) -> bool {
    assert!(var_count <= 20, "truth table limited to 20 variables");
    (0u32..(1 << var_count)).any(|assignment| {
        clauses.iter().all(|clause| {
            let values: Vec<bool> = clause
                .iter()
                .map(|lit| ((assignment >> lit.var) & 1 == 1) != lit.negated)
                .collect();
            values.contains(&true) && values.contains(&false)
        })
    })
}

/// Parses clause text: clauses split by ';' or newlines, each clause three
/// nonzero integers (1-based variables, negative for negated literals).
pub fn parse_clauses(text: &str) -> Result<Vec<Clause>, GenError> {
    let mut clauses = Vec::new();
    for chunk in text.split([';', '\n']) {
        let chunk = chunk.trim();
        if chunk.is_empty() {
            continue;
        }
        let lits: Vec<i64> = chunk
            .split_whitespace()
            .map(|t| t.parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|_| GenError::Invalid(format!("bad clause {chunk:?}")))?;
        if lits.len() != 3 || lits.contains(&0) {
            return Err(GenError::Invalid(format!(
                "clause {chunk:?} must contain exactly three nonzero literals"
            )));
        }
        let clause: Vec<Lit> = lits
            .iter()
            .map(|&v| Lit {
                var: (v.unsigned_abs() as usize) - 1,
                negated: v < 0,
            })
            .collect();
        clauses.push([clause[0], clause[1], clause[2]]);
    }
    if clauses.is_empty() {
        return Err(GenError::Invalid("no clauses found".into()));
    }
    Ok(clauses)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::story::validate;

    #[test]
    fn fig3_l4_shape_and_truth() {
        let inst = gen_fig3_family(4).unwrap();
        assert_eq!(inst.graph.n(), 15);
        assert_eq!(inst.mu, 7);
        assert_eq!(inst.maximal_start_bound, 6);
        assert!(validate(&inst.graph, &inst.witness).accepted());
        let trace = simulate(&inst.graph, &inst.witness).unwrap();
        assert_eq!(trace.mu, 7);
        assert_eq!(trace.frame_sizes[0], 7);
        assert_eq!(*trace.frame_sizes.last().unwrap(), 7);
        // Sizes of the recorded maximal sets: 2l+1, l+2, 2l+1, 2l+1, 3l.
        let sizes: Vec<usize> = inst
            .maximal_independent_sets
            .iter()
            .map(|s| s.len())
            .collect();
        assert_eq!(sizes, vec![9, 6, 9, 9, 12]);
    }

    #[test]
    fn fig3_rejects_odd_or_small_l() {
        assert!(gen_fig3_family(3).is_err());
        assert!(gen_fig3_family(5).is_err());
        assert!(gen_fig3_family(2).is_err());
    }

    #[test]
    fn star_plus_shape() {
        let h = crate::crossing::parse_crossing_graph("0 1\n1 2\n2 0\n").unwrap();
        let inst = gen_star_plus(&h, 2).unwrap();
        assert_eq!(inst.graph.n(), 3 + 1 + 3);
        assert_eq!(inst.host_alpha, Some(1));
        assert_eq!(inst.graph.degree(inst.center), 3);
    }

    #[test]
    fn star_plus_rejects_isolated_hosts() {
        let h = CrossingGraph::from_edges(3, &[(0, 1)]).unwrap();
        assert!(gen_star_plus(&h, 1).is_err());
    }

    #[test]
    fn nae_truth_table() {
        let clauses = parse_clauses("1 2 3").unwrap();
        assert!(nae_satisfiable(&clauses, 3));
        // All four violating sign patterns over three variables kill every
        // assignment.
        let unsat = parse_clauses("1 2 3; 1 -2 -3; -1 2 -3; -1 -2 3").unwrap();
        assert!(!nae_satisfiable(&unsat, 3));
    }

    #[test]
    fn nae_instance_shape() {
        // The three-clause formula from the construction's illustration.
        let clauses = parse_clauses("1 3 -4; 1 3 -2; -2 -3 -4").unwrap();
        let inst = gen_nae3sat(&clauses).unwrap();
        assert_eq!(inst.p, 3);
        assert_eq!(inst.graph.n(), 27);
        assert_eq!(inst.target, 12);
        assert_eq!(inst.nae_satisfiable, Some(true));
        // Triangle vertices have two triangle neighbors and one cycle
        // neighbor.
        for v in 0..9 {
            assert_eq!(inst.graph.degree(v), 3);
        }
    }

    #[test]
    fn nae_rejects_repeated_variables() {
        let clauses = vec![[
            Lit { var: 0, negated: false },
            Lit { var: 0, negated: true },
            Lit { var: 1, negated: false },
        ]];
        assert!(gen_nae3sat(&clauses).is_err());
    }

    #[test]
    fn clause_parser() {
        assert!(parse_clauses("1 2").is_err());
        assert!(parse_clauses("1 2 0").is_err());
        assert!(parse_clauses("").is_err());
        let ok = parse_clauses("1 -2 3\n-1 2 -3").unwrap();
        assert_eq!(ok.len(), 2);
        assert_eq!(ok[0][1], Lit { var: 1, negated: true });
    }
}
