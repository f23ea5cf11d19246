//! Random series-parallel and planar crossing graphs with recognizers.
//!
//! Both generators build a maximal member of the class (a 2-tree, or a
//! stacked triangulation) and then delete random non-bridge edges down to
//! the requested density, which preserves both the class and connectivity.
//! The class membership of every output is re-checked by an independent
//! recognizer: a degree-two reduction for series-parallel graphs and a
//! left-right planarity test for planar graphs.

use std::collections::BTreeSet;

use rand::Rng;
use rustworkx_core::petgraph::graph::UnGraph;

use super::GenError;
use crate::crossing::CrossingGraph;
use crate::rng::{rng_from_seed, SeededRng};

/// Generates a connected series-parallel graph with `n` vertices and
/// `round(density * n)` edges.
pub fn gen_series_parallel(n: usize, density: f64, seed: u64) -> Result<CrossingGraph, GenError> {
    if n < 2 {
        return Err(GenError::Invalid("need at least 2 vertices".into()));
    }
    let m = edge_target(n, density)?;
    let max = 2 * n - 3;
    if m > max {
        return Err(GenError::Infeasible(format!(
            "series-parallel graphs on {n} vertices have at most {max} edges, {m} requested"
        )));
    }
    let mut rng = rng_from_seed(seed);

    // Random 2-tree: every new vertex attaches to the endpoints of an
    // existing edge.
    let mut edges: Vec<(usize, usize)> = vec![(0, 1)];
    for v in 2..n {
        let (a, b) = edges[rng.gen_range(0..edges.len())];
        edges.push((a, v));
        edges.push((b, v));
    }
    thin_edges(n, &mut edges, m, &mut rng);

    let x = CrossingGraph::from_edges(n, &edges).expect("2-tree edges are simple");
    assert!(
        is_series_parallel(&x) && x.components().len() == 1,
        "series-parallel generation must pass its recognizer"
    );
    Ok(x)
}

/// Generates a connected planar graph with `n` vertices and
/// `round(density * n)` edges.
pub fn gen_planar(n: usize, density: f64, seed: u64) -> Result<CrossingGraph, GenError> {
    if n < 3 {
        return Err(GenError::Invalid("need at least 3 vertices".into()));
    }
    let m = edge_target(n, density)?;
    let max = 3 * n - 6;
    if m > max {
        return Err(GenError::Infeasible(format!(
            "planar graphs on {n} vertices have at most {max} edges, {m} requested"
        )));
    }
    let mut rng = rng_from_seed(seed);

    // Stacked triangulation: each new vertex subdivides a random face.
    let mut edges: Vec<(usize, usize)> = vec![(0, 1), (1, 2), (0, 2)];
    let mut faces: Vec<[usize; 3]> = vec![[0, 1, 2]];
    for v in 3..n {
        let idx = rng.gen_range(0..faces.len());
        let [a, b, c] = faces.swap_remove(idx);
        edges.push((a, v));
        edges.push((b, v));
        edges.push((c, v));
        faces.push([a, b, v]);
        faces.push([b, c, v]);
        faces.push([a, c, v]);
    }
    thin_edges(n, &mut edges, m, &mut rng);

    let x = CrossingGraph::from_edges(n, &edges).expect("triangulation edges are simple");
    assert!(
        is_planar_graph(&x) && x.components().len() == 1,
        "planar generation must pass its recognizer"
    );
    Ok(x)
}

fn edge_target(n: usize, density: f64) -> Result<usize, GenError> {
    if !(density > 0.0) || !density.is_finite() {
        return Err(GenError::Invalid("density must be positive".into()));
    }
    let m = (density * n as f64).round() as usize;
    if m + 1 < n {
        return Err(GenError::Infeasible(format!(
            "{m} edges cannot keep {n} vertices connected"
        )));
    }
    Ok(m)
}

/// Deletes uniformly chosen non-bridge edges until `target` remain.
fn thin_edges(n: usize, edges: &mut Vec<(usize, usize)>, target: usize, rng: &mut SeededRng) {
    while edges.len() > target {
        let bridges = bridge_flags(n, edges);
        let candidates: Vec<usize> = (0..edges.len()).filter(|&i| !bridges[i]).collect();
        // More edges than a tree implies a cycle, hence a non-bridge.
        let &pick = &candidates[rng.gen_range(0..candidates.len())];
        edges.swap_remove(pick);
    }
    edges.sort_unstable();
}

/// Tarjan bridge detection over an edge list.
fn bridge_flags(n: usize, edges: &[(usize, usize)]) -> Vec<bool> {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        adj[u].push((v, i));
        adj[v].push((u, i));
    }
    let mut bridges = vec![false; edges.len()];
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0usize;
    // Iterative DFS: (vertex, parent edge, neighbor cursor).
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        stack.push((root, usize::MAX, 0));
        while let Some(&mut (v, pe, ref mut cursor)) = stack.last_mut() {
            if *cursor < adj[v].len() {
                let (w, ei) = adj[v][*cursor];
                *cursor += 1;
                if ei == pe {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, ei, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&mut (parent, _, _)) = stack.last_mut() {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] > disc[parent] {
                        bridges[pe] = true;
                    }
                }
            }
        }
    }
    bridges
}

/// Series-parallel (equivalently, no K4 minor) check by exhaustive
/// degree-two reduction: repeatedly delete degree-<=1 vertices and contract
/// degree-2 vertices; the graph is series-parallel iff everything reduces.
pub fn is_series_parallel(x: &CrossingGraph) -> bool {
    let n = x.n();
    let mut adj: Vec<BTreeSet<usize>> = (0..n)
        .map(|v| x.neighbors(v).iter().copied().collect())
        .collect();
    let mut alive: Vec<bool> = vec![true; n];
    let mut remaining = n;
    loop {
        let Some(v) = (0..n).find(|&v| alive[v] && adj[v].len() <= 2) else {
            return remaining == 0;
        };
        let neighbors: Vec<usize> = adj[v].iter().copied().collect();
        for &w in &neighbors {
            adj[w].remove(&v);
        }
        if let [a, b] = neighbors[..] {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        adj[v].clear();
        alive[v] = false;
        remaining -= 1;
    }
}

/// Left-right planarity test (oracle side; generation is independent).
pub fn is_planar_graph(x: &CrossingGraph) -> bool {
    let mut graph: UnGraph<(), ()> = UnGraph::with_capacity(x.n(), x.edge_count());
    let nodes: Vec<_> = (0..x.n()).map(|_| graph.add_node(())).collect();
    for (u, v) in x.edges() {
        graph.add_edge(nodes[u], nodes[v], ());
    }
    rustworkx_core::planar::is_planar(&graph)
}
