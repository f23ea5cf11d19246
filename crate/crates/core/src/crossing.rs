//! The crossing graph: the abstract substrate all solvers operate on.
//!
//! Vertices stand for crossing edges of a geometric graph, adjacency for a
//! segment crossing. Instances may also be supplied directly as edge lists,
//! in which case the graph is taken at face value. Isolated vertices
//! (crossing-free edges) persist in every frame of every story, so they are
//! stripped on construction and only counted in `free_edge_count`.

use std::collections::BTreeSet;

use thiserror::Error;

/// Simple undirected graph with sorted adjacency lists.
///
/// Construction guarantees: no self-loops, no parallel edges, symmetric
/// adjacency, and (via [`CrossingGraph::with_remark1_filter`]) no isolated
/// vertices. `edge_labels`, when present, maps an X-vertex back to the id it
/// had before filtering (the edge index of the originating geometric graph,
/// or the raw id of an edge-list file).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingGraph {
    adjacency: Vec<Vec<usize>>,
    edge_labels: Option<Vec<usize>>,
    free_edge_count: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CrossingError {
    #[error("line {line}: expected \"u v\", found {found:?}")]
    Malformed { line: usize, found: String },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge ({u}, {v})")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("edge ({u}, {v}) out of range (n = {n})")]
    OutOfRange { u: usize, v: usize, n: usize },
}

impl CrossingGraph {
    /// Builds a graph on `n` vertices from an unordered edge list.
    /// No filtering is applied; generators use this when every vertex is
    /// known to have positive degree.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, CrossingError> {
        let mut adjacency = vec![Vec::new(); n];
        let mut seen = BTreeSet::new();
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(CrossingError::OutOfRange { u, v, n });
            }
            if u == v {
                return Err(CrossingError::SelfLoop { line: 0, vertex: u });
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(CrossingError::DuplicateEdge {
                    line: 0,
                    u: u.min(v),
                    v: u.max(v),
                });
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(CrossingGraph {
            adjacency,
            edge_labels: None,
            free_edge_count: 0,
        })
    }

    /// Builds the graph on `m` raw vertices, then removes isolated vertices;
    /// removed vertices are counted in `free_edge_count` and the survivors
    /// keep their original id in `edge_labels` (order preserved).
    pub fn with_remark1_filter(m: usize, edges: &[(usize, usize)]) -> Self {
        let mut degree = vec![0usize; m];
        for &(u, v) in edges {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut relabel = vec![usize::MAX; m];
        let mut labels = Vec::new();
        for v in 0..m {
            if degree[v] > 0 {
                relabel[v] = labels.len();
                labels.push(v);
            }
        }
        let n = labels.len();
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            adjacency[relabel[u]].push(relabel[v]);
            adjacency[relabel[v]].push(relabel[u]);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        CrossingGraph {
            adjacency,
            edge_labels: Some(labels),
            free_edge_count: m - n,
        }
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|l| l.len()).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(|l| l.len()).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges with the smaller endpoint first, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n() {
            for &v in &self.adjacency[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn free_edge_count(&self) -> usize {
        self.free_edge_count
    }

    pub fn edge_labels(&self) -> Option<&[usize]> {
        self.edge_labels.as_deref()
    }

    /// First edge with both endpoints in `set`, if any (an independence
    /// violation witness).
    pub fn independence_violation(&self, set: &BTreeSet<usize>) -> Option<(usize, usize)> {
        for &u in set {
            for &v in &self.adjacency[u] {
                if v > u && set.contains(&v) {
                    return Some((u, v));
                }
            }
        }
        None
    }

    pub fn is_independent(&self, set: &BTreeSet<usize>) -> bool {
        self.independence_violation(set).is_none()
    }

    /// Induced subgraph on `keep` (sorted); returns the subgraph and the
    /// map from new ids to original ids.
    pub fn induced(&self, keep: &BTreeSet<usize>) -> (CrossingGraph, Vec<usize>) {
        let map: Vec<usize> = keep.iter().copied().collect();
        let mut inv = vec![usize::MAX; self.n()];
        for (new, &old) in map.iter().enumerate() {
            inv[old] = new;
        }
        let mut adjacency = vec![Vec::new(); map.len()];
        for (new, &old) in map.iter().enumerate() {
            for &w in &self.adjacency[old] {
                if inv[w] != usize::MAX {
                    adjacency[new].push(inv[w]);
                }
            }
            adjacency[new].sort_unstable();
        }
        (
            CrossingGraph {
                adjacency,
                edge_labels: None,
                free_edge_count: 0,
            },
            map,
        )
    }

    /// Connected components as sorted vertex lists, ordered by smallest
    /// member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            let mut comp = Vec::new();
            seen[start] = true;
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in &self.adjacency[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Per-vertex neighbor bitmasks; available only for n <= 64.
    pub fn neighbor_masks(&self) -> Option<Vec<u64>> {
        if self.n() > 64 {
            return None;
        }
        Some(
            self.adjacency
                .iter()
                .map(|list| list.iter().fold(0u64, |m, &v| m | (1 << v)))
                .collect(),
        )
    }
}

/// Parses the edge-list text format: one `u v` pair per line, 0-based ids,
/// `#` starts a comment. The vertex count is the maximum id plus one; ids
/// never mentioned in an edge are isolated and get folded into
/// `free_edge_count` like crossing-free edges.
pub fn parse_crossing_graph(text: &str) -> Result<CrossingGraph, CrossingError> {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut seen = BTreeSet::new();
    let mut max_id = None::<usize>;
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let parse_tok = |tok: Option<&str>| -> Result<usize, CrossingError> {
            tok.and_then(|t| t.parse::<usize>().ok())
                .ok_or(CrossingError::Malformed {
                    line: line_no,
                    found: line.to_string(),
                })
        };
        let u = parse_tok(it.next())?;
        let v = parse_tok(it.next())?;
        if it.next().is_some() {
            return Err(CrossingError::Malformed {
                line: line_no,
                found: line.to_string(),
            });
        }
        if u == v {
            return Err(CrossingError::SelfLoop {
                line: line_no,
                vertex: u,
            });
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(CrossingError::DuplicateEdge {
                line: line_no,
                u: u.min(v),
                v: u.max(v),
            });
        }
        max_id = Some(max_id.map_or(u.max(v), |m| m.max(u.max(v))));
        edges.push((u, v));
    }
    let m = max_id.map_or(0, |m| m + 1);
    Ok(CrossingGraph::with_remark1_filter(m, &edges))
}

/// Serializes a crossing graph as edge-list text (sorted, deterministic).
pub fn crossing_graph_to_text(x: &CrossingGraph) -> String {
    let mut out = format!(
        "# crossing graph: {} vertices, {} crossings, {} free edges\n",
        x.n(),
        x.edge_count(),
        x.free_edge_count()
    );
    for (u, v) in x.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_p3() {
        let x = parse_crossing_graph("0 1\n1 2\n").unwrap();
        assert_eq!(x.n(), 3);
        assert_eq!(x.edge_count(), 2);
        assert_eq!(x.degree(1), 2);
        assert_eq!(x.free_edge_count(), 0);
    }

    #[test]
    fn parse_rejects_self_loop() {
        assert_eq!(
            parse_crossing_graph("0 0\n"),
            Err(CrossingError::SelfLoop { line: 1, vertex: 0 })
        );
    }

    #[test]
    fn parse_rejects_duplicates_and_garbage() {
        assert!(matches!(
            parse_crossing_graph("0 1\n1 0\n"),
            Err(CrossingError::DuplicateEdge { line: 2, .. })
        ));
        assert!(matches!(
            parse_crossing_graph("0 x\n"),
            Err(CrossingError::Malformed { line: 1, .. })
        ));
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let x = parse_crossing_graph("# header\n\n0 1 # tail comment\n").unwrap();
        assert_eq!(x.n(), 2);
        assert_eq!(x.edge_count(), 1);
    }

    #[test]
    fn unmentioned_ids_become_free_edges() {
        // Vertex 1 never appears: it is isolated, hence filtered.
        let x = parse_crossing_graph("0 2\n").unwrap();
        assert_eq!(x.n(), 2);
        assert_eq!(x.free_edge_count(), 1);
        assert_eq!(x.edge_labels(), Some(&[0usize, 2][..]));
    }

    #[test]
    fn round_trip_text() {
        let x = parse_crossing_graph("0 1\n1 2\n2 3\n3 0\n").unwrap();
        let text = crossing_graph_to_text(&x);
        let y = parse_crossing_graph(&text).unwrap();
        assert_eq!(x.edges(), y.edges());
    }

    #[test]
    fn adjacency_is_symmetric() {
        let x = parse_crossing_graph("0 1\n1 2\n2 0\n2 3\n").unwrap();
        for u in 0..x.n() {
            for &v in x.neighbors(u) {
                assert!(x.neighbors(v).contains(&u));
            }
        }
    }

    #[test]
    fn induced_subgraph() {
        let x = parse_crossing_graph("0 1\n1 2\n2 3\n").unwrap();
        let keep: BTreeSet<usize> = [1, 2, 3].into_iter().collect();
        let (sub, map) = x.induced(&keep);
        assert_eq!(sub.n(), 3);
        assert_eq!(sub.edge_count(), 2);
        assert_eq!(map, vec![1, 2, 3]);
    }

    #[test]
    fn components_split() {
        let x = parse_crossing_graph("0 1\n2 3\n3 4\n").unwrap();
        let comps = x.components();
        assert_eq!(comps, vec![vec![0, 1], vec![2, 3, 4]]);
    }
}
