//! Tree decompositions via the Minimum Fill-in elimination heuristic.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::crossing::CrossingGraph;
use crate::rng::{rng_from_seed, SeededRng};
use rand::Rng;

/// A rooted tree decomposition: bags over the vertices of a crossing graph,
/// parent links after rooting, and the attained width.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    /// Bags as sorted vertex lists.
    pub bags: Vec<Vec<usize>>,
    /// Parent of each node; `None` exactly for the root.
    pub parent: Vec<Option<usize>>,
    pub root: usize,
    /// max bag size - 1.
    pub width: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreewidthError {
    #[error("width cap {cap} exceeded: heuristic decomposition has width {attained}")]
    WidthCapExceeded { cap: usize, attained: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl TreeDecomposition {
    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    /// Children lists derived from the parent links.
    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut children = vec![Vec::new(); self.bags.len()];
        for (node, parent) in self.parent.iter().enumerate() {
            if let Some(p) = parent {
                children[*p].push(node);
            }
        }
        children
    }

    /// Nodes in post-order (children before parents).
    pub fn post_order(&self) -> Vec<usize> {
        let children = self.children();
        let mut order = Vec::with_capacity(self.bags.len());
        let mut stack = vec![(self.root, false)];
        while let Some((node, expanded)) = stack.pop() {
            if expanded {
                order.push(node);
            } else {
                stack.push((node, true));
                for &c in &children[node] {
                    stack.push((c, false));
                }
            }
        }
        order
    }
}

/// Computes a tree decomposition with the Minimum Fill-in elimination
/// heuristic.
///
/// Each round eliminates the vertex whose neighborhood needs the fewest
/// fill edges to become a clique, breaking ties by fewer neighbors and then
/// uniformly at random under `seed`. Fails with the attained width when it
/// exceeds `width_cap`.
pub fn min_fill_in_decomposition(
    x: &CrossingGraph,
    width_cap: usize,
    seed: u64,
) -> Result<TreeDecomposition, TreewidthError> {
    let mut rng = rng_from_seed(seed);
    let n = x.n();
    if n == 0 {
        return Ok(TreeDecomposition {
            bags: vec![Vec::new()],
            parent: vec![None],
            root: 0,
            width: 0,
        });
    }

    // Working fill graph as adjacency sets.
    let mut adj: Vec<BTreeSet<usize>> = (0..n)
        .map(|v| x.neighbors(v).iter().copied().collect())
        .collect();
    let mut alive = vec![true; n];
    let mut elim_index = vec![usize::MAX; n];
    let mut bags: Vec<Vec<usize>> = Vec::with_capacity(n);

    for round in 0..n {
        let v = pick_min_fill(&adj, &alive, &mut rng);
        elim_index[v] = round;
        let neighbors: Vec<usize> = adj[v].iter().copied().collect();
        let mut bag = neighbors.clone();
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);

        // Make the neighborhood a clique, then remove v.
        for (i, &a) in neighbors.iter().enumerate() {
            for &b in &neighbors[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        for &u in &neighbors {
            adj[u].remove(&v);
        }
        adj[v].clear();
        alive[v] = false;
    }

    let width = bags.iter().map(|b| b.len()).max().unwrap_or(1) - 1;
    if width > width_cap {
        return Err(TreewidthError::WidthCapExceeded {
            cap: width_cap,
            attained: width,
        });
    }

    // Standard elimination tree: node i hangs below the node of the
    // earliest-eliminated other vertex of its bag. Vertices isolated at
    // elimination time become extra roots and are chained under the last
    // node, which keeps occurrence subtrees intact.
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let root = n - 1;
    for i in 0..n {
        let me = bags[i]
            .iter()
            .position(|&u| elim_index[u] == i)
            .expect("eliminated vertex is in its own bag");
        let up = bags[i]
            .iter()
            .enumerate()
            .filter(|&(pos, _)| pos != me)
            .map(|(_, &u)| elim_index[u])
            .min();
        parent[i] = match up {
            Some(j) => Some(j),
            None if i != root => Some(root),
            None => None,
        };
    }

    Ok(TreeDecomposition {
        bags,
        parent,
        root,
        width,
    })
}

fn pick_min_fill(adj: &[BTreeSet<usize>], alive: &[bool], rng: &mut SeededRng) -> usize {
    let mut best: Option<(usize, usize)> = None; // (fill, degree)
    let mut ties: Vec<usize> = Vec::new();
    for v in 0..adj.len() {
        if !alive[v] {
            continue;
        }
        let neighbors: Vec<usize> = adj[v].iter().copied().collect();
        let mut fill = 0usize;
        for (i, &a) in neighbors.iter().enumerate() {
            for &b in &neighbors[i + 1..] {
                if !adj[a].contains(&b) {
                    fill += 1;
                }
            }
        }
        let key = (fill, neighbors.len());
        match best {
            None => {
                best = Some(key);
                ties = vec![v];
            }
            Some(current) if key < current => {
                best = Some(key);
                ties = vec![v];
            }
            Some(current) if key == current => ties.push(v),
            _ => {}
        }
    }
    if ties.len() == 1 {
        ties[0]
    } else {
        ties[rng.gen_range(0..ties.len())]
    }
}

/// Checks the three decomposition conditions: every vertex in some bag,
/// every edge inside some bag, and connected occurrence subtrees.
pub fn verify_decomposition(x: &CrossingGraph, td: &TreeDecomposition) -> bool {
    let n = x.n();
    if td.bags.is_empty() || td.bags.len() != td.parent.len() || td.root >= td.bags.len() {
        return false;
    }
    if td.parent[td.root].is_some() || td.parent.iter().filter(|p| p.is_none()).count() != 1 {
        return false;
    }
    // Parent links must form a tree reaching the root.
    for mut node in 0..td.bags.len() {
        let mut steps = 0;
        while let Some(p) = td.parent[node] {
            node = p;
            steps += 1;
            if steps > td.bags.len() {
                return false;
            }
        }
        if node != td.root {
            return false;
        }
    }

    let mut covered = vec![false; n];
    for bag in &td.bags {
        for &v in bag {
            if v >= n {
                return false;
            }
            covered[v] = true;
        }
    }
    if covered.iter().any(|c| !c) {
        return false;
    }

    for (u, v) in x.edges() {
        let inside = td
            .bags
            .iter()
            .any(|bag| bag.binary_search(&u).is_ok() && bag.binary_search(&v).is_ok());
        if !inside {
            return false;
        }
    }

    // Occurrence subtree of each vertex must be connected: among the nodes
    // containing v, all but one must have their parent also containing v.
    for v in 0..n {
        let holders: Vec<usize> = (0..td.bags.len())
            .filter(|&i| td.bags[i].binary_search(&v).is_ok())
            .collect();
        let mut roots = 0;
        for &i in &holders {
            match td.parent[i] {
                Some(p) if td.bags[p].binary_search(&v).is_ok() => {}
                _ => roots += 1,
            }
        }
        if roots != 1 {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// PACE-style text format
// ---------------------------------------------------------------------------

/// Serializes a decomposition in the PACE-style format: an `s` line with
/// bag count, maximum bag size and vertex count, `b` lines with 1-based
/// vertex ids, then tree edges between 1-based bag ids.
pub fn decomposition_to_pace(td: &TreeDecomposition, n_vertices: usize) -> String {
    let max_bag = td.bags.iter().map(|b| b.len()).max().unwrap_or(0);
    let mut out = format!("s td {} {} {}\n", td.bags.len(), max_bag, n_vertices);
    for (i, bag) in td.bags.iter().enumerate() {
        let ids: Vec<String> = bag.iter().map(|v| (v + 1).to_string()).collect();
        out.push_str(&format!("b {} {}\n", i + 1, ids.join(" ")));
        if bag.is_empty() {
            // Trailing space would be ugly; normalize.
            let len = out.len();
            out.truncate(len - 1);
            out.pop();
            out.push('\n');
        }
    }
    for (node, parent) in td.parent.iter().enumerate() {
        if let Some(p) = parent {
            out.push_str(&format!("{} {}\n", p + 1, node + 1));
        }
    }
    out
}

/// Parses the PACE-style format back into a decomposition rooted at bag 1.
pub fn decomposition_from_pace(text: &str) -> Result<TreeDecomposition, TreewidthError> {
    let mut bags: Vec<Vec<usize>> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut declared = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let parse = |t: &str| -> Result<usize, TreewidthError> {
            t.parse().map_err(|_| TreewidthError::Parse {
                line: line_no,
                message: format!("invalid integer {t:?}"),
            })
        };
        match toks[0] {
            "s" => {
                if toks.len() != 5 || toks[1] != "td" {
                    return Err(TreewidthError::Parse {
                        line: line_no,
                        message: "expected \"s td <bags> <max-bag> <n>\"".into(),
                    });
                }
                let count = parse(toks[2])?;
                bags = vec![Vec::new(); count];
                declared = Some(count);
            }
            "b" => {
                if declared.is_none() || toks.len() < 2 {
                    return Err(TreewidthError::Parse {
                        line: line_no,
                        message: "bag line before header or missing id".into(),
                    });
                }
                let id = parse(toks[1])?;
                if id == 0 || id > bags.len() {
                    return Err(TreewidthError::Parse {
                        line: line_no,
                        message: format!("bag id {id} out of range"),
                    });
                }
                let mut bag = Vec::with_capacity(toks.len() - 2);
                for t in &toks[2..] {
                    let v = parse(t)?;
                    if v == 0 {
                        return Err(TreewidthError::Parse {
                            line: line_no,
                            message: "vertex ids are 1-based".into(),
                        });
                    }
                    bag.push(v - 1);
                }
                bag.sort_unstable();
                bags[id - 1] = bag;
            }
            _ => {
                if toks.len() != 2 {
                    return Err(TreewidthError::Parse {
                        line: line_no,
                        message: "expected a tree edge \"i j\"".into(),
                    });
                }
                let a = parse(toks[0])?;
                let b = parse(toks[1])?;
                if a == 0 || b == 0 || a > bags.len() || b > bags.len() {
                    return Err(TreewidthError::Parse {
                        line: line_no,
                        message: "tree edge id out of range".into(),
                    });
                }
                edges.push((a - 1, b - 1));
            }
        }
    }
    if bags.is_empty() {
        return Err(TreewidthError::Parse {
            line: 0,
            message: "no decomposition header found".into(),
        });
    }
    // Root at bag 0 and orient edges by BFS.
    let mut neighbors = vec![Vec::new(); bags.len()];
    for &(a, b) in &edges {
        neighbors[a].push(b);
        neighbors[b].push(a);
    }
    let mut parent = vec![None; bags.len()];
    let mut seen = vec![false; bags.len()];
    let mut queue = std::collections::VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for &w in &neighbors[v] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(v);
                queue.push_back(w);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(TreewidthError::Parse {
            line: 0,
            message: "decomposition tree is disconnected".into(),
        });
    }
    let width = bags.iter().map(|b| b.len()).max().unwrap_or(1).saturating_sub(1);
    Ok(TreeDecomposition {
        bags,
        parent,
        root: 0,
        width,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crossing::parse_crossing_graph;

    #[test]
    fn tree_has_width_one() {
        let x = parse_crossing_graph("0 1\n1 2\n1 3\n3 4\n").unwrap();
        let td = min_fill_in_decomposition(&x, 12, 0).unwrap();
        assert_eq!(td.width, 1);
        assert!(verify_decomposition(&x, &td));
    }

    #[test]
    fn cycle_has_width_two() {
        let x = parse_crossing_graph("0 1\n1 2\n2 3\n3 0\n").unwrap();
        let td = min_fill_in_decomposition(&x, 12, 0).unwrap();
        assert_eq!(td.width, 2);
        assert!(verify_decomposition(&x, &td));
    }

    #[test]
    fn k5_exceeds_cap_three() {
        let mut edges = Vec::new();
        for u in 0..5 {
            for v in (u + 1)..5 {
                edges.push((u, v));
            }
        }
        let text: String = edges.iter().map(|(u, v)| format!("{u} {v}\n")).collect();
        let x = parse_crossing_graph(&text).unwrap();
        let err = min_fill_in_decomposition(&x, 3, 0).unwrap_err();
        assert_eq!(
            err,
            TreewidthError::WidthCapExceeded {
                cap: 3,
                attained: 4
            }
        );
    }

    #[test]
    fn verifier_rejects_missing_edge_bag() {
        let x = parse_crossing_graph("0 1\n1 2\n").unwrap();
        // Two bags that cover vertices but miss edge (1, 2).
        let td = TreeDecomposition {
            bags: vec![vec![0, 1], vec![2]],
            parent: vec![None, Some(0)],
            root: 0,
            width: 1,
        };
        assert!(!verify_decomposition(&x, &td));
    }

    #[test]
    fn verifier_rejects_disconnected_occurrence() {
        let x = parse_crossing_graph("0 1\n1 2\n").unwrap();
        let td = TreeDecomposition {
            bags: vec![vec![0, 1], vec![1, 2], vec![0]],
            parent: vec![None, Some(0), Some(1)],
            root: 0,
            width: 1,
        };
        // Vertex 0 occurs in bags 0 and 2 which are not adjacent.
        assert!(!verify_decomposition(&x, &td));
    }

    #[test]
    fn verifier_accepts_valid_p3_decomposition() {
        let x = parse_crossing_graph("0 1\n1 2\n").unwrap();
        let td = TreeDecomposition {
            bags: vec![vec![0, 1], vec![1, 2]],
            parent: vec![Some(1), None],
            root: 1,
            width: 1,
        };
        assert!(verify_decomposition(&x, &td));
    }

    #[test]
    fn pace_round_trip() {
        let x = parse_crossing_graph("0 1\n1 2\n2 3\n3 0\n2 4\n").unwrap();
        let td = min_fill_in_decomposition(&x, 12, 1).unwrap();
        let text = decomposition_to_pace(&td, x.n());
        let parsed = decomposition_from_pace(&text).unwrap();
        assert!(verify_decomposition(&x, &parsed));
        assert_eq!(parsed.width, td.width);
    }

    #[test]
    fn disconnected_graph_decomposes() {
        let x = parse_crossing_graph("0 1\n2 3\n").unwrap();
        let td = min_fill_in_decomposition(&x, 12, 0).unwrap();
        assert!(verify_decomposition(&x, &td));
        assert_eq!(td.width, 1);
    }
}
