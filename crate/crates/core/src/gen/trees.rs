//! Random caterpillars and uniform random labeled trees.

use rand::Rng;

use super::GenError;
use crate::crossing::CrossingGraph;
use crate::rng::rng_from_seed;

/// Generates a random caterpillar on `n >= 3` vertices.
///
/// The diameter is drawn uniformly from the feasible range `2..=n-1`
/// unless forced; the diameter path takes ids `0..=diameter` and the
/// remaining vertices attach as leaves to uniformly chosen internal path
/// vertices.
pub fn gen_caterpillar(
    n: usize,
    diameter: Option<usize>,
    seed: u64,
) -> Result<CrossingGraph, GenError> {
    if n < 3 {
        return Err(GenError::Invalid("caterpillars need at least 3 vertices".into()));
    }
    let mut rng = rng_from_seed(seed);
    let diameter = match diameter {
        Some(d) => {
            if !(2..=n - 1).contains(&d) {
                return Err(GenError::Invalid(format!(
                    "diameter {d} outside the feasible range 2..={}",
                    n - 1
                )));
            }
            d
        }
        None => rng.gen_range(2..=n - 1),
    };

    let mut edges: Vec<(usize, usize)> = (0..diameter).map(|i| (i, i + 1)).collect();
    for leaf in (diameter + 1)..n {
        let anchor = rng.gen_range(1..diameter);
        edges.push((anchor, leaf));
    }
    let x = CrossingGraph::from_edges(n, &edges).expect("construction is simple");
    assert!(is_caterpillar(&x), "generated graph must be a caterpillar");
    Ok(x)
}

/// Generates a labeled tree uniformly at random via a Pruefer sequence.
pub fn gen_random_tree(n: usize, seed: u64) -> Result<CrossingGraph, GenError> {
    if n < 2 {
        return Err(GenError::Invalid("trees need at least 2 vertices".into()));
    }
    let mut rng = rng_from_seed(seed);
    let sequence: Vec<usize> = (0..n.saturating_sub(2)).map(|_| rng.gen_range(0..n)).collect();
    let x = tree_from_pruefer(n, &sequence);
    assert!(is_tree(&x), "Pruefer decoding must yield a tree");
    Ok(x)
}

/// Decodes a Pruefer sequence into its tree (ids `0..n`).
pub fn tree_from_pruefer(n: usize, sequence: &[usize]) -> CrossingGraph {
    assert_eq!(sequence.len(), n - 2, "sequence length must be n - 2");
    let mut degree = vec![1usize; n];
    for &v in sequence {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    // Min-heap on leaf ids keeps the decoding canonical.
    let mut leaves: std::collections::BinaryHeap<std::cmp::Reverse<usize>> = (0..n)
        .filter(|&v| degree[v] == 1)
        .map(std::cmp::Reverse)
        .collect();
    for &v in sequence {
        let std::cmp::Reverse(leaf) = leaves.pop().expect("a tree always has a leaf");
        edges.push((leaf.min(v), leaf.max(v)));
        degree[leaf] -= 1;
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.push(std::cmp::Reverse(v));
        }
    }
    let std::cmp::Reverse(a) = leaves.pop().expect("two vertices remain");
    let std::cmp::Reverse(b) = leaves.pop().expect("two vertices remain");
    edges.push((a.min(b), a.max(b)));
    CrossingGraph::from_edges(n, &edges).expect("decoded edges form a simple graph")
}

/// Connected and exactly n - 1 edges.
pub fn is_tree(x: &CrossingGraph) -> bool {
    x.n() > 0 && x.edge_count() == x.n() - 1 && x.components().len() == 1
}

/// A tree whose non-leaf vertices induce a path (possibly empty).
pub fn is_caterpillar(x: &CrossingGraph) -> bool {
    if !is_tree(x) {
        return false;
    }
    let spine: Vec<usize> = (0..x.n()).filter(|&v| x.degree(v) > 1).collect();
    let spine_degrees_fine = spine.iter().all(|&v| {
        let inner = x
            .neighbors(v)
            .iter()
            .filter(|&&w| x.degree(w) > 1)
            .count();
        inner <= 2
    });
    if !spine_degrees_fine {
        return false;
    }
    // The spine must also be connected: count spine vertices with at most
    // one spine neighbor; a path has exactly two such ends (or the spine is
    // trivial).
    if spine.len() <= 1 {
        return true;
    }
    let inner_edges: usize = spine
        .iter()
        .map(|&v| {
            x.neighbors(v)
                .iter()
                .filter(|&&w| x.degree(w) > 1)
                .count()
        })
        .sum::<usize>()
        / 2;
    inner_edges == spine.len() - 1
}
