//! Random geometric graphs: a uniform G(n, m) graph laid out with a
//! built-in Fruchterman-Reingold implementation.

use rand::Rng;

use super::GenError;
use crate::geometry::{parse_decimal, GeomGraph, Point2};
use crate::rng::rng_from_seed;
use crate::GeometricGraph;

/// Generates a uniform random simple graph with `m = round(density * n)`
/// edges and a deterministic force-directed straight-line drawing in the
/// unit square. Connectedness is not enforced.
///
/// The layout runs `ceil(50 * sqrt(n))` iterations with linear cooling from
/// a tenth of the frame width; identical seeds give identical bytes. The
/// f64 positions are snapped to their shortest decimal representation and
/// re-read exactly, so the in-memory graph equals its serialized form.
pub fn gen_random_geometric(n: usize, density: f64, seed: u64) -> Result<GeometricGraph, GenError> {
    if n == 0 {
        return Err(GenError::Invalid("need at least one vertex".into()));
    }
    if !(density > 0.0) || !density.is_finite() {
        return Err(GenError::Invalid("density must be positive".into()));
    }
    let m = (density * n as f64).round() as usize;
    let max_edges = n * (n - 1) / 2;
    if m > max_edges {
        return Err(GenError::Infeasible(format!(
            "{m} edges requested but K_{n} has only {max_edges}"
        )));
    }

    let mut rng = rng_from_seed(seed);

    // G(n, m): a partial Fisher-Yates draw of m distinct vertex pairs.
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(max_edges);
    for u in 0..n {
        for v in (u + 1)..n {
            pairs.push((u, v));
        }
    }
    for i in 0..m {
        let j = rng.gen_range(i..pairs.len());
        pairs.swap(i, j);
    }
    let mut edges: Vec<(usize, usize)> = pairs[..m].to_vec();
    edges.sort_unstable();

    let positions = fruchterman_reingold(n, &edges, &mut rng);

    // Snap to decimals; exact parse keeps file and memory identical.
    let vertices: Vec<Point2<crate::Coord>> = positions
        .iter()
        .map(|&(x, y)| {
            Point2::new(
                parse_decimal(&format!("{x}")).expect("f64 renders as a decimal"),
                parse_decimal(&format!("{y}")).expect("f64 renders as a decimal"),
            )
        })
        .collect();

    GeomGraph::new(vertices, edges).map_err(|e| GenError::Invalid(e.to_string()))
}

fn fruchterman_reingold(
    n: usize,
    edges: &[(usize, usize)],
    rng: &mut crate::rng::SeededRng,
) -> Vec<(f64, f64)> {
    let mut pos: Vec<(f64, f64)> = (0..n)
        .map(|_| (rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0)))
        .collect();
    if n == 1 {
        return pos;
    }

    let iterations = (50.0 * (n as f64).sqrt()).ceil() as usize;
    let k = (1.0 / n as f64).sqrt();
    let t0 = 0.1;
    const MIN_DIST: f64 = 1e-9;

    for iter in 0..iterations {
        let t = t0 * (1.0 - iter as f64 / iterations as f64);
        let mut disp = vec![(0.0f64, 0.0f64); n];

        for u in 0..n {
            for v in (u + 1)..n {
                let dx = pos[u].0 - pos[v].0;
                let dy = pos[u].1 - pos[v].1;
                let dist = (dx * dx + dy * dy).sqrt().max(MIN_DIST);
                let force = k * k / dist;
                let (fx, fy) = (dx / dist * force, dy / dist * force);
                disp[u].0 += fx;
                disp[u].1 += fy;
                disp[v].0 -= fx;
                disp[v].1 -= fy;
            }
        }
        for &(u, v) in edges {
            let dx = pos[u].0 - pos[v].0;
            let dy = pos[u].1 - pos[v].1;
            let dist = (dx * dx + dy * dy).sqrt().max(MIN_DIST);
            let force = dist * dist / k;
            let (fx, fy) = (dx / dist * force, dy / dist * force);
            disp[u].0 -= fx;
            disp[u].1 -= fy;
            disp[v].0 += fx;
            disp[v].1 += fy;
        }
        for v in 0..n {
            let (dx, dy) = disp[v];
            let len = (dx * dx + dy * dy).sqrt().max(MIN_DIST);
            let step = len.min(t);
            pos[v].0 = (pos[v].0 + dx / len * step).clamp(0.0, 1.0);
            pos[v].1 = (pos[v].1 + dy / len * step).clamp(0.0, 1.0);
        }
    }

    // Coincident points would violate the graph invariants; nudge
    // deterministically until all positions are distinct.
    let mut eps = 1e-7;
    loop {
        let mut sorted: Vec<(u64, u64, usize)> = pos
            .iter()
            .enumerate()
            .map(|(i, &(x, y))| (x.to_bits(), y.to_bits(), i))
            .collect();
        sorted.sort_unstable();
        let mut clash = None;
        for w in sorted.windows(2) {
            if w[0].0 == w[1].0 && w[0].1 == w[1].1 {
                clash = Some(w[1].2);
                break;
            }
        }
        match clash {
            None => break,
            Some(i) => {
                pos[i].0 = (pos[i].0 + eps).clamp(0.0, 1.0);
                pos[i].1 = (pos[i].1 + eps * 0.5).clamp(0.0, 1.0);
                eps *= 2.0;
            }
        }
    }
    pos
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::geometric_graph_to_json;

    #[test]
    fn requested_edge_counts() {
        let g = gen_random_geometric(10, 1.2, 7).unwrap();
        assert_eq!(g.vertex_count(), 10);
        assert_eq!(g.edge_count(), 12);

        // round(1.5 * 4) = 6 = all of K4.
        let k4 = gen_random_geometric(4, 1.5, 7).unwrap();
        assert_eq!(k4.edge_count(), 6);
    }

    #[test]
    fn infeasible_density_is_rejected() {
        assert!(matches!(
            gen_random_geometric(4, 2.0, 0),
            Err(GenError::Infeasible(_))
        ));
    }

    #[test]
    fn layout_is_deterministic() {
        let a = gen_random_geometric(12, 1.6, 99).unwrap();
        let b = gen_random_geometric(12, 1.6, 99).unwrap();
        assert_eq!(a, b);
        assert_eq!(geometric_graph_to_json(&a), geometric_graph_to_json(&b));
        let c = gen_random_geometric(12, 1.6, 100).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn json_round_trip_is_exact() {
        let g = gen_random_geometric(8, 1.2, 5).unwrap();
        let text = geometric_graph_to_json(&g);
        let back = crate::geometry::parse_geometric_graph(&text).unwrap();
        assert_eq!(g, back);
    }
}
