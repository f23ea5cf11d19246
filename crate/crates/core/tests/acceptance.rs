//! Acceptance suite: one test per release criterion, each printing a
//! PASS line with the measured evidence. Every threshold is pinned here.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use planar_story::crossing::CrossingGraph;
use planar_story::exact::{exact_decision, exact_solve, ExactLimits, ExactStatus};
use planar_story::gen::{
    gen_caterpillar, gen_fig3_family, gen_nae3sat, gen_planar, gen_random_geometric,
    gen_random_tree, gen_series_parallel, nae_satisfiable, Clause, Lit,
};
use planar_story::geometry::build_crossing_graph;
use planar_story::greedy::{phase1_variant_a, run_heuristic, GreedyConfig};
use planar_story::ilp::{decode_ilp_solution, parse_solution, IlpModel};
use planar_story::pareto::{degree2_maximum_pair, pareto_pairs};
use planar_story::story::{pair_bound, simulate, validate};
use planar_story::treewidth::min_fill_in_decomposition;

fn quick_limits() -> ExactLimits {
    ExactLimits {
        time_budget: Duration::from_secs(60),
        ..ExactLimits::default()
    }
}

/// A varied stream of small crossing graphs drawn from the instance
/// families, capped at `max_n` crossing vertices.
fn small_instance_stream(count: usize, max_n: usize, base_seed: u64) -> Vec<CrossingGraph> {
    let mut out = Vec::with_capacity(count);
    let mut seed = base_seed;
    while out.len() < count {
        seed += 1;
        let pick = seed % 6;
        let x = match pick {
            0 => gen_random_tree(2 + (seed as usize % (max_n - 1)), seed).ok(),
            1 => gen_caterpillar(3 + (seed as usize % (max_n - 2)), None, seed).ok(),
            2 => gen_series_parallel(4 + (seed as usize % 5), 1.2, seed).ok(),
            3 => gen_planar(4 + (seed as usize % 4), 1.4, seed).ok(),
            4 => gen_random_geometric(5 + (seed as usize % 4), 1.6, seed)
                .map(|g| build_crossing_graph(&g))
                .ok(),
            _ => {
                let n = 3 + (seed as usize % max_n.saturating_sub(2));
                let m = 1 + (seed as usize % (n * (n - 1) / 2));
                Some(strip_isolated(common::random_graph(n, m, seed)))
            }
        };
        match x {
            Some(x) if x.n() >= 1 && x.n() <= max_n => out.push(x),
            _ => continue,
        }
    }
    out
}

fn strip_isolated(x: CrossingGraph) -> CrossingGraph {
    let keep: BTreeSet<usize> = (0..x.n()).filter(|&v| x.degree(v) > 0).collect();
    x.induced(&keep).0
}

#[test]
fn criterion_01_fig3_ground_truth() {
    let started = Instant::now();
    let inst = gen_fig3_family(4).unwrap();
    assert_eq!(inst.graph.n(), 15);

    // Optimal value mu = 3l/2 + 1 = 7.
    let result = exact_solve(&inst.graph, &quick_limits());
    assert_eq!(result.status, ExactStatus::Optimal);
    assert_eq!(result.mu_star, 7);
    let witness = result.witness.unwrap();
    assert_eq!(simulate(&inst.graph, &witness).unwrap().mu, 7);

    // Every maximal initial frame caps the story at l + 2 = 6: target 7 is
    // infeasible from each of them.
    for maximal in &inst.maximal_independent_sets {
        let decision = exact_decision(&inst.graph, 7, &quick_limits(), Some(maximal)).unwrap();
        assert!(
            !decision.feasible,
            "maximal frame {maximal:?} must not reach 7"
        );
    }

    // The recorded witness order starts and ends at frame size 7.
    let trace = simulate(&inst.graph, &inst.witness).unwrap();
    assert_eq!(trace.mu, 7);
    assert_eq!(trace.frame_sizes[0], 7);
    assert_eq!(*trace.frame_sizes.last().unwrap(), 7);

    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(120), "took {elapsed:?}");
    println!(
        "ACCEPTANCE criterion 1 PASS: fig3(l=4) mu=7, all 5 maximal starts capped at 6, witness ends at 7 ({elapsed:?})"
    );
}

#[test]
fn criterion_02_exact_matches_naive_story_oracle() {
    let started = Instant::now();
    let instances = small_instance_stream(300, 9, 10_000);
    for (i, x) in instances.iter().enumerate() {
        let exact = exact_solve(x, &quick_limits());
        assert_eq!(exact.status, ExactStatus::Optimal, "instance {i}");
        let oracle = common::naive_story_mu(x);
        assert_eq!(exact.mu_star, oracle, "instance {i} ({} vertices)", x.n());
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(600), "took {elapsed:?}");
    println!(
        "ACCEPTANCE criterion 2 PASS: exact_solve == naive story oracle on 300 instances with n <= 9 ({elapsed:?})"
    );
}

#[test]
fn criterion_03_pareto_dp_matches_coloring_oracle() {
    let started = Instant::now();
    let instances = small_instance_stream(200, 12, 20_000);
    for (i, x) in instances.iter().enumerate() {
        let td = min_fill_in_decomposition(x, 12, i as u64).unwrap();
        let dp = pareto_pairs(x, &td).unwrap();
        let oracle = common::brute_pareto_frontier(x);
        assert_eq!(dp.entries(), &oracle[..], "instance {i} ({} vertices)", x.n());
    }
    let elapsed = started.elapsed();
    println!(
        "ACCEPTANCE criterion 3 PASS: pareto_pairs == 3^n coloring oracle on 200 instances with n <= 12 ({elapsed:?})"
    );
}

#[test]
fn criterion_04_two_plane_optimality() {
    let started = Instant::now();
    let mut sampled = 0;
    let mut seed = 0u64;
    while sampled < 100 {
        seed += 1;
        let n = 4 + (seed as usize % 11); // up to 14
        let x = common::random_paths_and_cycles(n, seed);
        if x.n() > 14 {
            continue;
        }
        sampled += 1;

        let pair = degree2_maximum_pair(&x).unwrap();
        let cfg = GreedyConfig::from_name("ag-1a2a", seed).unwrap();
        let run = run_heuristic(&x, &cfg, None).unwrap();
        let exact = exact_solve(&x, &quick_limits());
        assert_eq!(exact.status, ExactStatus::Optimal);

        assert_eq!(
            run.trace.mu, exact.mu_star,
            "greedy not optimal on seed {seed}: {x:?}"
        );
        assert_eq!(
            run.trace.mu, pair.predicted_mu,
            "case law mismatch on seed {seed}: {x:?}"
        );
    }
    let elapsed = started.elapsed();
    println!(
        "ACCEPTANCE criterion 4 PASS: AG-1a optimal and matching the even-cycle/odd-path case law on 100 path+cycle unions ({elapsed:?})"
    );
}

#[test]
fn criterion_05_cycle_free_low_degree_optimality() {
    let started = Instant::now();
    let mut qualifying = 0;
    let mut seed = 0u64;
    while qualifying < 100 {
        seed += 1;
        let n = 5 + (seed as usize % 12);
        let Ok(x) = gen_random_tree(n, seed) else {
            continue;
        };
        let (i1, itau) = phase1_variant_a(&x, 12, seed, None).unwrap();
        let outside_ok = (0..x.n())
            .filter(|v| !i1.contains(v) && !itau.contains(v))
            .all(|v| x.degree(v) <= 3);
        if !outside_ok {
            continue;
        }
        qualifying += 1;

        let cfg = GreedyConfig::from_name("ag-1a2a", seed).unwrap();
        let run = run_heuristic(&x, &cfg, None).unwrap();
        assert_eq!(
            run.trace.mu,
            i1.len().min(itau.len()),
            "seed {seed}: cycle-free low-degree instance must reach the pair bound"
        );
    }
    let elapsed = started.elapsed();
    println!(
        "ACCEPTANCE criterion 5 PASS: AG-1a mu == min(|I1|,|Itau|) on 100 qualifying cycle-free instances ({elapsed:?})"
    );
}

#[test]
fn criterion_06_bound_chain_never_violated() {
    let started = Instant::now();
    let instances = small_instance_stream(60, 14, 30_000);
    let mut checked = 0;
    for (i, x) in instances.iter().enumerate() {
        let exact = exact_solve(x, &quick_limits());
        assert_eq!(exact.status, ExactStatus::Optimal, "instance {i}");
        let half = x.n() / 2;
        let pair = pair_bound(x, 12, None).known().expect("small widths");
        assert!(pair <= half.max(pair.min(half)), "pair bound sanity");
        assert!(
            exact.mu_star <= pair && pair <= half || x.n() == 0,
            "instance {i}: exact {} pair {pair} half {half}",
            exact.mu_star
        );
        for name in planar_story::greedy::HEURISTIC_NAMES {
            let cfg = GreedyConfig::from_name(name, i as u64).unwrap();
            let run = run_heuristic(x, &cfg, None).unwrap();
            assert!(validate(x, &run.story).accepted());
            assert!(
                run.trace.mu <= exact.mu_star,
                "instance {i} {name}: heuristic {} > exact {}",
                run.trace.mu,
                exact.mu_star
            );
            checked += 1;
        }
    }
    let elapsed = started.elapsed();
    println!(
        "ACCEPTANCE criterion 6 PASS: heuristic mu <= exact mu <= pair bound <= half-edges across {checked} runs ({elapsed:?})"
    );
}

#[test]
fn criterion_07_ilp_cross_check_with_external_solver() {
    let started = Instant::now();
    let script = concat!(env!("CARGO_MANIFEST_DIR"), "/../../tools/solve_lp.py");
    let tmp = std::env::temp_dir().join(format!("planar-story-ilp-{}", std::process::id()));
    std::fs::create_dir_all(&tmp).unwrap();

    let instances = small_instance_stream(20, 10, 40_000);
    for (i, x) in instances.iter().enumerate() {
        let tau = planar_story::ilp::default_tau(x);
        let model = IlpModel::build(x, tau);
        let lp_path = tmp.join(format!("model_{i}.lp"));
        let sol_path = tmp.join(format!("model_{i}.sol"));
        std::fs::write(&lp_path, model.to_lp()).unwrap();

        let output = std::process::Command::new("python3")
            .arg(script)
            .arg(&lp_path)
            .arg(&sol_path)
            .output()
            .expect("python3 must be available for the external solver check");
        assert!(
            output.status.success(),
            "external solver failed on instance {i}: {}",
            String::from_utf8_lossy(&output.stderr)
        );

        let solution = parse_solution(&std::fs::read_to_string(&sol_path).unwrap()).unwrap();
        let objective = solution
            .get("y_min")
            .copied()
            .expect("solution carries y_min");
        let exact = exact_solve(x, &quick_limits());
        assert_eq!(exact.status, ExactStatus::Optimal);
        assert!(
            (objective - exact.mu_star as f64).abs() < 1e-6,
            "instance {i}: ILP objective {objective} vs exact {}",
            exact.mu_star
        );

        if x.n() > 0 {
            let (story, mu) = decode_ilp_solution(x, tau, &solution).unwrap();
            assert!(validate(x, &story).accepted(), "instance {i}");
            assert!(
                mu >= exact.mu_star,
                "instance {i}: decoded mu {mu} below optimum"
            );
            assert!(mu <= exact.mu_star, "instance {i}: decoded mu {mu} above optimum");
        }
    }
    let elapsed = started.elapsed();
    println!(
        "ACCEPTANCE criterion 7 PASS: 20 exported models solved by scipy/HiGHS match exact_solve and decode to valid stories ({elapsed:?})"
    );
}

#[test]
fn criterion_08_nae3sat_equivalence() {
    let started = Instant::now();
    // All 8 sign patterns over the fixed variables {0, 1, 2}.
    let all_clauses: Vec<Clause> = (0..8u8)
        .map(|bits| {
            [0usize, 1, 2].map(|var| Lit {
                var,
                negated: (bits >> var) & 1 == 1,
            })
        })
        .collect();

    // Every formula with 1..=3 distinct clauses.
    let mut formulas: Vec<Vec<Clause>> = Vec::new();
    for a in 0..8 {
        formulas.push(vec![all_clauses[a]]);
        for b in (a + 1)..8 {
            formulas.push(vec![all_clauses[a], all_clauses[b]]);
            for c in (b + 1)..8 {
                formulas.push(vec![all_clauses[a], all_clauses[b], all_clauses[c]]);
            }
        }
    }
    assert_eq!(formulas.len(), 8 + 28 + 56);

    for (i, formula) in formulas.iter().enumerate() {
        let inst = gen_nae3sat(formula).unwrap();
        let pair_exists = common::has_disjoint_pair_of_size(&inst.graph, inst.target);
        let nae = nae_satisfiable(formula, 3);
        assert_eq!(
            pair_exists, nae,
            "formula {i}: pair existence and NAE satisfiability must agree"
        );
    }

    // A four-clause NAE-unsatisfiable formula exercises the negative
    // direction explicitly (every <= 3-clause formula over 3 variables is
    // NAE-satisfiable since each clause only rules out two assignments).
    let unsat = planar_story::gen::parse_clauses("1 2 3; 1 -2 -3; -1 2 -3; -1 -2 3").unwrap();
    assert!(!nae_satisfiable(&unsat, 3));
    let inst = gen_nae3sat(&unsat).unwrap();
    assert!(!common::has_disjoint_pair_of_size(&inst.graph, inst.target));

    // The illustrated three-clause formula is NAE-satisfiable with a
    // (12, 12) pair.
    let example = planar_story::gen::parse_clauses("1 3 -4; 1 3 -2; -2 -3 -4").unwrap();
    let inst = gen_nae3sat(&example).unwrap();
    assert_eq!(inst.target, 12);
    assert!(common::has_disjoint_pair_of_size(&inst.graph, 12));

    let elapsed = started.elapsed();
    println!(
        "ACCEPTANCE criterion 8 PASS: pair-of-size-4p existence == NAE satisfiability on all 92 formulas, plus the 4-clause unsatisfiable case ({elapsed:?})"
    );
}

#[test]
fn criterion_09_heuristic_ordering_trend() {
    let started = Instant::now();
    let mut ratios_1a = Vec::new();
    let mut ratios_1b = Vec::new();
    let mut ratios_1c = Vec::new();

    let mut seed = 0u64;
    while ratios_1a.len() < 50 {
        seed += 1;
        let n = 10 + (seed as usize % 7) * 5; // 10..=40
        let density = [1.2, 1.6, 2.0][seed as usize % 3];
        let Ok(g) = gen_random_geometric(n, density, seed) else {
            continue;
        };
        let x = build_crossing_graph(&g);
        if x.n() == 0 || x.n() > 22 {
            continue;
        }
        let exact = exact_solve(&x, &quick_limits());
        if exact.status != ExactStatus::Optimal {
            continue;
        }
        let ratio_of = |name: &str| -> f64 {
            let cfg = GreedyConfig::from_name(name, seed).unwrap();
            let run = run_heuristic(&x, &cfg, None).unwrap();
            if exact.mu_star == 0 {
                1.0
            } else {
                run.trace.mu as f64 / exact.mu_star as f64
            }
        };
        ratios_1a.push(ratio_of("ag-1a2a"));
        ratios_1b.push(ratio_of("ag-1b2a"));
        ratios_1c.push(ratio_of("ag-1c2a"));
    }

    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let (m1a, m1b, m1c) = (mean(&ratios_1a), mean(&ratios_1b), mean(&ratios_1c));
    assert!(
        m1c >= m1b,
        "mean ratio of AG-1c2a ({m1c:.4}) must be at least AG-1b2a ({m1b:.4})"
    );
    assert!(m1a >= 0.90, "mean ratio of AG-1a2a ({m1a:.4}) must reach 0.90");

    let elapsed = started.elapsed();
    println!(
        "ACCEPTANCE criterion 9 PASS: mean ratios over {} instances: 1a2a={m1a:.4} (>= 0.90), 1c2a={m1c:.4} >= 1b2a={m1b:.4} ({elapsed:?})",
        ratios_1a.len()
    );
}

#[test]
fn criterion_10_fast_variants_under_half_a_second() {
    // Instances near the 1000-crossing mark.
    let caterpillar = gen_caterpillar(1000, None, 7).unwrap();
    assert!(caterpillar.edge_count() <= 1000);
    let planar = gen_planar(600, 1.6, 7).unwrap();
    assert!(planar.edge_count() <= 1000);

    let mut worst = Duration::ZERO;
    for x in [&caterpillar, &planar] {
        for name in ["ag-1b2a", "ag-1b2b", "ag-1c2a", "ag-1c2b"] {
            let cfg = GreedyConfig::from_name(name, 1).unwrap();
            let run = run_heuristic(x, &cfg, None).unwrap();
            assert!(
                run.elapsed < Duration::from_millis(500),
                "{name} took {:?} on {} vertices / {} crossings",
                run.elapsed,
                x.n(),
                x.edge_count()
            );
            worst = worst.max(run.elapsed);
        }
    }
    println!(
        "ACCEPTANCE criterion 10 PASS: 1b/1c variants within 0.5 s on <= 1000-crossing instances (worst {worst:?})"
    );
}
