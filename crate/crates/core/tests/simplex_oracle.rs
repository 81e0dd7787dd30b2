mod common;

use common::lp_oracle::{random_lp, vertex_oracle, Verdict};
use frontier_core::simplex::{solve, Algorithm, Sense, SolveOptions, SparseLp, Status};

fn opts(algorithm: Algorithm) -> SolveOptions {
    SolveOptions {
        algorithm,
        ..Default::default()
    }
}

fn check_against_oracle(lp: &SparseLp, algorithm: Algorithm, seed: u64) {
    let got = solve(lp, &opts(algorithm));
    match vertex_oracle(lp) {
        Verdict::Infeasible => assert_eq!(got.status, Status::Infeasible, "seed {seed} {algorithm:?}"),
        Verdict::Optimal(v) => {
            assert_eq!(got.status, Status::Optimal, "seed {seed} {algorithm:?}");
            assert!(
                (got.objective - v).abs() <= 1e-9,
                "seed {seed} {algorithm:?}: {} vs oracle {v}",
                got.objective
            );
        }
    }
}

#[test]
fn primal_matches_vertex_enumeration() {
    for seed in 0..1000 {
        check_against_oracle(&random_lp(seed, false), Algorithm::PrimalTwoPhase, seed);
    }
}

#[test]
fn dual_matches_vertex_enumeration() {
    let mut tried = 0;
    for seed in 0..1000 {
        let lp = random_lp(10_000 + seed, true);
        if lp.rows.iter().any(|r| r.sense == Sense::Eq) {
            continue;
        }
        tried += 1;
        check_against_oracle(&lp, Algorithm::DualLazyRows, seed);
    }
    assert!(tried > 300);
}

#[test]
fn auto_matches_vertex_enumeration() {
    for seed in 0..1000 {
        let lp = random_lp(20_000 + seed, seed % 2 == 0);
        check_against_oracle(&lp, Algorithm::Auto, seed);
    }
}

/// `c - A^T u >= 0`, sign of `u` by row sense, and `b^T u = c^T x`.
#[test]
fn duals_certify_optimality() {
    let mut checked = 0;
    for seed in 0..500 {
        let lp = random_lp(30_000 + seed, seed % 2 == 0);
        let res = solve(&lp, &SolveOptions::default());
        if res.status != Status::Optimal {
            continue;
        }
        checked += 1;
        let mut reduced = lp.cost.clone();
        let mut dual_obj = 0.0;
        for &(r, u) in &res.duals {
            let row = &lp.rows[r];
            match row.sense {
                Sense::Ge => assert!(u >= -1e-9, "seed {seed}"),
                Sense::Le => assert!(u <= 1e-9, "seed {seed}"),
                Sense::Eq => {}
            }
            for &(j, a) in &row.entries {
                reduced[j] -= a * u;
            }
            dual_obj += row.rhs * u;
        }
        assert!(reduced.iter().all(|&d| d >= -1e-8), "seed {seed}: {reduced:?}");
        assert!((dual_obj - res.objective).abs() <= 1e-8, "seed {seed}");
    }
    assert!(checked > 100);
}

#[test]
fn repeated_solves_are_identical() {
    for seed in 0..50 {
        let lp = random_lp(40_000 + seed, seed % 2 == 0);
        let a = solve(&lp, &SolveOptions::default());
        let b = solve(&lp, &SolveOptions::default());
        assert_eq!(format!("{a:?}"), format!("{b:?}"));
    }
}

#[test]
fn detects_unbounded() {
    let mut lp = SparseLp::new(vec![-1.0, 0.0]);
    lp.add_row(vec![(0, 1.0), (1, -1.0)], Sense::Le, 1.0);
    assert_eq!(solve(&lp, &SolveOptions::default()).status, Status::Unbounded);
}
