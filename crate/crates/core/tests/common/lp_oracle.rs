//! Random small LPs and a brute-force vertex-enumeration oracle.

use frontier_core::simplex::{Sense, SparseLp};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Oracle verdict for `min c^T x`, rows, `x >= 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Verdict {
    Infeasible,
    Optimal(f64),
}

/// A bounded random LP with at most 6 variables and 8 rows.
///
/// The last row is always `sum x <= U`, so the feasible set is a polytope and
/// every feasible instance attains its minimum at a vertex. Data are small
/// integers. When `nonneg_cost` is set the costs are drawn from `0..=5`.
pub fn random_lp(seed: u64, nonneg_cost: bool) -> SparseLp {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=6);
    let m = rng.gen_range(1..=8);
    let cost = (0..n)
        .map(|_| {
            if nonneg_cost {
                rng.gen_range(0..=5) as f64
            } else {
                rng.gen_range(-5..=5) as f64
            }
        })
        .collect();
    let mut lp = SparseLp::new(cost);
    for _ in 0..m - 1 {
        let mut entries = Vec::new();
        for j in 0..n {
            let a = rng.gen_range(-5..=5);
            if a != 0 && rng.gen_bool(0.7) {
                entries.push((j, a as f64));
            }
        }
        let u: f64 = rng.gen();
        let (sense, rhs) = if u < 0.45 {
            (Sense::Ge, rng.gen_range(-4..=10) as f64)
        } else if u < 0.85 {
            (Sense::Le, rng.gen_range(-2..=20) as f64)
        } else {
            (Sense::Eq, rng.gen_range(-3..=8) as f64)
        };
        lp.add_row(entries, sense, rhs);
    }
    let bound = rng.gen_range(1..=20) as f64;
    lp.add_row((0..n).map(|j| (j, 1.0)).collect(), Sense::Le, bound);
    lp
}

/// Dense rows of `lp`, each with its sense and right-hand side.
fn dense_rows(lp: &SparseLp) -> Vec<(Vec<f64>, Sense, f64)> {
    let n = lp.cost.len();
    lp.rows
        .iter()
        .map(|row| {
            let mut a = vec![0.0; n];
            for &(j, v) in &row.entries {
                a[j] += v;
            }
            (a, row.sense, row.rhs)
        })
        .collect()
}

/// Solves the square system `a x = b` by Gaussian elimination.
fn solve_square(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&p, &q| a[p][col].abs().total_cmp(&a[q][col].abs()))?;
        if a[piv][col].abs() < 1e-11 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            if f != 0.0 {
                for c in col..n {
                    a[r][c] -= f * a[col][c];
                }
                b[r] -= f * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|c| a[r][c] * x[c]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    Some(x)
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order.
fn subsets(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return;
    }
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[i] += 1;
        for t in i + 1..k {
            idx[t] = idx[t - 1] + 1;
        }
    }
}

/// Minimum over all vertices of the feasible polyhedron.
///
/// Candidate vertices solve `n` of the constraints (rows and `x_j >= 0`) as
/// equalities; the feasible ones are compared by objective.
pub fn vertex_oracle(lp: &SparseLp) -> Verdict {
    let n = lp.cost.len();
    let rows = dense_rows(lp);
    let mut planes: Vec<(Vec<f64>, f64)> = rows.iter().map(|(a, _, b)| (a.clone(), *b)).collect();
    for j in 0..n {
        let mut e = vec![0.0; n];
        e[j] = 1.0;
        planes.push((e, 0.0));
    }
    let feasible = |x: &[f64]| {
        x.iter().all(|&v| v >= -1e-9)
            && rows.iter().all(|(a, sense, b)| {
                let act: f64 = a.iter().zip(x).map(|(p, q)| p * q).sum();
                match sense {
                    Sense::Ge => act >= b - 1e-9,
                    Sense::Le => act <= b + 1e-9,
                    Sense::Eq => (act - b).abs() <= 1e-9,
                }
            })
    };
    let mut best: Option<f64> = None;
    subsets(planes.len(), n, &mut |idx| {
        let a = idx.iter().map(|&i| planes[i].0.clone()).collect();
        let b = idx.iter().map(|&i| planes[i].1).collect();
        if let Some(x) = solve_square(a, b) {
            if feasible(&x) {
                let obj: f64 = lp.cost.iter().zip(&x).map(|(c, v)| c * v).sum();
                best = Some(best.map_or(obj, |o: f64| o.min(obj)));
            }
        }
    });
    match best {
        Some(v) => Verdict::Optimal(v),
        None => Verdict::Infeasible,
    }
}
