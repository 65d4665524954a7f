//! Test-only oracles, independent of the simplex and the library's linear algebra.
#![allow(dead_code)]

use loadqr::{Matrix, SupervisedSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Solves a small square system by Gaussian elimination with partial
/// pivoting. `None` when the system is (numerically) singular.
pub fn gauss_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    let scale = a.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    for k in 0..n {
        let piv = (k..n).max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs()))?;
        if a[piv][k].abs() <= 1e-10 * scale.max(1e-300) {
            return None;
        }
        a.swap(k, piv);
        b.swap(k, piv);
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            for j in k..n {
                a[i][j] -= f * a[k][j];
            }
            b[i] -= f * b[k];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|j| a[i][j] * x[j]).sum();
        x[i] = (b[i] - s) / a[i][i];
    }
    Some(x)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn check_loss(rows: &[Vec<f64>], y: &[f64], beta: &[f64], tau: f64) -> f64 {
    rows.iter()
        .zip(y)
        .map(|(x, &yi)| {
            let r = yi - x.iter().zip(beta).map(|(a, b)| a * b).sum::<f64>();
            if r > 0.0 {
                tau * r
            } else {
                (tau - 1.0) * r
            }
        })
        .sum()
}

/// Minimum of `loss` over every coefficient vector interpolating some size-p
/// subset of observations exactly; returns `(min, argmin)`.
pub fn subset_oracle<F>(rows: &[Vec<f64>], y: &[f64], loss: F) -> (f64, Vec<f64>)
where
    F: Fn(&[f64]) -> f64,
{
    let p = rows[0].len();
    let mut best = (f64::INFINITY, Vec::new());
    for s in subsets(rows.len(), p) {
        let a: Vec<Vec<f64>> = s.iter().map(|&i| rows[i].clone()).collect();
        let b: Vec<f64> = s.iter().map(|&i| y[i]).collect();
        if let Some(beta) = gauss_solve(a, b) {
            let v = loss(&beta);
            if v < best.0 {
                best = (v, beta);
            }
        }
    }
    best
}

pub fn quantile_oracle(rows: &[Vec<f64>], y: &[f64], tau: f64) -> f64 {
    subset_oracle(rows, y, |b| check_loss(rows, y, b, tau)).0
}

/// Minimal sum of absolute residuals.
pub fn lad_oracle(rows: &[Vec<f64>], y: &[f64]) -> f64 {
    subset_oracle(rows, y, |b| 2.0 * check_loss(rows, y, b, 0.5)).0
}

pub fn to_set(rows: &[Vec<f64>], y: &[f64]) -> SupervisedSet {
    SupervisedSet::from_xy(Matrix::from_rows(rows).unwrap(), y.to_vec()).unwrap()
}

/// A random regression instance. With `integer_data` the entries are small
/// integers, which produces ties and degenerate vertices.
pub struct Instance {
    pub rows: Vec<Vec<f64>>,
    pub y: Vec<f64>,
    pub tau: f64,
}

pub fn random_instance(
    rng: &mut ChaCha8Rng,
    n: usize,
    p: usize,
    intercept: bool,
    integer_data: bool,
) -> Instance {
    let draw = |rng: &mut ChaCha8Rng| {
        if integer_data {
            rng.gen_range(-3i32..=3) as f64
        } else {
            rng.gen_range(-5.0..5.0)
        }
    };
    let rows = (0..n)
        .map(|_| {
            (0..p)
                .map(|j| if intercept && j == p - 1 { 1.0 } else { draw(rng) })
                .collect()
        })
        .collect();
    let y = (0..n).map(|_| 3.0 * draw(rng)).collect();
    let tau = rng.gen_range(1..=9) as f64 / 10.0;
    Instance { rows, y, tau }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
