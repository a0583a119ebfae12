#![allow(clippy::needless_range_loop)]

use super::{l2_normalize, mat_vec, mean, population_std, MetricsConfig, MetricsError};
use crate::model::Sociogram;

#[derive(Debug, Clone, PartialEq)]
pub struct EigenvectorCentrality {
    /// Non-negative, unit L2 norm, roster order.
    pub values: Vec<f64>,
    pub eigenvalue: f64,
    pub mean: f64,
    pub variability: f64,
}

/// Eigenvector centrality on the symmetrized adjacency.
pub fn eigenvector_centrality(
    sociogram: &Sociogram,
    cfg: &MetricsConfig,
) -> Result<EigenvectorCentrality, MetricsError> {
    if !sociogram.is_connected() {
        return Err(MetricsError::DisconnectedGraph("eigenvector centrality"));
    }
    let a = sociogram.symmetric_adjacency();
    let (values, eigenvalue) = dominant_eigenpair(&a, cfg.tolerance, cfg.max_iterations)?;
    Ok(EigenvectorCentrality {
        mean: mean(&values),
        variability: population_std(&values),
        values,
        eigenvalue,
    })
}

/// Perron eigenpair of a symmetric non-negative matrix.
///
/// Power iteration on the shifted matrix `(A + cI) / 2c`, with `c` the largest
/// row sum, starting from the uniform vector. The shift removes the `±λ`
/// oscillation of bipartite graphs. After every step the iteration matrix is
/// squared, so step `k` applies the `2^k - 1`-th power and nearly degenerate
/// spectra still converge in a few dozen steps. Stops once
/// `‖Ax - λx‖₂ <= tolerance * max(1, λ)`, then refines the pair with a few
/// steps of inverse iteration shifted to `λ`, keeping the result only if it
/// lowers the residual.
pub fn dominant_eigenpair(
    a: &[Vec<f64>],
    tolerance: f64,
    max_iterations: usize,
) -> Result<(Vec<f64>, f64), MetricsError> {
    let n = a.len();
    let c = a
        .iter()
        .map(|row| row.iter().sum::<f64>())
        .fold(0.0f64, f64::max);
    if n == 0 || c <= 0.0 {
        return Err(MetricsError::DisconnectedGraph("eigenvector centrality"));
    }
    let mut b: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (a[i][j] + if i == j { c } else { 0.0 }) / (2.0 * c))
                .collect()
        })
        .collect();
    let mut x = vec![1.0 / (n as f64).sqrt(); n];

    for _ in 0..max_iterations {
        x = mat_vec(&b, &x);
        l2_normalize(&mut x);
        let (lambda, residual) = rayleigh(a, &x);
        if residual <= tolerance * lambda.max(1.0) {
            return Ok(polish(a, x, lambda, residual, c));
        }
        b = square_normalized(&b);
    }
    Err(MetricsError::NotConverged {
        metric: "eigenvector centrality",
        iterations: max_iterations,
    })
}

/// Rayleigh quotient of a unit vector and the residual norm `‖Ax - λx‖₂`.
fn rayleigh(a: &[Vec<f64>], x: &[f64]) -> (f64, f64) {
    let ax = mat_vec(a, x);
    let lambda: f64 = ax.iter().zip(x).map(|(p, q)| p * q).sum();
    let residual = ax
        .iter()
        .zip(x)
        .map(|(p, q)| (p - lambda * q).powi(2))
        .sum::<f64>()
        .sqrt();
    (lambda, residual)
}

fn polish(
    a: &[Vec<f64>],
    mut x: Vec<f64>,
    mut lambda: f64,
    mut residual: f64,
    scale: f64,
) -> (Vec<f64>, f64) {
    for _ in 0..3 {
        let Some(mut y) = solve_shifted(a, lambda, &x, scale) else {
            break;
        };
        if y.iter().sum::<f64>() < 0.0 {
            y.iter_mut().for_each(|v| *v = -*v);
        }
        l2_normalize(&mut y);
        if y.iter().any(|v| *v < -1e-12 || !v.is_finite()) {
            break;
        }
        y.iter_mut().for_each(|v| *v = v.max(0.0));
        let (l, r) = rayleigh(a, &y);
        if r >= residual {
            break;
        }
        (x, lambda, residual) = (y, l, r);
    }
    (x, lambda)
}

/// Solves `(A - μI) y = rhs` by Gaussian elimination with partial pivoting.
/// Pivots that vanish because `μ` is an exact eigenvalue are replaced by a
/// tiny multiple of `scale`.
fn solve_shifted(a: &[Vec<f64>], mu: f64, rhs: &[f64], scale: f64) -> Option<Vec<f64>> {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut row: Vec<f64> = (0..n)
                .map(|j| a[i][j] - if i == j { mu } else { 0.0 })
                .collect();
            row.push(rhs[i]);
            row
        })
        .collect();
    let tiny = f64::EPSILON * scale;
    for col in 0..n {
        let pivot = (col..n).max_by(|&p, &q| m[p][col].abs().total_cmp(&m[q][col].abs()))?;
        m.swap(col, pivot);
        if m[col][col].abs() < tiny {
            m[col][col] = tiny;
        }
        for row in col + 1..n {
            let f = m[row][col] / m[col][col];
            if f != 0.0 {
                for k in col..=n {
                    m[row][k] -= f * m[col][k];
                }
            }
        }
    }
    let mut y = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|k| m[i][k] * y[k]).sum();
        y[i] = (m[i][n] - s) / m[i][i];
    }
    y.iter().all(|v| v.is_finite()).then_some(y)
}

fn square_normalized(b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = b.len();
    let mut out = vec![vec![0.0; n]; n];
    for i in 0..n {
        for k in 0..n {
            let bik = b[i][k];
            if bik == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += bik * b[k][j];
            }
        }
    }
    let max = out.iter().flatten().fold(0.0f64, |m, &v| m.max(v));
    if max > 0.0 {
        out.iter_mut().flatten().for_each(|v| *v /= max);
    }
    out
}
