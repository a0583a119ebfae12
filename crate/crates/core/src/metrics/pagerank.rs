use super::{population_std, MetricsConfig, MetricsError};
use crate::model::Sociogram;

#[derive(Debug, Clone, PartialEq)]
pub struct PageRank {
    pub values: Vec<f64>,
    pub variability: f64,
    /// L1 distance between the last two iterates.
    pub residual: f64,
}

/// Weighted PageRank following edge direction.
///
/// Node `j` passes rank to `i` in proportion to `A[j][i]` over its out-strength.
/// Nodes without out-edges spread their rank uniformly.
pub fn pagerank(sociogram: &Sociogram, cfg: &MetricsConfig) -> Result<PageRank, MetricsError> {
    let a = sociogram.adjacency();
    let n = a.len();
    let d = cfg.damping;
    let out_strength: Vec<f64> = a.iter().map(|row| row.iter().sum()).collect();
    let base = (1.0 - d) / n as f64;

    let mut p = vec![1.0 / n as f64; n];
    for _ in 0..cfg.max_iterations {
        let dangling: f64 = (0..n)
            .filter(|&j| out_strength[j] <= 0.0)
            .map(|j| p[j])
            .sum();
        let mut next = vec![base + d * dangling / n as f64; n];
        for j in 0..n {
            if out_strength[j] <= 0.0 {
                continue;
            }
            let share = d * p[j] / out_strength[j];
            for (i, slot) in next.iter_mut().enumerate() {
                if a[j][i] > 0.0 {
                    *slot += share * a[j][i];
                }
            }
        }
        let residual: f64 = next.iter().zip(&p).map(|(x, y)| (x - y).abs()).sum();
        p = next;
        if residual < cfg.tolerance {
            let total: f64 = p.iter().sum();
            p.iter_mut().for_each(|v| *v /= total);
            return Ok(PageRank {
                variability: population_std(&p),
                values: p,
                residual,
            });
        }
    }
    Err(MetricsError::NotConverged {
        metric: "pagerank",
        iterations: cfg.max_iterations,
    })
}
