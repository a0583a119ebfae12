use super::{dominant_eigenpair, l2_normalize, mat_vec, mean, MetricsConfig, MetricsError};
use crate::model::Sociogram;

#[derive(Debug, Clone, PartialEq)]
pub struct Katz {
    /// Fixed point of `x = α A x + β` before normalization.
    pub raw: Vec<f64>,
    /// `raw` scaled to unit L2 norm.
    pub values: Vec<f64>,
    pub mean: f64,
    pub alpha: f64,
    pub beta: f64,
}

/// Katz centrality on the symmetrized adjacency with `α = alpha_factor / λ_max`.
///
/// Solved by fixed-point iteration from the uniform vector `β·1` until the
/// residual `‖x - αAx - β‖₂` drops below `tolerance * max(1, β)`.
pub fn katz(sociogram: &Sociogram, cfg: &MetricsConfig) -> Result<Katz, MetricsError> {
    if !sociogram.is_connected() {
        return Err(MetricsError::DisconnectedGraph("katz centrality"));
    }
    let a = sociogram.symmetric_adjacency();
    let (_, lambda_max) = dominant_eigenpair(&a, cfg.tolerance, cfg.max_iterations)?;
    if !(lambda_max.is_finite() && lambda_max > 0.0) {
        return Err(MetricsError::SingularSystem(format!(
            "largest eigenvalue {lambda_max} is not positive"
        )));
    }
    let alpha = cfg.katz_alpha_factor / lambda_max;
    let beta = cfg.katz_beta;
    if alpha * lambda_max >= 1.0 {
        return Err(MetricsError::SingularSystem(format!(
            "alpha {alpha} is not below 1/λ_max"
        )));
    }

    let n = a.len();
    let mut x = vec![beta; n];
    for _ in 0..cfg.max_iterations {
        x = mat_vec(&a, &x).into_iter().map(|v| alpha * v + beta).collect();
        let ax = mat_vec(&a, &x);
        let residual = x
            .iter()
            .zip(&ax)
            .map(|(xi, axi)| (xi - alpha * axi - beta).powi(2))
            .sum::<f64>()
            .sqrt();
        if residual < cfg.tolerance * beta.max(1.0) {
            let mut values = x.clone();
            l2_normalize(&mut values);
            return Ok(Katz {
                mean: mean(&values),
                raw: x,
                values,
                alpha,
                beta,
            });
        }
    }
    Err(MetricsError::NotConverged {
        metric: "katz centrality",
        iterations: cfg.max_iterations,
    })
}
