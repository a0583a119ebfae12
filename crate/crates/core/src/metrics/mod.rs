//! Weighted graph metrics over a sociogram.
//!
//! Spectral, clustering, path and cut metrics operate on the symmetrized
//! adjacency `A + Aᵀ` of directed sociograms. PageRank and betweenness follow
//! edge direction. Shortest paths use `1 / weight` as the edge length, so
//! longer interactions mean closer participants.

mod betweenness;
mod clustering;
mod connectivity;
mod eigenvector;
mod katz;
mod pagerank;
mod paths;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::Sociogram;

pub use betweenness::{betweenness, Betweenness, PATH_TIE_TOLERANCE};
pub use clustering::{clustering_coefficients, Clustering};
pub use connectivity::edge_connectivity;
pub use eigenvector::{dominant_eigenpair, eigenvector_centrality, EigenvectorCentrality};
pub use katz::{katz, Katz};
pub use pagerank::{pagerank, PageRank};
pub use paths::{path_lengths, shortest_distances, PathLengths};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricsError {
    #[error("{metric} did not converge within {iterations} iterations")]
    NotConverged {
        metric: &'static str,
        iterations: usize,
    },
    #[error("{0} requires a connected sociogram")]
    DisconnectedGraph(&'static str),
    #[error("Katz system is singular: {0}")]
    SingularSystem(String),
    #[error("invalid metrics configuration: {0}")]
    InvalidConfig(String),
}

/// How a node's path length is aggregated from its shortest-path distances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PathLengthMode {
    #[default]
    Mean,
    Sum,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MetricsConfig {
    pub damping: f64,
    /// Katz decay is `katz_alpha_factor / λ_max`.
    pub katz_alpha_factor: f64,
    pub katz_beta: f64,
    pub path_length: PathLengthMode,
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for MetricsConfig {
    fn default() -> Self {
        Self {
            damping: 0.85,
            katz_alpha_factor: 0.85,
            katz_beta: 1.0,
            path_length: PathLengthMode::Mean,
            tolerance: 1e-10,
            max_iterations: 1000,
        }
    }
}

impl MetricsConfig {
    pub fn validate(&self) -> Result<(), MetricsError> {
        let bad = |msg: &str| Err(MetricsError::InvalidConfig(msg.to_string()));
        if !(self.damping > 0.0 && self.damping < 1.0) {
            return bad("damping must be in (0, 1)");
        }
        if !(self.katz_alpha_factor > 0.0 && self.katz_alpha_factor < 1.0) {
            return bad("katz_alpha_factor must be in (0, 1)");
        }
        if !(self.katz_beta.is_finite() && self.katz_beta > 0.0) {
            return bad("katz_beta must be > 0");
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return bad("tolerance must be > 0");
        }
        if self.max_iterations == 0 {
            return bad("max_iterations must be >= 1");
        }
        Ok(())
    }
}

/// Everything computed for one connected sociogram. Per-node vectors follow
/// roster order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricValues {
    pub eigenvector: Vec<f64>,
    pub mean_eigenvector: f64,
    pub eigenvector_variability: f64,
    pub clustering: Vec<f64>,
    pub clustering_variability: f64,
    pub pagerank: Vec<f64>,
    pub pagerank_variability: f64,
    pub betweenness: Vec<f64>,
    pub betweenness_variability: f64,
    pub mean_katz: f64,
    pub path_length_variability: f64,
    pub edge_connectivity: u32,
}

/// Metrics for one sociogram. Numeric fields are only present when the
/// sociogram is connected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub connected: bool,
    #[serde(flatten)]
    pub values: Option<MetricValues>,
}

pub fn compute_metrics(
    sociogram: &Sociogram,
    cfg: &MetricsConfig,
) -> Result<MetricsReport, MetricsError> {
    cfg.validate()?;
    if !sociogram.is_connected() {
        return Ok(MetricsReport {
            connected: false,
            values: None,
        });
    }
    let eig = eigenvector_centrality(sociogram, cfg)?;
    let clu = clustering_coefficients(sociogram);
    let pr = pagerank(sociogram, cfg)?;
    let btw = betweenness(sociogram);
    let katz = katz(sociogram, cfg)?;
    let paths = path_lengths(sociogram, cfg.path_length)?;
    Ok(MetricsReport {
        connected: true,
        values: Some(MetricValues {
            mean_eigenvector: eig.mean,
            eigenvector_variability: eig.variability,
            eigenvector: eig.values,
            clustering_variability: clu.variability,
            clustering: clu.values,
            pagerank_variability: pr.variability,
            pagerank: pr.values,
            betweenness_variability: btw.variability,
            betweenness: btw.values,
            mean_katz: katz.mean,
            path_length_variability: paths.variability,
            edge_connectivity: edge_connectivity(sociogram),
        }),
    })
}

pub(crate) fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    values.iter().sum::<f64>() / values.len() as f64
}

/// Population standard deviation.
pub(crate) fn population_std(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let m = mean(values);
    let var = values.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / values.len() as f64;
    var.sqrt()
}

pub(crate) fn l2_normalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
}

pub(crate) fn mat_vec(a: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    a.iter()
        .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
        .collect()
}
