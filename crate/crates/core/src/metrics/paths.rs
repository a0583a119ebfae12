use super::{mean, population_std, MetricsError, PathLengthMode};
use crate::model::Sociogram;

#[derive(Debug, Clone, PartialEq)]
pub struct PathLengths {
    /// Per-node aggregate shortest-path distance.
    pub values: Vec<f64>,
    pub variability: f64,
}

/// All-pairs shortest distances (Floyd-Warshall) on the symmetrized graph with
/// edge length `1 / weight`. Unreachable pairs are `f64::INFINITY`.
pub fn shortest_distances(sociogram: &Sociogram) -> Vec<Vec<f64>> {
    let a = sociogram.symmetric_adjacency();
    let n = a.len();
    let mut d: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match (i == j, a[i][j] > 0.0) {
                    (true, _) => 0.0,
                    (false, true) => 1.0 / a[i][j],
                    (false, false) => f64::INFINITY,
                })
                .collect()
        })
        .collect();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// Path length per node (mean or sum of its distances to every other node) and
/// their population standard deviation.
pub fn path_lengths(
    sociogram: &Sociogram,
    mode: PathLengthMode,
) -> Result<PathLengths, MetricsError> {
    if !sociogram.is_connected() {
        return Err(MetricsError::DisconnectedGraph("path length variability"));
    }
    let d = shortest_distances(sociogram);
    let values: Vec<f64> = d
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let others: Vec<f64> = row
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &v)| v)
                .collect();
            match mode {
                PathLengthMode::Mean => mean(&others),
                PathLengthMode::Sum => others.iter().sum(),
            }
        })
        .collect();
    Ok(PathLengths {
        variability: population_std(&values),
        values,
    })
}
