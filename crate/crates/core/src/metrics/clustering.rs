use super::population_std;
use crate::model::Sociogram;

#[derive(Debug, Clone, PartialEq)]
pub struct Clustering {
    pub values: Vec<f64>,
    pub variability: f64,
}

/// Local clustering `C_i = 2 e_i / (k_i (k_i - 1))` on the binary,
/// direction-ignored graph; `C_i = 0` when `k_i < 2`.
pub fn clustering_coefficients(sociogram: &Sociogram) -> Clustering {
    let n = sociogram.node_count();
    let a = sociogram.symmetric_adjacency();
    let linked = |i: usize, j: usize| a[i][j] > 0.0;

    let values: Vec<f64> = (0..n)
        .map(|i| {
            let neighbors: Vec<usize> = (0..n).filter(|&j| j != i && linked(i, j)).collect();
            let k = neighbors.len();
            if k < 2 {
                return 0.0;
            }
            let mut e = 0usize;
            for (x, &u) in neighbors.iter().enumerate() {
                for &v in &neighbors[x + 1..] {
                    if linked(u, v) {
                        e += 1;
                    }
                }
            }
            2.0 * e as f64 / (k * (k - 1)) as f64
        })
        .collect();
    Clustering {
        variability: population_std(&values),
        values,
    }
}
