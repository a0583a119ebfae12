use super::population_std;
use crate::model::Sociogram;

/// Relative tolerance under which two path lengths count as equally short.
pub const PATH_TIE_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct Betweenness {
    /// Normalized to `[0, 1]`, roster order.
    pub values: Vec<f64>,
    pub variability: f64,
}

pub(crate) fn same_length(a: f64, b: f64) -> bool {
    (a - b).abs() <= PATH_TIE_TOLERANCE * a.abs().max(b.abs())
}

/// Brandes betweenness with Dijkstra over edge lengths `1 / weight`.
///
/// Directed sociograms count ordered `(s, t)` pairs along edge direction.
/// Scores are divided by `(n-1)(n-2)`, which for undirected graphs equals
/// halving the double-counted sum and dividing by `(n-1)(n-2)/2`.
pub fn betweenness(sociogram: &Sociogram) -> Betweenness {
    let a = sociogram.adjacency();
    let n = a.len();
    let mut scores = vec![0.0f64; n];

    for s in 0..n {
        let mut dist = vec![f64::INFINITY; n];
        let mut sigma = vec![0.0f64; n];
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut settled = vec![false; n];
        let mut order = Vec::with_capacity(n);
        dist[s] = 0.0;
        sigma[s] = 1.0;

        while let Some(v) = (0..n)
            .filter(|&v| !settled[v] && dist[v].is_finite())
            .min_by(|&x, &y| dist[x].total_cmp(&dist[y]))
        {
            settled[v] = true;
            order.push(v);
            for w in 0..n {
                if settled[w] || a[v][w] <= 0.0 {
                    continue;
                }
                let candidate = dist[v] + 1.0 / a[v][w];
                if dist[w].is_finite() && same_length(candidate, dist[w]) {
                    sigma[w] += sigma[v];
                    preds[w].push(v);
                } else if candidate < dist[w] {
                    dist[w] = candidate;
                    sigma[w] = sigma[v];
                    preds[w] = vec![v];
                }
            }
        }

        let mut delta = vec![0.0f64; n];
        while let Some(w) = order.pop() {
            for &v in &preds[w] {
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
            if w != s {
                scores[w] += delta[w];
            }
        }
    }

    if n > 2 {
        let norm = ((n - 1) * (n - 2)) as f64;
        scores.iter_mut().for_each(|g| *g /= norm);
    } else {
        scores.iter_mut().for_each(|g| *g = 0.0);
    }
    Betweenness {
        variability: population_std(&scores),
        values: scores,
    }
}
