use crate::model::Sociogram;

/// Edge connectivity of the simple, direction-ignored graph: the fewest edges
/// whose removal disconnects it. 0 for an already disconnected graph.
///
/// Stoer-Wagner minimum cut with unit capacities.
pub fn edge_connectivity(sociogram: &Sociogram) -> u32 {
    if !sociogram.is_connected() {
        return 0;
    }
    let a = sociogram.symmetric_adjacency();
    let n = a.len();
    let mut w: Vec<Vec<u32>> = (0..n)
        .map(|i| (0..n).map(|j| u32::from(i != j && a[i][j] > 0.0)).collect())
        .collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut best = u32::MAX;

    while active.len() > 1 {
        // Maximum adjacency ordering over the active (merged) vertices.
        let mut added = vec![false; n];
        let mut key = vec![0u32; n];
        let mut prev = active[0];
        let mut last = active[0];
        for step in 0..active.len() {
            let next = *active
                .iter()
                .filter(|&&v| !added[v])
                .max_by_key(|&&v| (key[v], std::cmp::Reverse(v)))
                .expect("an unadded vertex remains");
            added[next] = true;
            if step == active.len() - 1 {
                best = best.min(key[next]);
                prev = last;
                last = next;
            } else {
                last = next;
                for &v in &active {
                    if !added[v] {
                        key[v] += w[next][v];
                    }
                }
            }
        }
        // Merge `last` into `prev`.
        for &v in &active {
            w[prev][v] += w[last][v];
            w[v][prev] = w[prev][v];
        }
        w[prev][prev] = 0;
        active.retain(|&v| v != last);
    }
    best
}

#[cfg(test)]
mod tests {
    use super::super::test_graphs::*;
    use super::*;

    #[test]
    fn complete_graph() {
        assert_eq!(edge_connectivity(&k4(1.0)), 3);
    }

    #[test]
    fn star() {
        let s = undirected(4, &[(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0)]);
        assert_eq!(edge_connectivity(&s), 1);
    }

    #[test]
    fn disconnected() {
        assert_eq!(edge_connectivity(&undirected(4, &[(0, 1, 1.0), (2, 3, 1.0)])), 0);
    }

    #[test]
    fn cycle_and_two_nodes() {
        let c4 = undirected(4, &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 0, 1.0)]);
        assert_eq!(edge_connectivity(&c4), 2);
        assert_eq!(edge_connectivity(&undirected(2, &[(0, 1, 9.0)])), 1);
    }

    #[test]
    fn weights_and_direction_ignored() {
        // Directed 2-cycle collapses to one undirected edge.
        let d = directed(2, &[(0, 1, 1.0), (1, 0, 5.0)]);
        assert_eq!(edge_connectivity(&d), 1);
    }
}
