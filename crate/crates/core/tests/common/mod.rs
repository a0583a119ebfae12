//! Brute-force reference implementations shared by the integration suites.
//!
//! Everything here is deliberately naive: exhaustive enumeration over paths,
//! edge subsets and time grids, so it can be trusted on small inputs.

#![allow(dead_code)]

use rand::Rng;
use sociokit::model::{
    build_sociogram, GazeEvent, ParticipantId, PositionSample, Roster, Sociogram, SociogramKind,
};

pub fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| ((b'A' + i as u8) as char).to_string()).collect()
}

pub fn roster(n: usize) -> Roster {
    Roster::from_ids(&names(n)).unwrap()
}

pub fn pid(i: usize) -> ParticipantId {
    ParticipantId::new(names(i + 1).pop().unwrap()).unwrap()
}

/// A weight matrix; `w[i][j] > 0` is an edge `i -> j`. Undirected graphs are
/// symmetric.
#[derive(Debug, Clone)]
pub struct Graph {
    pub directed: bool,
    pub w: Vec<Vec<f64>>,
}

impl Graph {
    pub fn n(&self) -> usize {
        self.w.len()
    }

    pub fn sociogram(&self) -> Sociogram {
        let n = self.n();
        let ids = names(n);
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.w[i][j] > 0.0 && (self.directed || i < j) {
                    edges.push((ids[i].as_str(), ids[j].as_str(), self.w[i][j]));
                }
            }
        }
        let kind = if self.directed {
            SociogramKind::Conversation
        } else {
            SociogramKind::Proximity
        };
        build_sociogram(&roster(n), self.directed, kind, &edges).unwrap()
    }

    /// Direction-ignored simple edges `(i, j)` with `i < j`.
    pub fn simple_edges(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.w[i][j] > 0.0 || self.w[j][i] > 0.0 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// `W + Wᵀ` for directed graphs, `W` otherwise.
    pub fn symmetric(&self) -> Vec<Vec<f64>> {
        let n = self.n();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if self.directed {
                            self.w[i][j] + self.w[j][i]
                        } else {
                            self.w[i][j]
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

pub fn connected_simple(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            for (x, y) in [(a, b), (b, a)] {
                if x == v && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    seen.iter().all(|s| *s)
}

/// Every labelled connected simple graph on `n` nodes, as edge lists.
pub fn all_connected_graphs(n: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    (0u32..1 << pairs.len())
        .map(|mask| {
            pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask & (1 << k) != 0)
                .map(|(_, p)| *p)
                .collect::<Vec<_>>()
        })
        .filter(|edges| connected_simple(n, edges))
        .collect()
}

/// Weights either continuous in `[0.5, 100)` or small integers that create
/// many equal-length paths.
pub fn draw_weight<R: Rng>(rng: &mut R, integer: bool) -> f64 {
    if integer {
        rng.random_range(1..=3) as f64
    } else {
        rng.random_range(0.5..100.0)
    }
}

pub fn undirected_graph<R: Rng>(
    rng: &mut R,
    n: usize,
    edges: &[(usize, usize)],
    integer: bool,
) -> Graph {
    let mut w = vec![vec![0.0; n]; n];
    for &(i, j) in edges {
        let x = draw_weight(rng, integer);
        w[i][j] = x;
        w[j][i] = x;
    }
    Graph { directed: false, w }
}

/// A weakly connected digraph on top of `edges`: each simple edge becomes one
/// or both directions.
pub fn directed_graph<R: Rng>(
    rng: &mut R,
    n: usize,
    edges: &[(usize, usize)],
    integer: bool,
) -> Graph {
    let mut w = vec![vec![0.0; n]; n];
    for &(i, j) in edges {
        match rng.random_range(0..3) {
            0 => w[i][j] = draw_weight(rng, integer),
            1 => w[j][i] = draw_weight(rng, integer),
            _ => {
                w[i][j] = draw_weight(rng, integer);
                w[j][i] = draw_weight(rng, integer);
            }
        }
    }
    Graph { directed: true, w }
}

/// The fixed oracle corpus: every connected graph on 2..=5 nodes with one
/// continuous and one integer weight draw, plus a directed variant of each.
pub fn oracle_corpus<R: Rng>(rng: &mut R) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 2..=5 {
        for edges in all_connected_graphs(n) {
            for integer in [false, true] {
                out.push(undirected_graph(rng, n, &edges, integer));
            }
            let integer = rng.random_bool(0.5);
            out.push(directed_graph(rng, n, &edges, integer));
        }
    }
    out
}

fn edge_length(g: &Graph, u: usize, v: usize) -> Option<f64> {
    let x = g.w[u][v];
    (x > 0.0).then(|| 1.0 / x)
}

fn simple_paths(g: &Graph, s: usize, t: usize) -> Vec<(Vec<usize>, f64)> {
    fn go(
        g: &Graph,
        t: usize,
        path: &mut Vec<usize>,
        len: f64,
        out: &mut Vec<(Vec<usize>, f64)>,
    ) {
        let u = *path.last().unwrap();
        if u == t {
            out.push((path.clone(), len));
            return;
        }
        for v in 0..g.n() {
            if path.contains(&v) {
                continue;
            }
            if let Some(l) = edge_length(g, u, v) {
                path.push(v);
                go(g, t, path, len + l, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(g, t, &mut vec![s], 0.0, &mut out);
    out
}

/// Betweenness by enumerating every simple path between every ordered pair,
/// with lengths `1 / weight`, normalized by `(n-1)(n-2)`.
pub fn betweenness_oracle(g: &Graph) -> Vec<f64> {
    let n = g.n();
    let mut b = vec![0.0; n];
    if n <= 2 {
        return b;
    }
    for s in 0..n {
        for t in 0..n {
            if s == t {
                continue;
            }
            let paths = simple_paths(g, s, t);
            let Some(best) = paths.iter().map(|p| p.1).min_by(f64::total_cmp) else {
                continue;
            };
            let shortest: Vec<&Vec<usize>> = paths
                .iter()
                .filter(|(_, l)| (l - best).abs() <= 1e-10 * l.max(best))
                .map(|(p, _)| p)
                .collect();
            let total = shortest.len() as f64;
            for path in &shortest {
                for &v in &path[1..path.len() - 1] {
                    b[v] += 1.0 / total;
                }
            }
        }
    }
    let norm = ((n - 1) * (n - 2)) as f64;
    b.iter().map(|x| x / norm).collect()
}

/// Fewest simple edges whose removal disconnects the graph, by trying every
/// edge subset in order of size.
pub fn edge_connectivity_oracle(g: &Graph) -> u32 {
    let n = g.n();
    let edges = g.simple_edges();
    if !connected_simple(n, &edges) {
        return 0;
    }
    let m = edges.len();
    let mut best = m as u32;
    for mask in 0u32..1 << m {
        let removed = mask.count_ones();
        if removed >= best {
            continue;
        }
        let kept: Vec<(usize, usize)> = edges
            .iter()
            .enumerate()
            .filter(|(k, _)| mask & (1 << k) == 0)
            .map(|(_, e)| *e)
            .collect();
        if !connected_simple(n, &kept) {
            best = removed;
        }
    }
    best
}

/// Local clustering `e_i / (k_i (k_i - 1) / 2)` on the simple undirected graph.
pub fn clustering_oracle(g: &Graph) -> Vec<f64> {
    let n = g.n();
    let edges = g.simple_edges();
    let adj = |a: usize, b: usize| edges.contains(&(a.min(b), a.max(b)));
    (0..n)
        .map(|i| {
            let nbrs: Vec<usize> = (0..n).filter(|&j| j != i && adj(i, j)).collect();
            let k = nbrs.len();
            if k < 2 {
                return 0.0;
            }
            let mut e = 0;
            for (x, &a) in nbrs.iter().enumerate() {
                for &b in &nbrs[x + 1..] {
                    if adj(a, b) {
                        e += 1;
                    }
                }
            }
            e as f64 / (k * (k - 1) / 2) as f64
        })
        .collect()
}

pub fn mat_vec(a: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    a.iter()
        .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// `‖Ax - λx‖₂` for a unit vector `x`.
pub fn eigen_residual(a: &[Vec<f64>], x: &[f64], lambda: f64) -> f64 {
    let ax = mat_vec(a, x);
    let diff: Vec<f64> = ax.iter().zip(x).map(|(p, q)| p - lambda * q).collect();
    norm2(&diff) / norm2(x)
}

/// Max-abs residual of the weighted PageRank equation with dangling mass
/// spread uniformly.
pub fn pagerank_residual(g: &Graph, p: &[f64], damping: f64) -> f64 {
    let n = g.n();
    let out: Vec<f64> = g.w.iter().map(|row| row.iter().sum()).collect();
    let dangling: f64 = (0..n).filter(|&j| out[j] == 0.0).map(|j| p[j]).sum();
    (0..n)
        .map(|i| {
            let inflow: f64 = (0..n)
                .filter(|&j| out[j] > 0.0)
                .map(|j| p[j] * g.w[j][i] / out[j])
                .sum();
            let expected =
                (1.0 - damping) / n as f64 + damping * (inflow + dangling / n as f64);
            (expected - p[i]).abs()
        })
        .fold(0.0, f64::max)
}

/// `‖x - αAx - β1‖₂`.
pub fn katz_residual(a: &[Vec<f64>], x: &[f64], alpha: f64, beta: f64) -> f64 {
    let ax = mat_vec(a, x);
    let diff: Vec<f64> = x
        .iter()
        .zip(&ax)
        .map(|(xi, axi)| xi - alpha * axi - beta)
        .collect();
    norm2(&diff)
}

/// Co-gaze seconds per unordered pair on a 1 ms grid. Event endpoints must be
/// whole milliseconds. Each maximal run of shared ticks on one object is an
/// overlap interval; runs no longer than `min_overlap` are dropped. Returns
/// `(weight, interval count)` per pair `(i, j)`, `i < j`.
pub fn co_gaze_oracle(
    gaze: &[GazeEvent],
    roster: &Roster,
    min_overlap: f64,
) -> Vec<((usize, usize), f64, usize)> {
    let to_ms = |t: f64| (t * 1000.0).round() as i64;
    let n = roster.len();
    let mut objects: Vec<&str> = gaze.iter().map(|g| g.object_id.as_str()).collect();
    objects.sort_unstable();
    objects.dedup();
    let horizon = gaze.iter().map(|g| to_ms(g.end)).max().unwrap_or(0);
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut weight = 0.0;
            let mut count = 0;
            for obj in &objects {
                let mask = |p: usize| {
                    let mut m = vec![false; horizon as usize];
                    for g in gaze.iter().filter(|g| {
                        roster.index_of(g.participant.as_str()) == Some(p) && g.object_id == *obj
                    }) {
                        for tick in to_ms(g.start)..to_ms(g.end) {
                            m[tick as usize] = true;
                        }
                    }
                    m
                };
                let (mi, mj) = (mask(i), mask(j));
                let mut run_start: Option<i64> = None;
                for tick in 0..=horizon {
                    let both = tick < horizon && mi[tick as usize] && mj[tick as usize];
                    match (both, run_start) {
                        (true, None) => run_start = Some(tick),
                        (false, Some(s)) => {
                            let len = tick as f64 / 1000.0 - s as f64 / 1000.0;
                            if len > min_overlap {
                                weight += len;
                                count += 1;
                            }
                            run_start = None;
                        }
                        _ => {}
                    }
                }
            }
            out.push(((i, j), weight, count));
        }
    }
    out
}

/// Close-contact seconds per unordered pair: for every one-second step from
/// the trimmed start, take each participant's latest sample in that second
/// and count the pair when their distance is within `threshold`.
pub fn proximity_oracle(
    positions: &[PositionSample],
    roster: &Roster,
    threshold: f64,
    trim: f64,
) -> Vec<((usize, usize), f64)> {
    let n = roster.len();
    let mut result: Vec<((usize, usize), f64)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            result.push(((i, j), 0.0));
        }
    }
    if positions.is_empty() {
        return result;
    }
    let t_min = positions.iter().map(|p| p.t).fold(f64::INFINITY, f64::min);
    let t_max = positions.iter().map(|p| p.t).fold(f64::NEG_INFINITY, f64::max);
    let (lo, hi) = (t_min + trim, t_max - trim);
    let mut second = 0.0;
    while lo + second <= hi {
        let (from, to) = (lo + second, lo + second + 1.0);
        let latest = |p: usize| {
            positions
                .iter()
                .filter(|s| roster.index_of(s.participant.as_str()) == Some(p))
                .filter(|s| s.t >= from && s.t < to && s.t <= hi)
                .max_by(|a, b| {
                    a.t.total_cmp(&b.t)
                        .then(a.x.total_cmp(&b.x))
                        .then(a.y.total_cmp(&b.y))
                })
        };
        for ((i, j), w) in result.iter_mut() {
            if let (Some(a), Some(b)) = (latest(*i), latest(*j)) {
                if ((a.x - b.x).powi(2) + (a.y - b.y).powi(2)).sqrt() <= threshold {
                    *w += 1.0;
                }
            }
        }
        second += 1.0;
    }
    result
}
