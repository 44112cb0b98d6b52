//! Independent reference implementations shared by the integration tests.
//!
//! Nothing here calls into the solver: distances come from Floyd–Warshall,
//! geodesics from a plain simple-path search, and selections are enumerated
//! exhaustively.

#![allow(dead_code)]

use geodetic::Graph;

const INF: usize = usize::MAX / 4;

pub fn floyd_warshall(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut d = vec![vec![INF; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for (u, v) in g.edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Every simple path from `x` to `y` with exactly `len` edges.
pub fn simple_paths_of_length(g: &Graph, x: usize, y: usize, len: usize) -> Vec<Vec<usize>> {
    fn walk(g: &Graph, y: usize, len: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = *path.last().unwrap();
        if path.len() == len + 1 {
            if last == y {
                out.push(path.clone());
            }
            return;
        }
        for w in 0..g.n() {
            if g.has_edge(last, w) && !path.contains(&w) {
                path.push(w);
                walk(g, y, len, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(g, y, len, &mut vec![x], &mut out);
    out
}

/// All geodesics between `x` and `y`.
pub fn geodesics(g: &Graph, d: &[Vec<usize>], x: usize, y: usize) -> Vec<Vec<usize>> {
    simple_paths_of_length(g, x, y, d[x][y])
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|&v| m >> v & 1 == 1).collect())
        .collect()
}

/// Whether some choice of one geodesic per pair of `set` covers the graph,
/// by trying every combination.
pub fn set_is_strong_geodetic(g: &Graph, d: &[Vec<usize>], set: &[usize]) -> bool {
    let n = g.n();
    let mut options = Vec::new();
    for (i, &x) in set.iter().enumerate() {
        for &y in &set[i + 1..] {
            options.push(geodesics(g, d, x, y));
        }
    }
    let mut choice = vec![0usize; options.len()];
    loop {
        let mut covered = vec![false; n];
        for &v in set {
            covered[v] = true;
        }
        for (opts, &c) in options.iter().zip(&choice) {
            for &v in &opts[c] {
                covered[v] = true;
            }
        }
        if covered.iter().all(|&c| c) {
            return true;
        }
        // Odometer step.
        let mut i = 0;
        loop {
            if i == choice.len() {
                return false;
            }
            choice[i] += 1;
            if choice[i] < options[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// `sg(G)` by exhaustive search over sets and geodesic selections.
pub fn naive_sg(g: &Graph) -> usize {
    let d = floyd_warshall(g);
    assert!(
        d.iter().flatten().all(|&x| x < INF),
        "graph must be connected"
    );
    (1..=g.n())
        .find(|&k| {
            subsets(g.n(), k)
                .iter()
                .any(|s| set_is_strong_geodetic(g, &d, s))
        })
        .expect("V is always strong geodetic")
}

/// `g(G)`: smallest set whose pairwise intervals cover `V`.
pub fn naive_geodetic(g: &Graph) -> usize {
    let d = floyd_warshall(g);
    let n = g.n();
    let covers = |s: &[usize]| {
        (0..n).all(|v| {
            s.contains(&v)
                || s.iter()
                    .any(|&x| s.iter().any(|&y| d[x][v] + d[v][y] == d[x][y]))
        })
    };
    (1..=n)
        .find(|&k| subsets(n, k).iter().any(|s| covers(s)))
        .unwrap()
}

/// `γ(G)` by enumeration.
pub fn naive_domination(g: &Graph) -> usize {
    let n = g.n();
    let dominates =
        |s: &[usize]| (0..n).all(|v| s.contains(&v) || s.iter().any(|&x| g.has_edge(x, v)));
    (1..=n)
        .find(|&k| subsets(n, k).iter().any(|s| dominates(s)))
        .unwrap()
}

/// Connected `G(n, p)` instances with `n` in `sizes`, deterministic in `seed`.
pub fn random_connected(
    count: usize,
    sizes: std::ops::RangeInclusive<usize>,
    seed: u64,
) -> Vec<Graph> {
    let span = sizes.end() - sizes.start() + 1;
    (0..count)
        .map(|i| {
            let n = sizes.start() + i % span;
            let p = 0.25 + 0.1 * (i % 6) as f64;
            geodetic::generators::gnp_connected_seeded(n, p, seed.wrapping_add(i as u64)).unwrap()
        })
        .collect()
}
