#![allow(dead_code)]

use dihyp::digraph::Digraph;
use dihyp::{DistanceMatrix, ExtDistance, Path, VertexId};
use rand::Rng;

pub fn graph(n: usize, edges: &[(usize, usize)]) -> Digraph {
    let mut g = Digraph::new();
    for i in 0..n {
        g.add_vertex(format!("v{i}")).unwrap();
    }
    for &(a, b) in edges {
        g.add_edge(a, b, None).unwrap();
    }
    g
}

fn cycle(n: usize) -> Vec<(usize, usize)> {
    (0..n).map(|i| (i, (i + 1) % n)).collect()
}

fn both(edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    edges.iter().flat_map(|&(a, b)| [(a, b), (b, a)]).collect()
}

/// Small hand-built graphs covering the shapes the algorithms branch on.
pub fn fixtures() -> Vec<(String, Digraph)> {
    let mut out = vec![
        ("empty".to_owned(), graph(0, &[])),
        ("point".into(), graph(1, &[])),
        ("loop".into(), graph(1, &[(0, 0)])),
        ("edge".into(), graph(2, &[(0, 1)])),
        ("line5".into(), graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4)])),
        ("diamond".into(), graph(4, &[(0, 1), (0, 2), (1, 3), (2, 3)])),
        ("long_diamond".into(), graph(6, &[(0, 1), (1, 2), (2, 5), (0, 3), (3, 4), (4, 5)])),
        ("two_cycle".into(), graph(2, &[(0, 1), (1, 0)])),
        ("bidirected_path".into(), graph(5, &both(&[(0, 1), (1, 2), (2, 3), (3, 4)]))),
        ("bidirected_star".into(), graph(5, &both(&[(0, 1), (0, 2), (0, 3), (0, 4)]))),
        ("complete4".into(), graph(4, &both(&[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]))),
        ("tournament5".into(), graph(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])),
        ("grid3".into(), graph(9, &[(0, 1), (1, 2), (3, 4), (4, 5), (6, 7), (7, 8), (0, 3), (3, 6), (1, 4), (4, 7), (2, 5), (5, 8)])),
        ("figure_eight".into(), graph(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])),
        ("two_components".into(), graph(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)])),
    ];
    for n in [3, 4, 6, 8] {
        out.push((format!("cycle{n}"), graph(n, &cycle(n))));
    }
    let mut chord = cycle(7);
    chord.push((0, 3));
    out.push(("cycle7_chord".into(), graph(7, &chord)));
    out
}

/// Seeded `G(n, p)` digraph, self-loops allowed with low probability.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Digraph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let q = if a == b { p / 8.0 } else { p };
            if rng.gen_bool(q) {
                edges.push((a, b));
            }
        }
    }
    graph(n, &edges)
}

/// The random family: 200 graphs on 1 to 8 vertices with mixed densities.
pub fn random_family(rng: &mut impl Rng, count: usize) -> Vec<Digraph> {
    (0..count)
        .map(|i| {
            let n = 1 + i % 8;
            let p = [0.15, 0.25, 0.4, 0.6][(i / 8) % 4];
            random_graph(rng, n, p)
        })
        .collect()
}

/// A random tree on `n` vertices, bidirected.
pub fn random_bidirected_tree(rng: &mut impl Rng, n: usize) -> Digraph {
    let edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    graph(n, &both(&edges))
}

pub const INF: u32 = u32::MAX;

/// Floyd–Warshall, independent of the library's BFS.
pub fn floyd(g: &Digraph) -> Vec<Vec<u32>> {
    let n = g.vertex_count();
    let mut d = vec![vec![INF; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for e in g.edges() {
        if e.from != e.to {
            d[e.from][e.to] = 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] != INF && d[k][j] != INF && d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Every geodesic from `a` to `b`, as vertex sequences.
pub fn all_geodesics(g: &Digraph, d: &[Vec<u32>], a: usize, b: usize) -> Vec<Vec<usize>> {
    if d[a][b] == INF {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = vec![a];
    fn go(g: &Digraph, d: &[Vec<u32>], b: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let v = *cur.last().unwrap();
        if v == b {
            out.push(cur.clone());
            return;
        }
        let mut next: Vec<usize> = g.successors(v).to_vec();
        next.sort_unstable();
        next.dedup();
        for w in next {
            if d[w][b] != INF && d[w][b] + 1 == d[v][b] {
                cur.push(w);
                go(g, d, b, cur, out);
                cur.pop();
            }
        }
    }
    go(g, d, b, &mut cur, &mut out);
    out
}

/// Smallest `δ` making every geodesic triangle `δ`-thin, by enumerating every
/// triangle `(p, q, r)` and applying the definition: each vertex of a side
/// lies within `δ` after some vertex of the side meeting its start, or within
/// `δ` before some vertex of the side meeting its end.
pub fn brute_delta(g: &Digraph) -> u32 {
    let d = floyd(g);
    let n = g.vertex_count();
    let geo: Vec<Vec<Vec<Vec<usize>>>> = (0..n)
        .map(|a| (0..n).map(|b| all_geodesics(g, &d, a, b)).collect())
        .collect();
    let need = |side: &[usize], before: &[usize], after: &[usize]| -> u32 {
        side.iter()
            .map(|&v| {
                let from = before.iter().map(|&x| d[x][v]).min().unwrap();
                let to = after.iter().map(|&y| d[v][y]).min().unwrap();
                from.min(to)
            })
            .max()
            .unwrap()
    };
    let mut best = 0;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if d[a][b] == INF || d[b][c] == INF {
                    continue;
                }
                for p in &geo[a][b] {
                    for q in &geo[b][c] {
                        for r in &geo[a][c] {
                            best = best.max(need(p, r, q)).max(need(q, p, r)).max(need(r, p, q));
                        }
                    }
                }
            }
        }
    }
    best
}

pub fn finite(x: ExtDistance) -> u32 {
    x.finite().expect("finite")
}

/// A uniformly stepped random geodesic from `a` to `b`.
pub fn random_geodesic(g: &Digraph, dm: &DistanceMatrix, a: VertexId, b: VertexId, rng: &mut impl Rng) -> Path {
    let mut cur = vec![a];
    while *cur.last().unwrap() != b {
        let v = *cur.last().unwrap();
        let dv = finite(dm.get(v, b));
        let next: Vec<VertexId> = g
            .successors(v)
            .iter()
            .copied()
            .filter(|&w| dm.get(w, b).finite() == Some(dv - 1))
            .collect();
        cur.push(next[rng.gen_range(0..next.len())]);
    }
    Path::new(cur).unwrap()
}

/// A random walk from `a` to `b` of length at most `max_len`, staying where
/// `b` is still reachable in the remaining steps; falls back to a geodesic.
/// Loop edges are never taken.
pub fn random_path(
    g: &Digraph,
    dm: &DistanceMatrix,
    a: VertexId,
    b: VertexId,
    max_len: u32,
    rng: &mut impl Rng,
) -> Path {
    let mut cur = vec![a];
    loop {
        let v = *cur.last().unwrap();
        let left = max_len - (cur.len() as u32 - 1);
        if v == b && (left == 0 || rng.gen_bool(0.3)) {
            return Path::new(cur).unwrap();
        }
        let next: Vec<VertexId> = g
            .successors(v)
            .iter()
            .copied()
            .filter(|&w| w != v && dm.get(w, b).finite().is_some_and(|x| x < left))
            .collect();
        if next.is_empty() {
            let rest = random_geodesic(g, dm, v, b, rng);
            cur.extend_from_slice(&rest.vertices()[1..]);
            return Path::new(cur).unwrap();
        }
        cur.push(next[rng.gen_range(0..next.len())]);
    }
}

/// Ordered pairs `(a, b)` with `b` reachable from `a`.
pub fn reachable_pairs(dm: &DistanceMatrix) -> Vec<(VertexId, VertexId)> {
    let n = dm.len();
    (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| dm.is_reachable(a, b))
        .collect()
}
