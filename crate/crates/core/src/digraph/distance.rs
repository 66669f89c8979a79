use std::collections::VecDeque;
use std::fmt;
use std::ops::Add;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::{Digraph, VertexId};
use crate::error::Result;

/// A path length, or `Infinite` when no path exists.
///
/// The derived order puts every finite value below `Infinite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtDistance {
    Finite(u32),
    Infinite,
}

impl ExtDistance {
    pub const ZERO: ExtDistance = ExtDistance::Finite(0);

    pub fn is_finite(self) -> bool {
        matches!(self, ExtDistance::Finite(_))
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            ExtDistance::Finite(d) => Some(d),
            ExtDistance::Infinite => None,
        }
    }

    pub(crate) fn from_raw(raw: u32) -> ExtDistance {
        if raw == UNREACHABLE {
            ExtDistance::Infinite
        } else {
            ExtDistance::Finite(raw)
        }
    }
}

impl Add for ExtDistance {
    type Output = ExtDistance;

    fn add(self, rhs: ExtDistance) -> ExtDistance {
        match (self, rhs) {
            (ExtDistance::Finite(a), ExtDistance::Finite(b)) => match a.checked_add(b) {
                Some(s) if s != UNREACHABLE => ExtDistance::Finite(s),
                _ => ExtDistance::Infinite,
            },
            _ => ExtDistance::Infinite,
        }
    }
}

impl fmt::Display for ExtDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtDistance::Finite(d) => write!(f, "{d}"),
            ExtDistance::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for ExtDistance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtDistance::Finite(d) => s.serialize_u32(*d),
            ExtDistance::Infinite => s.serialize_str("inf"),
        }
    }
}

pub(crate) const UNREACHABLE: u32 = u32::MAX;

/// All-pairs directed distances of a graph.
///
/// Stored densely; the public accessors only hand out [`ExtDistance`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<u32>,
    fingerprint: u64,
}

impl DistanceMatrix {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, u: VertexId, v: VertexId) -> ExtDistance {
        ExtDistance::from_raw(self.data[u * self.n + v])
    }

    /// Raw entry; `u32::MAX` marks unreachable.
    #[inline]
    pub(crate) fn raw(&self, u: VertexId, v: VertexId) -> u32 {
        self.data[u * self.n + v]
    }

    pub(crate) fn row(&self, u: VertexId) -> &[u32] {
        &self.data[u * self.n..(u + 1) * self.n]
    }

    pub fn is_reachable(&self, u: VertexId, v: VertexId) -> bool {
        self.raw(u, v) != UNREACHABLE
    }

    /// Fingerprint of the graph this matrix was computed from.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// Distances of the reversed graph.
    pub fn transpose(&self) -> DistanceMatrix {
        let n = self.n;
        let mut data = vec![UNREACHABLE; n * n];
        for u in 0..n {
            for v in 0..n {
                data[v * n + u] = self.data[u * n + v];
            }
        }
        DistanceMatrix {
            n,
            data,
            fingerprint: self.fingerprint.rotate_left(1),
        }
    }

    /// Largest finite entry.
    pub fn finite_diameter(&self) -> u32 {
        self.data
            .iter()
            .copied()
            .filter(|&d| d != UNREACHABLE)
            .max()
            .unwrap_or(0)
    }
}

/// Breadth-first distances from `src`.
pub(crate) fn bfs_row(g: &Digraph, src: VertexId, row: &mut [u32]) {
    row.fill(UNREACHABLE);
    row[src] = 0;
    let mut queue = VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        let du = row[u];
        for &w in g.successors(u) {
            if row[w] == UNREACHABLE {
                row[w] = du + 1;
                queue.push_back(w);
            }
        }
    }
}

/// One BFS per source vertex, rows filled in parallel.
pub fn all_pairs_distances(g: &Digraph) -> DistanceMatrix {
    let n = g.vertex_count();
    let mut data = vec![UNREACHABLE; n * n];
    if n > 0 {
        data.par_chunks_mut(n)
            .enumerate()
            .for_each(|(src, row)| bfs_row(g, src, row));
    }
    DistanceMatrix {
        n,
        data,
        fingerprint: g.fingerprint(),
    }
}

// unreachable vertices never lie in a ball, even of infinite radius
fn within(d: ExtDistance, r: ExtDistance) -> bool {
    d.is_finite() && d <= r
}

fn check_centers(g: &Digraph, centers: &[VertexId]) -> Result<()> {
    for &c in centers {
        g.check_vertex(c)?;
    }
    Ok(())
}

/// `{y : d(c, y) ≤ r for some centre c}`, ascending.
pub fn out_ball(
    g: &Digraph,
    dm: &DistanceMatrix,
    centers: &[VertexId],
    r: ExtDistance,
) -> Result<Vec<VertexId>> {
    check_centers(g, centers)?;
    Ok(g.vertices()
        .filter(|&y| centers.iter().any(|&c| within(dm.get(c, y), r)))
        .collect())
}

/// `{y : d(y, c) ≤ r for some centre c}`, ascending.
pub fn in_ball(
    g: &Digraph,
    dm: &DistanceMatrix,
    centers: &[VertexId],
    r: ExtDistance,
) -> Result<Vec<VertexId>> {
    check_centers(g, centers)?;
    Ok(g.vertices()
        .filter(|&y| centers.iter().any(|&c| within(dm.get(y, c), r)))
        .collect())
}

/// Intersection of the out-ball and the in-ball.
pub fn strong_ball(
    g: &Digraph,
    dm: &DistanceMatrix,
    centers: &[VertexId],
    r: ExtDistance,
) -> Result<Vec<VertexId>> {
    let out = out_ball(g, dm, centers, r)?;
    let inb = in_ball(g, dm, centers, r)?;
    Ok(out.into_iter().filter(|v| inb.binary_search(v).is_ok()).collect())
}

/// A strongly connected component with its induced subgraph.
#[derive(Clone, Debug)]
pub struct Component {
    /// Vertex ids in the ambient graph, ascending.
    pub vertices: Vec<VertexId>,
    pub subgraph: Digraph,
}

/// Kosaraju. Components are listed by their smallest vertex.
pub fn strongly_connected_components(g: &Digraph) -> Vec<Component> {
    let n = g.vertex_count();
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for s in 0..n {
        if visited[s] {
            continue;
        }
        visited[s] = true;
        let mut stack = vec![(s, 0usize)];
        while let Some((u, i)) = stack.last_mut() {
            let u = *u;
            if let Some(&w) = g.successors(u).get(*i) {
                *i += 1;
                if !visited[w] {
                    visited[w] = true;
                    stack.push((w, 0));
                }
            } else {
                order.push(u);
                stack.pop();
            }
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut count = 0;
    for &s in order.iter().rev() {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = count;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &w in g.predecessors(u) {
                if comp[w] == usize::MAX {
                    comp[w] = count;
                    stack.push(w);
                }
            }
        }
        count += 1;
    }
    let mut classes: Vec<Vec<VertexId>> = vec![Vec::new(); count];
    for v in 0..n {
        classes[comp[v]].push(v);
    }
    classes.sort_by_key(|c| c[0]);
    classes
        .into_iter()
        .map(|vertices| {
            let (subgraph, _) = g.induced_subgraph(&vertices);
            Component { vertices, subgraph }
        })
        .collect()
}
