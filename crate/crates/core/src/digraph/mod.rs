//! Finite directed graphs viewed as semimetric spaces.
//!
//! Vertices are opaque string identifiers kept in insertion order; every
//! enumeration in the crate follows that order, so reports are reproducible.
//! Loops and parallel edges are allowed. Distance computations ignore edge
//! multiplicity; [`Digraph::degree_bounds`] counts every edge.

pub(crate) mod distance;
pub mod io;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use distance::{
    all_pairs_distances, in_ball, out_ball, strong_ball, strongly_connected_components,
    Component, DistanceMatrix, ExtDistance,
};

pub type VertexId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Edge {
    pub from: VertexId,
    pub to: VertexId,
    pub label: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct Digraph {
    names: Vec<String>,
    index: HashMap<String, VertexId>,
    edges: Vec<Edge>,
    // distinct neighbours, insertion order
    succ: Vec<Vec<VertexId>>,
    pred: Vec<Vec<VertexId>>,
}

impl PartialEq for Digraph {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.edges == other.edges
    }
}

impl Eq for Digraph {}

impl Digraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a vertex; duplicate names are rejected.
    pub fn add_vertex(&mut self, name: impl Into<String>) -> Result<VertexId> {
        let name = name.into();
        if self.index.contains_key(&name) {
            return Err(Error::DuplicateVertex(name));
        }
        let id = self.names.len();
        self.index.insert(name.clone(), id);
        self.names.push(name);
        self.succ.push(Vec::new());
        self.pred.push(Vec::new());
        Ok(id)
    }

    /// Returns the vertex with this name, creating it if needed.
    pub fn ensure_vertex(&mut self, name: &str) -> VertexId {
        match self.index.get(name) {
            Some(&v) => v,
            None => self.add_vertex(name).expect("fresh name"),
        }
    }

    pub fn add_edge(&mut self, from: VertexId, to: VertexId, label: Option<String>) -> Result<()> {
        let n = self.names.len();
        for v in [from, to] {
            if v >= n {
                return Err(Error::VertexOutOfRange(v));
            }
        }
        if !self.succ[from].contains(&to) {
            self.succ[from].push(to);
            self.pred[to].push(from);
        }
        self.edges.push(Edge { from, to, label });
        Ok(())
    }

    pub fn add_edge_by_name(&mut self, from: &str, to: &str, label: Option<&str>) -> Result<()> {
        let f = self.vertex(from)?;
        let t = self.vertex(to)?;
        self.add_edge(f, t, label.map(str::to_owned))
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.names.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_owned()))
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<VertexId> {
        if v < self.names.len() {
            Ok(v)
        } else {
            Err(Error::VertexOutOfRange(v))
        }
    }

    /// Distinct out-neighbours of `v`.
    pub fn successors(&self, v: VertexId) -> &[VertexId] {
        &self.succ[v]
    }

    /// Distinct in-neighbours of `v`.
    pub fn predecessors(&self, v: VertexId) -> &[VertexId] {
        &self.pred[v]
    }

    pub fn has_edge(&self, from: VertexId, to: VertexId) -> bool {
        self.succ[from].contains(&to)
    }

    /// Every edge reversed; vertex order and labels are kept.
    pub fn reverse(&self) -> Digraph {
        let mut g = self.vertex_copy();
        for e in &self.edges {
            g.add_edge(e.to, e.from, e.label.clone()).expect("same vertex set");
        }
        g
    }

    fn vertex_copy(&self) -> Digraph {
        let mut g = Digraph::new();
        for name in &self.names {
            g.add_vertex(name.clone()).expect("names are distinct");
        }
        g
    }

    /// `(max indegree, max outdegree)`, each edge counted separately.
    pub fn degree_bounds(&self) -> (usize, usize) {
        let n = self.names.len();
        let mut indeg = vec![0usize; n];
        let mut outdeg = vec![0usize; n];
        for e in &self.edges {
            outdeg[e.from] += 1;
            indeg[e.to] += 1;
        }
        (
            indeg.into_iter().max().unwrap_or(0),
            outdeg.into_iter().max().unwrap_or(0),
        )
    }

    /// `max(indegree, outdegree)`; the `α` of the quasi-inequality constants.
    pub fn max_degree(&self) -> usize {
        let (i, o) = self.degree_bounds();
        i.max(o)
    }

    /// Subgraph induced on `keep` (in the given order), keeping all internal
    /// edges. Returns the subgraph and the map from new to old vertex ids.
    pub fn induced_subgraph(&self, keep: &[VertexId]) -> (Digraph, Vec<VertexId>) {
        let mut g = Digraph::new();
        let mut new_id = HashMap::with_capacity(keep.len());
        for &v in keep {
            let id = g.add_vertex(self.names[v].clone()).expect("distinct");
            new_id.insert(v, id);
        }
        for e in &self.edges {
            if let (Some(&f), Some(&t)) = (new_id.get(&e.from), new_id.get(&e.to)) {
                g.add_edge(f, t, e.label.clone()).expect("in range");
            }
        }
        (g, keep.to_vec())
    }

    /// The graph `X⁰`: a fresh vertex `z` and an edge from every vertex,
    /// `z` included, to `z`.
    pub fn adjoin_sink(&self) -> (Digraph, VertexId) {
        let mut g = self.clone();
        let mut name = String::from("z");
        while g.index.contains_key(&name) {
            name.push('\'');
        }
        let z = g.add_vertex(name).expect("fresh");
        for v in g.vertices() {
            g.add_edge(v, z, None).expect("in range");
        }
        (g, z)
    }

    /// Replaces each undirected edge by a pair of opposite directed edges.
    /// Vertices are declared in order of first appearance.
    pub fn bidirect<S: AsRef<str>>(undirected: &[(S, S)]) -> Digraph {
        let mut g = Digraph::new();
        for (a, b) in undirected {
            let u = g.ensure_vertex(a.as_ref());
            let v = g.ensure_vertex(b.as_ref());
            g.add_edge(u, v, None).expect("in range");
            g.add_edge(v, u, None).expect("in range");
        }
        g
    }

    /// Cheap structural fingerprint (FNV-1a over names and edges).
    pub fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut eat = |bytes: &[u8]| {
            for &b in bytes {
                h ^= u64::from(b);
                h = h.wrapping_mul(0x0100_0000_01b3);
            }
        };
        for name in &self.names {
            eat(name.as_bytes());
            eat(&[0xff]);
        }
        for e in &self.edges {
            eat(&(e.from as u64).to_le_bytes());
            eat(&(e.to as u64).to_le_bytes());
            if let Some(l) = &e.label {
                eat(l.as_bytes());
            }
            eat(&[0xfe]);
        }
        h
    }

    /// Simple directed graph obtained by forgetting labels and multiplicity.
    pub fn edge_pairs(&self) -> Vec<(VertexId, VertexId)> {
        let mut pairs = Vec::new();
        for v in self.vertices() {
            for &w in &self.succ[v] {
                pairs.push((v, w));
            }
        }
        pairs
    }
}

/// A directed path `[x₀, …, xₙ]`; length `n`. A single vertex is a path of
/// length 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Path(Vec<VertexId>);

impl<'de> Deserialize<'de> for Path {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Path::new(Vec::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

impl Path {
    pub fn new(vertices: Vec<VertexId>) -> Result<Path> {
        if vertices.is_empty() {
            return Err(Error::Invalid("a path has at least one vertex".into()));
        }
        Ok(Path(vertices))
    }

    pub fn trivial(v: VertexId) -> Path {
        Path(vec![v])
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_trivial(&self) -> bool {
        self.0.len() == 1
    }

    pub fn start(&self) -> VertexId {
        self.0[0]
    }

    pub fn end(&self) -> VertexId {
        *self.0.last().expect("non-empty")
    }

    pub fn is_parallel(&self, other: &Path) -> bool {
        self.start() == other.start() && self.end() == other.end()
    }

    /// `self ∘ other`; `None` when `end(self) != start(other)`.
    pub fn compose(&self, other: &Path) -> Option<Path> {
        if self.end() != other.start() {
            return None;
        }
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0[1..]);
        Some(Path(v))
    }

    pub fn reversed(&self) -> Path {
        let mut v = self.0.clone();
        v.reverse();
        Path(v)
    }

    /// Subpath between positions `i..=j`.
    pub fn subpath(&self, i: usize, j: usize) -> Path {
        Path(self.0[i..=j].to_vec())
    }

    pub fn position(&self, v: VertexId) -> Option<usize> {
        self.0.iter().position(|&x| x == v)
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.contains(&v)
    }

    /// Consecutive vertices joined by edges of `g`.
    pub fn is_path_in(&self, g: &Digraph) -> bool {
        self.0.iter().all(|&v| v < g.vertex_count())
            && self.0.windows(2).all(|w| g.has_edge(w[0], w[1]))
    }

    pub fn is_geodesic(&self, dm: &DistanceMatrix) -> bool {
        dm.get(self.start(), self.end()) == ExtDistance::Finite(self.len() as u32)
    }

    pub fn has_loop_edge(&self) -> bool {
        self.0.windows(2).any(|w| w[0] == w[1])
    }

    pub fn display(&self, g: &Digraph) -> String {
        let names: Vec<&str> = self.0.iter().map(|&v| g.name(v)).collect();
        format!("[{}]", names.join(","))
    }

    pub fn named(&self, g: &Digraph) -> Vec<String> {
        self.0.iter().map(|&v| g.name(v).to_owned()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_graph(n: usize) -> Digraph {
        let mut g = Digraph::new();
        for i in 0..n {
            g.add_vertex(format!("v{i}")).unwrap();
        }
        for i in 1..n {
            g.add_edge(i - 1, i, None).unwrap();
        }
        g
    }

    #[test]
    fn edge_endpoints_must_exist() {
        let mut g = path_graph(2);
        assert!(matches!(g.add_edge(0, 5, None), Err(Error::VertexOutOfRange(5))));
        assert!(matches!(g.add_vertex("v0"), Err(Error::DuplicateVertex(_))));
    }

    #[test]
    fn degree_bounds_count_every_edge() {
        let mut g = Digraph::new();
        let a = g.add_vertex("a").unwrap();
        g.add_edge(a, a, None).unwrap();
        assert_eq!(g.degree_bounds(), (1, 1));

        let mut star = Digraph::new();
        let c = star.add_vertex("c").unwrap();
        for i in 0..3 {
            let v = star.add_vertex(format!("l{i}")).unwrap();
            star.add_edge(v, c, None).unwrap();
        }
        assert_eq!(star.degree_bounds(), (3, 1));

        let mut multi = path_graph(2);
        multi.add_edge(0, 1, Some("x".into())).unwrap();
        assert_eq!(multi.degree_bounds(), (2, 2));
        assert_eq!(multi.successors(0), &[1]);
    }

    #[test]
    fn adjoin_sink_shapes() {
        let (g, z) = Digraph::new().adjoin_sink();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_pairs(), vec![(z, z)]);

        let mut one = Digraph::new();
        one.add_vertex("a").unwrap();
        let (g, z) = one.adjoin_sink();
        assert_eq!(g.name(z), "z");
        assert_eq!(g.edge_pairs(), vec![(0, z), (z, z)]);

        let mut clash = Digraph::new();
        clash.add_vertex("z").unwrap();
        let (g, z) = clash.adjoin_sink();
        assert_eq!(g.name(z), "z'");
    }

    #[test]
    fn bidirect_single_edge() {
        let g = Digraph::bidirect(&[("u", "v")]);
        assert_eq!(g.edge_pairs(), vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn reverse_twice_is_identity() {
        let mut g = path_graph(4);
        g.add_edge(3, 0, Some("s".into())).unwrap();
        assert_eq!(g.reverse().reverse(), g);
    }

    #[test]
    fn path_composition() {
        let p = Path::new(vec![0, 1]).unwrap();
        let q = Path::new(vec![1, 2]).unwrap();
        assert_eq!(p.compose(&q).unwrap().vertices(), &[0, 1, 2]);
        assert!(q.compose(&p).is_none());
        assert_eq!(Path::trivial(3).len(), 0);
        assert!(Path::new(vec![]).is_err());
    }
}
