//! Thin geodesic triangles: the exact minimal thinness constant of a finite
//! digraph, and the triangle / polygon quasi-inequality constants.

mod quasi;
mod thinness;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::digraph::distance::UNREACHABLE;
use crate::digraph::{Digraph, DistanceMatrix, ExtDistance, Path, VertexId};
use crate::error::{Error, Result};

pub use quasi::{
    check_polygon_quasi_inequality, check_quasi_metric, check_triangle_quasi_inequality,
    quasi_constants, ConstantsReport, PolygonReport, QuasiViolation, TriangleReport,
};
pub use thinness::{
    is_strongly_delta_hyperbolic, min_hyperbolicity_constant, min_hyperbolicity_constant_with,
    vertex_thinness_requirement, witness_triangle, ThinnessOptions, ThinnessReport,
    ThinnessWitness, TruncationMargin,
};

/// The three sides of a geodesic triangle `(p, q, r)` with `p: P→Q`,
/// `q: Q→R` and hypotenuse `r: P→R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    P,
    Q,
    R,
}

impl Side {
    pub const ALL: [Side; 3] = [Side::P, Side::Q, Side::R];

    /// Endpoints of this side for the corner triple `(P, Q, R)`.
    pub fn endpoints(self, [p, q, r]: [VertexId; 3]) -> (VertexId, VertexId) {
        match self {
            Side::P => (p, q),
            Side::Q => (q, r),
            Side::R => (p, r),
        }
    }

    /// The side meeting the start of `self`, and the side meeting its end.
    pub fn neighbours(self) -> (Side, Side) {
        match self {
            Side::P => (Side::R, Side::Q),
            Side::Q => (Side::P, Side::R),
            Side::R => (Side::P, Side::Q),
        }
    }
}

/// Deserialized triangles are unchecked until used in a complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeodesicTriangle {
    pub p: Path,
    pub q: Path,
    pub r: Path,
}

impl GeodesicTriangle {
    /// Checks composability, parallelism and that all three sides are
    /// geodesic paths of `g`.
    pub fn new(g: &Digraph, dm: &DistanceMatrix, p: Path, q: Path, r: Path) -> Result<Self> {
        for side in [&p, &q, &r] {
            if !side.is_path_in(g) {
                return Err(Error::NotAPath(side.display_checked(g)));
            }
            if !side.is_geodesic(dm) {
                return Err(Error::NotGeodesic(side.display(g)));
            }
        }
        if p.end() != q.start() {
            return Err(Error::NotParallel("p and q are not composable".into()));
        }
        if p.start() != r.start() || q.end() != r.end() {
            return Err(Error::NotParallel("p∘q is not parallel to r".into()));
        }
        Ok(GeodesicTriangle { p, q, r })
    }

    /// Built without checks; callers guarantee the invariants.
    pub(crate) fn new_unchecked(p: Path, q: Path, r: Path) -> Self {
        debug_assert!(p.end() == q.start() && p.start() == r.start() && q.end() == r.end());
        GeodesicTriangle { p, q, r }
    }

    /// The size `|p| + |q|`.
    pub fn size(&self) -> usize {
        self.p.len() + self.q.len()
    }

    pub fn corners(&self) -> [VertexId; 3] {
        [self.p.start(), self.q.start(), self.r.end()]
    }

    pub fn side(&self, s: Side) -> &Path {
        match s {
            Side::P => &self.p,
            Side::Q => &self.q,
            Side::R => &self.r,
        }
    }

    pub fn is_geodesic_in(&self, g: &Digraph, dm: &DistanceMatrix) -> bool {
        [&self.p, &self.q, &self.r]
            .iter()
            .all(|s| s.is_path_in(g) && s.is_geodesic(dm))
            && self.p.end() == self.q.start()
            && self.p.start() == self.r.start()
            && self.q.end() == self.r.end()
    }

    /// Whether every vertex satisfies the thin condition with radius `delta`.
    pub fn is_thin(&self, dm: &DistanceMatrix, delta: u32) -> bool {
        Side::ALL.iter().all(|&s| {
            let (before, after) = s.neighbours();
            self.side(s).vertices().iter().all(|&v| {
                self.side(before).vertices().iter().any(|&x| dm.raw(x, v) <= delta)
                    || self.side(after).vertices().iter().any(|&y| dm.raw(v, y) <= delta)
            })
        })
    }
}

impl Path {
    fn display_checked(&self, g: &Digraph) -> String {
        if self.vertices().iter().all(|&v| v < g.vertex_count()) {
            self.display(g)
        } else {
            format!("{:?}", self.vertices())
        }
    }
}

fn no_geodesic(g: &Digraph, a: VertexId, b: VertexId) -> Error {
    Error::NoGeodesic {
        from: g.name(a).to_owned(),
        to: g.name(b).to_owned(),
    }
}

/// `{v : d(A,v) + d(v,B) = d(A,B)}`, ascending.
pub fn on_some_geodesic(
    g: &Digraph,
    dm: &DistanceMatrix,
    a: VertexId,
    b: VertexId,
) -> Result<Vec<VertexId>> {
    g.check_vertex(a)?;
    g.check_vertex(b)?;
    let dag = GeodesicDag::build(g, dm, a, b).ok_or_else(|| no_geodesic(g, a, b))?;
    let mut v = dag.vertices.clone();
    v.sort_unstable();
    Ok(v)
}

/// The union of all geodesics from `A` to `B`, stored layer by layer
/// (layer `i` holds the vertices at distance `i` from `A`, ascending).
#[derive(Clone, Debug)]
pub struct GeodesicDag {
    pub source: VertexId,
    pub target: VertexId,
    pub length: u32,
    vertices: Vec<VertexId>,
    layer_start: Vec<usize>,
    // local indices of DAG predecessors
    preds: Vec<Vec<u32>>,
}

impl GeodesicDag {
    /// `None` when `B` is unreachable from `A`.
    pub(crate) fn build(g: &Digraph, dm: &DistanceMatrix, a: VertexId, b: VertexId) -> Option<Self> {
        let length = dm.raw(a, b);
        if length == UNREACHABLE {
            return None;
        }
        let mut vertices = vec![a];
        let mut layer_start = vec![0, 1];
        let mut preds: Vec<Vec<u32>> = vec![Vec::new()];
        let mut local: HashMap<VertexId, u32> = HashMap::new();
        for i in 0..length {
            let (lo, hi) = (layer_start[i as usize], layer_start[i as usize + 1]);
            let want = length - i - 1;
            let mut next: Vec<VertexId> = Vec::new();
            for &x in &vertices[lo..hi] {
                for &w in g.successors(x) {
                    if dm.raw(w, b) == want {
                        next.push(w);
                    }
                }
            }
            next.sort_unstable();
            next.dedup();
            local.clear();
            for (k, &w) in next.iter().enumerate() {
                local.insert(w, (hi + k) as u32);
            }
            preds.resize(hi + next.len(), Vec::new());
            for (xi, &x) in vertices[lo..hi].iter().enumerate() {
                for &w in g.successors(x) {
                    if let Some(&wi) = local.get(&w) {
                        preds[wi as usize].push((lo + xi) as u32);
                    }
                }
            }
            vertices.extend_from_slice(&next);
            layer_start.push(vertices.len());
        }
        Some(GeodesicDag {
            source: a,
            target: b,
            length,
            vertices,
            layer_start,
            preds,
        })
    }

    /// Vertices in layer order.
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn layer(&self, i: usize) -> &[VertexId] {
        &self.vertices[self.layer_start[i]..self.layer_start[i + 1]]
    }

    pub fn edge_count(&self) -> usize {
        self.preds.iter().map(Vec::len).sum()
    }

    /// DAG edges as `(from, to)` vertex pairs.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (wi, ps) in self.preds.iter().enumerate() {
            for &xi in ps {
                out.push((self.vertices[xi as usize], self.vertices[wi]));
            }
        }
        out.sort_unstable();
        out
    }

    /// The DAG as a stand-alone digraph with the names of `g`.
    pub fn to_digraph(&self, g: &Digraph) -> Digraph {
        let mut keep = self.vertices.clone();
        keep.sort_unstable();
        let mut out = Digraph::new();
        for &v in &keep {
            out.add_vertex(g.name(v)).expect("distinct");
        }
        for (x, w) in self.edges() {
            let xi = keep.binary_search(&x).expect("member");
            let wi = keep.binary_search(&w).expect("member");
            out.add_edge(xi, wi, None).expect("in range");
        }
        out
    }

    /// Maximum over all geodesics of the minimum of `weight` along the path.
    /// A value of `u32::MAX` stands for an infinite weight.
    pub(crate) fn max_min(&self, weight: impl Fn(VertexId) -> u32) -> u32 {
        let mut f = vec![0u32; self.vertices.len()];
        f[0] = weight(self.vertices[0]);
        for i in 1..self.vertices.len() {
            let best = self.preds[i].iter().map(|&p| f[p as usize]).max().unwrap_or(0);
            f[i] = best.min(weight(self.vertices[i]));
        }
        *f.last().expect("non-empty")
    }

    /// As [`Self::max_min`], also returning a path attaining the value
    /// (ties go to the smallest predecessor).
    pub(crate) fn max_min_path(&self, weight: impl Fn(VertexId) -> u32) -> (u32, Path) {
        let n = self.vertices.len();
        let mut f = vec![0u32; n];
        let mut arg = vec![0u32; n];
        f[0] = weight(self.vertices[0]);
        for i in 1..n {
            let mut best = 0;
            let mut best_p = u32::MAX;
            for &p in &self.preds[i] {
                let fp = f[p as usize];
                if best_p == u32::MAX
                    || fp > best
                    || (fp == best && self.vertices[p as usize] < self.vertices[best_p as usize])
                {
                    best = fp;
                    best_p = p;
                }
            }
            arg[i] = best_p;
            f[i] = best.min(weight(self.vertices[i]));
        }
        let mut rev = vec![self.vertices[n - 1]];
        let mut i = n - 1;
        while i != 0 {
            i = arg[i] as usize;
            rev.push(self.vertices[i]);
        }
        rev.reverse();
        (f[n - 1], Path::new(rev).expect("non-empty"))
    }

    /// Deepest vertex of the DAG as measured by `depth`.
    pub(crate) fn max_of(&self, depth: &[u32]) -> u32 {
        self.vertices.iter().map(|&v| depth[v]).max().unwrap_or(0)
    }
}

/// The subgraph of `g` formed by all geodesics `A→B`: every vertex lies on
/// some geodesic, and an edge `(u,v)` is kept iff `d(A,u)+1+d(v,B) = d(A,B)`.
pub fn geodesic_dag(
    g: &Digraph,
    dm: &DistanceMatrix,
    a: VertexId,
    b: VertexId,
) -> Result<GeodesicDag> {
    g.check_vertex(a)?;
    g.check_vertex(b)?;
    GeodesicDag::build(g, dm, a, b).ok_or_else(|| no_geodesic(g, a, b))
}

/// Greedy geodesic `A→B` that always steps to the smallest admissible vertex.
pub fn lex_least_geodesic(
    g: &Digraph,
    dm: &DistanceMatrix,
    a: VertexId,
    b: VertexId,
) -> Result<Path> {
    let mut d = dm.raw(a, b);
    if d == UNREACHABLE {
        return Err(no_geodesic(g, a, b));
    }
    let mut path = vec![a];
    let mut u = a;
    while d > 0 {
        u = g
            .successors(u)
            .iter()
            .copied()
            .filter(|&y| dm.raw(y, b) == d - 1)
            .min()
            .expect("distance decreases along some edge");
        path.push(u);
        d -= 1;
    }
    Ok(Path::new(path).expect("non-empty"))
}

fn to_ext(raw: u32) -> ExtDistance {
    ExtDistance::from_raw(raw)
}

/// Least `δ` such that every geodesic `A→B` has a vertex `x` with
/// `d(x,v) ≤ δ`; `Infinite` if some geodesic never reaches `v`.
///
/// Computed as a max-min over the geodesic DAG: the answer is the maximum,
/// over geodesics, of the minimum of `d(x,v)` along the path.
pub fn min_out_cover_radius(
    g: &Digraph,
    dm: &DistanceMatrix,
    a: VertexId,
    b: VertexId,
    v: VertexId,
) -> Result<ExtDistance> {
    g.check_vertex(v)?;
    let dag = geodesic_dag(g, dm, a, b)?;
    Ok(to_ext(dag.max_min(|x| dm.raw(x, v))))
}

/// Least `δ` such that every geodesic `A→B` has a vertex `y` with
/// `d(v,y) ≤ δ`.
pub fn min_in_cover_radius(
    g: &Digraph,
    dm: &DistanceMatrix,
    a: VertexId,
    b: VertexId,
    v: VertexId,
) -> Result<ExtDistance> {
    g.check_vertex(v)?;
    let dag = geodesic_dag(g, dm, a, b)?;
    Ok(to_ext(dag.max_min(|y| dm.raw(v, y))))
}
