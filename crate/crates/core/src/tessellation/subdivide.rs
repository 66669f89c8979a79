use std::sync::OnceLock;

use serde::Serialize;

use super::certificate::{Filling, FillingStep, Replay};
use crate::digraph::{Digraph, DistanceMatrix, Path, VertexId};
use crate::error::{Error, Result};
use crate::hyperbolicity::{lex_least_geodesic, GeodesicTriangle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SubdivisionCase {
    /// Size at most 1: the triangle is kept.
    Whole,
    /// The midpoint of the longer side is close to the shorter side.
    A,
    /// It is close to the hypotenuse and the inner bigon is split from the
    /// second-side direction.
    BI,
    /// As `BI`, split from the hypotenuse direction.
    BII,
}

/// Pieces of a geodesic triangle and a filling of `p∘q ⇒ r` that uses each
/// piece once, as leaf `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Subdivision {
    pub case: SubdivisionCase,
    /// Whether the second side was the longer one, so the construction ran
    /// on the reversed graph and was mirrored back.
    pub dual: bool,
    pub pieces: Vec<GeodesicTriangle>,
    pub filling: Filling,
}

/// `⌊3σ/4⌋ + 2δ + 1`, the size bound for every piece.
pub fn subdivision_bound(sigma: usize, delta: u32) -> usize {
    3 * sigma / 4 + 2 * delta as usize + 1
}

/// A graph with its distances, and the reversed pair built on demand.
pub(crate) struct Ambient<'a> {
    pub(crate) g: &'a Digraph,
    pub(crate) dm: &'a DistanceMatrix,
    rev: OnceLock<(Digraph, DistanceMatrix)>,
}

impl<'a> Ambient<'a> {
    pub(crate) fn new(g: &'a Digraph, dm: &'a DistanceMatrix) -> Self {
        Ambient {
            g,
            dm,
            rev: OnceLock::new(),
        }
    }

    fn reversed(&self) -> (&Digraph, &DistanceMatrix) {
        let (g, dm) = self.rev.get_or_init(|| (self.g.reverse(), self.dm.transpose()));
        (g, dm)
    }
}

/// Splits `t` into at most five geodesic triangles of size at most
/// [`subdivision_bound`], assuming the graph is `delta`-hyperbolic.
///
/// Fails with [`Error::NotHyperbolic`] when a thinness witness the
/// construction needs does not exist.
pub fn subdivide_triangle(
    g: &Digraph,
    dm: &DistanceMatrix,
    t: &GeodesicTriangle,
    delta: u32,
) -> Result<Subdivision> {
    if !t.is_geodesic_in(g, dm) {
        return Err(Error::NotGeodesic("triangle to subdivide".into()));
    }
    subdivide_in(&Ambient::new(g, dm), t, delta)
}

pub(crate) fn subdivide_in(amb: &Ambient<'_>, t: &GeodesicTriangle, delta: u32) -> Result<Subdivision> {
    let sigma = t.size();
    let sub = if sigma <= 1 {
        Subdivision {
            case: SubdivisionCase::Whole,
            dual: false,
            pieces: vec![t.clone()],
            filling: Filling::leaf(0),
        }
    } else if t.p.len() >= t.q.len() {
        split(amb.g, amb.dm, t, delta)?
    } else {
        let (rg, rdm) = amb.reversed();
        let mirrored = GeodesicTriangle::new_unchecked(t.q.reversed(), t.p.reversed(), t.r.reversed());
        let s = split(rg, rdm, &mirrored, delta)?;
        Subdivision {
            case: s.case,
            dual: true,
            pieces: s.pieces.iter().map(mirror_triangle).collect(),
            filling: mirror_filling(&s.filling),
        }
    };
    let bound = subdivision_bound(sigma, delta);
    if let Some(x) = sub.pieces.iter().find(|x| x.size() > bound) {
        return Err(Error::NotHyperbolic {
            delta,
            detail: format!("a piece of size {} exceeds the bound {bound}", x.size()),
        });
    }
    Ok(sub)
}

fn mirror_triangle(t: &GeodesicTriangle) -> GeodesicTriangle {
    GeodesicTriangle::new_unchecked(t.q.reversed(), t.p.reversed(), t.r.reversed())
}

fn mirror_filling(f: &Filling) -> Filling {
    match f {
        Filling::Cell { .. } => f.clone(),
        Filling::Chain(steps) => Filling::Chain(
            steps
                .iter()
                .map(|s| FillingStep {
                    prefix: s.suffix.reversed(),
                    filling: mirror_filling(&s.filling),
                    suffix: s.prefix.reversed(),
                })
                .collect(),
        ),
    }
}

/// First position on `side` (by least vertex id) satisfying `close`.
fn witness(side: &Path, close: impl Fn(VertexId) -> bool) -> Option<usize> {
    side.vertices()
        .iter()
        .enumerate()
        .filter(|(_, &v)| close(v))
        .min_by_key(|(_, &v)| v)
        .map(|(i, _)| i)
}

fn tri(p: Path, q: Path, r: Path) -> GeodesicTriangle {
    GeodesicTriangle::new_unchecked(p, q, r)
}

/// The construction for `|p| ≥ |q|`.
fn split(g: &Digraph, dm: &DistanceMatrix, t: &GeodesicTriangle, delta: u32) -> Result<Subdivision> {
    let (p, q, r) = (&t.p, &t.q, &t.r);
    let (k, l) = (p.len(), q.len());
    let lex = |a, b| lex_least_geodesic(g, dm, a, b);
    let m = k / 2;
    let mid = p.vertices()[m];
    let pm = p.subpath(0, m);
    let mq = p.subpath(m, k);
    let start = p.compose(q).expect("triangle sides compose");

    if let Some(j) = witness(q, |v| dm.raw(mid, v) <= delta) {
        let o = q.vertices()[j];
        let (qo, or) = (q.subpath(0, j), q.subpath(j, l));
        let mo = lex(mid, o)?;
        let po = lex(p.start(), o)?;
        let pieces = vec![
            tri(mq, qo, mo.clone()),
            tri(pm, mo, po.clone()),
            tri(po, or, r.clone()),
        ];
        let mut replay = Replay::new(start);
        replay.apply(m, &pieces, 0, false)?;
        replay.apply(0, &pieces, 1, false)?;
        replay.apply(0, &pieces, 2, false)?;
        return finish(SubdivisionCase::A, pieces, replay, r);
    }

    let Some(i) = witness(r, |v| dm.raw(v, mid) <= delta) else {
        return Err(Error::NotHyperbolic {
            delta,
            detail: format!("midpoint {} of the longer side is not {delta}-close", g.name(mid)),
        });
    };
    let o = r.vertices()[i];
    let (po, or) = (r.subpath(0, i), r.subpath(i, r.len()));
    let om = lex(o, mid)?;
    let oq = lex(o, q.start())?;
    let mut pieces = vec![tri(om.clone(), mq, oq.clone()), tri(oq, q.clone(), or)];

    // the bigon between PM and PO∘OM, cut at the midpoint U of PO
    let x = i;
    let u = x / 2;
    let uu = po.vertices()[u];
    let (pu, uo) = (po.subpath(0, u), po.subpath(u, x));
    let mut replay = Replay::new(start);
    let case = if let Some(s) = witness(&om, |v| dm.raw(uu, v) <= delta) {
        let sv = om.vertices()[s];
        let (os, sm) = (om.subpath(0, s), om.subpath(s, om.len()));
        let um = lex(uu, mid)?;
        let us = lex(uu, sv)?;
        pieces.push(tri(pu, um.clone(), pm));
        pieces.push(tri(us.clone(), sm, um));
        pieces.push(tri(uo, os, us));
        replay.apply(0, &pieces, 2, true)?;
        replay.apply(u, &pieces, 3, true)?;
        replay.apply(u, &pieces, 4, true)?;
        SubdivisionCase::BI
    } else if let Some(s) = witness(&pm, |v| dm.raw(v, uu) <= delta) {
        let sv = pm.vertices()[s];
        let (ps, sm) = (pm.subpath(0, s), pm.subpath(s, m));
        let su = lex(sv, uu)?;
        let so = lex(sv, o)?;
        pieces.push(tri(ps, su.clone(), pu));
        pieces.push(tri(su, uo, so.clone()));
        pieces.push(tri(so, om, sm));
        replay.apply(s, &pieces, 4, true)?;
        replay.apply(s, &pieces, 3, true)?;
        replay.apply(0, &pieces, 2, false)?;
        SubdivisionCase::BII
    } else {
        return Err(Error::NotHyperbolic {
            delta,
            detail: format!("vertex {} of an inner triangle is not {delta}-close", g.name(uu)),
        });
    };
    replay.apply(x, &pieces, 0, false)?;
    replay.apply(x, &pieces, 1, false)?;
    finish(case, pieces, replay, r)
}

fn finish(case: SubdivisionCase, pieces: Vec<GeodesicTriangle>, replay: Replay, r: &Path) -> Result<Subdivision> {
    let (filling, end) = replay.finish();
    if &end != r {
        return Err(Error::Invalid("internal: subdivision does not reach the hypotenuse".into()));
    }
    Ok(Subdivision {
        case,
        dual: false,
        pieces,
        filling,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::all_pairs_distances;
    use crate::hyperbolicity::min_hyperbolicity_constant;
    use crate::hyperbolicity::tests::graph;
    use crate::hyperbolicity::ThinnessOptions;
    use crate::tessellation::TessellationCertificate;

    fn check(g: &Digraph, dm: &DistanceMatrix, t: &GeodesicTriangle, delta: u32) -> Subdivision {
        let s = subdivide_triangle(g, dm, t, delta).unwrap();
        let top = t.p.compose(&t.q).unwrap();
        let cert = TessellationCertificate::new(top, t.r.clone(), s.pieces.clone(), s.filling.clone());
        cert.verify(g, dm).unwrap();
        assert_eq!(s.filling.leaf_count(), s.pieces.len());
        assert!(s.pieces.len() <= 5);
        s
    }

    fn line(n: usize) -> Digraph {
        let edges: Vec<(usize, usize)> = (1..n).flat_map(|i| [(i - 1, i), (i, i - 1)]).collect();
        graph(n, &edges)
    }

    fn p(v: &[usize]) -> Path {
        Path::new(v.to_vec()).unwrap()
    }

    #[test]
    fn degenerate_triangles_on_a_line() {
        let g = line(9);
        let dm = all_pairs_distances(&g);
        let up = |a: usize, b: usize| p(&(a..=b).collect::<Vec<_>>());
        let down = |a: usize, b: usize| p(&(b..=a).rev().collect::<Vec<_>>());
        // 0→8 then back to 2
        let t = GeodesicTriangle::new(&g, &dm, up(0, 8), down(8, 2), up(0, 2)).unwrap();
        check(&g, &dm, &t, 0);
        // the dual shape
        let t = GeodesicTriangle::new(&g, &dm, up(2, 4), down(4, 0), down(2, 0)).unwrap();
        let s = check(&g, &dm, &t, 0);
        assert!(s.dual);
        let t = GeodesicTriangle::new(&g, &dm, up(0, 4), up(4, 8), up(0, 8)).unwrap();
        check(&g, &dm, &t, 0);
    }

    #[test]
    fn trivial_and_tiny() {
        let g = line(3);
        let dm = all_pairs_distances(&g);
        let t = GeodesicTriangle::new(&g, &dm, p(&[1]), p(&[1, 2]), p(&[1, 2])).unwrap();
        assert_eq!(check(&g, &dm, &t, 0).case, SubdivisionCase::Whole);
    }

    #[test]
    fn every_triangle_of_a_directed_cycle() {
        // a directed 7-cycle with chords is hyperbolic with some δ*
        let n = 7;
        let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        edges.push((0, 3));
        let g = graph(n, &edges);
        let dm = all_pairs_distances(&g);
        let delta = min_hyperbolicity_constant(&g, &ThinnessOptions::default())
            .unwrap()
            .delta_star
            .finite()
            .unwrap();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let pa = lex_least_geodesic(&g, &dm, a, b).unwrap();
                    let qa = lex_least_geodesic(&g, &dm, b, c).unwrap();
                    let ra = lex_least_geodesic(&g, &dm, a, c).unwrap();
                    let t = GeodesicTriangle::new(&g, &dm, pa, qa, ra).unwrap();
                    check(&g, &dm, &t, delta);
                }
            }
        }
    }

    #[test]
    fn bound_formula() {
        assert_eq!(subdivision_bound(20, 0), 16);
        assert_eq!(subdivision_bound(7, 1), 8);
    }
}
