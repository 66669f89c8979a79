use super::certificate::Replay;
use super::TessellationCertificate;
use crate::digraph::{Digraph, DistanceMatrix, Path};
use crate::error::{Error, Result};
use crate::hyperbolicity::{lex_least_geodesic, GeodesicTriangle};

/// Length of the shortest non-geodesic prefix, if any.
fn first_non_geodesic_prefix(p: &Path, dm: &DistanceMatrix) -> Option<usize> {
    (1..=p.len()).find(|&j| !p.subpath(0, j).is_geodesic(dm))
}

/// Splits off the shortest non-geodesic prefix `p_ι∘p_e` and returns the
/// triangle `(p_ι, p_e, p')` with `p'` a fresh geodesic, plus `p'∘p_τ`.
fn shorten(
    g: &Digraph,
    dm: &DistanceMatrix,
    p: &Path,
    j: usize,
) -> Result<(GeodesicTriangle, Path)> {
    let head = p.subpath(0, j - 1);
    let edge = p.subpath(j - 1, j);
    let short = lex_least_geodesic(g, dm, p.start(), p.vertices()[j])?;
    let rest = short.compose(&p.subpath(j, p.len())).expect("shares endpoint");
    Ok((GeodesicTriangle::new(g, dm, head, edge, short)?, rest))
}

/// Tessellates a parallel pair by at most `|p| + |q| + 1` geodesic
/// triangles of size at most `2(|p| + |q|)`.
///
/// While `p` (then `q`) is not geodesic its shortest non-geodesic prefix is
/// replaced by a geodesic, each replacement contributing one triangle; the
/// remaining geodesic pair is itself the triangle `(p, 1, q)`.
///
/// Paths using a loop edge are rejected: a loop is a length-1 path that is
/// not geodesic, so no geodesic triangle can contain it.
pub fn tessellate_parallel_paths(
    g: &Digraph,
    dm: &DistanceMatrix,
    p: &Path,
    q: &Path,
) -> Result<TessellationCertificate> {
    for x in [p, q] {
        if !x.is_path_in(g) {
            return Err(Error::NotAPath(format!("{:?}", x.vertices())));
        }
        if x.has_loop_edge() {
            return Err(Error::Invalid(format!("{} uses a loop edge", x.display(g))));
        }
    }
    if !p.is_parallel(q) {
        return Err(Error::NotParallel(format!("{} and {}", p.display(g), q.display(g))));
    }
    let mut triangles = Vec::new();
    let mut replay = Replay::new(p.clone());
    while let Some(j) = first_non_geodesic_prefix(replay.current(), dm) {
        let (t, _) = shorten(g, dm, replay.current(), j)?;
        triangles.push(t);
        replay.apply(0, &triangles, triangles.len() - 1, false)?;
    }
    let mut cur_q = q.clone();
    let mut q_cells = Vec::new();
    while let Some(j) = first_non_geodesic_prefix(&cur_q, dm) {
        let (t, rest) = shorten(g, dm, &cur_q, j)?;
        triangles.push(t);
        q_cells.push(triangles.len() - 1);
        cur_q = rest;
    }
    let end = Path::trivial(p.end());
    triangles.push(GeodesicTriangle::new(g, dm, replay.current().clone(), end, cur_q)?);
    replay.apply(0, &triangles, triangles.len() - 1, false)?;
    for &i in q_cells.iter().rev() {
        replay.apply(0, &triangles, i, true)?;
    }
    let (tree, bottom) = replay.finish();
    debug_assert_eq!(&bottom, q);
    Ok(TessellationCertificate::new(p.clone(), bottom, triangles, tree))
}
