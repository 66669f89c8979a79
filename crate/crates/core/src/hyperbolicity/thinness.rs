use std::collections::HashMap;
use std::rc::Rc;

use rayon::prelude::*;
use serde::Serialize;

use super::{lex_least_geodesic, min_in_cover_radius, min_out_cover_radius, GeodesicDag, GeodesicTriangle, Side};
use crate::digraph::distance::UNREACHABLE;
use crate::digraph::{all_pairs_distances, Digraph, DistanceMatrix, ExtDistance, VertexId};
use crate::error::{Error, Result};

/// Restricts the scan of a truncated ball to triples whose geodesics stay
/// at depth `≤ radius - margin` below `root`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TruncationMargin {
    pub root: VertexId,
    pub radius: u32,
    pub margin: u32,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ThinnessOptions {
    pub margin: Option<TruncationMargin>,
}

/// A vertex on one side of a corner triple that needs the reported radius.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThinnessWitness {
    pub corners: [VertexId; 3],
    pub corner_names: [String; 3],
    pub side: Side,
    pub vertex: VertexId,
    pub vertex_name: String,
    pub required: ExtDistance,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThinnessReport {
    pub delta_star: ExtDistance,
    /// Present whenever `delta_star > 0`.
    pub witness: Option<ThinnessWitness>,
    pub truncation_margin: Option<u32>,
    /// Set when a margin excluded some triples, so `delta_star` only bounds
    /// the true constant from below.
    pub lower_bound: bool,
    pub triples: u64,
    pub vertices: usize,
}

// (P, Q, R, side, v)
type Key = (VertexId, VertexId, VertexId, Side, VertexId);

#[derive(Clone, Copy)]
struct Best {
    value: u32,
    key: Option<Key>,
    triples: u64,
    skipped: bool,
}

impl Best {
    fn merge(self, other: Best) -> Best {
        let pick_other = match (self.key, other.key) {
            (_, None) => false,
            (None, Some(_)) => true,
            (Some(a), Some(b)) => other.value > self.value || (other.value == self.value && b < a),
        };
        let mut out = if pick_other { other } else { self };
        out.triples = self.triples + other.triples;
        out.skipped = self.skipped || other.skipped;
        out
    }
}

/// Vertices reachable from each vertex, ascending.
fn reach_lists(dm: &DistanceMatrix) -> Vec<Vec<u32>> {
    (0..dm.len())
        .into_par_iter()
        .map(|u| {
            dm.row(u)
                .iter()
                .enumerate()
                .filter(|(_, &d)| d != UNREACHABLE)
                .map(|(v, _)| v as u32)
                .collect()
        })
        .collect()
}

struct Dag {
    dag: GeodesicDag,
    sorted: Vec<VertexId>,
    stable: bool,
}

struct Ctx<'a> {
    g: &'a Digraph,
    dm: &'a DistanceMatrix,
    reach: &'a [Vec<u32>],
    stable_depth: Option<(&'a [u32], u32)>,
}

impl Ctx<'_> {
    fn dag(&self, a: VertexId, b: VertexId) -> Rc<Dag> {
        let dag = GeodesicDag::build(self.g, self.dm, a, b).expect("reachable pair");
        let mut sorted = dag.vertices().to_vec();
        sorted.sort_unstable();
        let stable = match self.stable_depth {
            None => true,
            Some((depth, limit)) => dag.max_of(depth) <= limit,
        };
        Rc::new(Dag { dag, sorted, stable })
    }

    // d(x, v) minimised along each geodesic, maximised over geodesics
    fn out_cover(&self, d: &Dag, v: VertexId) -> u32 {
        d.dag.max_min(|x| self.dm.raw(x, v))
    }

    fn in_cover(&self, d: &Dag, v: VertexId) -> u32 {
        let row = self.dm.row(v);
        d.dag.max_min(|y| row[y])
    }

    /// All triples with first corner `p`.
    ///
    /// Fix a triple `(P,Q,R)`, a side `s` and a vertex `v` on some geodesic of
    /// `s`. Every triangle on the triple that puts `v` on `s` must cover `v`
    /// by an out-ball around the side `a` before `s` or an in-ball around the
    /// side `b` after it. The geodesics chosen for `a` and `b` vary
    /// independently, so "for all a, b: A(a) or B(b)" splits into
    /// "(for all a: A(a)) or (for all b: B(b))". The radius `v` needs is hence
    /// `min(out_cover(a, v), in_cover(b, v))`, each a max-min over one
    /// geodesic DAG, and the constant is the maximum of these over all
    /// triples, sides and vertices.
    fn scan(&self, p: VertexId) -> Best {
        let mut best = Best {
            value: 0,
            key: None,
            triples: 0,
            skipped: false,
        };
        let mut dags_p: HashMap<VertexId, Rc<Dag>> = HashMap::new();
        let mut out_p: HashMap<(VertexId, VertexId), u32> = HashMap::new();
        let mut in_p: HashMap<(VertexId, VertexId), u32> = HashMap::new();

        macro_rules! dag_p {
            ($b:expr) => {{
                let b = $b;
                dags_p.entry(b).or_insert_with(|| self.dag(p, b)).clone()
            }};
        }

        for &q in &self.reach[p] {
            let q = q as VertexId;
            let d_pq = dag_p!(q);
            if !d_pq.stable {
                best.skipped = true;
                continue;
            }
            let mut in_q: HashMap<(VertexId, VertexId), u32> = HashMap::new();
            for &r in &self.reach[q] {
                let r = r as VertexId;
                let d_pr = dag_p!(r);
                let d_qr = self.dag(q, r);
                if !d_pr.stable || !d_qr.stable {
                    best.skipped = true;
                    continue;
                }
                best.triples += 1;

                let mut consider = |side: Side, v: VertexId, out: &mut dyn FnMut() -> u32, inn: &mut dyn FnMut() -> u32| {
                    let o = out();
                    if o <= best.value {
                        return;
                    }
                    let need = o.min(inn());
                    if need > best.value {
                        best.value = need;
                        best.key = Some((p, q, r, side, v));
                    }
                };

                for &v in &d_pq.sorted {
                    consider(
                        Side::P,
                        v,
                        &mut || *out_p.entry((r, v)).or_insert_with(|| self.out_cover(&d_pr, v)),
                        &mut || *in_q.entry((r, v)).or_insert_with(|| self.in_cover(&d_qr, v)),
                    );
                }
                for &v in &d_qr.sorted {
                    consider(
                        Side::Q,
                        v,
                        &mut || *out_p.entry((q, v)).or_insert_with(|| self.out_cover(&d_pq, v)),
                        &mut || *in_p.entry((r, v)).or_insert_with(|| self.in_cover(&d_pr, v)),
                    );
                }
                for &v in &d_pr.sorted {
                    consider(
                        Side::R,
                        v,
                        &mut || *out_p.entry((q, v)).or_insert_with(|| self.out_cover(&d_pq, v)),
                        &mut || *in_q.entry((r, v)).or_insert_with(|| self.in_cover(&d_qr, v)),
                    );
                }
            }
        }
        best
    }
}

/// Exact minimal `δ` for which every geodesic triangle of `g` is `δ`-thin.
pub fn min_hyperbolicity_constant(g: &Digraph, opts: &ThinnessOptions) -> Result<ThinnessReport> {
    let dm = all_pairs_distances(g);
    min_hyperbolicity_constant_with(g, &dm, opts)
}

pub fn min_hyperbolicity_constant_with(
    g: &Digraph,
    dm: &DistanceMatrix,
    opts: &ThinnessOptions,
) -> Result<ThinnessReport> {
    let depth_row: Vec<u32>;
    let mut nothing_stable = false;
    let stable_depth = match opts.margin {
        None => None,
        Some(m) => {
            g.check_vertex(m.root)?;
            depth_row = dm.row(m.root).to_vec();
            match m.radius.checked_sub(m.margin) {
                Some(limit) => Some((&depth_row[..], limit)),
                None => {
                    nothing_stable = true;
                    None
                }
            }
        }
    };
    let reach = reach_lists(dm);
    let ctx = Ctx {
        g,
        dm,
        reach: &reach,
        stable_depth,
    };
    let empty = Best {
        value: 0,
        key: None,
        triples: 0,
        skipped: false,
    };
    let best = if nothing_stable {
        Best {
            skipped: g.vertex_count() > 0,
            ..empty
        }
    } else {
        (0..g.vertex_count())
            .into_par_iter()
            .map(|p| ctx.scan(p))
            .reduce(|| empty, Best::merge)
    };
    let witness = best.key.map(|(p, q, r, side, v)| ThinnessWitness {
        corners: [p, q, r],
        corner_names: [p, q, r].map(|x| g.name(x).to_owned()),
        side,
        vertex: v,
        vertex_name: g.name(v).to_owned(),
        required: ExtDistance::from_raw(best.value),
    });
    Ok(ThinnessReport {
        delta_star: ExtDistance::from_raw(best.value),
        witness,
        truncation_margin: opts.margin.map(|m| m.margin),
        lower_bound: best.skipped,
        triples: best.triples,
        vertices: g.vertex_count(),
    })
}

/// Radius needed by `v` on side `side` of every triangle on the corner
/// triple: the smaller of the out-cover radius of the side before `side`
/// and the in-cover radius of the side after it.
pub fn vertex_thinness_requirement(
    g: &Digraph,
    dm: &DistanceMatrix,
    corners: [VertexId; 3],
    side: Side,
    v: VertexId,
) -> Result<ExtDistance> {
    for s in Side::ALL {
        let (a, b) = s.endpoints(corners);
        g.check_vertex(a)?;
        g.check_vertex(b)?;
        if !dm.is_reachable(a, b) {
            return Err(Error::NoGeodesic {
                from: g.name(a).to_owned(),
                to: g.name(b).to_owned(),
            });
        }
    }
    g.check_vertex(v)?;
    let (a, b) = side.endpoints(corners);
    if dm.get(a, v) + dm.get(v, b) != dm.get(a, b) {
        return Err(Error::Invalid(format!(
            "`{}` lies on no geodesic from `{}` to `{}`",
            g.name(v),
            g.name(a),
            g.name(b)
        )));
    }
    let (before, after) = side.neighbours();
    let (a1, b1) = before.endpoints(corners);
    let (a2, b2) = after.endpoints(corners);
    let out = min_out_cover_radius(g, dm, a1, b1, v)?;
    let inn = min_in_cover_radius(g, dm, a2, b2, v)?;
    Ok(out.min(inn))
}

/// A concrete geodesic triangle that is not `(required - 1)`-thin.
pub fn witness_triangle(
    g: &Digraph,
    dm: &DistanceMatrix,
    w: &ThinnessWitness,
) -> Result<GeodesicTriangle> {
    let (a, b) = w.side.endpoints(w.corners);
    let through = lex_least_geodesic(g, dm, a, w.vertex)?
        .compose(&lex_least_geodesic(g, dm, w.vertex, b)?)
        .expect("meet at the witness vertex");
    let (before, after) = w.side.neighbours();
    let v = w.vertex;
    let (a1, b1) = before.endpoints(w.corners);
    let (_, before_path) = super::geodesic_dag(g, dm, a1, b1)?.max_min_path(|x| dm.raw(x, v));
    let (a2, b2) = after.endpoints(w.corners);
    let row = dm.row(v);
    let (_, after_path) = super::geodesic_dag(g, dm, a2, b2)?.max_min_path(|y| row[y]);
    let mut sides = [None, None, None];
    let idx = |s: Side| s as usize;
    sides[idx(w.side)] = Some(through);
    sides[idx(before)] = Some(before_path);
    sides[idx(after)] = Some(after_path);
    let [p, q, r] = sides.map(|s| s.expect("all three sides set"));
    Ok(GeodesicTriangle::new_unchecked(p, q, r))
}

/// `δ* ≤ delta`; on failure also returns a triangle that is not `delta`-thin.
pub fn is_strongly_delta_hyperbolic(
    g: &Digraph,
    dm: &DistanceMatrix,
    delta: ExtDistance,
) -> Result<(bool, Option<GeodesicTriangle>)> {
    if delta == ExtDistance::Infinite {
        return Ok((true, None));
    }
    let report = min_hyperbolicity_constant_with(g, dm, &ThinnessOptions::default())?;
    if report.delta_star <= delta {
        return Ok((true, None));
    }
    let w = report.witness.expect("positive constant has a witness");
    Ok((false, Some(witness_triangle(g, dm, &w)?)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::Path;
    use crate::hyperbolicity::tests::graph;
    use ExtDistance::Finite;

    fn delta(g: &Digraph) -> ExtDistance {
        min_hyperbolicity_constant(g, &ThinnessOptions::default())
            .unwrap()
            .delta_star
    }

    #[test]
    fn tiny_graphs_are_zero_hyperbolic() {
        assert_eq!(delta(&Digraph::new()), Finite(0));
        assert_eq!(delta(&graph(1, &[])), Finite(0));
        assert_eq!(delta(&graph(1, &[(0, 0)])), Finite(0));
    }

    #[test]
    fn requirement_examples() {
        let cycle = graph(3, &[(0, 1), (1, 2), (2, 0)]);
        let dm = all_pairs_distances(&cycle);
        for side in Side::ALL {
            let (a, b) = side.endpoints([0, 1, 2]);
            for v in super::super::on_some_geodesic(&cycle, &dm, a, b).unwrap() {
                assert_eq!(
                    vertex_thinness_requirement(&cycle, &dm, [0, 1, 2], side, v).unwrap(),
                    Finite(0)
                );
            }
        }
        assert_eq!(
            vertex_thinness_requirement(&cycle, &dm, [1, 1, 1], Side::R, 1).unwrap(),
            Finite(0)
        );
        // 0 is on no geodesic 1→2
        assert!(vertex_thinness_requirement(&cycle, &dm, [0, 1, 2], Side::Q, 0).is_err());
    }

    #[test]
    fn diamond_needs_radius_one() {
        // triangle P=0, Q=1, R=3 with hypotenuse through 2
        let g = graph(4, &[(0, 1), (1, 3), (0, 2), (2, 3)]);
        let dm = all_pairs_distances(&g);
        assert_eq!(
            vertex_thinness_requirement(&g, &dm, [0, 1, 3], Side::R, 2).unwrap(),
            Finite(1)
        );
        let report = min_hyperbolicity_constant_with(&g, &dm, &ThinnessOptions::default()).unwrap();
        assert_eq!(report.delta_star, Finite(1));
        let w = report.witness.unwrap();
        let t = witness_triangle(&g, &dm, &w).unwrap();
        assert!(t.is_geodesic_in(&g, &dm));
        assert!(!t.is_thin(&dm, 0));
        assert!(t.is_thin(&dm, 1));
        let (ok, tri) = is_strongly_delta_hyperbolic(&g, &dm, Finite(0)).unwrap();
        assert!(!ok && tri.is_some());
        assert!(is_strongly_delta_hyperbolic(&g, &dm, ExtDistance::Infinite).unwrap().0);
    }

    #[test]
    fn bidirected_path_is_zero_hyperbolic() {
        let g = Digraph::bidirect(&[("a", "b"), ("b", "c"), ("c", "d"), ("b", "e")]);
        assert_eq!(delta(&g), Finite(0));
    }

    #[test]
    fn long_cycle() {
        // directed 6-cycle: triangle (0,3,0) has side 3→0 far from 0→3
        let g = graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        let dm = all_pairs_distances(&g);
        let report = min_hyperbolicity_constant_with(&g, &dm, &ThinnessOptions::default()).unwrap();
        let w = report.witness.clone().unwrap();
        let t = witness_triangle(&g, &dm, &w).unwrap();
        let d = report.delta_star.finite().unwrap();
        assert!(t.is_thin(&dm, d));
        assert!(!t.is_thin(&dm, d - 1));
        let _ = Path::trivial(0);
    }

    #[test]
    fn margin_marks_lower_bound() {
        let g = graph(3, &[(0, 1), (1, 2)]);
        let dm = all_pairs_distances(&g);
        let opts = ThinnessOptions {
            margin: Some(TruncationMargin {
                root: 0,
                radius: 2,
                margin: 1,
            }),
        };
        let r = min_hyperbolicity_constant_with(&g, &dm, &opts).unwrap();
        assert!(r.lower_bound);
        assert_eq!(r.truncation_margin, Some(1));
        let opts = ThinnessOptions {
            margin: Some(TruncationMargin {
                root: 0,
                radius: 2,
                margin: 0,
            }),
        };
        assert!(!min_hyperbolicity_constant_with(&g, &dm, &opts).unwrap().lower_bound);
    }
}
