use num_bigint::BigInt;
use num_traits::Pow;
use rayon::prelude::*;
use serde::Serialize;

use super::certificate::Filling;
use super::subdivide::{subdivide_in, Ambient};
use super::TessellationCertificate;
use crate::digraph::{Digraph, DistanceMatrix};
use crate::error::{Error, Result};
use crate::hyperbolicity::GeodesicTriangle;
use crate::rational::{self, Exact, Rational};

/// `log_{4/3} 5 ≈ 5.594`.
pub fn log_four_thirds_five() -> f64 {
    5f64.ln() / (4f64 / 3f64).ln()
}

#[derive(Clone, Debug, Serialize)]
pub struct SizeReport {
    pub target: usize,
    pub delta: u32,
    pub sigma: usize,
    /// `C - 8δ - 4`.
    pub margin: usize,
    /// Size bounds `t_0 = σ`, `t_{i+1} = 3t_i/4 + 2δ + 1` for `i ≤ N`.
    pub size_sequence: Vec<Exact>,
    /// `N = ⌊log_{4/3}(σ / margin)⌋ + 1`, or 0 when `σ < margin`.
    pub depth_bound: u32,
    pub depth: u32,
    pub count: usize,
    /// `5 (σ / margin)^{log_{4/3} 5}`, or 1 when `σ ≤ margin`.
    pub count_bound: f64,
    pub exponent: f64,
    pub max_size: usize,
    pub certificate: TessellationCertificate,
}

impl SizeReport {
    /// Every bound the construction promises.
    pub fn within_bounds(&self) -> bool {
        let five_n = BigInt::from(5u32).pow(self.depth_bound);
        self.max_size <= self.target
            && self.depth <= self.depth_bound
            && BigInt::from(self.count) <= five_n
            && self.count as f64 <= self.count_bound * (1.0 + 1e-9)
    }
}

/// `N` computed exactly: one more than the largest `n` with
/// `4^n · margin ≤ 3^n · σ`.
fn depth_bound(sigma: usize, margin: usize) -> u32 {
    if sigma < margin {
        return 0;
    }
    let (s, d) = (BigInt::from(sigma), BigInt::from(margin));
    let mut n = 0u32;
    let (mut four, mut three) = (BigInt::from(4u32), BigInt::from(3u32));
    while &four * &d <= &three * &s {
        n += 1;
        four *= 4u32;
        three *= 3u32;
    }
    n + 1
}

struct Piece {
    triangles: Vec<GeodesicTriangle>,
    filling: Filling,
    depth: u32,
}

fn tessellate(amb: &Ambient<'_>, t: GeodesicTriangle, target: usize, delta: u32) -> Result<Piece> {
    if t.size() <= target {
        return Ok(Piece {
            triangles: vec![t],
            filling: Filling::leaf(0),
            depth: 0,
        });
    }
    let sub = subdivide_in(amb, &t, delta)?;
    let parts = sub
        .pieces
        .into_par_iter()
        .map(|x| tessellate(amb, x, target, delta))
        .collect::<Result<Vec<_>>>()?;
    let mut triangles = Vec::new();
    let mut subs = Vec::with_capacity(parts.len());
    let mut depth = 0;
    for mut part in parts {
        part.filling.shift(triangles.len());
        subs.push(part.filling);
        triangles.extend(part.triangles);
        depth = depth.max(part.depth + 1);
    }
    Ok(Piece {
        triangles,
        filling: sub.filling.substitute(&subs),
        depth,
    })
}

/// Repeatedly subdivides `t` until every piece has size at most `target`,
/// which must exceed `8δ + 4`.
pub fn tessellate_triangle_to_size(
    g: &Digraph,
    dm: &DistanceMatrix,
    t: &GeodesicTriangle,
    target: usize,
    delta: u32,
) -> Result<SizeReport> {
    let floor = 8 * delta as usize + 4;
    if target <= floor {
        return Err(Error::Invalid(format!("target size {target} must exceed 8δ + 4 = {floor}")));
    }
    if !t.is_geodesic_in(g, dm) {
        return Err(Error::NotGeodesic("triangle to tessellate".into()));
    }
    let amb = Ambient::new(g, dm);
    let piece = tessellate(&amb, t.clone(), target, delta)?;
    let sigma = t.size();
    let margin = target - floor;
    let n = depth_bound(sigma, margin);
    let step = Rational::from_integer(BigInt::from(2 * delta + 1));
    let mut seq = vec![rational::int(sigma as i64)];
    for _ in 0..n {
        let last = seq.last().expect("non-empty");
        seq.push(last * rational::ratio(3, 4) + &step);
    }
    let exponent = log_four_thirds_five();
    let count_bound = if sigma <= margin {
        1.0
    } else {
        5.0 * (sigma as f64 / margin as f64).powf(exponent)
    };
    let top = t.p.compose(&t.q).expect("triangle sides compose");
    let certificate = TessellationCertificate::new(top, t.r.clone(), piece.triangles, piece.filling);
    Ok(SizeReport {
        target,
        delta,
        sigma,
        margin,
        size_sequence: seq.into_iter().map(Exact).collect(),
        depth_bound: n,
        depth: piece.depth,
        count: certificate.count(),
        count_bound,
        exponent,
        max_size: certificate.max_size(),
        certificate,
    })
}
