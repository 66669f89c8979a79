use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::digraph::distance::UNREACHABLE;
use crate::digraph::{Digraph, DistanceMatrix, VertexId};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// `λ = 3((α+1)^{δ+1} − 1)/α` and `K = max(λ², 1)` with their inputs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstantsReport {
    pub alpha: u64,
    pub delta: u64,
    #[serde(serialize_with = "rational::serialize")]
    pub lambda: Rational,
    #[serde(rename = "K", serialize_with = "rational::serialize")]
    pub k: Rational,
    pub trace: Vec<String>,
}

pub fn quasi_constants(alpha: u64, delta: u64) -> Result<ConstantsReport> {
    if alpha == 0 {
        return Err(Error::Invalid("alpha must be at least 1".into()));
    }
    let exp = u32::try_from(delta + 1)
        .map_err(|_| Error::Invalid("delta too large".into()))?;
    let base = BigInt::from(alpha) + BigInt::one();
    let power = num_traits::pow(base, exp as usize);
    let numer = BigInt::from(3) * (power.clone() - BigInt::one());
    let lambda = Rational::new(numer, BigInt::from(alpha));
    let k = rational::max(&lambda * &lambda, Rational::one());
    let trace = vec![
        format!("(alpha+1)^(delta+1) = {}^{} = {}", alpha + 1, exp, power),
        format!("lambda = 3*({power} - 1)/{alpha} = {}", rational::to_string(&lambda)),
        format!("K = max(lambda^2, 1) = {}", rational::to_string(&k)),
    ];
    Ok(ConstantsReport {
        alpha,
        delta,
        lambda,
        k,
        trace,
    })
}

/// Exact test of `x ≤ c·s` for a nonnegative rational `c`.
#[derive(Clone)]
struct Scaled {
    small: Option<(u128, u128)>,
    exact: Rational,
}

impl Scaled {
    fn new(c: &Rational) -> Self {
        let small = match (c.numer().to_u64(), c.denom().to_u64()) {
            (Some(n), Some(d)) => Some((u128::from(n), u128::from(d))),
            _ => None,
        };
        Scaled {
            small,
            exact: c.clone(),
        }
    }

    fn holds(&self, x: u64, s: u64) -> bool {
        match self.small {
            Some((n, d)) => u128::from(x) * d <= n * u128::from(s),
            None => Rational::from_integer(BigInt::from(x)) <= &self.exact * BigInt::from(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiViolation {
    pub corners: Vec<VertexId>,
    pub corner_names: Vec<String>,
    /// Side lengths in order; the last one is the parallel side.
    pub lengths: Vec<u32>,
    /// Index into `lengths` of the side that is too long.
    pub side: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct TriangleReport {
    #[serde(serialize_with = "rational::serialize")]
    pub lambda: Rational,
    pub triangles: u64,
    pub violations: u64,
    /// The first few violations in corner order.
    pub examples: Vec<QuasiViolation>,
}

const EXAMPLES: usize = 10;

fn reach_lists(dm: &DistanceMatrix) -> Vec<Vec<u32>> {
    (0..dm.len())
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

fn violation(g: &Digraph, corners: &[VertexId], lengths: Vec<u32>, side: usize) -> QuasiViolation {
    QuasiViolation {
        corners: corners.to_vec(),
        corner_names: corners.iter().map(|&v| g.name(v).to_owned()).collect(),
        lengths,
        side,
    }
}

/// Index of the first side longer than `coef` times the sum of the others.
fn first_bad_side(lengths: &[u32], coef: &Scaled) -> Option<usize> {
    let total: u64 = lengths.iter().map(|&l| u64::from(l)).sum();
    lengths
        .iter()
        .position(|&l| !coef.holds(u64::from(l), total - u64::from(l)))
}

/// Every geodesic triangle, by corner triple, against `|x| ≤ λ(|y| + |z|)`
/// for each side `x`. Side lengths are distances, so one triangle per
/// triple suffices.
pub fn check_triangle_quasi_inequality(
    g: &Digraph,
    dm: &DistanceMatrix,
    lambda: &Rational,
) -> TriangleReport {
    let coef = Scaled::new(lambda);
    let reach = reach_lists(dm);
    let per_source: Vec<(u64, u64, Vec<QuasiViolation>)> = (0..g.vertex_count())
        .into_par_iter()
        .map(|p| {
            let (mut count, mut bad, mut ex) = (0u64, 0u64, Vec::new());
            for &q in &reach[p] {
                let q = q as usize;
                for &r in &reach[q] {
                    let r = r as usize;
                    count += 1;
                    let lengths = vec![dm.raw(p, q), dm.raw(q, r), dm.raw(p, r)];
                    if let Some(side) = first_bad_side(&lengths, &coef) {
                        bad += 1;
                        if ex.len() < EXAMPLES {
                            ex.push(violation(g, &[p, q, r], lengths, side));
                        }
                    }
                }
            }
            (count, bad, ex)
        })
        .collect();
    let mut report = TriangleReport {
        lambda: lambda.clone(),
        triangles: 0,
        violations: 0,
        examples: Vec::new(),
    };
    for (c, b, ex) in per_source {
        report.triangles += c;
        report.violations += b;
        for v in ex {
            if report.examples.len() < EXAMPLES {
                report.examples.push(v);
            }
        }
    }
    report
}

#[derive(Clone, Debug, Serialize)]
pub struct PolygonReport {
    pub n: usize,
    #[serde(rename = "K", serialize_with = "rational::serialize")]
    pub k: Rational,
    pub exhaustive: bool,
    pub polygons: u64,
    pub violations: u64,
    pub examples: Vec<QuasiViolation>,
}

/// Number of corner chains `x₀ → x₁ → … → x_{n−1}` with consecutive corners
/// reachable, saturating.
fn chain_count(reach: &[Vec<u32>], n: usize) -> u128 {
    let mut c = vec![1u128; reach.len()];
    for _ in 1..n {
        let mut next = vec![0u128; reach.len()];
        for (v, cv) in c.iter().enumerate() {
            for &w in &reach[v] {
                next[w as usize] = next[w as usize].saturating_add(*cv);
            }
        }
        c = next;
    }
    c.into_iter().fold(0u128, |a, b| a.saturating_add(b))
}

/// Directed geodesic `n`-gons `(p₁, …, p_{n−1}, q)` checked against
/// `|side| ≤ K·(sum of the other sides)`. All corner chains are visited
/// when there are at most `samples` of them; otherwise `samples` chains are
/// drawn with a seeded generator.
pub fn check_polygon_quasi_inequality(
    g: &Digraph,
    dm: &DistanceMatrix,
    k: &Rational,
    n: usize,
    samples: u64,
    seed: u64,
) -> Result<PolygonReport> {
    if n < 3 {
        return Err(Error::Invalid("polygons need at least 3 sides".into()));
    }
    let coef = Scaled::new(k);
    let reach = reach_lists(dm);
    let mut report = PolygonReport {
        n,
        k: k.clone(),
        exhaustive: false,
        polygons: 0,
        violations: 0,
        examples: Vec::new(),
    };
    if g.is_empty() {
        report.exhaustive = true;
        return Ok(report);
    }
    let check = |chain: &[VertexId], report: &mut PolygonReport| {
        report.polygons += 1;
        let mut lengths: Vec<u32> = chain.windows(2).map(|w| dm.raw(w[0], w[1])).collect();
        lengths.push(dm.raw(chain[0], chain[n - 1]));
        if let Some(side) = first_bad_side(&lengths, &coef) {
            report.violations += 1;
            if report.examples.len() < EXAMPLES {
                report.examples.push(violation(g, chain, lengths, side));
            }
        }
    };
    if chain_count(&reach, n) <= u128::from(samples) {
        report.exhaustive = true;
        let mut chain = Vec::with_capacity(n);
        fn walk(
            reach: &[Vec<u32>],
            n: usize,
            chain: &mut Vec<VertexId>,
            f: &mut dyn FnMut(&[VertexId]),
        ) {
            if chain.len() == n {
                f(chain);
                return;
            }
            let last = *chain.last().expect("non-empty");
            for &w in &reach[last] {
                chain.push(w as usize);
                walk(reach, n, chain, f);
                chain.pop();
            }
        }
        for x0 in g.vertices() {
            chain.push(x0);
            walk(&reach, n, &mut chain, &mut |c| check(c, &mut report));
            chain.pop();
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut chain = Vec::with_capacity(n);
        for _ in 0..samples {
            chain.clear();
            chain.push(rng.gen_range(0..g.vertex_count()));
            while chain.len() < n {
                let r = &reach[*chain.last().expect("non-empty")];
                chain.push(r[rng.gen_range(0..r.len())] as usize);
            }
            check(&chain, &mut report);
        }
    }
    Ok(report)
}

/// Pairs `x, y` in a common strongly connected component with
/// `d(x,y) > λ·d(y,x)`.
pub fn check_quasi_metric(dm: &DistanceMatrix, lambda: &Rational) -> u64 {
    let coef = Scaled::new(lambda);
    let n = dm.len();
    (0..n)
        .into_par_iter()
        .map(|x| {
            (0..n)
                .filter(|&y| {
                    let (a, b) = (dm.raw(x, y), dm.raw(y, x));
                    a != UNREACHABLE && b != UNREACHABLE && !coef.holds(u64::from(a), u64::from(b))
                })
                .count() as u64
        })
        .sum()
}
