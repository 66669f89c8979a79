use serde::Serialize;

use super::search::{candidate_search, element_bfs, scan_class, shortlex_words, Bfs, Scan, Sides};
use super::{witness, Answer, DeciderOptions, GreensConstants, GreensVerdict, Relation, Witness};
use crate::error::{Error, Result};
use crate::hyperbolicity::{min_hyperbolicity_constant, ThinnessOptions};
use crate::monoid::{cayley_ball, Equality, FiniteMonoid, Word, WordProblemOracle};

/// `|A|`, `α` and `δ` for a monoid, with where they came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Parameters {
    pub a_size: usize,
    pub alpha: u64,
    pub delta: u64,
    /// Whether `α` and `δ` hold for the whole monoid rather than a ball.
    pub certified: bool,
    pub source: String,
}

fn ball_parameters(o: &WordProblemOracle, radius: u32) -> Result<(u64, u64, usize)> {
    let ball = cayley_ball(o, radius)?;
    let report = min_hyperbolicity_constant(&ball.graph, &ThinnessOptions::default())?;
    let delta = report
        .delta_star
        .finite()
        .ok_or_else(|| Error::Invalid("no finite thinness constant on the ball".into()))?;
    let alpha = (ball.graph.max_degree() as u64).max(1);
    Ok((alpha, u64::from(delta), ball.graph.vertex_count()))
}

/// Exact `δ*` and the degree bound of the complete Cayley graph.
pub fn finite_parameters(m: &FiniteMonoid) -> Result<Parameters> {
    let o = WordProblemOracle::FiniteTable(m.clone());
    let (alpha, delta, _) = ball_parameters(&o, m.order() as u32)?;
    Ok(Parameters {
        a_size: o.alphabet().len(),
        alpha,
        delta,
        certified: true,
        source: "complete Cayley graph".into(),
    })
}

/// `δ*` and the degree bound of a Cayley ball; a lower estimate of the
/// true values, so not certified.
pub fn estimate_parameters(o: &WordProblemOracle, radius: u32) -> Result<Parameters> {
    let (alpha, delta, n) = ball_parameters(o, radius)?;
    Ok(Parameters {
        a_size: o.alphabet().len(),
        alpha,
        delta,
        certified: false,
        source: format!("Cayley ball of radius {radius} ({n} vertices)"),
    })
}

fn to_usize(x: u64) -> usize {
    usize::try_from(x).unwrap_or(usize::MAX)
}

fn concat(parts: &[&[usize]]) -> Word {
    parts.iter().flat_map(|p| p.iter().copied()).collect()
}

/// A geodesic word for `w`: the canonical word when the oracle has one
/// (normal forms are shortlex-least, table words have length at most 1),
/// otherwise `w` itself.
fn geodesic(o: &WordProblemOracle, w: &[usize]) -> Result<Word> {
    if !o.has_canonical_forms() {
        return Ok(w.to_vec());
    }
    let c = o.canonical(w)?;
    Ok(match o.canonical_word(&c) {
        Some(x) if x.len() <= w.len() => x,
        _ => w.to_vec(),
    })
}

struct Outcome {
    found: Option<(Word, Word)>,
    kind: Bfs,
    method: &'static str,
}

fn from_scan(scan: Scan, found: Option<(Word, Word)>) -> Option<Outcome> {
    let kind = match (scan, &found) {
        (_, Some((a, b))) => Bfs::Found(a.clone(), b.clone()),
        (Scan::Complete, None) => Bfs::Exhausted,
        (Scan::Bounded, None) => Bfs::Bounded,
        (Scan::Capped, None) => return None,
    };
    Some(Outcome {
        found,
        kind,
        method: "class enumeration",
    })
}

fn from_bfs(kind: Bfs, method: &'static str) -> Outcome {
    let found = match &kind {
        Bfs::Found(a, b) => Some((a.clone(), b.clone())),
        _ => None,
    };
    Outcome { found, kind, method }
}

fn key(a: &Word, b: &Word) -> (usize, Word, Word) {
    (a.len() + b.len(), a.clone(), b.clone())
}

/// Searches `a·start·b ≡ target` with `|a| ≤ max_left`, `|b| ≤ max_right`
/// and letters from `letters`.
#[allow(clippy::too_many_arguments)]
fn search(
    o: &WordProblemOracle,
    start: &[usize],
    target: &[usize],
    letters: &[usize],
    sides: Sides,
    max_left: u64,
    max_right: u64,
    node_cap: usize,
) -> Result<Outcome> {
    if let Some(rs) = o.rewriting() {
        let mut best: Option<(Word, Word)> = None;
        let k = start.len();
        let allowed = |x: &[usize]| x.iter().all(|g| letters.contains(g));
        let cap = k.saturating_add(to_usize(max_left)).saturating_add(to_usize(max_right));
        let scan = scan_class(rs, rs.normal_form(target)?, cap, node_cap, |z| {
            if z.len() < k {
                return None;
            }
            let positions: Vec<usize> = match sides {
                Sides::Right => vec![0],
                Sides::Left => vec![z.len() - k],
                Sides::Both => (0..=z.len() - k).collect(),
            };
            let mut hit = false;
            for i in positions {
                let (a, rest) = z.split_at(i);
                let (mid, b) = rest.split_at(k);
                if mid != start
                    || a.len() as u64 > max_left
                    || b.len() as u64 > max_right
                    || !allowed(a)
                    || !allowed(b)
                {
                    continue;
                }
                hit = true;
                let cand = (a.to_vec(), b.to_vec());
                if best.as_ref().is_none_or(|(x, y)| key(&cand.0, &cand.1) < key(x, y)) {
                    best = Some(cand);
                }
            }
            // nothing longer can give a shorter witness
            hit.then_some(z.len())
        });
        if let Some(out) = from_scan(scan, best) {
            return Ok(out);
        }
    }
    if o.has_canonical_forms() {
        let t = o.canonical(target)?;
        let kind = element_bfs(o, start, &t, letters, sides, max_left, max_right, node_cap)?;
        return Ok(from_bfs(kind, "element search"));
    }
    let kind = candidate_search(o, start, target, letters, sides, max_left, max_right, node_cap)?;
    Ok(from_bfs(kind, "candidate enumeration"))
}

fn verdict(
    o: &WordProblemOracle,
    relation: Relation,
    out: Outcome,
    labels: [&str; 2],
    bound: u64,
    certify: bool,
    check: impl Fn(&Word, &Word) -> Word,
    target: &[usize],
) -> Result<GreensVerdict> {
    let (answer, certified, wit) = match (&out.kind, out.found) {
        (_, Some((a, b))) => {
            if !o.equal(&check(&a, &b), target)? {
                return Err(Error::Invalid(format!("internal: {} witness fails to verify", relation.name())));
            }
            let mut w: Vec<Witness> = Vec::new();
            if !labels[0].is_empty() {
                w.push(witness(o, labels[0], a));
            }
            if !labels[1].is_empty() {
                w.push(witness(o, labels[1], b));
            }
            (Answer::Yes, false, w)
        }
        (Bfs::Exhausted, None) => (Answer::NoWithinBound, true, Vec::new()),
        (Bfs::Bounded, None) => (Answer::NoWithinBound, certify, Vec::new()),
        _ => (Answer::UnknownAtCap, false, Vec::new()),
    };
    Ok(GreensVerdict {
        relation,
        answer,
        certified,
        witness: wit,
        bound: Some(bound),
        method: out.method.to_owned(),
        notes: Vec::new(),
    })
}

fn all_letters(o: &WordProblemOracle) -> Vec<usize> {
    (0..o.alphabet().len()).collect()
}

/// Whether `u ≤_R w`: searches `α` with `|α| ≤ ⌈K_β(|w| + |u|)⌉` and
/// `wα ≡ u`.
pub fn decide_leq_r(
    o: &WordProblemOracle,
    c: &GreensConstants,
    w: &[usize],
    u: &[usize],
    opts: &DeciderOptions,
) -> Result<GreensVerdict> {
    let n = c.one_sided_bound(w.len() as u64, u.len() as u64);
    let out = search(o, w, u, &all_letters(o), Sides::Right, 0, n, opts.node_cap)?;
    verdict(o, Relation::LeqR, out, ["", "alpha"], n, opts.hypotheses, |_, b| concat(&[w, b]), u)
}

/// Whether `u ≤_L w`: searches `α` with `αw ≡ u`.
pub fn decide_leq_l(
    o: &WordProblemOracle,
    c: &GreensConstants,
    w: &[usize],
    u: &[usize],
    opts: &DeciderOptions,
) -> Result<GreensVerdict> {
    let n = c.one_sided_bound(w.len() as u64, u.len() as u64);
    let out = search(o, w, u, &all_letters(o), Sides::Left, n, 0, opts.node_cap)?;
    verdict(o, Relation::LeqL, out, ["alpha", ""], n, opts.hypotheses, |a, _| concat(&[a, w]), u)
}

/// Whether `v ≤_J u`: shortens both to geodesic words `u'`, `v'` and
/// searches `a·u'·b ≡ v` with `|a|, |b| ≤ ⌈F(|u'|, |v'|)⌉`.
pub fn decide_leq_j(
    o: &WordProblemOracle,
    c: &GreensConstants,
    u: &[usize],
    v: &[usize],
    opts: &DeciderOptions,
) -> Result<GreensVerdict> {
    let (u1, v1) = (geodesic(o, u)?, geodesic(o, v)?);
    let f = c.f_bound(u1.len() as u64, v1.len() as u64);
    let out = search(o, &u1, &v1, &all_letters(o), Sides::Both, f, f, opts.node_cap)?;
    let certify = opts.hypotheses && opts.left_cancellative;
    let mut v = verdict(o, Relation::LeqJ, out, ["a", "b"], f, certify, |a, b| concat(&[a, &u1, b]), &v1)?;
    if u1 != u {
        v.notes.push(format!("u shortened to {}", o.alphabet().display(&u1)));
    }
    Ok(v)
}

/// Generators with a two-sided inverse of length at most the cap.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitGenerators {
    pub units: Vec<usize>,
    pub names: Vec<String>,
    /// `(generator, inverse)` pairs.
    pub inverses: Vec<(String, String)>,
    pub cap: u64,
    /// Always set: a unit may only have longer inverses.
    pub lower_approximation: bool,
}

pub fn detect_unit_generators(o: &WordProblemOracle, cap: u64) -> Result<UnitGenerators> {
    let a = o.alphabet();
    let (candidates, _) = shortlex_words(&all_letters(o), cap, 2_000_000);
    let mut units = Vec::new();
    let mut inverses = Vec::new();
    for g in 0..a.len() {
        for h in &candidates {
            let gh = concat(&[&[g], h]);
            let hg = concat(&[h, &[g]]);
            if o.words_equal(&gh, &[])? == Equality::Equal && o.words_equal(&hg, &[])? == Equality::Equal {
                units.push(g);
                inverses.push((a.name(g).to_owned(), a.display(h)));
                break;
            }
        }
    }
    Ok(UnitGenerators {
        names: units.iter().map(|&g| a.name(g).to_owned()).collect(),
        units,
        inverses,
        cap,
        lower_approximation: true,
    })
}

/// `u D v` in a cancellative monoid: searches `a·u'·b ≡ v'` with `a`, `b`
/// over the unit generators `units`.
pub fn decide_d_cancellative(
    o: &WordProblemOracle,
    c: &GreensConstants,
    units: &[usize],
    u: &[usize],
    v: &[usize],
    opts: &DeciderOptions,
) -> Result<GreensVerdict> {
    let (u1, v1) = (geodesic(o, u)?, geodesic(o, v)?);
    let f = c.f_bound(u1.len() as u64, v1.len() as u64);
    let out = if units.is_empty() {
        let kind = match o.words_equal(&u1, &v1)? {
            Equality::Equal => Bfs::Found(Vec::new(), Vec::new()),
            Equality::NotEqual => Bfs::Bounded,
            Equality::Unknown => Bfs::Capped,
        };
        from_bfs(kind, "units only: a = b = 1")
    } else {
        search(o, &u1, &v1, units, Sides::Both, f, f, opts.node_cap)?
    };
    let certify = opts.hypotheses && opts.cancellative;
    let mut v = verdict(o, Relation::D, out, ["a", "b"], f, certify, |a, b| concat(&[a, &u1, b]), &v1)?;
    // no means no unit multipliers work; that is only D when cancellative
    if v.answer != Answer::Yes {
        v.certified = certify;
    }
    if !opts.cancellative {
        v.notes.push("cancellativity not asserted: a no is not a statement about D".into());
    }
    v.notes.push(format!("unit generators found with inverses up to length {}: a lower approximation", opts.unit_cap));
    Ok(v)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Equivalences {
    pub r: GreensVerdict,
    pub l: GreensVerdict,
    pub j: GreensVerdict,
    pub h: GreensVerdict,
}

fn both(relation: Relation, x: GreensVerdict, y: GreensVerdict) -> GreensVerdict {
    let answer = x.answer.and(y.answer);
    let certified = answer == Answer::NoWithinBound
        && [&x, &y]
            .iter()
            .any(|p| p.answer == Answer::NoWithinBound && p.certified);
    let mut witness = Vec::new();
    let mut notes = Vec::new();
    for (tag, part) in [("u<=v", &x), ("v<=u", &y)] {
        for w in &part.witness {
            witness.push(Witness {
                label: format!("{tag}.{}", w.label),
                ..w.clone()
            });
        }
        notes.extend(part.notes.iter().map(|n| format!("{tag}: {n}")));
    }
    let method = if x.method == y.method {
        x.method.clone()
    } else {
        format!("{}; {}", x.method, y.method)
    };
    GreensVerdict {
        relation,
        answer,
        certified,
        witness,
        bound: x.bound.max(y.bound),
        method,
        notes,
    }
}

/// `R`, `L`, `J` as conjunctions of both pre-order directions, `H = R ∧ L`.
pub fn decide_equivalences(
    o: &WordProblemOracle,
    c: &GreensConstants,
    u: &[usize],
    v: &[usize],
    opts: &DeciderOptions,
) -> Result<Equivalences> {
    let r = both(
        Relation::R,
        decide_leq_r(o, c, v, u, opts)?,
        decide_leq_r(o, c, u, v, opts)?,
    );
    let l = both(
        Relation::L,
        decide_leq_l(o, c, v, u, opts)?,
        decide_leq_l(o, c, u, v, opts)?,
    );
    let j = both(
        Relation::J,
        decide_leq_j(o, c, v, u, opts)?,
        decide_leq_j(o, c, u, v, opts)?,
    );
    let mut h = both(Relation::H, r.clone(), l.clone());
    h.witness.clear();
    Ok(Equivalences { r, l, j, h })
}

/// `u rel v`, with pre-orders read as `u ≤ v`.
pub fn decide(
    o: &WordProblemOracle,
    c: &GreensConstants,
    rel: Relation,
    u: &[usize],
    v: &[usize],
    opts: &DeciderOptions,
) -> Result<GreensVerdict> {
    match rel {
        Relation::LeqR => decide_leq_r(o, c, v, u, opts),
        Relation::LeqL => decide_leq_l(o, c, v, u, opts),
        Relation::LeqJ => decide_leq_j(o, c, v, u, opts),
        Relation::R | Relation::L | Relation::J | Relation::H => {
            let e = decide_equivalences(o, c, u, v, opts)?;
            Ok(match rel {
                Relation::R => e.r,
                Relation::L => e.l,
                Relation::J => e.j,
                _ => e.h,
            })
        }
        Relation::D => {
            let b = detect_unit_generators(o, opts.unit_cap)?;
            decide_d_cancellative(o, c, &b.units, u, v, opts)
        }
    }
}
