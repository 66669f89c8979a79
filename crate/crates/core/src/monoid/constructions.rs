use super::oracle::ReesQuotient;
use super::{
    orient_with_precedence, Alphabet, Canonical, FiniteMonoid, IdealPredicate, MonoidPresentation,
    Word, WordProblemOracle,
};
use crate::error::{Error, Result};

fn fresh_zero(a: &Alphabet) -> String {
    let mut name = "0".to_owned();
    let mut i = 1;
    while a.index(&name).is_some() {
        i += 1;
        name = format!("0_{i}");
    }
    name
}

/// `M⁰`: a new generator `0` (or `0_2`, … if taken) with `0s = s0 = 00 = 0`
/// for every generator `s`.
pub fn adjoin_zero(p: &MonoidPresentation) -> Result<MonoidPresentation> {
    let mut names = p.alphabet.names().to_vec();
    names.push(fresh_zero(&p.alphabet));
    let z = p.alphabet.len();
    let mut rels = p.relations.clone();
    for s in 0..z {
        rels.push((vec![s, z], vec![z]));
        rels.push((vec![z, s], vec![z]));
    }
    rels.push((vec![z, z], vec![z]));
    MonoidPresentation::new(Alphabet::new(names)?, rels)
}

/// An oracle for `M⁰` built from one for `M`. Rewriting systems keep their
/// precedence with the zero placed last; tables gain an absorbing element.
pub fn adjoin_zero_oracle(o: &WordProblemOracle) -> Result<WordProblemOracle> {
    match o {
        WordProblemOracle::Rewriting(rs) => {
            let base = MonoidPresentation::new(rs.alphabet().clone(), rs.rules().to_vec())?;
            let p = adjoin_zero(&base)?;
            let mut order: Vec<usize> = rs
                .precedence()
                .iter()
                .map(|n| rs.alphabet().index(n).expect("own alphabet"))
                .collect();
            order.push(rs.alphabet().len());
            let zs = orient_with_precedence(&p, &order)?;
            if !zs.is_checked() {
                return Err(Error::NotConfluent(format!("{:?}", zs.status())));
            }
            Ok(WordProblemOracle::Rewriting(zs))
        }
        WordProblemOracle::BoundedSearch {
            presentation,
            area_cap,
            node_cap,
        } => Ok(WordProblemOracle::BoundedSearch {
            presentation: adjoin_zero(presentation)?,
            area_cap: *area_cap,
            node_cap: *node_cap,
        }),
        WordProblemOracle::FiniteTable(m) => {
            let n = m.order();
            let mut names: Vec<String> = (0..n).map(|x| m.element_name(x).to_owned()).collect();
            let probe = Alphabet::new(names.iter().filter(|s| *s != "1").cloned())?;
            names.push(fresh_zero(&probe));
            let table = (0..=n)
                .map(|a| {
                    (0..=n)
                        .map(|b| if a == n || b == n { n } else { m.mul(a, b) })
                        .collect()
                })
                .collect();
            Ok(WordProblemOracle::FiniteTable(FiniteMonoid::new(names, table)?))
        }
        WordProblemOracle::Rees(_) => Err(Error::Invalid(
            "a Rees quotient already has a zero; adjoin it to the base instead".into(),
        )),
    }
}

pub(crate) fn words_up_to(k: usize, len: usize) -> Vec<Word> {
    let mut all = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &layer {
            for g in 0..k {
                let mut x: Word = w.clone();
                x.push(g);
                next.push(x);
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

/// Depth of the closure spot-check on the ideal predicate.
const IDEAL_CHECK_LEN: usize = 3;

/// The Rees quotient `M/I`. Its generators are the generators of `M` lying
/// outside `I`, in order, followed by a zero; `ideal` is applied to
/// canonical forms of `M`.
///
/// `I` must be a proper two-sided ideal. Closure under multiplication by a
/// generator on either side is spot-checked on words of length at most 3.
pub fn rees_quotient(base: &WordProblemOracle, ideal: IdealPredicate) -> Result<WordProblemOracle> {
    if !base.has_canonical_forms() {
        return Err(Error::Invalid("a Rees quotient needs an oracle with canonical forms".into()));
    }
    let alphabet = base.alphabet();
    let k = alphabet.len();
    if ideal(&base.canonical(&[])?) {
        return Err(Error::Invalid("the ideal contains the identity".into()));
    }
    for w in words_up_to(k, IDEAL_CHECK_LEN) {
        if !ideal(&base.canonical(&w)?) {
            continue;
        }
        for g in 0..k {
            let mut right = w.clone();
            right.push(g);
            let mut left = vec![g];
            left.extend_from_slice(&w);
            for x in [right, left] {
                if !ideal(&base.canonical(&x)?) {
                    return Err(Error::Invalid(format!(
                        "not an ideal: {} is in it but {} is not",
                        alphabet.display(&w),
                        alphabet.display(&x)
                    )));
                }
            }
        }
    }
    let mut names = Vec::new();
    let mut map = Vec::new();
    for g in 0..k {
        if !ideal(&base.canonical(&[g])?) {
            names.push(alphabet.name(g).to_owned());
            map.push(Some(g));
        }
    }
    names.push(fresh_zero(&alphabet));
    map.push(None);
    Ok(WordProblemOracle::Rees(ReesQuotient {
        base: Box::new(base.clone()),
        alphabet: Alphabet::new(names)?,
        map,
        ideal,
    }))
}

/// For `u ≡ w`, checks `|u| = |w|` and `u[k] ≡ w[k]` for every prefix
/// length `k`. Unequal pairs pass vacuously.
pub fn prefix_invariance_check(o: &WordProblemOracle, u: &[usize], w: &[usize]) -> Result<bool> {
    if !o.equal(u, w)? {
        return Ok(true);
    }
    if u.len() != w.len() {
        return Ok(false);
    }
    for k in 0..u.len() {
        if !o.equal(&u[..k], &w[..k])? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Ideal of words having `factor` as a factor of their normal form.
pub fn factor_ideal(factor: Word) -> IdealPredicate {
    std::sync::Arc::new(move |c: &Canonical| match c {
        Canonical::Word(w) => !factor.is_empty() && w.windows(factor.len()).any(|x| x == factor.as_slice()),
        Canonical::Zero => true,
        Canonical::Element(_) => false,
    })
}
