use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::search::{relation_distance, SearchOutcome};
use super::{orient_and_check, Alphabet, FiniteMonoid, MonoidPresentation, RewritingSystem, Word};
use crate::error::{Error, Result};

/// A canonical representative of a monoid element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Canonical {
    /// A normal form, over the alphabet of the underlying rewriting system.
    Word(Word),
    /// An element of a finite table.
    Element(usize),
    /// The zero of a Rees quotient.
    Zero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Equality {
    Equal,
    NotEqual,
    Unknown,
}

/// Membership test for an ideal, applied to canonical forms of the base
/// monoid.
pub type IdealPredicate = Arc<dyn Fn(&Canonical) -> bool + Send + Sync>;

#[derive(Clone)]
pub struct ReesQuotient {
    pub(crate) base: Box<WordProblemOracle>,
    pub(crate) alphabet: Alphabet,
    /// Quotient generator to base generator; `None` for the zero.
    pub(crate) map: Vec<Option<usize>>,
    pub(crate) ideal: IdealPredicate,
}

/// Decides equality of words in a finitely generated monoid.
#[derive(Clone)]
pub enum WordProblemOracle {
    /// Normal forms of a confluent shortlex rewriting system.
    Rewriting(RewritingSystem),
    /// Relation-application search with explicit caps; may answer unknown.
    BoundedSearch {
        presentation: MonoidPresentation,
        area_cap: u32,
        node_cap: usize,
    },
    /// Products in a multiplication table.
    FiniteTable(FiniteMonoid),
    /// A Rees quotient `M/I` with a fresh zero generator.
    Rees(ReesQuotient),
}

impl fmt::Debug for WordProblemOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WordProblemOracle::{}", self.kind())
    }
}

impl WordProblemOracle {
    /// Rewriting when the shortlex orientation checks out, otherwise capped
    /// search.
    pub fn for_presentation(p: &MonoidPresentation, area_cap: u32, node_cap: usize) -> Result<Self> {
        let rs = orient_and_check(p)?;
        if rs.is_checked() {
            Ok(WordProblemOracle::Rewriting(rs))
        } else {
            Ok(WordProblemOracle::BoundedSearch {
                presentation: p.clone(),
                area_cap,
                node_cap,
            })
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            WordProblemOracle::Rewriting(_) => "rewriting",
            WordProblemOracle::BoundedSearch { .. } => "bounded_search",
            WordProblemOracle::FiniteTable(_) => "finite_table",
            WordProblemOracle::Rees(_) => "rees_quotient",
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        match self {
            WordProblemOracle::Rewriting(rs) => rs.alphabet().clone(),
            WordProblemOracle::BoundedSearch { presentation, .. } => presentation.alphabet.clone(),
            WordProblemOracle::FiniteTable(m) => m.alphabet().expect("validated when built"),
            WordProblemOracle::Rees(q) => q.alphabet.clone(),
        }
    }

    pub fn has_canonical_forms(&self) -> bool {
        !matches!(self, WordProblemOracle::BoundedSearch { .. })
    }

    /// Canonical form of `w`; not available for bounded search.
    pub fn canonical(&self, w: &[usize]) -> Result<Canonical> {
        match self {
            WordProblemOracle::Rewriting(rs) => Ok(Canonical::Word(rs.normal_form(w)?)),
            WordProblemOracle::BoundedSearch { presentation, .. } => Err(Error::OracleUnknown(
                presentation.display(w),
                "(canonical form)".into(),
            )),
            WordProblemOracle::FiniteTable(m) => Ok(Canonical::Element(m.evaluate(w))),
            WordProblemOracle::Rees(q) => {
                let mut base = Vec::with_capacity(w.len());
                for &g in w {
                    match q.map[g] {
                        Some(b) => base.push(b),
                        None => return Ok(Canonical::Zero),
                    }
                }
                let c = q.base.canonical(&base)?;
                if (q.ideal)(&c) {
                    Ok(Canonical::Zero)
                } else {
                    Ok(c)
                }
            }
        }
    }

    pub fn words_equal(&self, u: &[usize], v: &[usize]) -> Result<Equality> {
        if u == v {
            return Ok(Equality::Equal);
        }
        match self {
            WordProblemOracle::BoundedSearch {
                presentation,
                area_cap,
                node_cap,
            } => Ok(match relation_distance(presentation, u, v, *area_cap, *node_cap) {
                SearchOutcome::Found(_) => Equality::Equal,
                SearchOutcome::Exhausted => Equality::NotEqual,
                SearchOutcome::Capped => Equality::Unknown,
            }),
            _ => Ok(if self.canonical(u)? == self.canonical(v)? {
                Equality::Equal
            } else {
                Equality::NotEqual
            }),
        }
    }

    /// As [`Self::words_equal`], with an unknown answer turned into an error.
    pub fn equal(&self, u: &[usize], v: &[usize]) -> Result<bool> {
        match self.words_equal(u, v)? {
            Equality::Equal => Ok(true),
            Equality::NotEqual => Ok(false),
            Equality::Unknown => {
                let a = self.alphabet();
                Err(Error::OracleUnknown(a.display(u), a.display(v)))
            }
        }
    }

    /// Printable name of a canonical form.
    pub fn display_canonical(&self, c: &Canonical) -> String {
        match (self, c) {
            (_, Canonical::Zero) => "0".into(),
            (WordProblemOracle::FiniteTable(m), Canonical::Element(x)) => m.element_name(*x).to_owned(),
            (WordProblemOracle::Rees(q), c) => q.base.display_canonical(c),
            (_, Canonical::Word(w)) => self.alphabet().display(w),
            (_, Canonical::Element(x)) => format!("#{x}"),
        }
    }

    /// A word over the oracle's alphabet representing `c`.
    pub fn canonical_word(&self, c: &Canonical) -> Option<Word> {
        match (self, c) {
            (WordProblemOracle::Rees(q), Canonical::Zero) => q.map.iter().position(Option::is_none).map(|z| vec![z]),
            (WordProblemOracle::Rees(q), c) => {
                let base = q.base.canonical_word(c)?;
                base.iter()
                    .map(|&b| q.map.iter().position(|&m| m == Some(b)))
                    .collect()
            }
            (WordProblemOracle::FiniteTable(m), Canonical::Element(x)) => Some(m.element_word(*x)),
            (_, Canonical::Word(w)) => Some(w.clone()),
            _ => None,
        }
    }

    /// The underlying rewriting system, if any.
    pub fn rewriting(&self) -> Option<&RewritingSystem> {
        match self {
            WordProblemOracle::Rewriting(rs) => Some(rs),
            _ => None,
        }
    }
}
