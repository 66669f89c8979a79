//! Finitely presented monoids: words, presentations, word-problem oracles,
//! Cayley balls, the example monoids and the zero / Rees-quotient
//! constructions.

pub mod builtins;
mod cayley;
mod constructions;
mod oracle;
mod rewriting;
mod search;
mod table;

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};

pub use builtins::{builtin, Builtin};
pub use cayley::{cayley_ball, CayleyBall};
pub use constructions::{
    adjoin_zero, adjoin_zero_oracle, factor_ideal, prefix_invariance_check, rees_quotient,
};
pub use oracle::{Canonical, Equality, IdealPredicate, WordProblemOracle};
pub use rewriting::{orient_and_check, orient_with_precedence, Confluence, RewritingSystem};
pub use search::{relation_distance, SearchOutcome};
pub use table::FiniteMonoid;

pub(crate) use constructions::words_up_to;

/// A word as generator indices into its [`Alphabet`]; empty is the identity.
pub type Word = Vec<usize>;

/// Ordered generator names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut seen = HashSet::new();
        for n in &names {
            if n == "1" || n.is_empty() || n.chars().any(|c| c.is_whitespace() || c == '^' || c == '=') {
                return Err(Error::Invalid(format!("`{n}` cannot be a generator name")));
            }
            if !seen.insert(n.as_str()) {
                return Err(Error::Invalid(format!("generator `{n}` declared twice")));
            }
        }
        Ok(Alphabet { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Whitespace-separated chunks; each chunk is split into generator names
    /// by longest match, and `g^k` repeats a generator. `1` is the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut word = Word::new();
        for chunk in text.split_whitespace() {
            if chunk == "1" {
                continue;
            }
            let mut rest = chunk;
            while !rest.is_empty() {
                let g = self
                    .names
                    .iter()
                    .enumerate()
                    .filter(|(_, n)| rest.starts_with(n.as_str()))
                    .max_by_key(|(_, n)| n.len())
                    .map(|(i, _)| i)
                    .ok_or_else(|| Error::UnknownGenerator(rest.to_owned()))?;
                rest = &rest[self.names[g].len()..];
                let mut times = 1;
                if let Some(after) = rest.strip_prefix('^') {
                    let digits: String = after.chars().take_while(char::is_ascii_digit).collect();
                    times = digits
                        .parse::<usize>()
                        .map_err(|_| Error::Invalid(format!("bad exponent in `{chunk}`")))?;
                    rest = &after[digits.len()..];
                }
                word.extend(std::iter::repeat_n(g, times));
            }
        }
        Ok(word)
    }

    /// `1` for the empty word; names concatenated when every generator name
    /// is a single character, joined with `.` otherwise.
    pub fn display(&self, w: &[usize]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        let sep = if self.names.iter().all(|n| n.chars().count() == 1) {
            ""
        } else {
            "."
        };
        w.iter()
            .map(|&g| self.names[g].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// Inverse of [`Self::display`]; also accepts the input syntax.
    pub fn parse_display(&self, text: &str) -> Result<Word> {
        if text.contains('.') && !self.names.iter().any(|n| n.contains('.')) {
            self.parse_word(&text.replace('.', " "))
        } else {
            self.parse_word(text)
        }
    }
}

/// Generators plus defining relations `lhs = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidPresentation {
    pub alphabet: Alphabet,
    pub relations: Vec<(Word, Word)>,
}

impl MonoidPresentation {
    /// Relations are normalised so each unordered pair appears once;
    /// trivial relations `w = w` are dropped.
    pub fn new(alphabet: Alphabet, relations: Vec<(Word, Word)>) -> Result<Self> {
        let n = alphabet.len();
        let mut seen = HashSet::new();
        let mut kept = Vec::new();
        for (l, r) in relations {
            if let Some(&bad) = l.iter().chain(&r).find(|&&g| g >= n) {
                return Err(Error::UnknownGenerator(format!("#{bad}")));
            }
            if l == r {
                continue;
            }
            let key = if l <= r { (l.clone(), r.clone()) } else { (r.clone(), l.clone()) };
            if seen.insert(key) {
                kept.push((l, r));
            }
        }
        Ok(MonoidPresentation {
            alphabet,
            relations: kept,
        })
    }

    pub fn free(alphabet: Alphabet) -> Self {
        MonoidPresentation {
            alphabet,
            relations: Vec::new(),
        }
    }

    pub fn generators(&self) -> &[String] {
        self.alphabet.names()
    }

    pub fn word(&self, text: &str) -> Result<Word> {
        self.alphabet.parse_word(text)
    }

    pub fn display(&self, w: &[usize]) -> String {
        self.alphabet.display(w)
    }

    /// Text form accepted by [`parse_presentation`].
    pub fn to_text(&self) -> String {
        let mut out = format!("generators: {}\n", self.alphabet.names().join(" "));
        let spaced = |w: &Word| {
            if w.is_empty() {
                "1".to_owned()
            } else {
                w.iter()
                    .map(|&g| self.alphabet.name(g))
                    .collect::<Vec<_>>()
                    .join(" ")
            }
        };
        for (l, r) in &self.relations {
            out.push_str(&format!("{} = {}\n", spaced(l), spaced(r)));
        }
        out
    }
}

/// ```text
/// generators: b c
/// bc = 1        # comment
/// ```
pub fn parse_presentation(text: &str) -> Result<MonoidPresentation> {
    let mut alphabet = None;
    let mut relations = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: i + 1, msg };
        if let Some(rest) = line.strip_prefix("generators:") {
            if alphabet.is_some() {
                return Err(err("generators declared twice".into()));
            }
            alphabet = Some(Alphabet::new(rest.split_whitespace()).map_err(|e| err(e.to_string()))?);
            continue;
        }
        let a = alphabet
            .as_ref()
            .ok_or_else(|| err("relation before the `generators:` line".into()))?;
        let (l, r) = line
            .split_once('=')
            .ok_or_else(|| err(format!("expected `lhs = rhs`, got `{line}`")))?;
        if r.contains('=') {
            return Err(err("more than one `=`".into()));
        }
        if l.trim().is_empty() || r.trim().is_empty() {
            return Err(err("empty side; write `1` for the empty word".into()));
        }
        let lw = a.parse_word(l).map_err(|e| err(e.to_string()))?;
        let rw = a.parse_word(r).map_err(|e| err(e.to_string()))?;
        relations.push((lw, rw));
    }
    let alphabet = alphabet.ok_or(Error::Parse {
        line: 0,
        msg: "missing `generators:` line".into(),
    })?;
    MonoidPresentation::new(alphabet, relations)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_example_presentations() {
        let p = parse_presentation("generators: b c\nbc = 1\n").unwrap();
        assert_eq!(p.relations, vec![(vec![0, 1], vec![])]);

        let p = parse_presentation("generators: x y a b\naxb = y\nayb = x").unwrap();
        assert_eq!(p.relations.len(), 2);
        assert_eq!(p.relations[0], (vec![2, 0, 3], vec![1]));

        let p = parse_presentation("generators: a b # free\n").unwrap();
        assert!(p.relations.is_empty());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_presentation("generators: b c\nbd = 1"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(parse_presentation("bc = 1").is_err());
        assert!(parse_presentation("generators: b c\nbc").is_err());
        assert!(parse_presentation("generators: 1 c").is_err());
        assert!(parse_presentation("generators: b b").is_err());
    }

    #[test]
    fn duplicates_collapse() {
        let p = parse_presentation("generators: b c\nbc = 1\n1 = bc\nb = b").unwrap();
        assert_eq!(p.relations.len(), 1);
    }

    #[test]
    fn multi_character_tokens() {
        let a = Alphabet::new(["p1", "p2", "q1", "q2", "z"]).unwrap();
        assert_eq!(a.parse_word("p1 q2 z").unwrap(), vec![0, 3, 4]);
        assert_eq!(a.parse_word("p1q2").unwrap(), vec![0, 3]);
        assert_eq!(a.display(&[0, 3]), "p1.q2");
        assert_eq!(a.parse_display("p1.q2").unwrap(), vec![0, 3]);
        let b = Alphabet::new(["a", "b", "c", "d"]).unwrap();
        assert_eq!(b.parse_word("ab^2c").unwrap(), vec![0, 1, 1, 2]);
        assert_eq!(b.display(&[]), "1");
        assert_eq!(b.display(&[0, 1, 1, 2]), "abbc");
    }

    #[test]
    fn text_round_trip() {
        let p = parse_presentation("generators: p1 q1 z\np1 q1 = 1\np1 z = z").unwrap();
        assert_eq!(parse_presentation(&p.to_text()).unwrap(), p);
    }
}
