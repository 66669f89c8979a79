//! The example monoids: free, bicyclic, polycyclic, `M_I` for finite `I`,
//! the `axb = y, ayb = x` monoid and finite tables.

use super::{orient_with_precedence, Alphabet, FiniteMonoid, MonoidPresentation, WordProblemOracle};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Builtin {
    Free(usize),
    /// `⟨b, c | bc = 1⟩`, also written `⟨p, q | pq = 1⟩`.
    Bicyclic,
    /// Rank-`n` polycyclic monoid with zero `z`.
    Polycyclic(usize),
    /// `⟨a, b, c, d | ab^i c = ab^i d (i ∈ I)⟩`, `I` finite.
    MI(Vec<u32>),
    /// `⟨x, y, a, b | axb = y, ayb = x⟩`.
    Example6,
    Finite(FiniteMonoid),
}

/// Name, syntax and description of each built-in.
pub const CATALOGUE: &[(&str, &str, &str)] = &[
    ("free", "free(k)", "free monoid of rank k on a, b, c, ..."),
    ("bicyclic", "bicyclic", "<b, c | bc = 1>"),
    (
        "polycyclic",
        "polycyclic(n)",
        "<p1..pn, q1..qn, z | pi qi = 1, pi qj = z (i != j), z absorbing on both sides, zz = z>",
    ),
    ("m_i", "m_i(i1,i2,...)", "<a, b, c, d | a b^i c = a b^i d for i in I>, I finite"),
    ("example_6", "example_6", "<x, y, a, b | axb = y, ayb = x>"),
    ("finite", "finite (with a table file)", "finite monoid from its multiplication table"),
];

fn args(spec: &str, name: &str) -> Option<Vec<String>> {
    let rest = spec.strip_prefix(name)?;
    if rest.is_empty() {
        return Some(Vec::new());
    }
    let inner = rest.strip_prefix('(')?.strip_suffix(')')?;
    Some(
        inner
            .split(',')
            .map(|s| s.trim().to_owned())
            .filter(|s| !s.is_empty())
            .collect(),
    )
}

fn one_number(spec: &str, a: &[String]) -> Result<usize> {
    match a {
        [n] => n
            .parse()
            .map_err(|_| Error::Invalid(format!("`{spec}`: expected a number"))),
        _ => Err(Error::Invalid(format!("`{spec}`: expected one argument"))),
    }
}

impl Builtin {
    /// Parses `free(2)`, `bicyclic`, `polycyclic(2)`, `m_i(1,3)`,
    /// `example_6`. Finite tables are built with [`Builtin::Finite`].
    pub fn parse(spec: &str) -> Result<Builtin> {
        let s: String = spec.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
        if let Some(a) = args(&s, "free") {
            let k = one_number(spec, &a)?;
            if k == 0 {
                return Err(Error::Invalid("free(0) has no generators".into()));
            }
            return Ok(Builtin::Free(k));
        }
        if s == "bicyclic" {
            return Ok(Builtin::Bicyclic);
        }
        if let Some(a) = args(&s, "polycyclic") {
            let n = one_number(spec, &a)?;
            if n == 0 {
                return Err(Error::Invalid("polycyclic rank must be at least 1".into()));
            }
            return Ok(Builtin::Polycyclic(n));
        }
        if let Some(a) = args(&s, "m_i").or_else(|| args(&s, "mi")) {
            let mut set = a
                .iter()
                .map(|x| {
                    x.parse::<u32>().map_err(|_| {
                        Error::Invalid(format!("`{spec}`: I must be a finite list of integers"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            set.sort_unstable();
            set.dedup();
            return Ok(Builtin::MI(set));
        }
        if s == "example_6" || s == "example6" {
            return Ok(Builtin::Example6);
        }
        if s.starts_with("finite") {
            return Err(Error::Invalid("finite monoids need a multiplication table".into()));
        }
        Err(Error::Invalid(format!("unknown built-in `{spec}`")))
    }

    pub fn name(&self) -> String {
        match self {
            Builtin::Free(k) => format!("free({k})"),
            Builtin::Bicyclic => "bicyclic".into(),
            Builtin::Polycyclic(n) => format!("polycyclic({n})"),
            Builtin::MI(set) => format!(
                "m_i({})",
                set.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
            ),
            Builtin::Example6 => "example_6".into(),
            Builtin::Finite(m) => format!("finite(order {})", m.order()),
        }
    }

    pub fn presentation(&self) -> Result<MonoidPresentation> {
        match self {
            Builtin::Free(k) => {
                let names: Vec<String> = if *k <= 26 {
                    (0..*k).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
                } else {
                    (1..=*k).map(|i| format!("x{i}")).collect()
                };
                Ok(MonoidPresentation::free(Alphabet::new(names)?))
            }
            Builtin::Bicyclic => MonoidPresentation::new(Alphabet::new(["b", "c"])?, vec![(vec![0, 1], vec![])]),
            Builtin::Polycyclic(n) => {
                let n = *n;
                let mut names: Vec<String> = (1..=n).map(|i| format!("p{i}")).collect();
                names.extend((1..=n).map(|i| format!("q{i}")));
                names.push("z".into());
                let (p, q, z) = (|i: usize| i, |i: usize| n + i, 2 * n);
                let mut rels = Vec::new();
                for i in 0..n {
                    for j in 0..n {
                        let rhs = if i == j { vec![] } else { vec![z] };
                        rels.push((vec![p(i), q(j)], rhs));
                    }
                }
                for g in (0..n).map(p).chain((0..n).map(q)) {
                    rels.push((vec![g, z], vec![z]));
                    rels.push((vec![z, g], vec![z]));
                }
                rels.push((vec![z, z], vec![z]));
                MonoidPresentation::new(Alphabet::new(names)?, rels)
            }
            Builtin::MI(set) => {
                let rels = set
                    .iter()
                    .map(|&i| {
                        let mut stem = vec![0];
                        stem.extend(std::iter::repeat_n(1, i as usize));
                        let mut l = stem.clone();
                        l.push(2);
                        let mut r = stem;
                        r.push(3);
                        (l, r)
                    })
                    .collect();
                MonoidPresentation::new(Alphabet::new(["a", "b", "c", "d"])?, rels)
            }
            Builtin::Example6 => MonoidPresentation::new(
                Alphabet::new(["x", "y", "a", "b"])?,
                vec![(vec![2, 0, 3], vec![1]), (vec![2, 1, 3], vec![0])],
            ),
            Builtin::Finite(m) => m.presentation(),
        }
    }

    /// The preferred word-problem oracle. `M_I` orients `ab^i c → ab^i d`
    /// (precedence `a < b < d < c`); the others use declaration order.
    pub fn oracle(&self) -> Result<WordProblemOracle> {
        if let Builtin::Finite(m) = self {
            return Ok(WordProblemOracle::FiniteTable(m.clone()));
        }
        let p = self.presentation()?;
        let order: Vec<usize> = match self {
            Builtin::MI(_) => vec![0, 1, 3, 2],
            _ => (0..p.alphabet.len()).collect(),
        };
        let rs = orient_with_precedence(&p, &order)?;
        if !rs.is_checked() {
            return Err(Error::NotConfluent(format!("{}: {:?}", self.name(), rs.status())));
        }
        Ok(WordProblemOracle::Rewriting(rs))
    }

    /// Interpretation choices baked into the presentation.
    pub fn notes(&self) -> Vec<&'static str> {
        match self {
            Builtin::Bicyclic => vec!["generators b, c; the alias p, q names the same monoid"],
            Builtin::Polycyclic(_) => vec!["zz = z is included so that z is a two-sided zero"],
            Builtin::MI(_) => vec!["normal forms prefer d over c: ab^i c rewrites to ab^i d"],
            _ => Vec::new(),
        }
    }
}

/// Presentation and preferred oracle for a built-in spec string.
pub fn builtin(spec: &str) -> Result<(MonoidPresentation, WordProblemOracle)> {
    let b = Builtin::parse(spec)?;
    Ok((b.presentation()?, b.oracle()?))
}
