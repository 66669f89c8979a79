use std::collections::HashMap;

use serde::Serialize;

use super::{Alphabet, MonoidPresentation, Word};
use crate::error::{Error, Result};

/// A finite monoid given by its multiplication table.
///
/// As a generated monoid its generators are the non-identity elements in
/// table order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteMonoid {
    elements: Vec<String>,
    identity: usize,
    table: Vec<Vec<usize>>,
    #[serde(skip)]
    generators: Vec<usize>,
}

impl FiniteMonoid {
    /// Checks closure, associativity and a two-sided identity.
    pub fn new(elements: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = elements.len();
        if n == 0 {
            return Err(Error::Invalid("a monoid has at least one element".into()));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::Invalid(format!("table must be {n}×{n} over the elements")));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Invalid(format!(
                            "not associative at ({}, {}, {})",
                            elements[a], elements[b], elements[c]
                        )));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::Invalid("no identity element".into()))?;
        let generators = (0..n).filter(|&x| x != identity).collect();
        Ok(FiniteMonoid {
            elements,
            identity,
            table,
            generators,
        })
    }

    /// ```text
    /// elements: 1 e
    /// 1 e
    /// e e
    /// ```
    /// Row `i`, column `j` holds the product `xᵢ·xⱼ`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut elements: Option<Vec<String>> = None;
        let mut rows = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse { line: i + 1, msg };
            if let Some(rest) = line.strip_prefix("elements:") {
                elements = Some(rest.split_whitespace().map(str::to_owned).collect());
                continue;
            }
            let names = elements
                .as_ref()
                .ok_or_else(|| err("table row before the `elements:` line".into()))?;
            let row = line
                .split_whitespace()
                .map(|t| {
                    names
                        .iter()
                        .position(|n| n == t)
                        .ok_or_else(|| err(format!("unknown element `{t}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        let elements = elements.ok_or(Error::Parse {
            line: 0,
            msg: "missing `elements:` line".into(),
        })?;
        let mut seen = HashMap::new();
        for e in &elements {
            if seen.insert(e.as_str(), ()).is_some() {
                return Err(Error::Invalid(format!("element `{e}` listed twice")));
            }
        }
        Self::new(elements, rows)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("elements: {}\n", self.elements.join(" "));
        for row in &self.table {
            let names: Vec<&str> = row.iter().map(|&x| self.elements[x].as_str()).collect();
            out.push_str(&names.join(" "));
            out.push('\n');
        }
        out
    }

    /// Closure of the given transformations of `{0..degree}` under
    /// composition, acting on the right: `x·(fg) = (x·f)·g`.
    pub fn from_transformations(degree: usize, gens: &[Vec<usize>]) -> Result<Self> {
        if gens.iter().any(|f| f.len() != degree || f.iter().any(|&x| x >= degree)) {
            return Err(Error::Invalid("transformations must map 0..degree into itself".into()));
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut maps = vec![id];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(maps[0].clone(), 0)]);
        let mut i = 0;
        while i < maps.len() {
            for f in gens {
                let h: Vec<usize> = maps[i].iter().map(|&x| f[x]).collect();
                if !index.contains_key(&h) {
                    index.insert(h.clone(), maps.len());
                    maps.push(h);
                }
            }
            i += 1;
        }
        let n = maps.len();
        let table = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let h: Vec<usize> = maps[a].iter().map(|&x| maps[b][x]).collect();
                        index[&h]
                    })
                    .collect()
            })
            .collect();
        let names = (0..n)
            .map(|k| if k == 0 { "1".to_owned() } else { format!("m{k}") })
            .collect();
        Self::new(names, table)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn element_name(&self, x: usize) -> &str {
        &self.elements[x]
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    /// Element represented by generator `g`.
    pub fn generator_element(&self, g: usize) -> usize {
        self.generators[g]
    }

    /// Generator whose element is `x`, if `x` is not the identity.
    pub fn element_generator(&self, x: usize) -> Option<usize> {
        self.generators.iter().position(|&e| e == x)
    }

    pub fn evaluate(&self, w: &[usize]) -> usize {
        w.iter()
            .fold(self.identity, |acc, &g| self.table[acc][self.generators[g]])
    }

    /// Shortest word for `x` (empty for the identity).
    pub fn element_word(&self, x: usize) -> Word {
        self.element_generator(x).map(|g| vec![g]).unwrap_or_default()
    }

    pub fn alphabet(&self) -> Result<Alphabet> {
        Alphabet::new(self.generators.iter().map(|&x| self.elements[x].clone()))
    }

    /// Generators are the non-identity elements; one relation `g h = gh`
    /// per ordered pair.
    pub fn presentation(&self) -> Result<MonoidPresentation> {
        let alphabet = self.alphabet()?;
        let mut rels = Vec::new();
        for (gi, &a) in self.generators.iter().enumerate() {
            for (hi, &b) in self.generators.iter().enumerate() {
                rels.push((vec![gi, hi], self.element_word(self.table[a][b])));
            }
        }
        MonoidPresentation::new(alphabet, rels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn semilattice_from_text() {
        let m = FiniteMonoid::parse("elements: 1 e\n1 e\ne e\n").unwrap();
        assert_eq!(m.order(), 2);
        assert_eq!(m.identity(), 0);
        assert_eq!(m.evaluate(&[0, 0]), 1);
        assert_eq!(FiniteMonoid::parse(&m.to_text()).unwrap(), m);
        let p = m.presentation().unwrap();
        assert_eq!(p.relations, vec![(vec![0, 0], vec![0])]);
    }

    #[test]
    fn rejects_bad_tables() {
        // no identity
        assert!(FiniteMonoid::parse("elements: a b\na a\na a").is_err());
        assert!(FiniteMonoid::parse("elements: a b\na b").is_err());
        assert!(FiniteMonoid::parse("elements: a b\na c\nb a").is_err());
        // not associative: a·a=b, a·b=a, b·a=b gives (aa)a=ba=b but a(aa)=ab=a
        assert!(FiniteMonoid::new(
            vec!["1".into(), "a".into(), "b".into()],
            vec![vec![0, 1, 2], vec![1, 2, 1], vec![2, 2, 2]],
        )
        .is_err());
    }

    #[test]
    fn transformation_closure() {
        // a transposition generates the group of order 2
        let m = FiniteMonoid::from_transformations(2, &[vec![1, 0]]).unwrap();
        assert_eq!(m.order(), 2);
        let gen = m.generator_element(0);
        assert_eq!(m.mul(gen, gen), m.identity());
        // constant maps on 2 points plus identity
        let m = FiniteMonoid::from_transformations(2, &[vec![0, 0], vec![1, 1]]).unwrap();
        assert_eq!(m.order(), 3);
    }
}
