use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::size::log_four_thirds_five;
use crate::error::{Error, Result};
use crate::monoid::{relation_distance, words_up_to, MonoidPresentation, SearchOutcome, Word, WordProblemOracle};

/// Fewest relation applications turning `u` into `v`.
pub fn dehn_area(
    p: &MonoidPresentation,
    u: &[usize],
    v: &[usize],
    area_cap: u32,
    node_cap: usize,
) -> SearchOutcome {
    relation_distance(p, u, v, area_cap, node_cap)
}

/// `δ(n)`: the largest area over equal pairs with `|u| + |v| ≤ n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DehnEntry {
    pub n: usize,
    pub area: u32,
    /// A pair attaining `area`, when `area > 0`.
    pub witness: Option<(String, String)>,
    pub pairs: u64,
    /// Pairs whose search hit a cap; when non-zero `area` is a lower bound.
    pub capped: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DehnTable {
    pub max_len: usize,
    pub entries: Vec<DehnEntry>,
}

impl DehnTable {
    pub fn area(&self, n: usize) -> Option<u32> {
        self.entries.get(n).map(|e| e.area)
    }

    pub fn is_exact(&self) -> bool {
        self.entries.iter().all(|e| e.capped == 0)
    }
}

/// Empirical Dehn function for `n ≤ max_len`: all words of length at most
/// `max_len` are grouped by canonical form and every equal pair is
/// searched.
pub fn dehn_function_estimate(
    p: &MonoidPresentation,
    oracle: &WordProblemOracle,
    max_len: usize,
    area_cap: u32,
    node_cap: usize,
) -> Result<DehnTable> {
    if !oracle.has_canonical_forms() {
        return Err(Error::Invalid("a Dehn estimate needs an oracle with canonical forms".into()));
    }
    if oracle.alphabet() != p.alphabet {
        return Err(Error::Invalid("oracle and presentation use different generators".into()));
    }
    let mut classes: HashMap<_, Vec<Word>> = HashMap::new();
    for w in words_up_to(p.alphabet.len(), max_len) {
        classes.entry(oracle.canonical(&w)?).or_default().push(w);
    }
    let mut pairs = Vec::new();
    for class in classes.values() {
        for (i, u) in class.iter().enumerate() {
            for v in &class[i + 1..] {
                if u.len() + v.len() <= max_len {
                    pairs.push((u, v));
                }
            }
        }
    }
    let results: Vec<(usize, SearchOutcome)> = pairs
        .par_iter()
        .map(|(u, v)| (u.len() + v.len(), dehn_area(p, u, v, area_cap, node_cap)))
        .collect();

    let mut best: Vec<Option<(u32, usize)>> = vec![None; max_len + 1];
    let mut count = vec![0u64; max_len + 1];
    let mut capped = vec![0u64; max_len + 1];
    for (idx, (len, out)) in results.iter().enumerate() {
        count[*len] += 1;
        match out {
            SearchOutcome::Found(a) => {
                if best[*len].is_none_or(|(b, _)| *a > b) {
                    best[*len] = Some((*a, idx));
                }
            }
            SearchOutcome::Exhausted => {
                return Err(Error::Invalid(format!(
                    "oracle and relation search disagree on {} = {}",
                    p.display(pairs[idx].0),
                    p.display(pairs[idx].1)
                )))
            }
            SearchOutcome::Capped => capped[*len] += 1,
        }
    }
    let mut entries = Vec::with_capacity(max_len + 1);
    let mut run: Option<(u32, usize)> = None;
    let (mut total, mut total_capped) = (0, 0);
    for n in 0..=max_len {
        if let Some((a, idx)) = best[n] {
            if run.is_none_or(|(b, _)| a > b) {
                run = Some((a, idx));
            }
        }
        total += count[n];
        total_capped += capped[n];
        let area = run.map_or(0, |(a, _)| a);
        entries.push(DehnEntry {
            n,
            area,
            witness: run
                .filter(|(a, _)| *a > 0)
                .map(|(_, i)| (p.display(pairs[i].0), p.display(pairs[i].1))),
            pairs: total,
            capped: total_capped,
        });
    }
    Ok(DehnTable { max_len, entries })
}

/// The polynomial bound `P(n) = κ · 5(n+1) · (2n / (C − 8δ − 4))^{log_{4/3} 5}`
/// with `C = 8δ + 5` and `κ = δ(2C)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DehnBound {
    pub delta: u32,
    pub c: usize,
    pub kappa: u32,
    pub exponent: f64,
}

impl DehnBound {
    /// Needs the empirical table up to `2C`.
    pub fn from_table(delta: u32, table: &DehnTable) -> Result<DehnBound> {
        let c = 8 * delta as usize + 5;
        let e = table.entries.get(2 * c).ok_or_else(|| {
            Error::Invalid(format!("the table must reach 2C = {}, it stops at {}", 2 * c, table.max_len))
        })?;
        Ok(DehnBound {
            delta,
            c,
            kappa: e.area,
            exponent: log_four_thirds_five(),
        })
    }

    pub fn value(&self, n: usize) -> f64 {
        let margin = (self.c - 8 * self.delta as usize - 4) as f64;
        self.kappa as f64 * 5.0 * (n as f64 + 1.0) * (2.0 * n as f64 / margin).powf(self.exponent)
    }

    /// Entries `n` with `δ(n) > P(n)`.
    pub fn violations(&self, table: &DehnTable) -> Vec<usize> {
        table
            .entries
            .iter()
            .filter(|e| e.area as f64 > self.value(e.n))
            .map(|e| e.n)
            .collect()
    }
}
