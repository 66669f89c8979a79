use std::cmp::Ordering;

use serde::Serialize;

use super::{Alphabet, MonoidPresentation, Word};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Confluence {
    /// Every critical pair joins.
    Checked,
    /// A critical pair whose two reducts have different irreducible forms.
    Unknown {
        overlap: String,
        left: String,
        right: String,
    },
}

/// Rules `lhs → rhs` oriented by shortlex: shorter first, then
/// lexicographic by generator precedence.
#[derive(Clone, Debug)]
pub struct RewritingSystem {
    alphabet: Alphabet,
    rules: Vec<(Word, Word)>,
    rank: Vec<usize>,
    // rule indices keyed by the last letter of their left-hand side
    by_last: Vec<Vec<usize>>,
    status: Confluence,
}

fn shortlex(rank: &[usize], a: &[usize], b: &[usize]) -> Ordering {
    a.len()
        .cmp(&b.len())
        .then_with(|| a.iter().map(|&g| rank[g]).cmp(b.iter().map(|&g| rank[g])))
}

/// Orients by shortlex with precedence equal to declaration order and
/// checks all critical pairs.
pub fn orient_and_check(p: &MonoidPresentation) -> Result<RewritingSystem> {
    let order: Vec<usize> = (0..p.alphabet.len()).collect();
    orient_with_precedence(p, &order)
}

/// `order` lists every generator once, smallest first.
pub fn orient_with_precedence(p: &MonoidPresentation, order: &[usize]) -> Result<RewritingSystem> {
    let n = p.alphabet.len();
    let mut rank = vec![usize::MAX; n];
    for (i, &g) in order.iter().enumerate() {
        if g >= n || rank[g] != usize::MAX {
            return Err(Error::Invalid("precedence must list each generator once".into()));
        }
        rank[g] = i;
    }
    if order.len() != n {
        return Err(Error::Invalid("precedence must list each generator once".into()));
    }
    let mut rules = Vec::new();
    for (l, r) in &p.relations {
        match shortlex(&rank, l, r) {
            Ordering::Greater => rules.push((l.clone(), r.clone())),
            Ordering::Less => rules.push((r.clone(), l.clone())),
            Ordering::Equal => {}
        }
    }
    let mut by_last = vec![Vec::new(); n];
    for (i, (l, _)) in rules.iter().enumerate() {
        by_last[*l.last().expect("lhs is never empty")].push(i);
    }
    let mut rs = RewritingSystem {
        alphabet: p.alphabet.clone(),
        rules,
        rank,
        by_last,
        status: Confluence::Checked,
    };
    rs.status = rs.check_critical_pairs();
    Ok(rs)
}

impl RewritingSystem {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rules(&self) -> &[(Word, Word)] {
        &self.rules
    }

    pub fn status(&self) -> &Confluence {
        &self.status
    }

    pub fn is_checked(&self) -> bool {
        self.status == Confluence::Checked
    }

    /// Generator names, smallest first.
    pub fn precedence(&self) -> Vec<&str> {
        let mut order: Vec<usize> = (0..self.alphabet.len()).collect();
        order.sort_by_key(|&g| self.rank[g]);
        order.iter().map(|&g| self.alphabet.name(g)).collect()
    }

    pub fn compare(&self, a: &[usize], b: &[usize]) -> Ordering {
        shortlex(&self.rank, a, b)
    }

    fn redex_at_end(&self, w: &[usize]) -> Option<usize> {
        let last = *w.last()?;
        self.by_last[last]
            .iter()
            .copied()
            .find(|&i| w.ends_with(&self.rules[i].0))
    }

    /// Some irreducible descendant of `w`; unique when the system is
    /// confluent.
    pub fn reduce(&self, w: &[usize]) -> Word {
        let mut out: Word = Vec::with_capacity(w.len());
        let mut pending: Vec<usize> = w.iter().rev().copied().collect();
        while let Some(x) = pending.pop() {
            out.push(x);
            // `out` was irreducible before the push, so any redex is a suffix
            if let Some(i) = self.redex_at_end(&out) {
                let (l, r) = &self.rules[i];
                out.truncate(out.len() - l.len());
                pending.extend(r.iter().rev());
            }
        }
        out
    }

    pub fn is_irreducible(&self, w: &[usize]) -> bool {
        (1..=w.len()).all(|end| self.redex_at_end(&w[..end]).is_none())
    }

    /// The unique irreducible word equal to `w`; it is the shortlex-least
    /// word of its class, hence geodesic.
    pub fn normal_form(&self, w: &[usize]) -> Result<Word> {
        if !self.is_checked() {
            return Err(Error::NotConfluent(format!("{:?}", self.status)));
        }
        Ok(self.reduce(w))
    }

    fn check_critical_pairs(&self) -> Confluence {
        let show = |w: &[usize]| self.alphabet.display(w);
        for (li, ri) in &self.rules {
            for (lj, rj) in &self.rules {
                // proper overlaps: suffix of li equals prefix of lj
                for k in 1..li.len().min(lj.len()) {
                    if li[li.len() - k..] != lj[..k] {
                        continue;
                    }
                    let mut a = ri.clone();
                    a.extend_from_slice(&lj[k..]);
                    let mut b = li[..li.len() - k].to_vec();
                    b.extend_from_slice(rj);
                    if self.reduce(&a) != self.reduce(&b) {
                        let mut word = li.clone();
                        word.extend_from_slice(&lj[k..]);
                        return Confluence::Unknown {
                            overlap: show(&word),
                            left: show(&a),
                            right: show(&b),
                        };
                    }
                }
                // inclusions: lj is a factor of li
                if std::ptr::eq(li, lj) || lj.len() > li.len() {
                    continue;
                }
                for p in 0..=li.len() - lj.len() {
                    if li[p..p + lj.len()] != lj[..] {
                        continue;
                    }
                    let a = ri.clone();
                    let mut b = li[..p].to_vec();
                    b.extend_from_slice(rj);
                    b.extend_from_slice(&li[p + lj.len()..]);
                    if self.reduce(&a) != self.reduce(&b) {
                        return Confluence::Unknown {
                            overlap: show(li),
                            left: show(&a),
                            right: show(&b),
                        };
                    }
                }
            }
        }
        Confluence::Checked
    }
}
