//! Search primitives behind the deciders: class enumeration for rewriting
//! systems, element breadth-first search over canonical forms, and plain
//! candidate enumeration for oracles without canonical forms.

use std::collections::{HashMap, HashSet, VecDeque};

use rayon::prelude::*;

use crate::error::Result;
use crate::monoid::{Canonical, Equality, RewritingSystem, Word, WordProblemOracle};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Scan {
    /// The whole class was enumerated.
    Complete,
    /// Every class word within the length cap was enumerated.
    Bounded,
    Capped,
}

fn inverse_steps(rs: &RewritingSystem, w: &[usize], cap: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for (lhs, rhs) in rs.rules() {
        if rhs.len() > w.len() {
            continue;
        }
        let grown = w.len() - rhs.len() + lhs.len();
        for i in 0..=w.len() - rhs.len() {
            if w[i..i + rhs.len()] == rhs[..] {
                let mut x = Vec::with_capacity(grown);
                x.extend_from_slice(&w[..i]);
                x.extend_from_slice(lhs);
                x.extend_from_slice(&w[i + rhs.len()..]);
                out.push(x);
            }
        }
    }
    // keep one over-long word so the caller can tell the class was pruned
    let mut over = false;
    out.retain(|x| {
        if x.len() <= cap {
            true
        } else if !over {
            over = true;
            true
        } else {
            false
        }
    });
    out
}

/// Enumerates the words of the class of `start` of length at most `cap` by
/// applying rules right to left, starting from the normal form. This is
/// exhaustive because rules never lengthen a word, so every class word
/// reduces to the normal form through words no longer than itself.
///
/// `visit` may lower the cap by returning a new one.
pub(crate) fn scan_class(
    rs: &RewritingSystem,
    start: Word,
    mut cap: usize,
    node_cap: usize,
    mut visit: impl FnMut(&Word) -> Option<usize>,
) -> Scan {
    if start.len() > cap {
        return Scan::Bounded;
    }
    let mut pruned = false;
    let mut seen: HashSet<Word> = HashSet::new();
    if let Some(c) = visit(&start) {
        cap = cap.min(c);
    }
    seen.insert(start.clone());
    let mut frontier = vec![start];
    while !frontier.is_empty() {
        let limit = cap;
        let mut next: Vec<Word> = frontier
            .par_iter()
            .flat_map_iter(|w| inverse_steps(rs, w, limit))
            .collect();
        next.sort();
        next.dedup();
        frontier = Vec::new();
        for x in next {
            if x.len() > cap {
                pruned = true;
                continue;
            }
            if seen.contains(&x) {
                continue;
            }
            if seen.len() >= node_cap {
                return Scan::Capped;
            }
            if let Some(c) = visit(&x) {
                cap = cap.min(c);
            }
            seen.insert(x.clone());
            frontier.push(x);
        }
    }
    if pruned {
        Scan::Bounded
    } else {
        Scan::Complete
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Sides {
    Right,
    Left,
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Bfs {
    /// Multipliers `(a, b)` with `a·start·b` equal to the target.
    Found(Word, Word),
    /// Every element reachable without any bound was visited.
    Exhausted,
    /// Every element within the bounds was visited.
    Bounded,
    Capped,
}

struct Node {
    rep: Word,
    left: Word,
    right: Word,
}

/// Breadth-first search over elements `a·start·b` with letters from
/// `letters`, `|a| ≤ max_left`, `|b| ≤ max_right`, one node per canonical
/// form. The first hit has the least `|a| + |b|`.
pub(crate) fn element_bfs(
    o: &WordProblemOracle,
    start: &[usize],
    target: &Canonical,
    letters: &[usize],
    sides: Sides,
    max_left: u64,
    max_right: u64,
    node_cap: usize,
) -> Result<Bfs> {
    let c0 = o.canonical(start)?;
    if &c0 == target {
        return Ok(Bfs::Found(Vec::new(), Vec::new()));
    }
    let rep0 = o.canonical_word(&c0).unwrap_or_else(|| start.to_vec());
    let mut nodes = vec![Node {
        rep: rep0,
        left: Vec::new(),
        right: Vec::new(),
    }];
    let mut index: HashMap<Canonical, usize> = HashMap::from([(c0, 0)]);
    let mut queue = VecDeque::from([0usize]);
    let (mut bounded, mut lost) = (false, false);
    let (use_left, use_right) = match sides {
        Sides::Right => (false, true),
        Sides::Left => (true, false),
        Sides::Both => (true, true),
    };
    while let Some(i) = queue.pop_front() {
        for &(on_left, allowed) in &[(true, use_left), (false, use_right)] {
            if !allowed {
                continue;
            }
            let (len, max) = if on_left {
                (nodes[i].left.len() as u64, max_left)
            } else {
                (nodes[i].right.len() as u64, max_right)
            };
            if len >= max {
                // in the two-sided search another path might still fit
                if sides == Sides::Both {
                    lost = true;
                } else {
                    bounded = true;
                }
                continue;
            }
            for &g in letters {
                let node = &nodes[i];
                let word: Word = if on_left {
                    std::iter::once(g).chain(node.rep.iter().copied()).collect()
                } else {
                    node.rep.iter().copied().chain(std::iter::once(g)).collect()
                };
                let c = o.canonical(&word)?;
                if index.contains_key(&c) {
                    continue;
                }
                let (mut left, mut right) = (node.left.clone(), node.right.clone());
                if on_left {
                    left.insert(0, g);
                } else {
                    right.push(g);
                }
                if &c == target {
                    return Ok(Bfs::Found(left, right));
                }
                if nodes.len() >= node_cap {
                    return Ok(Bfs::Capped);
                }
                let rep = o.canonical_word(&c).unwrap_or(word);
                index.insert(c, nodes.len());
                queue.push_back(nodes.len());
                nodes.push(Node { rep, left, right });
            }
        }
    }
    Ok(if lost {
        Bfs::Capped
    } else if bounded {
        Bfs::Bounded
    } else {
        Bfs::Exhausted
    })
}

/// Words over `letters` in shortlex order up to `max_len`, at most `limit`
/// of them; the flag reports whether the list is complete.
pub(crate) fn shortlex_words(letters: &[usize], max_len: u64, limit: usize) -> (Vec<Word>, bool) {
    let mut all = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &g in letters {
                if all.len() + next.len() >= limit {
                    return (all, false);
                }
                let mut x: Word = w.clone();
                x.push(g);
                next.push(x);
            }
        }
        if next.is_empty() {
            break;
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    (all, true)
}

/// Tries `a·start·b` for enumerated multipliers with the oracle's equality
/// test; used when there are no canonical forms.
pub(crate) fn candidate_search(
    o: &WordProblemOracle,
    start: &[usize],
    target: &[usize],
    letters: &[usize],
    sides: Sides,
    max_left: u64,
    max_right: u64,
    node_cap: usize,
) -> Result<Bfs> {
    let (lefts, left_done) = match sides {
        Sides::Right => (vec![Vec::new()], true),
        _ => shortlex_words(letters, max_left, node_cap),
    };
    let (rights, right_done) = match sides {
        Sides::Left => (vec![Vec::new()], true),
        _ => shortlex_words(letters, max_right, node_cap),
    };
    let mut pairs: Vec<(&Word, &Word)> = lefts.iter().flat_map(|a| rights.iter().map(move |b| (a, b))).collect();
    pairs.sort_by_key(|(a, b)| a.len() + b.len());
    let mut unknown = !(left_done && right_done);
    for (tried, (a, b)) in pairs.into_iter().enumerate() {
        if tried >= node_cap {
            return Ok(Bfs::Capped);
        }
        let word: Word = a.iter().chain(start).chain(b.iter()).copied().collect();
        match o.words_equal(&word, target)? {
            Equality::Equal => return Ok(Bfs::Found(a.clone(), b.clone())),
            Equality::NotEqual => {}
            Equality::Unknown => unknown = true,
        }
    }
    Ok(if unknown { Bfs::Capped } else { Bfs::Bounded })
}
