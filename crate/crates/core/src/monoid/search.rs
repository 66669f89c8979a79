use std::collections::HashMap;

use serde::Serialize;

use super::{MonoidPresentation, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", content = "value", rename_all = "snake_case")]
pub enum SearchOutcome {
    /// Fewest relation applications turning one word into the other.
    Found(u32),
    /// One side's whole class was explored without meeting the other.
    Exhausted,
    /// A cap was reached first.
    Capped,
}

/// Words one relation application away from `w`, either direction.
pub(crate) fn neighbours(p: &MonoidPresentation, w: &[usize], out: &mut Vec<Word>) {
    out.clear();
    for (l, r) in &p.relations {
        for (from, to) in [(l, r), (r, l)] {
            if from.len() > w.len() {
                continue;
            }
            for i in 0..=w.len() - from.len() {
                if w[i..i + from.len()] == from[..] {
                    let mut next = Vec::with_capacity(w.len() - from.len() + to.len());
                    next.extend_from_slice(&w[..i]);
                    next.extend_from_slice(to);
                    next.extend_from_slice(&w[i + from.len()..]);
                    out.push(next);
                }
            }
        }
    }
}

/// Bidirectional breadth-first search in the graph whose vertices are words
/// and whose edges are single relation applications.
///
/// `area_cap` bounds the answer, `node_cap` the number of words stored.
pub fn relation_distance(
    p: &MonoidPresentation,
    u: &[usize],
    v: &[usize],
    area_cap: u32,
    node_cap: usize,
) -> SearchOutcome {
    if u == v {
        return SearchOutcome::Found(0);
    }
    let mut seen: [HashMap<Word, u32>; 2] = [HashMap::new(), HashMap::new()];
    seen[0].insert(u.to_vec(), 0);
    seen[1].insert(v.to_vec(), 0);
    let mut frontier: [Vec<Word>; 2] = [vec![u.to_vec()], vec![v.to_vec()]];
    let mut depth = [0u32; 2];
    let mut scratch = Vec::new();
    loop {
        if depth[0] + depth[1] >= area_cap {
            return SearchOutcome::Capped;
        }
        let side = if frontier[0].len() <= frontier[1].len() { 0 } else { 1 };
        let other = 1 - side;
        let mut next = Vec::new();
        let mut best: Option<u32> = None;
        for w in std::mem::take(&mut frontier[side]) {
            neighbours(p, &w, &mut scratch);
            for x in scratch.drain(..) {
                if seen[side].contains_key(&x) {
                    continue;
                }
                if let Some(&d) = seen[other].get(&x) {
                    let total = depth[side] + 1 + d;
                    best = Some(best.map_or(total, |b| b.min(total)));
                }
                seen[side].insert(x.clone(), depth[side] + 1);
                next.push(x);
            }
        }
        depth[side] += 1;
        if let Some(b) = best {
            // every other meeting point lies at least one level further out
            return if b <= area_cap {
                SearchOutcome::Found(b)
            } else {
                SearchOutcome::Capped
            };
        }
        if next.is_empty() {
            return SearchOutcome::Exhausted;
        }
        if seen[0].len() + seen[1].len() > node_cap {
            return SearchOutcome::Capped;
        }
        frontier[side] = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::parse_presentation;

    #[test]
    fn bicyclic_areas() {
        let p = parse_presentation("generators: b c\nbc = 1").unwrap();
        assert_eq!(relation_distance(&p, &[0, 1], &[], 10, 10_000), SearchOutcome::Found(1));
        assert_eq!(relation_distance(&p, &[], &[0, 1], 10, 10_000), SearchOutcome::Found(1));
        assert_eq!(
            relation_distance(&p, &[0, 0, 1, 1], &[0, 1], 10, 10_000),
            SearchOutcome::Found(1)
        );
        assert_eq!(relation_distance(&p, &[1, 0], &[], 4, 100_000), SearchOutcome::Capped);
    }

    #[test]
    fn finite_classes_exhaust() {
        let p = parse_presentation("generators: x y a b\naxb = y\nayb = x").unwrap();
        // the class of x is infinite (x, ayb, aaxbb, ...), that of a is {a}
        assert_eq!(relation_distance(&p, &[2], &[3], 10, 10_000), SearchOutcome::Exhausted);
        assert_eq!(relation_distance(&p, &[2, 0, 3], &[1], 10, 10_000), SearchOutcome::Found(1));
        assert_eq!(
            relation_distance(&p, &[2, 2, 0, 3, 3], &[0], 10, 10_000),
            SearchOutcome::Found(2)
        );
    }
}
