use std::collections::HashMap;

use rayon::prelude::*;

use super::{Canonical, WordProblemOracle, Word};
use crate::digraph::{Digraph, VertexId};
use crate::error::Result;

/// The ball of radius `r` about the identity in the right Cayley graph.
#[derive(Clone, Debug)]
pub struct CayleyBall {
    pub graph: Digraph,
    pub identity: VertexId,
    pub radius: u32,
    /// Representative word of each vertex.
    pub words: Vec<Word>,
    pub depth: Vec<u32>,
    /// `None` when the oracle has no canonical forms.
    pub canonical: Vec<Option<Canonical>>,
}

impl CayleyBall {
    pub fn vertex_of(&self, c: &Canonical) -> Option<VertexId> {
        self.canonical.iter().position(|x| x.as_ref() == Some(c))
    }
}

enum Index<'a> {
    Canonical(HashMap<Canonical, VertexId>),
    Search(&'a WordProblemOracle),
}

/// Breadth-first by depth, parents in discovery order and generators in
/// declaration order. After the vertex set is fixed, every vertex (depth
/// `r` included) gets an edge `m → ms` labelled `s` whenever `ms` is in the
/// ball.
///
/// Vertices are named by their normal form (rewriting), their element name
/// (tables) or their first-found word (bounded search).
pub fn cayley_ball(oracle: &WordProblemOracle, radius: u32) -> Result<CayleyBall> {
    let alphabet = oracle.alphabet();
    let k = alphabet.len();
    let mut words: Vec<Word> = vec![Vec::new()];
    let mut canonical: Vec<Option<Canonical>> = Vec::new();
    let mut depth = vec![0u32];
    let mut index = if oracle.has_canonical_forms() {
        let c = oracle.canonical(&[])?;
        canonical.push(Some(c.clone()));
        Index::Canonical(HashMap::from([(c, 0)]))
    } else {
        canonical.push(None);
        Index::Search(oracle)
    };

    // Looks up a word among the current vertices.
    fn find(
        index: &Index<'_>,
        words: &[Word],
        w: &[usize],
        c: Option<&Canonical>,
    ) -> Result<Option<VertexId>> {
        match index {
            Index::Canonical(map) => Ok(map.get(c.expect("canonical oracle")).copied()),
            Index::Search(o) => {
                for (v, rep) in words.iter().enumerate() {
                    if o.equal(rep, w)? {
                        return Ok(Some(v));
                    }
                }
                Ok(None)
            }
        }
    }

    let canon_of = |w: &[usize]| -> Result<Option<Canonical>> {
        if oracle.has_canonical_forms() {
            oracle.canonical(w).map(Some)
        } else {
            Ok(None)
        }
    };

    let mut frontier: Vec<VertexId> = vec![0];
    for d in 0..radius {
        let candidates: Vec<(Word, Option<Canonical>)> = frontier
            .par_iter()
            .flat_map_iter(|&v| (0..k).map(move |s| (v, s)))
            .map(|(v, s)| {
                let mut w = words[v].clone();
                w.push(s);
                let c = canon_of(&w)?;
                Ok((w, c))
            })
            .collect::<Result<_>>()?;
        let mut next = Vec::new();
        for (w, c) in candidates {
            if find(&index, &words, &w, c.as_ref())?.is_some() {
                continue;
            }
            let id = words.len();
            let rep = match (oracle, &c) {
                (WordProblemOracle::Rewriting(_), Some(Canonical::Word(nf))) => nf.clone(),
                _ => w,
            };
            if let (Index::Canonical(map), Some(c)) = (&mut index, &c) {
                map.insert(c.clone(), id);
            }
            words.push(rep);
            canonical.push(c);
            depth.push(d + 1);
            next.push(id);
        }
        frontier = next;
    }

    let mut graph = Digraph::new();
    for (v, c) in canonical.iter().enumerate() {
        let name = match c {
            Some(c) => oracle.display_canonical(c),
            None => alphabet.display(&words[v]),
        };
        graph.add_vertex(name)?;
    }
    let targets: Vec<Vec<Option<VertexId>>> = (0..words.len())
        .into_par_iter()
        .map(|v| {
            (0..k)
                .map(|s| {
                    let mut w = words[v].clone();
                    w.push(s);
                    let c = canon_of(&w)?;
                    find(&index, &words, &w, c.as_ref())
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    for (v, row) in targets.iter().enumerate() {
        for (s, t) in row.iter().enumerate() {
            if let Some(t) = t {
                graph.add_edge(v, *t, Some(alphabet.name(s).to_owned()))?;
            }
        }
    }
    Ok(CayleyBall {
        graph,
        identity: 0,
        radius,
        words,
        depth,
        canonical,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::all_pairs_distances;
    use crate::monoid::{builtin, parse_presentation, FiniteMonoid};
    use crate::error::Error;
    use crate::ExtDistance;

    #[test]
    fn free_ball_is_a_tree() {
        let (_, o) = builtin("free(2)").unwrap();
        let b = cayley_ball(&o, 2).unwrap();
        assert_eq!(b.graph.names(), &["1", "a", "b", "aa", "ab", "ba", "bb"]);
        assert_eq!(b.graph.edges().len(), 6);
        assert_eq!(b.graph.degree_bounds().1, 2);
    }

    #[test]
    fn bicyclic_ball() {
        let (_, o) = builtin("bicyclic").unwrap();
        let b = cayley_ball(&o, 2).unwrap();
        assert_eq!(b.graph.names(), &["1", "b", "c", "bb", "cb", "cc"]);
        let g = &b.graph;
        let (one, vb, vc) = (g.vertex("1").unwrap(), g.vertex("b").unwrap(), g.vertex("c").unwrap());
        let e = g.edges().iter().find(|e| e.from == vb && e.to == one).unwrap();
        assert_eq!(e.label.as_deref(), Some("c"));
        let dm = all_pairs_distances(g);
        assert_eq!(dm.get(vb, one), ExtDistance::Finite(1));
        assert_eq!(dm.get(vc, one), ExtDistance::Infinite);
    }

    #[test]
    fn finite_table_saturates() {
        let m = FiniteMonoid::from_transformations(3, &[vec![1, 2, 0], vec![0, 0, 2]]).unwrap();
        let n = m.order();
        let o = WordProblemOracle::FiniteTable(m);
        let b = cayley_ball(&o, 10).unwrap();
        assert_eq!(b.graph.vertex_count(), n);
    }

    #[test]
    fn bounded_search_ball_matches_rewriting() {
        // commuting generators: every class is finite, so search settles all
        let p = parse_presentation("generators: a b\nab = ba").unwrap();
        let bs = WordProblemOracle::BoundedSearch {
            presentation: p.clone(),
            area_cap: 8,
            node_cap: 100_000,
        };
        let b = cayley_ball(&bs, 2).unwrap();
        assert_eq!(b.graph.names(), &["1", "a", "b", "aa", "ab", "bb"]);
        let rw = WordProblemOracle::for_presentation(&p, 8, 1000).unwrap();
        let c = cayley_ball(&rw, 2).unwrap();
        assert_eq!(c.graph.edge_pairs(), b.graph.edge_pairs());

        // bicyclic classes are infinite, so b = 1 stays undecided
        let p = parse_presentation("generators: b c\nbc = 1").unwrap();
        let bs = WordProblemOracle::BoundedSearch {
            presentation: p,
            area_cap: 4,
            node_cap: 10_000,
        };
        assert!(matches!(cayley_ball(&bs, 1), Err(Error::OracleUnknown(..))));
    }
}
