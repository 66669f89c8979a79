use serde::ser::SerializeTuple;
use serde::{Deserialize, Serialize, Serializer};

use super::{verify_two_path, AtomicStep, DirectedTwoComplex, TwoPath};
use crate::digraph::{Digraph, DistanceMatrix, Path};
use crate::error::{Error, Result};
use crate::hyperbolicity::GeodesicTriangle;

/// How a boundary is filled: a single cell, or a chain of sub-fillings
/// each applied inside a `prefix`/`suffix` context.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Filling {
    Cell { cell: usize, inverse: bool },
    Chain(Vec<FillingStep>),
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(from = "(Path, Filling, Path)")]
pub struct FillingStep {
    pub prefix: Path,
    pub filling: Filling,
    pub suffix: Path,
}

impl From<(Path, Filling, Path)> for FillingStep {
    fn from((prefix, filling, suffix): (Path, Filling, Path)) -> Self {
        FillingStep { prefix, filling, suffix }
    }
}

// serialized as `[prefix, filling, suffix]`
impl Serialize for FillingStep {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(3)?;
        t.serialize_element(&self.prefix)?;
        t.serialize_element(&self.filling)?;
        t.serialize_element(&self.suffix)?;
        t.end()
    }
}

impl Filling {
    pub fn leaf(triangle: usize) -> Filling {
        Filling::Cell {
            cell: triangle,
            inverse: false,
        }
    }

    /// The same filling read bottom to top.
    pub fn inverted(&self) -> Filling {
        match self {
            Filling::Cell { cell, inverse } => Filling::Cell {
                cell: *cell,
                inverse: !inverse,
            },
            Filling::Chain(steps) => Filling::Chain(
                steps
                    .iter()
                    .rev()
                    .map(|s| FillingStep {
                        prefix: s.prefix.clone(),
                        filling: s.filling.inverted(),
                        suffix: s.suffix.clone(),
                    })
                    .collect(),
            ),
        }
    }

    /// Replaces each leaf `i` by `subs[i]` (inverted for inverse leaves).
    pub fn substitute(&self, subs: &[Filling]) -> Filling {
        match self {
            Filling::Cell { cell, inverse } => {
                if *inverse {
                    subs[*cell].inverted()
                } else {
                    subs[*cell].clone()
                }
            }
            Filling::Chain(steps) => Filling::Chain(
                steps
                    .iter()
                    .map(|s| FillingStep {
                        prefix: s.prefix.clone(),
                        filling: s.filling.substitute(subs),
                        suffix: s.suffix.clone(),
                    })
                    .collect(),
            ),
        }
    }

    pub fn shift(&mut self, by: usize) {
        match self {
            Filling::Cell { cell, .. } => *cell += by,
            Filling::Chain(steps) => steps.iter_mut().for_each(|s| s.filling.shift(by)),
        }
    }

    /// Leaves in application order; a leaf refers to triangle `i`, i.e. to
    /// cell `2i` or its inverse `2i + 1`.
    pub fn flatten(&self, prefix: &Path, suffix: &Path, out: &mut Vec<AtomicStep>) {
        match self {
            Filling::Cell { cell, inverse } => out.push(AtomicStep {
                prefix: prefix.clone(),
                cell: 2 * cell + usize::from(*inverse),
                suffix: suffix.clone(),
            }),
            Filling::Chain(steps) => {
                for s in steps {
                    let pre = prefix.compose(&s.prefix).expect("chain prefix starts at context");
                    let suf = s.suffix.compose(suffix).expect("chain suffix ends at context");
                    s.filling.flatten(&pre, &suf, out);
                }
            }
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Filling::Cell { .. } => 1,
            Filling::Chain(steps) => steps.iter().map(|s| s.filling.leaf_count()).sum(),
        }
    }
}

/// A set of geodesic triangles together with a replayable filling showing
/// that `top` and `bottom` are homotopic once a cell is adjoined for each.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TessellationCertificate {
    pub top: Path,
    pub bottom: Path,
    pub triangles: Vec<GeodesicTriangle>,
    pub sizes: Vec<usize>,
    pub tree: Filling,
}

impl TessellationCertificate {
    pub(crate) fn new(top: Path, bottom: Path, triangles: Vec<GeodesicTriangle>, tree: Filling) -> Self {
        let sizes = triangles.iter().map(GeodesicTriangle::size).collect();
        TessellationCertificate {
            top,
            bottom,
            triangles,
            sizes,
            tree,
        }
    }

    pub fn count(&self) -> usize {
        self.triangles.len()
    }

    pub fn max_size(&self) -> usize {
        self.sizes.iter().copied().max().unwrap_or(0)
    }

    /// The complex with one cell pair per triangle, in order.
    pub fn complex<'g>(&self, g: &'g Digraph, dm: &DistanceMatrix) -> Result<DirectedTwoComplex<'g>> {
        let mut k = DirectedTwoComplex::new(g);
        for t in &self.triangles {
            k.adjoin_cell(dm, t)?;
        }
        Ok(k)
    }

    pub fn two_path(&self) -> TwoPath {
        let mut steps = Vec::new();
        self.tree.flatten(
            &Path::trivial(self.top.start()),
            &Path::trivial(self.top.end()),
            &mut steps,
        );
        TwoPath {
            start: self.top.clone(),
            steps,
        }
    }

    /// Re-checks every triangle and replays the 2-path.
    pub fn verify(&self, g: &Digraph, dm: &DistanceMatrix) -> Result<()> {
        if self.sizes != self.triangles.iter().map(GeodesicTriangle::size).collect::<Vec<_>>() {
            return Err(Error::Invalid("recorded sizes do not match the triangles".into()));
        }
        let k = self.complex(g, dm)?;
        let (top, bottom) =
            verify_two_path(&k, &self.two_path()).map_err(|e| Error::Invalid(format!("2-path {e}")))?;
        if top != self.top || bottom != self.bottom {
            return Err(Error::Invalid(format!(
                "2-path runs {} to {}, expected {} to {}",
                top.display(g),
                bottom.display(g),
                self.top.display(g),
                self.bottom.display(g)
            )));
        }
        Ok(())
    }
}

/// Builds a chain of leaf steps by rewriting a current path; each move
/// names the offset of the cell boundary it replaces.
pub(crate) struct Replay {
    current: Path,
    steps: Vec<FillingStep>,
}

impl Replay {
    pub(crate) fn new(start: Path) -> Self {
        Replay {
            current: start,
            steps: Vec::new(),
        }
    }

    pub(crate) fn apply(
        &mut self,
        offset: usize,
        triangles: &[GeodesicTriangle],
        index: usize,
        inverse: bool,
    ) -> Result<()> {
        let t = &triangles[index];
        let pq = t.p.compose(&t.q).expect("triangle sides compose");
        let (from, to) = if inverse { (&t.r, &pq) } else { (&pq, &t.r) };
        let end = offset + from.len();
        let v = self.current.vertices();
        if end >= v.len() || v[offset..=end] != from.vertices()[..] {
            return Err(Error::Invalid(format!(
                "internal: cell boundary {:?} not found at offset {offset} of {:?}",
                from.vertices(),
                v
            )));
        }
        let prefix = self.current.subpath(0, offset);
        let suffix = self.current.subpath(end, self.current.len());
        self.current = prefix
            .compose(to)
            .and_then(|x| x.compose(&suffix))
            .expect("endpoints agree");
        self.steps.push(FillingStep {
            prefix,
            filling: Filling::Cell {
                cell: index,
                inverse,
            },
            suffix,
        });
        Ok(())
    }

    pub(crate) fn current(&self) -> &Path {
        &self.current
    }

    pub(crate) fn finish(self) -> (Filling, Path) {
        (Filling::Chain(self.steps), self.current)
    }
}
