//! Directed 2-complexes and 2-paths, parallel-path filling, triangle
//! subdivision, iterated subdivision to bounded size, and Dehn-function
//! estimates.

mod certificate;
mod dehn;
mod filling;
mod size;
mod subdivide;

use std::fmt;

use serde::Serialize;

use crate::digraph::{Digraph, DistanceMatrix, Path};
use crate::error::{Error, Result};
use crate::hyperbolicity::GeodesicTriangle;

pub use certificate::{Filling, FillingStep, TessellationCertificate};
pub use dehn::{dehn_area, dehn_function_estimate, DehnBound, DehnEntry, DehnTable};
pub use filling::tessellate_parallel_paths;
pub use size::{log_four_thirds_five, tessellate_triangle_to_size, SizeReport};
pub use subdivide::{subdivide_triangle, subdivision_bound, Subdivision, SubdivisionCase};

/// Index of a 2-cell. Cells come in inverse pairs `2i`, `2i + 1`.
pub type CellId = usize;

pub fn inverse(f: CellId) -> CellId {
    f ^ 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub top: Path,
    pub bottom: Path,
}

/// A digraph with a set of 2-cells closed under a fixed-point-free
/// involution that swaps top and bottom.
#[derive(Clone, Debug)]
pub struct DirectedTwoComplex<'g> {
    graph: &'g Digraph,
    cells: Vec<Cell>,
}

impl<'g> DirectedTwoComplex<'g> {
    pub fn new(graph: &'g Digraph) -> Self {
        DirectedTwoComplex {
            graph,
            cells: Vec::new(),
        }
    }

    pub fn graph(&self) -> &'g Digraph {
        self.graph
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn cell(&self, f: CellId) -> Option<&Cell> {
        self.cells.get(f)
    }

    /// Adds a cell with the given boundary and its inverse; returns the
    /// first of the pair.
    pub fn add_cell(&mut self, top: Path, bottom: Path) -> Result<CellId> {
        for p in [&top, &bottom] {
            if !p.is_path_in(self.graph) {
                return Err(Error::NotAPath(format!("{:?}", p.vertices())));
            }
        }
        if !top.is_parallel(&bottom) {
            return Err(Error::NotParallel(format!(
                "{} and {}",
                top.display(self.graph),
                bottom.display(self.graph)
            )));
        }
        let f = self.cells.len();
        self.cells.push(Cell {
            top: top.clone(),
            bottom: bottom.clone(),
        });
        self.cells.push(Cell { top: bottom, bottom: top });
        Ok(f)
    }

    /// The cell for `T = (p, q, r)`: top `p∘q`, bottom `r`.
    pub fn adjoin_cell(&mut self, dm: &DistanceMatrix, t: &GeodesicTriangle) -> Result<CellId> {
        if !t.is_geodesic_in(self.graph, dm) {
            return Err(Error::NotGeodesic(format!(
                "triangle ({}, {}, {})",
                t.p.display(self.graph),
                t.q.display(self.graph),
                t.r.display(self.graph)
            )));
        }
        let top = t.p.compose(&t.q).expect("checked composable");
        self.add_cell(top, t.r.clone())
    }
}

/// `(p, f, q)`: top `p∘⊤f∘q`, bottom `p∘⊥f∘q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AtomicStep {
    pub prefix: Path,
    pub cell: CellId,
    pub suffix: Path,
}

/// A chain of atomic steps starting from `start`. With no steps it is the
/// trivial 2-path at `start`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoPath {
    pub start: Path,
    pub steps: Vec<AtomicStep>,
}

impl TwoPath {
    pub fn identity(p: Path) -> Self {
        TwoPath {
            start: p,
            steps: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoPathError {
    pub step: usize,
    pub reason: String,
}

impl fmt::Display for TwoPathError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step {}: {}", self.step, self.reason)
    }
}

fn join3(a: &Path, b: &Path, c: &Path) -> Option<Path> {
    a.compose(b)?.compose(c)
}

/// Checks every step and the chaining condition; returns `(top, bottom)`.
pub fn verify_two_path(
    k: &DirectedTwoComplex<'_>,
    tp: &TwoPath,
) -> std::result::Result<(Path, Path), TwoPathError> {
    let g = k.graph();
    if !tp.start.is_path_in(g) {
        return Err(TwoPathError {
            step: 0,
            reason: "start is not a path in the graph".into(),
        });
    }
    let mut current = tp.start.clone();
    for (i, s) in tp.steps.iter().enumerate() {
        let err = |reason: String| TwoPathError { step: i, reason };
        let cell = k.cell(s.cell).ok_or_else(|| err(format!("no cell {}", s.cell)))?;
        if !s.prefix.is_path_in(g) || !s.suffix.is_path_in(g) {
            return Err(err("prefix or suffix is not a path in the graph".into()));
        }
        if s.prefix.end() != cell.top.start() || cell.top.end() != s.suffix.start() {
            return Err(err("prefix and suffix do not meet the cell".into()));
        }
        let top = join3(&s.prefix, &cell.top, &s.suffix).expect("endpoints checked");
        if top != current {
            return Err(err(format!(
                "top {} does not match the previous bottom {}",
                top.display(g),
                current.display(g)
            )));
        }
        current = join3(&s.prefix, &cell.bottom, &s.suffix).expect("endpoints checked");
    }
    Ok((tp.start.clone(), current))
}
