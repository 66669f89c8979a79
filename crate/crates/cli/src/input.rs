use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use dihyp::digraph::io::parse_graph;
use dihyp::monoid::{builtin, parse_presentation, Builtin, FiniteMonoid, MonoidPresentation, Word, WordProblemOracle};
use dihyp::{Digraph, Path, VertexId};
use serde::Serialize;

use crate::report::Inputs;

#[derive(Args, Clone, Debug, Serialize)]
pub struct MonoidArgs {
    /// Built-in monoid: free(k), bicyclic, polycyclic(n), m_i(i1,...), example_6.
    #[arg(long, value_name = "SPEC")]
    pub monoid: Option<String>,
    /// Presentation file (`generators: ...` then `lhs = rhs` lines).
    #[arg(long, value_name = "FILE")]
    pub presentation: Option<PathBuf>,
    /// Multiplication table file (`elements: ...` then one row per element).
    #[arg(long, value_name = "FILE")]
    pub table: Option<PathBuf>,
    /// Relation applications allowed when the presentation has no checked
    /// rewriting system.
    #[arg(long, default_value_t = 12)]
    pub area_cap: u32,
    /// Words stored by one search.
    #[arg(long, default_value_t = 200_000)]
    pub node_cap: usize,
}

pub struct Monoid {
    pub label: String,
    pub presentation: MonoidPresentation,
    pub oracle: WordProblemOracle,
    pub finite: Option<FiniteMonoid>,
    pub notes: Vec<String>,
}

impl Monoid {
    pub fn word(&self, text: &str) -> Result<Word> {
        self.presentation
            .alphabet
            .parse_display(text)
            .with_context(|| format!("parsing word `{text}`"))
    }

    pub fn show(&self, w: &[usize]) -> String {
        self.presentation.display(w)
    }
}

impl MonoidArgs {
    pub fn is_given(&self) -> bool {
        self.monoid.is_some() || self.presentation.is_some() || self.table.is_some()
    }

    pub fn load(&self, inputs: &mut Inputs) -> Result<Monoid> {
        let given = [self.monoid.is_some(), self.presentation.is_some(), self.table.is_some()];
        match given.iter().filter(|&&b| b).count() {
            0 => bail!("no monoid given: use --monoid, --presentation or --table"),
            1 => {}
            _ => bail!("give exactly one of --monoid, --presentation, --table"),
        }
        if let Some(spec) = &self.monoid {
            let b = Builtin::parse(spec)?;
            inputs.record("monoid", "builtin", &b.name());
            let (presentation, oracle) = builtin(spec)?;
            return Ok(Monoid {
                label: b.name(),
                presentation,
                oracle,
                finite: None,
                notes: b.notes().into_iter().map(str::to_owned).collect(),
            });
        }
        if let Some(path) = &self.presentation {
            let text = inputs.read_file("presentation", path)?;
            let presentation = parse_presentation(&text)?;
            let oracle = WordProblemOracle::for_presentation(&presentation, self.area_cap, self.node_cap)?;
            let mut notes = Vec::new();
            if !oracle.has_canonical_forms() {
                notes.push(format!(
                    "no checked rewriting system: equality by relation search capped at area {} and {} words",
                    self.area_cap, self.node_cap
                ));
            }
            return Ok(Monoid {
                label: path.display().to_string(),
                presentation,
                oracle,
                finite: None,
                notes,
            });
        }
        let path = self.table.as_ref().expect("checked above");
        let text = inputs.read_file("table", path)?;
        let m = FiniteMonoid::parse(&text)?;
        Ok(Monoid {
            label: path.display().to_string(),
            presentation: m.presentation()?,
            oracle: WordProblemOracle::FiniteTable(m.clone()),
            finite: Some(m),
            notes: Vec::new(),
        })
    }
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct GraphArgs {
    /// Digraph file: JSON, DOT or edge list.
    #[arg(long, value_name = "FILE")]
    pub graph: Option<PathBuf>,
    #[command(flatten)]
    pub monoid: MonoidArgs,
    /// Radius of the Cayley ball built from the monoid.
    #[arg(long)]
    pub radius: Option<u32>,
}

pub struct LoadedGraph {
    pub graph: Digraph,
    /// Identity vertex and radius of a Cayley ball.
    pub ball: Option<(VertexId, u32)>,
    pub monoid: Option<Monoid>,
}

impl GraphArgs {
    pub fn load(&self, inputs: &mut Inputs) -> Result<LoadedGraph> {
        match (&self.graph, self.monoid.is_given()) {
            (Some(path), false) => {
                if self.radius.is_some() {
                    bail!("--radius applies to Cayley balls, not to --graph");
                }
                let text = inputs.read_file("graph", path)?;
                let graph = parse_graph(&text).with_context(|| format!("parsing {}", path.display()))?;
                Ok(LoadedGraph {
                    graph,
                    ball: None,
                    monoid: None,
                })
            }
            (None, true) => {
                let radius = self.radius.context("a Cayley ball needs --radius")?;
                let m = self.monoid.load(inputs)?;
                let ball = dihyp::monoid::cayley_ball(&m.oracle, radius)?;
                Ok(LoadedGraph {
                    graph: ball.graph,
                    ball: Some((ball.identity, radius)),
                    monoid: Some(m),
                })
            }
            (Some(_), true) => bail!("give either --graph or a monoid, not both"),
            (None, false) => bail!("no graph given: use --graph FILE or a monoid with --radius"),
        }
    }
}

/// Comma-separated vertex names.
pub fn parse_path(g: &Digraph, text: &str) -> Result<Path> {
    let vertices = text
        .split(',')
        .map(|s| g.vertex(s.trim()))
        .collect::<dihyp::Result<Vec<_>>>()?;
    Ok(Path::new(vertices)?)
}
