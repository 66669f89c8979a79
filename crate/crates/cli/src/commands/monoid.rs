use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use dihyp::digraph::io::{to_dot, to_json};
use dihyp::monoid::builtins::CATALOGUE;
use dihyp::monoid::{cayley_ball, Builtin, Equality};
use dihyp::tessellation::{dehn_area, dehn_function_estimate, DehnBound};
use serde::Serialize;
use serde_json::json;

use crate::input::MonoidArgs;
use crate::report::{Inputs, Outcome, Status};

#[derive(Clone, Copy, Debug, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Dot,
    Json,
}

#[derive(Args, Debug, Serialize)]
pub struct CayleyArgs {
    #[command(flatten)]
    pub monoid: MonoidArgs,
    #[arg(long)]
    pub radius: u32,
    #[arg(long, value_enum, default_value_t = Format::Dot)]
    pub format: Format,
    /// Write the export here instead of into the report.
    #[arg(long, value_name = "FILE")]
    pub export: Option<PathBuf>,
}

pub fn cayley(args: &CayleyArgs, inputs: &mut Inputs) -> Result<Outcome> {
    let m = args.monoid.load(inputs)?;
    let ball = cayley_ball(&m.oracle, args.radius)?;
    let g = &ball.graph;
    let k = m.presentation.alphabet.len();
    // right zeros: every generator edge is a loop
    let mut loops = vec![0usize; g.vertex_count()];
    for e in g.edges().iter().filter(|e| e.from == e.to) {
        loops[e.from] += 1;
    }
    let absorbing: Vec<&str> = g.vertices().filter(|&v| loops[v] == k).map(|v| g.name(v)).collect();
    let mut by_depth = BTreeMap::new();
    for &d in &ball.depth {
        *by_depth.entry(d).or_insert(0usize) += 1;
    }
    let text = match args.format {
        Format::Dot => to_dot(g, Some(ball.identity)),
        Format::Json => to_json(g),
    };
    let mut summary = vec![format!(
        "{} ball of radius {}: {} vertices, {} edges",
        m.label,
        args.radius,
        g.vertex_count(),
        g.edges().len()
    )];
    if !absorbing.is_empty() {
        summary.push(format!("absorbing vertices: {}", absorbing.join(", ")));
    }
    let export = match &args.export {
        Some(path) => {
            std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
            summary.push(format!("written to {}", path.display()));
            None
        }
        None => Some(text),
    };
    let result = json!({
        "monoid": m.label,
        "oracle": m.oracle.kind(),
        "notes": m.notes,
        "radius": args.radius,
        "vertices": g.vertex_count(),
        "edges": g.edges().len(),
        "identity": g.name(ball.identity),
        "vertices_by_depth": by_depth,
        "absorbing": absorbing,
        "export": export,
    });
    Ok(Outcome::ok(result, summary))
}

#[derive(Args, Debug, Serialize)]
pub struct WpArgs {
    #[command(flatten)]
    pub monoid: MonoidArgs,
    pub u: String,
    pub v: String,
    /// Also compute the number of relation applications between the words.
    #[arg(long)]
    pub area: bool,
}

pub fn wp(args: &WpArgs, inputs: &mut Inputs) -> Result<Outcome> {
    let m = args.monoid.load(inputs)?;
    let (u, v) = (m.word(&args.u)?, m.word(&args.v)?);
    let answer = m.oracle.words_equal(&u, &v)?;
    let canonical = |w: &[usize]| -> Result<Option<String>> {
        if m.oracle.has_canonical_forms() {
            Ok(Some(m.oracle.display_canonical(&m.oracle.canonical(w)?)))
        } else {
            Ok(None)
        }
    };
    let (cu, cv) = (canonical(&u)?, canonical(&v)?);
    let mut summary = vec![format!(
        "{} {} {} in {} ({})",
        m.show(&u),
        match answer {
            Equality::Equal => "=",
            Equality::NotEqual => "!=",
            Equality::Unknown => "?=",
        },
        m.show(&v),
        m.label,
        m.oracle.kind()
    )];
    if let (Some(a), Some(b)) = (&cu, &cv) {
        summary.push(format!("normal forms: {a}, {b}"));
    }
    let area = args.area.then(|| dehn_area(&m.presentation, &u, &v, args.monoid.area_cap, args.monoid.node_cap));
    if let Some(a) = &area {
        summary.push(format!("area: {a:?}"));
    }
    let status = if answer == Equality::Unknown {
        Status::Unknown
    } else {
        Status::Ok
    };
    let result = json!({
        "monoid": m.label,
        "oracle": m.oracle.kind(),
        "u": m.show(&u),
        "v": m.show(&v),
        "answer": answer,
        "canonical": { "u": cu, "v": cv },
        "area": area,
    });
    Ok(Outcome { status, result, summary })
}

#[derive(Args, Debug, Serialize)]
pub struct DehnArgs {
    #[command(flatten)]
    pub monoid: MonoidArgs,
    /// Largest `|u| + |v|` tabulated.
    #[arg(long, default_value_t = 6)]
    pub max_len: usize,
    /// Compare with the polynomial bound for this δ; the table must reach 2(8δ + 5).
    #[arg(long)]
    pub delta: Option<u32>,
}

pub fn dehn(args: &DehnArgs, inputs: &mut Inputs) -> Result<Outcome> {
    let m = args.monoid.load(inputs)?;
    if let Some(d) = args.delta {
        let need = 2 * (8 * d as usize + 5);
        if args.max_len < need {
            bail!("--delta {d} needs --max-len at least {need}");
        }
    }
    let table = dehn_function_estimate(&m.presentation, &m.oracle, args.max_len, args.monoid.area_cap, args.monoid.node_cap)?;
    let areas: Vec<String> = table.entries.iter().map(|e| e.area.to_string()).collect();
    let mut summary = vec![format!("{}: delta(0..={}) = [{}]", m.label, args.max_len, areas.join(", "))];
    let mut status = Status::Ok;
    if !table.is_exact() {
        summary.push("some searches hit a cap; capped entries are lower bounds".into());
        status = Status::Unknown;
    }
    let bound = match args.delta {
        Some(d) => {
            let b = DehnBound::from_table(d, &table)?;
            let violations = b.violations(&table);
            summary.push(format!(
                "bound with C = {}, kappa = {}: {} violations",
                b.c,
                b.kappa,
                violations.len()
            ));
            if !violations.is_empty() && status == Status::Ok {
                status = Status::PropertyFails;
            }
            let values: Vec<f64> = table.entries.iter().map(|e| b.value(e.n)).collect();
            Some(json!({ "bound": b, "values": values, "violations": violations }))
        }
        None => None,
    };
    let result = json!({
        "monoid": m.label,
        "oracle": m.oracle.kind(),
        "table": table,
        "bound": bound,
    });
    Ok(Outcome { status, result, summary })
}

#[derive(Args, Debug, Serialize)]
pub struct ExamplesArgs {}

pub fn examples(_args: &ExamplesArgs, _inputs: &mut Inputs) -> Result<Outcome> {
    let sample = |name: &str| match name {
        "free" => Some("free(2)"),
        "bicyclic" => Some("bicyclic"),
        "polycyclic" => Some("polycyclic(2)"),
        "m_i" => Some("m_i(1,3)"),
        "example_6" => Some("example_6"),
        _ => None,
    };
    let mut summary = Vec::new();
    let mut list = Vec::new();
    for &(name, syntax, description) in CATALOGUE {
        let notes = match sample(name) {
            Some(s) => Builtin::parse(s)?.notes(),
            None => Vec::new(),
        };
        summary.push(format!("{syntax:<28} {description}"));
        list.push(json!({
            "name": name,
            "syntax": syntax,
            "description": description,
            "example": sample(name),
            "notes": notes,
        }));
    }
    Ok(Outcome::ok(json!({ "builtins": list }), summary))
}
