use anyhow::{bail, Result};
use clap::Args;
use dihyp::digraph::strongly_connected_components;
use dihyp::hyperbolicity::{
    check_polygon_quasi_inequality, check_quasi_metric, check_triangle_quasi_inequality, min_hyperbolicity_constant_with,
    quasi_constants, witness_triangle, GeodesicTriangle, ThinnessOptions, TruncationMargin,
};
use dihyp::rational;
use dihyp::{all_pairs_distances, Digraph, ExtDistance};
use serde::Serialize;
use serde_json::{json, Value};

use crate::input::GraphArgs;
use crate::report::{Inputs, Outcome, Status};

#[derive(Args, Debug, Serialize)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub source: GraphArgs,
    /// Only scan triples whose geodesics stay this far inside the ball.
    #[arg(long)]
    pub margin: Option<u32>,
    /// Check `δ* ≤ DELTA`; exits 1 when it fails.
    #[arg(long)]
    pub delta: Option<u32>,
    /// Also analyse the graph with a sink adjoined.
    #[arg(long)]
    pub sink: bool,
    /// Check the triangle and polygon quasi-inequalities for `α` = max degree.
    #[arg(long)]
    pub quasi: bool,
    /// Largest polygon checked with --quasi.
    #[arg(long, default_value_t = 4)]
    pub polygons: usize,
    /// Corner chains sampled per polygon size when there are more.
    #[arg(long, default_value_t = 20_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

const LISTED_COMPONENTS: usize = 20;

fn named_triangle(g: &Digraph, t: &GeodesicTriangle) -> Value {
    json!({
        "p": t.p.named(g),
        "q": t.q.named(g),
        "r": t.r.named(g),
        "size": t.size(),
    })
}

pub fn run(args: &AnalyzeArgs, inputs: &mut Inputs) -> Result<Outcome> {
    let loaded = args.source.load(inputs)?;
    let g = &loaded.graph;
    let dm = all_pairs_distances(g);
    let mut opts = ThinnessOptions::default();
    if let Some(margin) = args.margin {
        let Some((root, radius)) = loaded.ball else {
            bail!("--margin needs a Cayley ball (a monoid with --radius)");
        };
        opts.margin = Some(TruncationMargin { root, radius, margin });
    }
    let report = min_hyperbolicity_constant_with(g, &dm, &opts)?;
    let mut summary = vec![format!(
        "{} vertices, {} edges: delta* = {}{}",
        g.vertex_count(),
        g.edges().len(),
        report.delta_star,
        if report.lower_bound { " (lower bound: margin excluded triples)" } else { "" }
    )];
    let witness = match &report.witness {
        Some(w) => {
            let t = witness_triangle(g, &dm, w)?;
            summary.push(format!(
                "witness: vertex {} on side {:?} of ({}, {}, {}) needs {}",
                w.vertex_name, w.side, w.corner_names[0], w.corner_names[1], w.corner_names[2], w.required
            ));
            Some(named_triangle(g, &t))
        }
        None => None,
    };

    let components = strongly_connected_components(g);
    let mut listed = Vec::new();
    let mut max_component = ExtDistance::Finite(0);
    for c in &components {
        let d = min_hyperbolicity_constant_with(&c.subgraph, &all_pairs_distances(&c.subgraph), &ThinnessOptions::default())?
            .delta_star;
        max_component = max_component.max(d);
        if c.vertices.len() > 1 && listed.len() < LISTED_COMPONENTS {
            listed.push(json!({
                "size": c.vertices.len(),
                "delta_star": d,
                "vertices": c.vertices.iter().take(5).map(|&v| g.name(v)).collect::<Vec<_>>(),
            }));
        }
    }
    let nontrivial = components.iter().filter(|c| c.vertices.len() > 1).count();
    let component_ok = report.lower_bound || max_component <= report.delta_star;
    summary.push(format!(
        "{} strongly connected components ({} with more than one vertex); largest component delta* = {}",
        components.len(),
        nontrivial,
        max_component
    ));

    let (indeg, outdeg) = g.degree_bounds();
    let alpha = g.max_degree().max(1) as u64;
    summary.push(format!("max indegree {indeg}, max outdegree {outdeg}"));

    let mut status = Status::Ok;
    let check = args.delta.map(|d| {
        let holds = report.delta_star <= ExtDistance::Finite(d);
        summary.push(format!("strongly {d}-hyperbolic: {}", if holds { "yes" } else { "no" }));
        if !holds {
            status = Status::PropertyFails;
        }
        json!({ "delta": d, "holds": holds, "only_lower_bound": report.lower_bound })
    });

    let constants = match report.delta_star.finite() {
        Some(d) => {
            let c = quasi_constants(alpha, u64::from(d))?;
            summary.push(format!(
                "alpha = {alpha}: lambda = {}, K = {}",
                rational::to_string(&c.lambda),
                rational::to_string(&c.k)
            ));
            Some(c)
        }
        None => None,
    };

    let quasi = match (&constants, args.quasi) {
        (Some(c), true) => {
            let tri = check_triangle_quasi_inequality(g, &dm, &c.lambda);
            let metric = check_quasi_metric(&dm, &c.lambda);
            let mut polys = Vec::new();
            for n in 4..=args.polygons {
                polys.push(check_polygon_quasi_inequality(g, &dm, &c.k, n, args.samples, args.seed)?);
            }
            let violations = tri.violations + metric + polys.iter().map(|p| p.violations).sum::<u64>();
            summary.push(format!(
                "quasi-inequalities: {} triangles, {} polygon sizes, {violations} violations",
                tri.triangles,
                polys.len()
            ));
            if violations > 0 && !report.lower_bound {
                status = Status::PropertyFails;
            }
            Some(json!({
                "triangles": tri,
                "quasi_metric_violations": metric,
                "polygons": polys,
            }))
        }
        _ => None,
    };

    let sink = if args.sink {
        let (h, z) = g.adjoin_sink();
        let d = min_hyperbolicity_constant_with(&h, &all_pairs_distances(&h), &ThinnessOptions::default())?.delta_star;
        let upper = report.delta_star.max(ExtDistance::Finite(1));
        let holds = report.delta_star <= d && d <= upper;
        summary.push(format!(
            "with sink {}: delta* = {d}; {} <= {d} <= max(1, {}) {}",
            h.name(z),
            report.delta_star,
            report.delta_star,
            if holds { "holds" } else { "FAILS" }
        ));
        if !holds && !report.lower_bound {
            status = Status::PropertyFails;
        }
        Some(json!({ "sink": h.name(z), "delta_star": d, "upper": upper, "holds": holds }))
    } else {
        None
    };

    let result = json!({
        "vertices": g.vertex_count(),
        "edges": g.edges().len(),
        "monoid": loaded.monoid.as_ref().map(|m| json!({
            "label": m.label,
            "oracle": m.oracle.kind(),
            "notes": m.notes,
        })),
        "thinness": report,
        "witness_triangle": witness,
        "check": check,
        "components": {
            "count": components.len(),
            "nontrivial": nontrivial,
            "max_delta_star": max_component,
            "no_thicker_than_graph": component_ok,
            "listed": listed,
        },
        "degree": { "max_in": indeg, "max_out": outdeg, "alpha": alpha },
        "constants": constants,
        "quasi": quasi,
        "sink": sink,
    });
    Ok(Outcome {
        status,
        result,
        summary,
    })
}
