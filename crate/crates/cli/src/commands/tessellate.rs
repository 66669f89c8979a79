use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use dihyp::hyperbolicity::{min_hyperbolicity_constant_with, GeodesicTriangle, ThinnessOptions};
use dihyp::tessellation::{
    log_four_thirds_five, tessellate_parallel_paths, tessellate_triangle_to_size, TessellationCertificate,
};
use dihyp::{all_pairs_distances, Digraph, DistanceMatrix};
use serde::Serialize;
use serde_json::{json, Value};

use crate::input::{parse_path, GraphArgs};
use crate::report::{Inputs, Outcome, Status};

#[derive(Args, Debug, Serialize)]
pub struct TessellateArgs {
    #[command(flatten)]
    pub source: GraphArgs,
    /// First path, as comma-separated vertex names.
    #[arg(long, required_unless_present = "replay")]
    pub p: Option<String>,
    /// Second path, parallel to the first.
    #[arg(long, required_unless_present = "replay")]
    pub q: Option<String>,
    /// Hyperbolicity constant used for subdivision; defaults to δ*.
    #[arg(long)]
    pub delta: Option<u32>,
    /// Target triangle size; defaults to 8δ + 5.
    #[arg(long)]
    pub size: Option<usize>,
    /// Write the certificate here instead of into the report.
    #[arg(long, value_name = "FILE")]
    pub certificate: Option<PathBuf>,
    /// Re-verify a saved certificate (or a report containing one).
    #[arg(long, value_name = "FILE", conflicts_with_all = ["p", "q", "certificate"])]
    pub replay: Option<PathBuf>,
}

fn replay(g: &Digraph, dm: &DistanceMatrix, text: &str) -> Result<Outcome> {
    let value: Value = serde_json::from_str(text).context("certificate is not JSON")?;
    let value = value.pointer("/result/certificate").cloned().unwrap_or(value);
    let cert: TessellationCertificate = serde_json::from_value(value).context("not a tessellation certificate")?;
    let (status, verdict) = match cert.verify(g, dm) {
        Ok(()) => (Status::Ok, "verified".to_owned()),
        Err(e) => (Status::PropertyFails, e.to_string()),
    };
    let summary = vec![format!(
        "certificate {} to {} with {} triangles (max size {}): {verdict}",
        cert.top.display(g),
        cert.bottom.display(g),
        cert.count(),
        cert.max_size()
    )];
    let result = json!({
        "replay": {
            "top": cert.top.named(g),
            "bottom": cert.bottom.named(g),
            "triangles": cert.count(),
            "max_size": cert.max_size(),
            "verified": status == Status::Ok,
            "detail": verdict,
        }
    });
    Ok(Outcome { status, result, summary })
}

pub fn run(args: &TessellateArgs, inputs: &mut Inputs) -> Result<Outcome> {
    let loaded = args.source.load(inputs)?;
    let g = &loaded.graph;
    let dm = all_pairs_distances(g);
    if let Some(path) = &args.replay {
        let text = inputs.read_file("certificate", path)?;
        return replay(g, &dm, &text);
    }
    let p = parse_path(g, args.p.as_deref().expect("required by clap"))?;
    let q = parse_path(g, args.q.as_deref().expect("required by clap"))?;
    let delta = match args.delta {
        Some(d) => d,
        None => min_hyperbolicity_constant_with(g, &dm, &ThinnessOptions::default())?
            .delta_star
            .finite()
            .context("no finite thinness constant; pass --delta")?,
    };
    let c = args.size.unwrap_or(8 * delta as usize + 5);
    if c <= 8 * delta as usize + 4 {
        bail!("--size {c} must exceed 8δ + 4 = {}", 8 * delta as usize + 4);
    }

    let fill = tessellate_parallel_paths(g, &dm, &p, &q)?;
    let total = p.len() + q.len();
    let fill_ok = fill.count() <= total + 1 && fill.max_size() <= 2 * total;
    let mut summary = vec![format!(
        "filling: {} triangles <= |p|+|q|+1 = {}, max size {} <= 2(|p|+|q|) = {}: {}",
        fill.count(),
        total + 1,
        fill.max_size(),
        2 * total,
        if fill_ok { "holds" } else { "FAILS" }
    )];

    let mut triangles: Vec<GeodesicTriangle> = Vec::new();
    let mut subs = Vec::new();
    let mut pieces = Vec::new();
    let mut pieces_ok = true;
    for t in &fill.triangles {
        let rep = tessellate_triangle_to_size(g, &dm, t, c, delta)?;
        let ok = rep.within_bounds();
        pieces_ok &= ok;
        pieces.push(json!({
            "sigma": rep.sigma,
            "count": rep.count,
            "count_bound": rep.count_bound,
            "depth": rep.depth,
            "depth_bound": rep.depth_bound,
            "max_size": rep.max_size,
            "size_sequence": rep.size_sequence,
            "within_bounds": ok,
        }));
        let mut tree = rep.certificate.tree.clone();
        tree.shift(triangles.len());
        subs.push(tree);
        triangles.extend(rep.certificate.triangles.iter().cloned());
    }
    let cert = TessellationCertificate {
        top: p.clone(),
        bottom: q.clone(),
        sizes: triangles.iter().map(GeodesicTriangle::size).collect(),
        tree: fill.tree.substitute(&subs),
        triangles,
    };
    cert.verify(g, &dm).context("assembled certificate does not replay")?;
    let size_ok = cert.max_size() <= c;
    summary.push(format!(
        "subdivision to size C = {c} with delta = {delta}: {} triangles, max size {}; per-triangle count bounds 5(sigma/(C-8delta-4))^{:.4}: {}",
        cert.count(),
        cert.max_size(),
        log_four_thirds_five(),
        if pieces_ok && size_ok { "hold" } else { "FAIL" }
    ));
    summary.push("certificate replays".into());

    let certificate = match &args.certificate {
        Some(path) => {
            std::fs::write(path, serde_json::to_string_pretty(&cert)? + "\n")
                .with_context(|| format!("writing {}", path.display()))?;
            summary.push(format!("certificate written to {}", path.display()));
            None
        }
        None => Some(&cert),
    };
    let status = if fill_ok && pieces_ok && size_ok {
        Status::Ok
    } else {
        Status::PropertyFails
    };
    let result = json!({
        "p": p.named(g),
        "q": q.named(g),
        "delta": delta,
        "size": c,
        "exponent": log_four_thirds_five(),
        "filling": {
            "triangles": fill.count(),
            "count_bound": total + 1,
            "max_size": fill.max_size(),
            "size_bound": 2 * total,
            "holds": fill_ok,
        },
        "subdivisions": pieces,
        "total": {
            "triangles": cert.count(),
            "max_size": cert.max_size(),
            "within_size": size_ok,
            "verified": true,
        },
        "certificate": certificate,
    });
    Ok(Outcome { status, result, summary })
}
