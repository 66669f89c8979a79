use anyhow::{bail, Result};
use clap::Args;
use dihyp::greens::{
    decide, estimate_parameters, finite_parameters, greens_constants, Answer, DeciderOptions, Parameters, Relation,
};
use serde::Serialize;
use serde_json::json;

use crate::input::MonoidArgs;
use crate::report::{Inputs, Outcome, Status};

#[derive(Args, Debug, Serialize)]
pub struct GreensArgs {
    #[command(flatten)]
    pub monoid: MonoidArgs,
    /// One of leqR, leqL, leqJ, R, L, J, H, D; pre-orders read as `u ≤ v`.
    pub relation: String,
    pub u: String,
    pub v: String,
    /// Known hyperbolicity constant; with --alpha, makes negative answers proofs.
    #[arg(long, requires = "alpha")]
    pub delta: Option<u64>,
    /// Known degree bound.
    #[arg(long, requires = "delta")]
    pub alpha: Option<u64>,
    /// The monoid is left-cancellative.
    #[arg(long)]
    pub left_cancellative: bool,
    /// The monoid is cancellative (needed for D).
    #[arg(long)]
    pub cancellative: bool,
    /// Longest inverse tried when looking for unit generators.
    #[arg(long, default_value_t = 6)]
    pub unit_cap: u64,
    /// Radius of the ball used to estimate δ and α when they are not given.
    #[arg(long, default_value_t = 4)]
    pub estimate_radius: u32,
}

pub fn run(args: &GreensArgs, inputs: &mut Inputs) -> Result<Outcome> {
    let Some(rel) = Relation::parse(&args.relation) else {
        bail!("unknown relation `{}`", args.relation);
    };
    let m = args.monoid.load(inputs)?;
    let (u, v) = (m.word(&args.u)?, m.word(&args.v)?);
    let params = match (args.alpha, args.delta, &m.finite) {
        (Some(alpha), Some(delta), _) => Parameters {
            a_size: m.presentation.alphabet.len(),
            alpha,
            delta,
            certified: true,
            source: "supplied".into(),
        },
        (_, _, Some(fm)) => finite_parameters(fm)?,
        _ => estimate_parameters(&m.oracle, args.estimate_radius)?,
    };
    let constants = greens_constants(params.a_size, params.alpha, params.delta)?;
    let opts = DeciderOptions {
        node_cap: args.monoid.node_cap,
        hypotheses: params.certified,
        left_cancellative: args.left_cancellative,
        cancellative: args.cancellative,
        unit_cap: args.unit_cap,
    };
    let verdict = decide(&m.oracle, &constants, rel, &u, &v, &opts)?;
    let mut summary = vec![format!(
        "{} {} {} in {}: {}{}",
        m.show(&u),
        rel.name(),
        m.show(&v),
        m.label,
        match verdict.answer {
            Answer::Yes => "yes",
            Answer::NoWithinBound => "no within bound",
            Answer::UnknownAtCap => "unknown at cap",
        },
        if verdict.answer == Answer::NoWithinBound && verdict.certified {
            " (certified)"
        } else {
            ""
        }
    )];
    for w in &verdict.witness {
        summary.push(format!("  {} = {}", w.label, w.text));
    }
    summary.push(format!(
        "parameters |A| = {}, alpha = {}, delta = {} from {}",
        params.a_size, params.alpha, params.delta, params.source
    ));
    summary.extend(constants.trace.iter().map(|t| format!("  {t}")));
    let status = if verdict.answer == Answer::UnknownAtCap {
        Status::Unknown
    } else {
        Status::Ok
    };
    let result = json!({
        "monoid": m.label,
        "oracle": m.oracle.kind(),
        "notes": m.notes,
        "u": m.show(&u),
        "v": m.show(&v),
        "parameters": params,
        "constants": constants,
        "options": opts,
        "verdict": verdict,
    });
    Ok(Outcome { status, result, summary })
}
