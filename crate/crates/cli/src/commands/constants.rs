use anyhow::Result;
use clap::Args;
use dihyp::greens::greens_constants;
use dihyp::hyperbolicity::quasi_constants;
use dihyp::rational::to_string;
use serde::Serialize;
use serde_json::json;

use crate::report::{Inputs, Outcome};

#[derive(Args, Debug, Serialize)]
pub struct ConstantsArgs {
    /// Degree bound.
    #[arg(long)]
    pub alpha: u64,
    #[arg(long)]
    pub delta: u64,
    /// Number of generators; adds the C, D, W, E, F tables.
    #[arg(long)]
    pub alphabet_size: Option<usize>,
    /// Largest argument tabulated.
    #[arg(long, default_value_t = 3)]
    pub max_arg: u64,
}

pub fn run(args: &ConstantsArgs, _inputs: &mut Inputs) -> Result<Outcome> {
    let q = quasi_constants(args.alpha, args.delta)?;
    let mut summary = q.trace.clone();
    let greens = match args.alphabet_size {
        Some(a) => {
            let c = greens_constants(a, args.alpha, args.delta)?;
            summary.extend(c.trace.iter().cloned());
            let n = args.max_arg;
            let grid = |f: &dyn Fn(u64, u64) -> String| -> Vec<Vec<String>> {
                (0..=n).map(|x| (0..=n).map(|y| f(x, y)).collect()).collect()
            };
            let c_row: Vec<String> = (0..=n).map(|s| to_string(&c.c(s))).collect();
            summary.push(format!("C(0..={n}) = [{}]", c_row.join(", ")));
            let (e, f) = (c.e_affine(), c.f_affine());
            summary.push(format!(
                "F(u, v) = {} + {} u + {} v",
                to_string(&f.constant.0),
                to_string(&f.u.0),
                to_string(&f.v.0)
            ));
            Some(json!({
                "constants": c,
                "C": c_row,
                "D": grid(&|q, s| to_string(&c.d(q, s))),
                "E": grid(&|u, v| to_string(&c.e(u, v))),
                "F": grid(&|u, v| to_string(&c.f(u, v))),
                "E_affine": e,
                "F_affine": f,
            }))
        }
        None => None,
    };
    Ok(Outcome::ok(json!({ "quasi": q, "greens": greens }), summary))
}
