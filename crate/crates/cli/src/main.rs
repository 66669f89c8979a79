//! `dihyp`: strong hyperbolicity of digraphs and monoids from the command line.
//!
//! Every subcommand prints a JSON run report on stdout (or writes it to
//! `--output`, printing the summary instead). Exit codes: 0 success, 1 a
//! checked property fails, 2 input error, 3 the word problem or a search
//! was undecided at its cap.

mod commands;
mod input;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;

use commands::analyze::AnalyzeArgs;
use commands::constants::ConstantsArgs;
use commands::greens::GreensArgs;
use commands::monoid::{CayleyArgs, DehnArgs, ExamplesArgs, WpArgs};
use commands::tessellate::TessellateArgs;
use report::{Inputs, Outcome, RunReport};

#[derive(Parser, Debug)]
#[command(name = "dihyp", version, about = "Strong hyperbolicity of directed graphs and monoids")]
struct Cli {
    /// Worker threads for the parallel parts.
    #[arg(long, env = "DIHYP_THREADS", global = true)]
    threads: Option<usize>,
    /// Write the JSON report here and print the summary on stdout.
    #[arg(short, long, global = true, value_name = "FILE")]
    output: Option<PathBuf>,
    /// No summary on stderr.
    #[arg(short, long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Minimal thinness constant, witness, components and degree bounds.
    Analyze(AnalyzeArgs),
    /// The quasi-inequality constants and the Green's relation bounds.
    Constants(ConstantsArgs),
    /// Tessellate two parallel paths by small geodesic triangles.
    Tessellate(TessellateArgs),
    /// Export a Cayley ball as DOT or JSON.
    Cayley(CayleyArgs),
    /// Decide whether two words are equal.
    Wp(WpArgs),
    /// Decide a Green's relation or pre-order between two words.
    Greens(GreensArgs),
    /// Tabulate the Dehn function for short words.
    Dehn(DehnArgs),
    /// List the built-in monoids.
    Examples(ExamplesArgs),
}

fn dispatch<A: Serialize>(
    name: &'static str,
    args: &A,
    run: fn(&A, &mut Inputs) -> Result<Outcome>,
) -> Result<(&'static str, serde_json::Value, Inputs, Outcome)> {
    let mut inputs = Inputs::default();
    let outcome = run(args, &mut inputs)?;
    Ok((name, serde_json::to_value(args)?, inputs, outcome))
}

fn execute(command: &Command) -> Result<(&'static str, serde_json::Value, Inputs, Outcome)> {
    match command {
        Command::Analyze(a) => dispatch("analyze", a, commands::analyze::run),
        Command::Constants(a) => dispatch("constants", a, commands::constants::run),
        Command::Tessellate(a) => dispatch("tessellate", a, commands::tessellate::run),
        Command::Cayley(a) => dispatch("cayley", a, commands::monoid::cayley),
        Command::Wp(a) => dispatch("wp", a, commands::monoid::wp),
        Command::Greens(a) => dispatch("greens", a, commands::greens::run),
        Command::Dehn(a) => dispatch("dehn", a, commands::monoid::dehn),
        Command::Examples(a) => dispatch("examples", a, commands::monoid::examples),
    }
}

fn error_code(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if let Some(err) = cause.downcast_ref::<dihyp::Error>() {
            return match err {
                dihyp::Error::OracleUnknown(..) => 3,
                dihyp::Error::NotHyperbolic { .. } => 1,
                _ => 2,
            };
        }
    }
    2
}

fn emit(cli: &Cli, report: &RunReport, summary: &[String]) -> Result<()> {
    let json = serde_json::to_string_pretty(report)? + "\n";
    let mut stdout = std::io::stdout().lock();
    match &cli.output {
        Some(path) => {
            std::fs::write(path, json).with_context(|| format!("writing {}", path.display()))?;
            if !cli.quiet {
                for line in summary {
                    writeln!(stdout, "{line}")?;
                }
            }
        }
        None => {
            stdout.write_all(json.as_bytes())?;
            if !cli.quiet {
                for line in summary {
                    eprintln!("{line}");
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: --threads: {e}");
            return ExitCode::from(2);
        }
    }
    let start = Instant::now();
    match execute(&cli.command) {
        Ok((name, parameters, inputs, outcome)) => {
            let report = RunReport::new(name, inputs, parameters, &outcome, start.elapsed().as_millis());
            if let Err(e) = emit(&cli, &report, &outcome.summary) {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            ExitCode::from(outcome.status.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(error_code(&e))
        }
    }
}
