//! `sawkit`: exact self-avoiding walk counts, growth-rate estimates and
//! bounded proof checks from the command line.
//!
//! Exit codes: 0 pass, 1 violation, 2 usage error, 3 partial or inconclusive.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::{Format, Manifest};

#[derive(Parser, Debug)]
#[command(name = "sawkit", version, about = "Self-avoiding walk enumeration and connective-constant checks")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Search-node budget for enumeration and condition-Pi searches.
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Write the run manifest here instead of stderr (`none` to suppress).
    #[arg(long, global = true)]
    manifest: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact counts sigma_0..sigma_n from a vertex or a mid-edge.
    Enumerate(EnumerateArgs),
    /// Fekete bounds and a fitted connective constant.
    Estimate(EstimateArgs),
    /// Bounded checks of the proof ingredients.
    Check(CheckArgs),
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    /// Family spec: ladder, hex, decor3, decor4, loop:<D>, tree:<D>, interp:<D>:<l>.
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: usize,
    /// Root vertex coordinates (e.g. `0,1`), or an edge `<u>:<v>[:<i>]` for a mid-edge root.
    #[arg(long)]
    root: Option<String>,
    /// Count walks that never traverse this edge at the root.
    #[arg(long)]
    avoid_edge: Option<String>,
    /// Count walks with a self-avoiding continuation of this many further steps.
    #[arg(long, value_name = "D")]
    extendable: Option<usize>,
}

#[derive(Args, Debug)]
struct EstimateArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: usize,
    /// `ratio` or `log`.
    #[arg(long, default_value = "ratio")]
    method: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CheckKind {
    Pi,
    Bounds,
    Menger,
    Strictness,
    Lemmas,
    Inequalities,
    BlueCount,
}

#[derive(Args, Debug)]
struct CheckArgs {
    kind: CheckKind,
    /// Required except for `lemmas`, and for `inequalities`, which defaults to all built-in families.
    #[arg(long)]
    family: Option<String>,
    /// Length parameter: series length (bounds, strictness), ball radius
    /// (menger), eq. 15 range (inequalities), half walk length (blue-count).
    #[arg(long)]
    n: Option<usize>,
    /// Root vertex; defaults to every orbit representative.
    #[arg(long)]
    root: Option<String>,
    /// Prefix length bound.
    #[arg(long = "L", default_value_t = 8)]
    l: usize,
    /// Colour depth.
    #[arg(long = "D", default_value_t = 12)]
    d: usize,
    /// Connecting-walk length bound.
    #[arg(long = "P", default_value_t = 12)]
    p: usize,
    /// Largest N searched by `strictness`.
    #[arg(long, default_value_t = 12)]
    search_bound: usize,
    /// Range of `m + n` for submultiplicativity in `inequalities`.
    #[arg(long, default_value_t = 14)]
    submult_n: usize,
    /// Largest degree for `lemmas`.
    #[arg(long, default_value_t = 8)]
    delta_max: usize,
    /// Largest branch count for `lemmas`.
    #[arg(long, default_value_t = 50)]
    b_max: usize,
    /// Absolute tolerance on mu_hat in `bounds`.
    #[arg(long, default_value_t = 1e-2)]
    tolerance: f64,
    /// In `bounds`, run the condition-Pi check to decide whether the lower bound applies.
    #[arg(long)]
    with_pi: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 2 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    let mut manifest = Manifest::new(&cli);
    let result = sawkit_core::enumerate::install(cli.global.threads, || commands::run(&cli));
    let code = match result {
        Ok(out) => match output::emit(&cli.global, &out.report) {
            Ok(()) => out.exit,
            Err(err) => {
                eprintln!("error: {err}");
                2
            }
        },
        Err(err) => {
            eprintln!("error: {err}");
            commands::error_code(&err)
        }
    };
    manifest.finish(start.elapsed(), code);
    if let Err(err) = manifest.write(cli.global.manifest.as_deref()) {
        eprintln!("error: {err}");
    }
    ExitCode::from(code)
}
