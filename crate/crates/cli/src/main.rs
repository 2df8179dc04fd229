use std::io::Write;
use std::process::ExitCode;

use bicyclic_cli::{execute, Options};
use clap::Parser;

/// Exact computations in the semigroup B_Z^F.
#[derive(Debug, Parser)]
#[command(name = "bzf", version)]
struct Args {
    /// Seed for the sampled suites.
    #[arg(long)]
    seed: Option<u64>,
    /// Instances per suite.
    #[arg(long)]
    samples: Option<usize>,
    /// Evaluation window for the partial-map oracle.
    #[arg(long)]
    window: Option<u64>,
    /// Pretty-print the JSON output.
    #[arg(long)]
    pretty: bool,
    /// Member cap for family closures.
    #[arg(long)]
    max_family: Option<usize>,
    /// Family for element commands, e.g. `family{[0)}`.
    #[arg(long)]
    family: Option<String>,
    /// The command, e.g. `eval "(0,0;[0)) * (1,1;[0))"`.
    #[arg(required = true)]
    command: Vec<String>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let defaults = Options::default();
    let opts = Options {
        seed: args.seed.unwrap_or(defaults.seed),
        samples: args.samples.unwrap_or(defaults.samples),
        window: args.window.unwrap_or(defaults.window),
        max_family: args.max_family.unwrap_or(defaults.max_family),
        family: args.family,
    };
    let (value, code) = execute(&args.command.join(" "), &opts);
    let text = if args.pretty {
        serde_json::to_string_pretty(&value)
    } else {
        serde_json::to_string(&value)
    }
    .expect("JSON values serialize");
    let _ = writeln!(std::io::stdout(), "{text}");
    ExitCode::from(code as u8)
}
