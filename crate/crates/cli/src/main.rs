mod commands;
mod spec;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::spec::GraphSpec;

#[derive(Parser)]
#[command(
    name = "graphcap",
    version,
    about = "Rate bounds for codes in distance-truncated strong powers of graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the invariants and spectral constants of a graph.
    Info {
        /// Graph spec: K:q, C:m, kneser:c,a, sum:NxKm+..., pow:SPEC,r, file:PATH
        spec: GraphSpec,
    },
    /// Evaluate rate bounds on a grid of relative distances.
    Curve {
        spec: GraphSpec,
        #[command(flatten)]
        job: CurveArgs,
        /// Comma-separated rules: vt, frac, lp, power:r, cover, homlift:SPEC,
        /// sumclique-gv, sumclique-lp
        #[arg(long, default_value = "vt,frac,lp,cover,power:2")]
        rules: String,
    },
    /// Check gv <= alpha(G(n,d)) <= LP bound for every n <= max-n and every d.
    Verify {
        spec: GraphSpec,
        #[arg(long)]
        max_n: usize,
        /// Branch-and-bound node budget per instance.
        #[arg(long)]
        node_budget: Option<u64>,
    },
    /// Regenerate a preset figure.
    Figure {
        name: FigureName,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FigureName {
    /// C5 with the vt, power:2 and lp rules on a 0.001 grid.
    Pentagon,
}

#[derive(clap::Args)]
struct CurveArgs {
    #[arg(long, default_value_t = 0.0)]
    delta_min: f64,
    #[arg(long, default_value_t = 1.0)]
    delta_max: f64,
    #[arg(long, default_value_t = 0.01)]
    step: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(clap::Args)]
struct OutputArgs {
    /// Display base for rates: e, 2, 10 or any other positive number.
    #[arg(long, default_value = "2", value_parser = commands::parse_log_base)]
    log_base: f64,
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Output format; inferred from the output extension, else csv.
    #[arg(long)]
    format: Option<commands::Format>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = graphcap::Limits::from_env();
    let code = match cli.command {
        Command::Info { spec } => commands::info(&spec, &limits),
        Command::Curve { spec, job, rules } => commands::curve(
            &spec,
            &rules,
            (job.delta_min, job.delta_max, job.step),
            &job.output.into(),
            &limits,
        ),
        Command::Verify {
            spec,
            max_n,
            node_budget,
        } => {
            let mut limits = limits;
            if let Some(budget) = node_budget {
                limits.search_nodes = budget;
            }
            commands::verify(&spec, max_n, &limits)
        }
        Command::Figure { name, output } => match name {
            FigureName::Pentagon => commands::figure_pentagon(&output.into(), &limits),
        },
    };
    ExitCode::from(code)
}

impl From<OutputArgs> for commands::Output {
    fn from(a: OutputArgs) -> Self {
        commands::Output {
            log_base: a.log_base,
            path: a.output,
            format: a.format,
        }
    }
}
