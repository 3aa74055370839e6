use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fairdiv_cli::commands;

/// Exact-arithmetic toolkit for allocating indivisible goods: run
/// mechanisms, audit their fairness, generate instances, and sweep.
#[derive(Parser)]
#[command(name = "fairdiv", version, arg_required_else_help = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a mechanism on an instance under one agent ordering.
    Run {
        /// Mechanism id: round_robin, envy_cycle, matching_pef1,
        /// adjusted_winner_discrete, adjusted_winner_modified,
        /// mnw_bruteforce.
        #[arg(long)]
        mechanism: String,
        /// Path to the instance JSON file.
        #[arg(long)]
        instance: PathBuf,
        /// Agents in pick order, 1-based, e.g. "3,1,2".
        #[arg(long)]
        ordering: String,
    },
    /// Audit a mechanism on an instance across all agent orderings.
    Audit {
        #[arg(long)]
        mechanism: String,
        #[arg(long)]
        instance: PathBuf,
        /// Comma list from: ef1, po, pef_degree, scale.
        #[arg(long, default_value = "ef1,po,pef_degree,scale")]
        checks: String,
        /// Per-agent positive scalars for the scale check, e.g. "2,1/3".
        #[arg(long)]
        scalars: Option<String>,
        /// Fail (exit 1) when the position-envy degree exceeds 1.
        #[arg(long)]
        require_pef1: bool,
    },
    /// Generate an instance file.
    Gen {
        /// Family: example4, rr_log_lower_bound, table1_n5,
        /// aw_counterexample, ec_worst, random.
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        /// Rounds for rr_log_lower_bound (goods = n * rounds).
        #[arg(long)]
        rounds: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "max-value", default_value_t = 10)]
        max_value: u64,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep a mechanism over seeded random instances (plus the adversarial
    /// families fitting the shape) and emit a CSV summary.
    Sweep {
        #[arg(long)]
        mechanism: String,
        /// Number of random instances.
        #[arg(long)]
        count: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long = "max-value", default_value_t = 10)]
        max_value: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Run {
            mechanism,
            instance,
            ordering,
        } => commands::cmd_run(mechanism, instance, ordering),
        Command::Audit {
            mechanism,
            instance,
            checks,
            scalars,
            require_pef1,
        } => commands::cmd_audit(
            mechanism,
            instance,
            checks,
            scalars.as_deref(),
            *require_pef1,
        ),
        Command::Gen {
            family,
            n,
            m,
            rounds,
            seed,
            max_value,
            out,
        } => commands::cmd_gen(family, *n, *m, *rounds, *seed, *max_value, out.as_deref()),
        Command::Sweep {
            mechanism,
            count,
            n,
            m,
            max_value,
            seed,
            out,
        } => commands::cmd_sweep(mechanism, *count, *n, *m, *max_value, *seed, out.as_deref()),
    };
    match outcome {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
