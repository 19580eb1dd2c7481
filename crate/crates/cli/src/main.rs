//! `phasediag`: phase diagrams of finite group actions from the command line.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "phasediag", version, about = "Orbit categories, phase diagrams and their invariants")]
#[command(subcommand_required = false, arg_required_else_help = true)]
struct Cli {
    /// Write the bundled example inputs into DIR and exit.
    #[arg(long, value_name = "DIR")]
    seed_fixtures: Option<PathBuf>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Group summary: order and subgroup classes.
    Group {
        #[command(subcommand)]
        action: GroupAction,
    },
    /// Discretized orbit category of a group.
    Orbitcat {
        #[arg(short, long, value_name = "GROUP")]
        input: PathBuf,
        #[command(flatten)]
        out: CategoryOutput,
    },
    /// Phase diagram of a G-complex.
    Phase {
        #[arg(short, long, value_name = "GROUP")]
        group: PathBuf,
        #[arg(short = 'x', long, value_name = "COMPLEX")]
        complex: PathBuf,
        #[command(flatten)]
        out: CategoryOutput,
    },
    /// Category of a stratified complex.
    Strata {
        #[arg(short, long, value_name = "STRATA")]
        input: PathBuf,
        #[command(flatten)]
        out: CategoryOutput,
    },
    /// Degeneracy quiver of a linear representation.
    Quiver {
        #[arg(short, long, value_name = "GROUP")]
        group: PathBuf,
        #[arg(short, long, value_name = "REP")]
        rep: PathBuf,
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Milnor numbers, spectra and the ADE adjacency corpus.
    Sing {
        #[command(subcommand)]
        action: SingAction,
    },
    /// Rate function table of a discrete observable.
    Ldp(LdpArgs),
}

#[derive(Subcommand, Debug)]
enum GroupAction {
    Info {
        #[arg(short, long, value_name = "GROUP")]
        input: PathBuf,
    },
}

#[derive(Args, Debug)]
struct CategoryOutput {
    /// Output file; `.dot` or `.json` selects the format.
    #[arg(short, long, value_name = "FILE")]
    output: Option<PathBuf>,
    /// Format override, and the format used on stdout (default dot).
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Dot,
    Json,
}

#[derive(Args, Debug)]
struct GermArgs {
    /// Polynomial in x, y, z, e.g. "x^3+y^4".
    #[arg(long)]
    germ: String,
    /// Comma-separated rational weights, e.g. "1/3,1/4".
    #[arg(long)]
    weights: Option<String>,
}

#[derive(Args, Debug)]
struct WeightedGermArgs {
    #[arg(long)]
    germ: String,
    #[arg(long)]
    weights: String,
}

#[derive(Subcommand, Debug)]
enum SingAction {
    /// Milnor number.
    Mu(GermArgs),
    /// Euler eigenvalues on a monomial basis.
    Spectrum(WeightedGermArgs),
    /// Add a square in a new variable.
    Stabilize(GermArgs),
    /// List the bundled corpus and check it against computed values.
    Corpus,
    /// Relative cokernel of an adjacency FROM → TO in the corpus.
    Cokernel {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("source").required(true).args(["dist", "bernoulli"])))]
struct LdpArgs {
    /// Outcomes as "value:prob,...", e.g. "0:0.7,1:0.3".
    #[arg(long, allow_hyphen_values = true)]
    dist: Option<String>,
    /// Bernoulli parameter p.
    #[arg(long)]
    bernoulli: Option<f64>,
    /// Inclusive grid "start:stop:step".
    #[arg(long, allow_hyphen_values = true)]
    grid: String,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match (&cli.seed_fixtures, &cli.command) {
        (Some(dir), None) => commands::seed(dir),
        (None, Some(cmd)) => commands::run(cmd),
        (Some(_), Some(_)) => {
            eprintln!("error: --seed-fixtures cannot be combined with a subcommand");
            return ExitCode::from(2);
        }
        (None, None) => unreachable!("clap prints help when no arguments are given"),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
