//! Command-line front end: every subsystem as a subcommand, JSON in and
//! JSON out, plus the seeded verification runner and the coverage report.

mod commands;
mod coverage;
mod input;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(
    name = "strata",
    about = "Stable-tree combinatorics, cross-ratio calculus, Kähler-angle linear algebra, \
             intersection numbers, and hypersurface degree arithmetic",
    version
)]
struct Cli {
    /// Output format for reports.
    #[arg(long, global = true, default_value = "json", value_parser = ["json", "table"])]
    format: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Labelled-tree operations: stability, stabilization, ghosts, dimensions.
    Tree {
        #[command(subcommand)]
        action: commands::TreeAction,
    },
    /// Moduli stratum enumeration.
    Dm {
        #[command(subcommand)]
        action: commands::DmAction,
    },
    /// Cross ratios of sphere points and nodal curves.
    CrossRatio {
        #[command(subcommand)]
        action: commands::CrossRatioAction,
    },
    /// Coherent extension operators.
    Coherent {
        #[command(subcommand)]
        action: commands::CoherentAction,
    },
    /// Kähler angles, taming margins, compatible structures.
    Angle {
        #[command(subcommand)]
        action: commands::AngleAction,
    },
    /// Degree and index arithmetic for hypersurface pairs.
    Donaldson {
        #[command(subcommand)]
        action: commands::DonaldsonAction,
    },
    /// Local and global intersection numbers.
    Intersect {
        #[command(subcommand)]
        action: commands::IntersectAction,
    },
    /// Run seeded verification suites.
    Verify(commands::VerifyArgs),
    /// Print the operation coverage report.
    Coverage,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let table = cli.format == "table";
    let code = match cli.command {
        Command::Tree { action } => commands::run_tree(action),
        Command::Dm { action } => commands::run_dm(action),
        Command::CrossRatio { action } => commands::run_cross_ratio(action),
        Command::Coherent { action } => commands::run_coherent(action),
        Command::Angle { action } => commands::run_angle(action),
        Command::Donaldson { action } => commands::run_donaldson(action),
        Command::Intersect { action } => commands::run_intersect(action),
        Command::Verify(args) => commands::run_verify(args, table),
        Command::Coverage => coverage::run(),
    };
    match code {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(EXIT_VALIDATION);
        }
    }
}
