use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod json;
mod params;

#[derive(Parser)]
#[command(name = "permpoly", version, about = "Permutation polynomials over finite fields and their inverses")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Brute,
    Cyclotomic,
    Linearized,
    Trace,
    Auto,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a polynomial permutes its field.
    Verify {
        #[arg(long)]
        field: String,
        #[arg(long)]
        poly: String,
    },
    /// Compute the compositional inverse of a permutation polynomial.
    Invert {
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        poly: Option<String>,
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Method::Brute)]
        method: Method,
    },
    /// Check a family parameter file and derive its closed-form inverse.
    Family {
        #[arg(long)]
        params: PathBuf,
    },
    /// Check the complete-permutation conditions of a linearized family.
    Cpp {
        #[arg(long)]
        params: PathBuf,
    },
    /// Check the identities of the A_i polynomials over F_{q^d}.
    Identities {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        d: u32,
    },
    /// Write the value table of a permutation polynomial (.bin or .hex).
    ExportSbox {
        #[arg(long)]
        field: String,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the built-in consistency checks.
    Selftest,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify { field, poly } => commands::verify(&field, &poly),
        Command::Invert {
            field,
            poly,
            params,
            method,
        } => commands::invert(field.as_deref(), poly.as_deref(), params.as_deref(), method),
        Command::Family { params } => commands::family(&params),
        Command::Cpp { params } => commands::cpp(&params),
        Command::Identities { q, d } => commands::identities(q, d),
        Command::ExportSbox { field, poly, out } => commands::export_sbox(&field, &poly, &out),
        Command::Selftest => commands::selftest(),
    };
    println!("{}", outcome.report);
    ExitCode::from(outcome.code)
}
