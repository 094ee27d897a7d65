//! `galrel`: norm-idempotent relations and the number field invariants they
//! constrain.

mod commands;
mod report;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use galrel_core::theta::BVariant;
use galrel_core::{Error, Result};

use commands::{Check, VerifyOptions};
use report::{exit_code_for, Report};

const DEFAULT_PRECISION: u32 = 128;

#[derive(Parser)]
#[command(name = "galrel", version, about = "Relations among norm idempotents and the invariants they constrain")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Working precision in bits (overrides GALREL_PRECISION).
    #[arg(long, global = true)]
    precision: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Subgroups of a group and a basis of its idempotent relations.
    Relations {
        /// e.g. V4, C6, S3, D4, Q8, A4, C2xC2xC2
        #[arg(long)]
        group: String,
    },
    /// Signature, unit rank, discriminant, roots of unity, class group,
    /// regulator and genus of a field and its fixed fields.
    Invariants {
        /// Field description (JSON file or bundled name such as q_zeta8).
        #[arg(long)]
        field: String,
    },
    /// Check one family of consequences of the relations of a Galois field.
    Verify {
        #[arg(long)]
        ext: String,
        /// lambda, classgroup, torsion, genus, brauer, zeta or eta
        #[arg(long)]
        check: String,
        #[arg(long)]
        prime: Option<u64>,
        /// Twist used by the eta check: paper or trace.
        #[arg(long, default_value = "paper")]
        variant: String,
        #[arg(long)]
        tol: Option<f64>,
        /// Norm cutoff for the truncated zeta check.
        #[arg(long, default_value_t = 1000)]
        cutoff: u64,
    },
    /// Twisted theta value eta_D of the ring of integers.
    Eta {
        #[arg(long)]
        field: String,
        /// One coefficient per infinite place, as a JSON array or a file.
        #[arg(long)]
        divisor: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
}

fn precision(flag: Option<u32>) -> Result<u32> {
    if let Some(p) = flag {
        return Ok(p);
    }
    match std::env::var("GALREL_PRECISION") {
        Ok(v) => v.trim().parse().map_err(|_| Error::InvalidInput(format!("GALREL_PRECISION={v:?} is not a bit count"))),
        Err(_) => Ok(DEFAULT_PRECISION),
    }
}

fn run(cli: Cli) -> Result<Report> {
    let bits = precision(cli.precision)?;
    if !(32..=4096).contains(&bits) {
        return Err(Error::InvalidInput(format!("precision {bits} outside 32..=4096")));
    }
    match cli.command {
        Command::Relations { group } => commands::relations(&group, bits),
        Command::Invariants { field } => commands::invariants(&field, bits),
        Command::Verify { ext, check, prime, variant, tol, cutoff } => {
            if let Some(t) = tol {
                if !(t > 0.0 && t.is_finite()) {
                    return Err(Error::InvalidInput("tolerance must be positive".into()));
                }
            }
            let opts = VerifyOptions { check: check.parse::<Check>()?, prime, variant: variant.parse::<BVariant>()?, tol, cutoff };
            commands::verify(&ext, &opts, bits)
        }
        Command::Eta { field, divisor, tol } => commands::eta_command(&field, &divisor, tol, bits),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let format = cli.format;
    match run(cli) {
        Ok(r) => {
            match format {
                Format::Table => print!("{}", r.to_table()),
                Format::Json => println!("{}", r.to_json()),
            }
            ExitCode::from(r.exit_code() as u8)
        }
        Err(e) => {
            let code = exit_code_for(&e);
            match format {
                Format::Json => println!("{}", serde_json::json!({"error": e.to_string(), "exit_code": code})),
                Format::Table => eprintln!("galrel: {e}"),
            }
            ExitCode::from(code as u8)
        }
    }
}
