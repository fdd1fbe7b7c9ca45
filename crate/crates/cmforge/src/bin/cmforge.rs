use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use cmforge::commands::{cmd_dioph, cmd_field, cmd_minpoly, cmd_minpoly_approx, cmd_orbit};
use cmforge::polyfile::read_polynomial;
use cmforge::{InvariantName, JobConfig, OutputFormat};
use serde::Serialize;

/// Ray class invariants of imaginary quadratic fields.
#[derive(Parser)]
#[command(name = "cmforge", version)]
struct Cli {
    /// Worker threads (0 = all cores); never changes the output.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Discriminant, generator, roots of unity and reduced forms of Q(sqrt(-d)).
    Field { d: i64 },
    /// Coset representatives of W_N modulo units and the beta matrix of each form.
    Orbit {
        d: i64,
        #[arg(value_name = "N")]
        n: u64,
        #[arg(long)]
        level: Option<u64>,
    },
    /// Minimal polynomial of an invariant.
    Minpoly(MinpolyArgs),
    /// Compare the representability criterion with brute force over odd primes.
    Dioph {
        n: u64,
        #[arg(value_name = "N")]
        modulus: u64,
        bound: u64,
        /// Polynomial to use instead of computing a real generator.
        #[arg(long)]
        minpoly_file: Option<PathBuf>,
        #[arg(short = 'P', long, env = "CMFORGE_PRECISION")]
        precision: Option<u32>,
    },
}

#[derive(Args)]
struct MinpolyArgs {
    #[arg(short = 'd')]
    d: i64,
    #[arg(short = 'N')]
    n: u64,
    #[arg(long, value_enum)]
    kind: InvariantName,
    #[arg(short = 's', allow_hyphen_values = true)]
    s: Option<i64>,
    #[arg(short = 't', allow_hyphen_values = true)]
    t: Option<i64>,
    #[arg(short = 'p')]
    p: Option<u64>,
    /// Decimal digits; chosen automatically when absent.
    #[arg(short = 'P', long, env = "CMFORGE_PRECISION")]
    precision: Option<u32>,
    #[arg(long)]
    level: Option<u64>,
    /// Print the floating orbit product to five digits instead of an exact polynomial.
    #[arg(long)]
    approx: bool,
}

fn render<T: Serialize>(value: &T, text: impl FnOnce(&T) -> String, format: OutputFormat) -> Result<String> {
    Ok(match format {
        OutputFormat::Json => serde_json::to_string_pretty(value)? + "\n",
        OutputFormat::Text => text(value),
    })
}

fn run(cli: Cli) -> Result<bool> {
    let format = cli.format;
    let (output, ok) = match cli.cmd {
        Cmd::Field { d } => (render(&cmd_field(d)?, |r| r.to_text(), format)?, true),
        Cmd::Orbit { d, n, level } => (render(&cmd_orbit(d, n, level)?, |r| r.to_text(), format)?, true),
        Cmd::Minpoly(a) => {
            let cfg = JobConfig {
                d: a.d,
                n: a.n,
                kind: a.kind,
                s: a.s,
                t: a.t,
                p: a.p,
                precision: a.precision,
                level: a.level,
                threads: cli.threads,
                format,
            };
            let out = if a.approx {
                render(&cmd_minpoly_approx(&cfg)?, |r| r.to_text(), format)?
            } else {
                render(&cmd_minpoly(&cfg)?, |r| r.to_text(), format)?
            };
            (out, true)
        }
        Cmd::Dioph { n, modulus, bound, minpoly_file, precision } => {
            let poly = minpoly_file.as_deref().map(read_polynomial).transpose()?;
            let rep = cmd_dioph(n, modulus, bound, poly, precision, cli.threads)?;
            let ok = rep.mismatches.is_empty();
            (render(&rep, |r| r.to_text(), format)?, ok)
        }
    };
    match &cli.out {
        Some(path) => std::fs::write(path, output)?,
        None => std::io::stdout().write_all(output.as_bytes())?,
    }
    Ok(ok)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
