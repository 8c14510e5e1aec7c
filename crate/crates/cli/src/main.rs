use std::path::PathBuf;
use std::process::ExitCode;

use binfpt_cli::{compute, oracle, parse_range, polytope, scan, Method};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "binfpt",
    version,
    about = "F-pure thresholds of binomials over F_p"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Semigroup,
    Naive,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Threshold at a single prime.
    Compute {
        poly: String,
        #[arg(long)]
        prime: u64,
        /// Check p^e <fpt>_e against both oracles at level E.
        #[arg(long, value_name = "E")]
        verify: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Thresholds over a range of primes.
    Scan {
        poly: String,
        #[arg(long, value_name = "LO..HI", value_parser = parse_range)]
        primes: (u64, u64),
        #[arg(long = "mod", value_name = "M", requires = "residue")]
        modulus: Option<u64>,
        #[arg(long, value_name = "R", requires = "modulus")]
        residue: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Splitting polytope: vertices, maximal point and an optional SVG figure.
    Polytope {
        poly: String,
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long, value_name = "E", requires = "prime")]
        level: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// nu_e by brute force.
    Oracle {
        poly: String,
        #[arg(long)]
        prime: u64,
        #[arg(long, value_name = "E")]
        level: u32,
        #[arg(long, value_enum, default_value = "both")]
        method: MethodArg,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            e.print().expect("write usage");
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::Compute {
            poly,
            prime,
            verify,
            json,
        } => compute(&poly, prime, verify, json),
        Command::Scan {
            poly,
            primes: (lo, hi),
            modulus,
            residue,
            json,
        } => scan(&poly, lo, hi, modulus.zip(residue), json),
        Command::Polytope {
            poly,
            svg,
            prime,
            level,
            json,
        } => polytope(&poly, svg.as_deref(), prime.map(|p| (p, level)), json),
        Command::Oracle {
            poly,
            prime,
            level,
            method,
            json,
        } => {
            let method = match method {
                MethodArg::Semigroup => Method::Semigroup,
                MethodArg::Naive => Method::Naive,
                MethodArg::Both => Method::Both,
            };
            oracle(&poly, prime, level, method, json)
        }
    };
    match outcome {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
