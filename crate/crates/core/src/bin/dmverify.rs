//! Command-line front end: `verify`, `apply` and `gens`.

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use steenrod_dickson::harness::{self, CampaignConfig, VariantSelection};

#[derive(Parser)]
#[command(
    name = "dmverify",
    about = "Check closed forms for Steenrod operations on Dickson-Mui invariants"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compare closed forms against the brute-force action.
    Verify {
        #[arg(long, default_value = "3", value_delimiter = ',')]
        prime: Vec<u64>,
        /// Comma-separated formula labels, or `all`.
        #[arg(long, default_value = "all")]
        theorem: String,
        /// Largest i; defaults to p^2 + p plus every i a table names.
        #[arg(long)]
        max_i: Option<u64>,
        #[arg(long, default_value_t = 5)]
        max_s: u32,
        #[arg(long, default_value_t = 6)]
        max_uv: u32,
        /// Explicit s values, replacing 0..=max-s.
        #[arg(long, value_delimiter = ',')]
        s_list: Option<Vec<u32>>,
        /// Explicit i values, replacing the i range.
        #[arg(long, value_delimiter = ',')]
        i_list: Option<Vec<u64>>,
        #[arg(long, default_value = "both")]
        variant: String,
        /// Write the JSON report here; `-` for stdout.
        #[arg(long)]
        json: Option<String>,
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
    /// Apply St^{S,R} to a generator or polynomial.
    Apply {
        #[arg(long)]
        prime: u64,
        #[arg(long = "S", default_value = "")]
        s: String,
        #[arg(long = "R", default_value = "")]
        r: String,
        #[arg(long)]
        target: String,
    },
    /// Print the eleven generators.
    Gens {
        #[arg(long)]
        prime: u64,
    },
}

fn run(cli: Cli) -> steenrod_dickson::Result<i32> {
    match cli.command {
        Command::Verify {
            prime,
            theorem,
            max_i,
            max_s,
            max_uv,
            s_list,
            i_list,
            variant,
            json,
            workers,
        } => {
            let cfg = CampaignConfig {
                primes: prime,
                theorems: harness::parse_theorems(&theorem)?,
                max_i,
                max_s,
                max_uv,
                s_values: s_list,
                i_values: i_list,
                variant: variant.parse::<VariantSelection>()?,
                workers,
            };
            let outcome = harness::run_campaign(&cfg)?;
            match json.as_deref() {
                Some("-") => print!("{}", outcome.to_json()),
                Some(path) => {
                    std::fs::write(path, outcome.to_json()).map_err(|e| {
                        steenrod_dickson::Error::Config(format!("cannot write {path}: {e}"))
                    })?;
                    print!("{}", outcome.to_text());
                }
                None => print!("{}", outcome.to_text()),
            }
            Ok(outcome.exit_code)
        }
        Command::Apply {
            prime,
            s,
            r,
            target,
        } => {
            let s: Vec<u32> = harness::parse_list(&s)?;
            let r: Vec<u64> = harness::parse_list(&r)?;
            print!("{}", harness::apply_cli(prime, &s, &r, &target)?);
            Ok(0)
        }
        Command::Gens { prime } => {
            print!("{}", harness::gens(prime)?);
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(harness::exit_code_for(&e) as u8)
        }
    }
}
