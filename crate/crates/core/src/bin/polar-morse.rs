use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use polar_morse::cli::{self, OutputFormat};
use polar_morse::error::Error;

/// Morse pairs of a polynomial germ on a stratified space germ.
///
/// Exit status: 0 when every stratum has a Morse number and all checks
/// pass, 1 otherwise, 2 on unreadable or invalid input.
#[derive(Parser, Debug)]
#[command(version)]
struct Args {
    /// Germ description file.
    input: PathBuf,
    /// Output format: text or structured.
    #[arg(long)]
    format: Option<OutputFormat>,
    /// Number of random linear forms to try when the input gives no `l`.
    #[arg(long = "random-l", value_name = "N")]
    random_l: Option<u32>,
    /// Random coefficients are drawn from [-B, B].
    #[arg(long = "coeff-bound", value_name = "B", value_parser = clap::value_parser!(u32).range(1..))]
    coeff_bound: Option<u32>,
    #[arg(long, value_name = "S")]
    seed: Option<u64>,
    /// Largest truncation degree for the Milnor oracle (0 disables it).
    #[arg(long = "oracle-degree", value_name = "D")]
    oracle_degree: Option<u32>,
    /// Only run the genericity checks.
    #[arg(long = "check-only")]
    check_only: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match std::fs::read_to_string(&args.input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.input.display());
            return ExitCode::from(2);
        }
    };
    let mut job = match cli::parse_input(&text) {
        Ok(job) => job,
        Err(e) => {
            eprintln!("error: {}: {e}", args.input.display());
            return ExitCode::from(2);
        }
    };
    let opts = &mut job.options;
    if let Some(f) = args.format {
        opts.output_format = f;
    }
    if let Some(n) = args.random_l {
        opts.random_l_attempts = n;
        // asking for random forms overrides a given one
        job.l = None;
    }
    if let Some(b) = args.coeff_bound {
        opts.coefficient_bound = b;
    }
    if let Some(s) = args.seed {
        opts.seed = s;
    }
    if let Some(d) = args.oracle_degree {
        opts.oracle_degree_bound = d;
    }
    let format = job.options.output_format;

    let outcome = if args.check_only {
        cli::run_checks(&job).map(|r| (cli::render_check_report(&r, format), r.passed))
    } else {
        cli::run(&job).map(|r| (cli::render_report(&r, format), r.success()))
    };
    match outcome {
        Ok((rendered, ok)) => {
            print!("{rendered}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e @ Error::NoAdmissibleLinearForm { .. }) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
