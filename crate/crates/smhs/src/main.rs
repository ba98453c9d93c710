use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use smhs::{run, write_report, Command, Options, RunConfig, RunError, Status};

/// Hilbert series, cost estimates and finite-field checks for the Support-Minors modeling of MinRank.
#[derive(Parser)]
#[command(name = "smhs", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Generic Hilbert series, its rational form and the degree of regularity.
    Hilbert(Options),
    /// Hybrid bit-cost estimate over guessed columns and dc.
    Estimate(Options),
    /// Minors and Support-Minors costs for r = 1..min(m, n).
    SweepR(Options),
    /// Macaulay ranks of one random instance against the predicted series.
    Verify(Options),
    /// Fraction of random instances whose Hilbert function matches the prediction.
    Trials(Options),
    /// Exhaustive small-range identity and tableau-count checks.
    Identities(Options),
}

fn config(cli: Cli) -> RunConfig {
    let (command, opts) = match cli.command {
        Sub::Hilbert(o) => (Command::Hilbert, o),
        Sub::Estimate(o) => (Command::Estimate, o),
        Sub::SweepR(o) => (Command::SweepR, o),
        Sub::Verify(o) => (Command::Verify, o),
        Sub::Trials(o) => (Command::Trials, o),
        Sub::Identities(o) => (Command::Identities, o),
    };
    RunConfig { command, opts }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let cfg = config(cli);
    let outcome = match run(&cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(match e {
                RunError::Usage(_) => 1,
                RunError::Compute(_) => 2,
            });
        }
    };
    let written = match &cfg.opts.out {
        Some(path) => File::create(path)
            .and_then(|f| {
                let mut w = BufWriter::new(f);
                write_report(&outcome.report, cfg.opts.format, &mut w)?;
                w.flush()
            })
            .map_err(|e| format!("{}: {e}", path.display())),
        None => {
            let mut out = io::stdout().lock();
            write_report(&outcome.report, cfg.opts.format, &mut out).map_err(|e| format!("stdout: {e}"))
        }
    };
    if let Err(msg) = written {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    match outcome.status {
        Status::Ok => ExitCode::SUCCESS,
        Status::Mismatch if cfg.opts.strict => {
            eprintln!("verification mismatch");
            ExitCode::from(3)
        }
        Status::Mismatch => ExitCode::SUCCESS,
        Status::IdentityFailure => {
            eprintln!("identity sweep found counterexamples");
            ExitCode::from(2)
        }
    }
}
