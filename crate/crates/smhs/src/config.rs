//! Run configuration shared by every subcommand.

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Hilbert,
    Estimate,
    SweepR,
    Verify,
    Trials,
    Identities,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Command::Hilbert => "hilbert",
            Command::Estimate => "estimate",
            Command::SweepR => "sweep-r",
            Command::Verify => "verify",
            Command::Trials => "trials",
            Command::Identities => "identities",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Table,
}

/// Flags accepted by every subcommand. Commands ignore the ones they do not use.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Args)]
pub struct Options {
    /// Rows of the matrix.
    #[arg(long, default_value_t = 5)]
    pub m: usize,
    /// Columns of the matrix.
    #[arg(long, default_value_t = 5)]
    pub n: usize,
    /// Number of variables. sweep-r uses K = (m-r)(n-r) - 1 unless this is given.
    #[arg(long = "K")]
    #[serde(rename = "K")]
    pub k: Option<usize>,
    /// Target rank.
    #[arg(long, default_value_t = 2)]
    pub r: usize,
    /// Degree of the matrix entries.
    #[arg(long = "D", default_value_t = 1)]
    #[serde(rename = "D")]
    pub d: usize,
    /// Degree in the Plücker variables. hilbert defaults to 1; estimate, verify and
    /// trials use it as a single-value range.
    #[arg(long)]
    pub dc: Option<usize>,
    /// Upper end of the dc range: 0..=dc-max for estimate, 1..=dc-max for verify and trials.
    #[arg(long)]
    pub dc_max: Option<usize>,
    /// Largest x-degree checked by verify.
    #[arg(long, default_value_t = 3)]
    pub dx_max: usize,
    /// x-degree used by trials.
    #[arg(long, default_value_t = 1)]
    pub dx: usize,
    /// Field size. Required by estimate; verify and trials default to 31; sweep-r only records it.
    #[arg(long)]
    pub q: Option<u64>,
    /// Series order for hilbert.
    #[arg(long, default_value_t = 32)]
    pub order: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 2.81)]
    pub omega: f64,
    #[arg(long, default_value_t = 3.0)]
    pub c_omega: f64,
    #[arg(long, default_value_t = 3.0)]
    pub c_wiedemann: f64,
    /// Bits added per field operation. Defaults to log2(log2(q)^2) for estimate and 0 for sweep-r.
    #[arg(long)]
    pub fieldop_bits: Option<f64>,
    /// Upper bound on the number of guessed columns in estimate.
    #[arg(long)]
    pub a_max: Option<usize>,
    /// Discard estimate cells whose degree of regularity exceeds this.
    #[arg(long)]
    pub max_dreg: Option<usize>,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Column cap for a single Macaulay matrix.
    #[arg(long, default_value_t = 200_000)]
    pub max_cols: usize,
    /// verify exits with status 3 when a cell does not match.
    #[arg(long)]
    pub strict: bool,
    /// Per-cell grid for estimate, progress on stderr for verify and trials.
    #[arg(long)]
    pub verbose: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            m: 5,
            n: 5,
            k: None,
            r: 2,
            d: 1,
            dc: None,
            dc_max: None,
            dx_max: 3,
            dx: 1,
            q: None,
            order: 32,
            seed: 1,
            omega: 2.81,
            c_omega: 3.0,
            c_wiedemann: 3.0,
            fieldop_bits: None,
            a_max: None,
            max_dreg: None,
            trials: 100,
            max_cols: 200_000,
            strict: false,
            verbose: false,
            format: Format::Json,
            out: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    #[serde(rename = "options")]
    pub opts: Options,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig { command, opts: Options::default() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_through_json() {
        let mut cfg = RunConfig::new(Command::Estimate);
        cfg.opts.k = Some(143);
        cfg.opts.q = Some(16);
        cfg.opts.fieldop_bits = Some(4.0);
        cfg.opts.out = Some("x.csv".into());
        let text = serde_json::to_string(&cfg).unwrap();
        assert!(text.contains("\"command\":\"estimate\""));
        assert!(text.contains("\"K\":143"));
        let back: RunConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn clap_defaults_match_default() {
        use clap::Parser;
        #[derive(Parser)]
        struct P {
            #[command(flatten)]
            o: Options,
        }
        assert_eq!(P::parse_from(["x"]).o, Options::default());
    }
}
