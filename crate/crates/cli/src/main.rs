mod cache;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use liftcong::Error;

/// Exact Fourier coefficients, critical L-values and congruence primes for
/// Duke–Imamoglu–Ikeda lifts.
#[derive(Parser, Debug)]
#[command(name = "liftcong", version)]
pub struct Cli {
    /// Cache directory; defaults to $LIFTCONG_CACHE_DIR, caching is off when neither is set.
    #[arg(long, global = true, env = "LIFTCONG_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub out: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum Format {
    Json,
    Tsv,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Normalized eigenforms of level one, one per Galois orbit.
    Eigenforms {
        #[arg(long)]
        weight: u32,
        /// Number of q-expansion coefficients shown.
        #[arg(long, default_value_t = 20)]
        prec: usize,
    },
    /// Hecke eigenbasis of the Kohnen plus space of weight λ + 1/2, with Shimura images.
    PlusSpace {
        #[arg(long)]
        lambda: u32,
        #[arg(long, default_value_t = 30)]
        prec: usize,
    },
    /// Degree-two lift coefficients c(T) for det(2T) up to a bound.
    LiftCoeffs {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        det_bound: i64,
        /// Which plus-space eigenform (orbit index) to lift.
        #[arg(long, default_value_t = 0)]
        form: usize,
    },
    /// Normalized critical values L(l, f, χ_D) from modular symbols.
    Lvalues {
        #[arg(long)]
        weight: u32,
        /// Single l or an inclusive range a..b.
        #[arg(long)]
        l: String,
        #[arg(long, default_value_t = 1)]
        d: i64,
        /// Rational prime under the normalizing prime ideal.
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value_t = 0)]
        prime_index: usize,
        #[arg(long, default_value_t = 0)]
        form: usize,
    },
    /// Three-condition congruence test at every prime ideal above --prime.
    Congruence {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value_t = 0)]
        form: usize,
        /// Inclusive m range a..b; defaults to the full admissible range.
        #[arg(long)]
        m_range: Option<String>,
        #[arg(long, default_value_t = 1)]
        d_bound: i64,
        /// Starting precision of the adjoint reconstruction.
        #[arg(long, default_value_t = 256)]
        bits: u32,
    },
    /// Reproduce the n = 4, k = 18 example, failing on any pinned mismatch.
    Example {
        #[arg(long, default_value_t = 256)]
        bits: u32,
    },
}

/// Process exit codes.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Precondition(_) | Error::SiegelUnsupported(_) | Error::FactorizationUnsupported(_) | Error::MatchAmbiguous(_) => 3,
        Error::Resource(_) | Error::InsufficientPrecision(_) | Error::SearchExhausted(_) => 4,
        Error::Regression(_) => 5,
        Error::Io(_) => 6,
        Error::Inconsistent(_) => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("liftcong: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_are_distinct_per_class() {
        let pre = exit_code(&Error::pre("x"));
        let res = exit_code(&Error::Resource("x".into()));
        let reg = exit_code(&Error::Regression("x".into()));
        assert_eq!((pre, res, reg), (3, 4, 5));
        assert_eq!(exit_code(&Error::InsufficientPrecision("x".into())), res);
    }

    #[test]
    fn ranges_parse() {
        assert_eq!(commands::parse_range("3..6", "m").unwrap(), (3, 6));
        assert_eq!(commands::parse_range("18", "l").unwrap(), (18, 18));
        assert!(commands::parse_range("6..3", "m").is_err());
    }
}
