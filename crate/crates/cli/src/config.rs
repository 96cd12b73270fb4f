//! Command-line arguments and the validated job description.

use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use modeq_core::exactalg::{parse_rational, BigRational};

use crate::formats::parse_rational_list;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Compute Φ_p from a curve, Hecke tables and eigenvalue maps.
    Modeq,
    /// Compute the T_p tables from T_{p0} tables and eigenvalue maps.
    Transfer,
    /// Frobenius series of the Schwarzian equation at an elliptic point.
    Series,
    /// Check a candidate Φ file.
    Verify,
    /// Factor Φ(x, x) and list the singular moduli.
    SingularModuli,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "modeq", version, about = "Modular equations of genus-zero Shimura curves")]
pub struct Args {
    #[arg(long, value_enum)]
    pub mode: Mode,
    /// Curve description file.
    #[arg(long)]
    pub curve: Option<PathBuf>,
    /// Hecke table file; repeat for several primes.
    #[arg(long)]
    pub hecke: Vec<PathBuf>,
    /// Eigenvalue map file relating T_{p0} to T_p.
    #[arg(long)]
    pub eigenmap: Option<PathBuf>,
    /// Level p of the modular equation.
    #[arg(long)]
    pub prime: Option<u64>,
    /// Prime p0 of the supplied Hecke tables.
    #[arg(long)]
    pub base_prime: Option<u64>,
    /// Weight of the seed form; defaults to the smallest weight with forms.
    #[arg(long)]
    pub seed_weight: Option<u32>,
    /// Comma-separated coordinates that must be roots of Φ(x, x).
    #[arg(long, allow_hyphen_values = true)]
    pub cm_hints: Option<String>,
    /// Number of series terms after the leading one.
    #[arg(long, default_value_t = 4)]
    pub order: usize,
    /// Expansion point for series mode.
    #[arg(long, allow_hyphen_values = true)]
    pub point: Option<String>,
    /// Local exponent for series mode; defaults to the smaller one.
    #[arg(long, allow_hyphen_values = true)]
    pub branch: Option<String>,
    /// Φ file for verify and singular-moduli modes.
    #[arg(long)]
    pub phi: Option<PathBuf>,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Run log; standard error when absent.
    #[arg(long)]
    pub log: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("mode {mode} needs --{flag}")]
    MissingInput { mode: &'static str, flag: &'static str },
    #[error("--prime and --base-prime must differ, both are {0}")]
    SamePrimes(u64),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("bad --{flag} value: {message}")]
    BadValue { flag: &'static str, message: String },
    #[error("p = {prime} divides the discriminant {discriminant} of curve {curve}")]
    PrimeDividesDiscriminant { prime: u64, discriminant: u64, curve: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobConfig {
    pub mode: Mode,
    pub curve: Option<PathBuf>,
    pub hecke: Vec<PathBuf>,
    pub eigenmap: Option<PathBuf>,
    pub prime: Option<u64>,
    pub base_prime: Option<u64>,
    pub seed_weight: Option<u32>,
    pub cm_hints: Option<Vec<BigRational>>,
    pub order: usize,
    pub point: Option<BigRational>,
    pub branch: Option<BigRational>,
    pub phi: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub log: Option<PathBuf>,
}

pub fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Modeq => "modeq",
        Mode::Transfer => "transfer",
        Mode::Series => "series",
        Mode::Verify => "verify",
        Mode::SingularModuli => "singular-moduli",
    }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn rational_flag(flag: &'static str, value: Option<String>) -> Result<Option<BigRational>, ConfigError> {
    value
        .map(|v| parse_rational(&v).map_err(|e| ConfigError::BadValue { flag, message: e.to_string() }))
        .transpose()
}

impl JobConfig {
    /// Builds and validates a job from parsed arguments.
    pub fn from_args(args: Args) -> Result<Self, ConfigError> {
        let cm_hints = args
            .cm_hints
            .map(|s| parse_rational_list(&s).map_err(|e| ConfigError::BadValue { flag: "cm-hints", message: e.kind.to_string() }))
            .transpose()?;
        let config = JobConfig {
            mode: args.mode,
            curve: args.curve,
            hecke: args.hecke,
            eigenmap: args.eigenmap,
            prime: args.prime,
            base_prime: args.base_prime,
            seed_weight: args.seed_weight,
            cm_hints,
            order: args.order,
            point: rational_flag("point", args.point)?,
            branch: rational_flag("branch", args.branch)?,
            phi: args.phi,
            out: args.out,
            log: args.log,
        };
        config.validate()?;
        Ok(config)
    }

    /// Parses `argv` (including the program name) and validates it.
    pub fn parse_from<I, T>(argv: I) -> Result<Self, CliParseError>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        let args = Args::try_parse_from(argv).map_err(|e| CliParseError::Clap(e.to_string()))?;
        Self::from_args(args).map_err(CliParseError::Config)
    }

    /// Checks the inputs each mode requires and the prime conditions that
    /// do not depend on file contents.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let mode = mode_name(self.mode);
        let need = |present: bool, flag: &'static str| {
            if present {
                Ok(())
            } else {
                Err(ConfigError::MissingInput { mode, flag })
            }
        };
        match self.mode {
            Mode::Modeq => {
                need(self.curve.is_some(), "curve")?;
                need(!self.hecke.is_empty(), "hecke")?;
                need(self.prime.is_some(), "prime")?;
                if self.eigenmap.is_some() {
                    need(self.base_prime.is_some(), "base-prime")?;
                }
            }
            Mode::Transfer => {
                need(self.curve.is_some(), "curve")?;
                need(!self.hecke.is_empty(), "hecke")?;
                need(self.eigenmap.is_some(), "eigenmap")?;
            }
            Mode::Series => {
                need(self.curve.is_some(), "curve")?;
                need(self.point.is_some(), "point")?;
            }
            Mode::Verify | Mode::SingularModuli => need(self.phi.is_some(), "phi")?,
        }
        for p in [self.prime, self.base_prime].into_iter().flatten() {
            if !is_prime(p) {
                return Err(ConfigError::NotPrime(p));
            }
        }
        if let (Some(p), Some(p0)) = (self.prime, self.base_prime) {
            if p == p0 {
                return Err(ConfigError::SamePrimes(p));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliParseError {
    #[error("{0}")]
    Clap(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
}
