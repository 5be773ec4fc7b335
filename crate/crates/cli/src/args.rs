use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "d4",
    version,
    about = "Families of D4-quartic fields with a fixed biquadratic resolvent"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format; tables default to csv, reports to json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads; results do not depend on this.
    #[arg(long, global = true, env = "D4_THREADS")]
    pub threads: Option<usize>,
    /// Flat `key = value` file of default flag values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Run manifest; defaults to `<out>.manifest.json` when `--out` is given.
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct ContextArgs {
    #[arg(long = "a", allow_negative_numbers = true)]
    pub a: i64,
    #[arg(long = "b", allow_negative_numbers = true)]
    pub b: i64,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct FieldArgs {
    #[command(flatten)]
    pub ctx: ContextArgs,
    /// Family parameter: square-free and prime to `ab`.
    #[arg(long = "m", default_value_t = 1)]
    pub m: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Norm criteria and the minimal generator triple of a context.
    NormTest {
        #[command(flatten)]
        ctx: ContextArgs,
    },
    /// Family members with discriminant bound at most X.
    Enumerate {
        #[command(flatten)]
        ctx: ContextArgs,
        #[arg(long = "X")]
        x: f64,
    },
    /// Member counts against X^(1/2), or square-free counts against Z.
    Count {
        #[arg(long = "a", requires = "b", allow_negative_numbers = true)]
        a: Option<i64>,
        #[arg(long = "b", requires = "a", allow_negative_numbers = true)]
        b: Option<i64>,
        #[arg(long = "X-grid", value_delimiter = ',', requires = "a")]
        x_grid: Vec<f64>,
        /// Modulus of the coprimality condition.
        #[arg(long = "q", conflicts_with = "a", requires = "z_grid")]
        q: Option<u64>,
        #[arg(long = "Z-grid", value_delimiter = ',', requires = "q")]
        z_grid: Vec<f64>,
    },
    /// Frobenius records of every odd prime up to x.
    Frobenius {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long = "x")]
        x: f64,
    },
    /// Class counts against the Chebotarev densities.
    Chebotarev {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long = "x")]
        x: f64,
    },
    /// Local Euler factor identity at every admissible prime up to x.
    ZetaCheck {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long = "x")]
        x: f64,
    },
    /// Traces of the two-dimensional representation at admissible primes.
    RhoCoeffs {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long = "x")]
        x: f64,
    },
    /// Effective thresholds on a log scale.
    Thresholds {
        #[command(flatten)]
        ctx: ContextArgs,
        #[arg(long, default_value_t = 0.1)]
        eps0: f64,
        #[arg(long = "C0", default_value_t = 1.0)]
        c0: f64,
        #[arg(long = "C1", default_value_t = 1.0)]
        c1: f64,
        #[arg(long = "C5", default_value_t = 1.0)]
        c5: f64,
        #[arg(long = "beta-max", default_value_t = 0.75)]
        beta_max: f64,
        /// Values of log D at which to evaluate the prime threshold.
        #[arg(long = "ln-d", value_delimiter = ',')]
        ln_d: Vec<f64>,
        /// Heights at which to evaluate the zero-free boundary.
        #[arg(long = "t", value_delimiter = ',')]
        t: Vec<f64>,
    },
    /// Completely split primes below the discriminant bound to the eta.
    Ev {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        ell: u64,
        #[arg(long)]
        eta: f64,
    },
    /// Validate an external class-group table and report torsion ratios.
    IngestCl {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        ell: u64,
    },
    /// Quick invariant checks across all modules.
    Selftest,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::NormTest { .. } => "norm-test",
            Command::Enumerate { .. } => "enumerate",
            Command::Count { .. } => "count",
            Command::Frobenius { .. } => "frobenius",
            Command::Chebotarev { .. } => "chebotarev",
            Command::ZetaCheck { .. } => "zeta-check",
            Command::RhoCoeffs { .. } => "rho-coeffs",
            Command::Thresholds { .. } => "thresholds",
            Command::Ev { .. } => "ev",
            Command::IngestCl { .. } => "ingest-cl",
            Command::Selftest => "selftest",
        }
    }
}
