//! The `mmwave` command line: one subcommand per experiment, CSV out.

mod commands;
mod scenario;

pub use scenario::{McScenario, Scenario, Sweep, SweepParameter, ThresholdGrid};

use crate::analytic::AnalyticError;
use crate::channel::ChannelError;
use crate::geometry::GeometryError;
use crate::montecarlo::{McError, RateForm};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("scenario line {line}: {message}")]
    Scenario { line: usize, message: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("writing CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Analytic(#[from] AnalyticError),
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    MonteCarlo(#[from] McError),
    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, CliError>;

/// Version string written into every CSV header.
pub fn version() -> String {
    match option_env!("MMWAVE_GIT_DESCRIBE") {
        Some(d) if !d.is_empty() => format!("{} ({d})", env!("CARGO_PKG_VERSION")),
        _ => env!("CARGO_PKG_VERSION").to_string(),
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "mmwave",
    version,
    about = "Coverage of street-level mmWave microcells on random street grids"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coverage probability against the SINR threshold, closed form and
    /// simulation under each interference filter.
    Coverage(CommonArgs),
    /// Probability of associating with a station on the receiver's street,
    /// swept over street intensity.
    Assoc(CommonArgs),
    /// Coverage against a swept density, with the interference-limited
    /// asymptote and, for street sweeps, a linear fit.
    Scaling(CommonArgs),
    /// Ergodic rate for random streets, a fixed grid and a street map.
    CompareStreets {
        #[command(flatten)]
        common: CommonArgs,
        /// Street map file; the bundled map is used when omitted.
        #[arg(long)]
        map: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = RateArg::Shannon)]
        rate_form: RateArg,
    },
    /// Runs the acceptance suite. The exit code is the number of failures.
    Validate {
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, env = "MMWAVE_WORKERS")]
        workers: Option<usize>,
        /// Criterion numbers to run, comma separated.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RateArg {
    /// log2(1 + SINR)
    Shannon,
    /// 1 + SINR
    OnePlusSinr,
}

impl From<RateArg> for RateForm {
    fn from(r: RateArg) -> Self {
        match r {
            RateArg::Shannon => RateForm::Shannon,
            RateArg::OnePlusSinr => RateForm::OnePlusSinr,
        }
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Scenario file of `section.key=value` lines.
    #[arg(long)]
    pub scenario: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads; all cores when unset.
    #[arg(long, env = "MMWAVE_WORKERS")]
    pub workers: Option<usize>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub lambda_s: Option<f64>,
    #[arg(long)]
    pub lambda_b: Option<f64>,
    #[arg(long)]
    pub alpha_l: Option<f64>,
    #[arg(long)]
    pub alpha_n: Option<f64>,
    #[arg(long)]
    pub delta_db: Option<f64>,
    #[arg(long)]
    pub nt: Option<u32>,
    #[arg(long)]
    pub n0: Option<f64>,
    /// Street layouts per Monte Carlo estimate.
    #[arg(long)]
    pub layouts: Option<usize>,
    /// Fading rounds per layout.
    #[arg(long)]
    pub fading: Option<usize>,
}

impl CommonArgs {
    /// Scenario file (or defaults) with command-line overrides applied.
    pub fn scenario(&self) -> Result<Scenario> {
        let mut s = match &self.scenario {
            Some(p) => Scenario::load(p)?,
            None => Scenario::default(),
        };
        let n = &mut s.network;
        if let Some(v) = self.lambda_s {
            *n = n.with_isotropic_streets(v);
        }
        let overrides = [
            (self.lambda_b, &mut n.lambda_b),
            (self.alpha_l, &mut n.alpha_l),
            (self.alpha_n, &mut n.alpha_n),
            (self.delta_db, &mut n.delta_db),
            (self.n0, &mut n.noise_n0),
        ];
        for (v, slot) in overrides {
            if let Some(v) = v {
                *slot = v;
            }
        }
        if let Some(v) = self.nt {
            n.n_t = v;
        }
        if let Some(v) = self.seed {
            s.mc.seed = v;
        }
        if let Some(v) = self.layouts {
            s.mc.n_layouts = v;
        }
        if let Some(v) = self.fading {
            s.mc.n_fading = v;
        }
        if let Some(v) = &self.out {
            s.outputs = v.clone();
        }
        s.validate()?;
        Ok(s)
    }
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Coverage(a) => commands::coverage(&a.scenario()?, a.workers).map(|_| 0),
        Command::Assoc(a) => commands::assoc(&a.scenario()?, a.workers).map(|_| 0),
        Command::Scaling(a) => commands::scaling(&a.scenario()?, a.workers).map(|_| 0),
        Command::CompareStreets {
            common,
            map,
            rate_form,
        } => commands::compare_streets(
            &common.scenario()?,
            common.workers,
            map.as_deref(),
            (*rate_form).into(),
        )
        .map(|_| 0),
        Command::Validate {
            seed,
            workers,
            only,
        } => Ok(commands::validate(*seed, *workers, only)),
    }
}

pub use commands::{assoc, compare_streets, coverage, scaling};
