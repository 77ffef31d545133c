//! Command-line front end for the `tadpole` standing-wave library.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod svg;
pub mod verify;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use commands::Outcome;
pub use config::{ConfigLayer, Format, RunConfig, OUTPUT_DIR_ENV};
pub use error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "tadpole", version, about = "Standing waves of the quintic NLS on the tadpole graph")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Flat key=value configuration file.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[arg(long, global = true)]
    pub quad_tol: Option<f64>,

    #[arg(long, global = true)]
    pub root_tol: Option<f64>,

    #[arg(long, global = true)]
    pub grid_n: Option<usize>,

    /// Tail truncation `L = factor / eps^2`.
    #[arg(long = "l-trunc-factor", global = true)]
    pub l_trunc_factor: Option<f64>,

    /// Output directory. Falls back to `TADPOLE_OUTPUT_DIR`, then `.`.
    #[arg(long, global = true, value_name = "DIR")]
    pub output_dir: Option<PathBuf>,

    #[arg(long, global = true, value_parser = ["csv", "json"])]
    pub format: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve for one standing wave and print its parameters and checks.
    Solve {
        #[arg(long, allow_hyphen_values = true, conflicts_with = "u0", required_unless_present = "u0")]
        omega: Option<f64>,
        #[arg(long)]
        u0: Option<f64>,
    },
    /// Sweep the mass curve and write `mass_curve.{csv,json}` and `mass_curve.svg`.
    MassCurve,
    /// Locate the critical frequencies and write `critical.{csv,json}`.
    Critical,
    /// Sample the profile on the graph and write `profile.*`, `profile.svg`, `phase.svg`.
    Profile {
        #[arg(long, allow_hyphen_values = true)]
        omega: f64,
        /// Ring intervals; defaults to `grid_n`.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Tabulate the scattering data of the linear problem.
    Spectrum,
    /// Compare the solver with both mass expansions.
    Asymptotics,
    /// Run every invariant check. Exit code 1 if any fails.
    Verify,
}

impl GlobalArgs {
    fn layer(&self) -> CliResult<ConfigLayer> {
        Ok(ConfigLayer {
            quad_tol: self.quad_tol,
            root_tol: self.root_tol,
            grid_n: self.grid_n,
            l_trunc_factor: self.l_trunc_factor,
            output_dir: self.output_dir.clone(),
            format: self.format.as_deref().map(str::parse).transpose()?,
        })
    }

    /// Flags over the config file over defaults, with the environment
    /// variable as output-directory fallback.
    pub fn resolve(&self) -> CliResult<RunConfig> {
        let file = match &self.config {
            Some(path) => ConfigLayer::load(path)?,
            None => ConfigLayer::default(),
        };
        let env_dir = std::env::var_os(OUTPUT_DIR_ENV).map(PathBuf::from);
        RunConfig::resolve(self.layer()?, file, env_dir)
    }
}

pub fn run(cli: &Cli) -> CliResult<Outcome> {
    let cfg = cli.global.resolve()?;
    match &cli.command {
        Command::Solve { omega, u0 } => commands::solve(&cfg, *omega, *u0),
        Command::MassCurve => commands::mass_curve(&cfg),
        Command::Critical => commands::critical(&cfg),
        Command::Profile { omega, n } => commands::profile(&cfg, *omega, *n),
        Command::Spectrum => commands::spectrum(&cfg),
        Command::Asymptotics => commands::asymptotics(&cfg),
        Command::Verify => verify::verify(&cfg),
    }
}
