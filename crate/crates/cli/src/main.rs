//! `starxy`: sweeps, verification reports, spectra, bands, dynamics, and
//! flux-control inversion for ancilla-coupled resonator lattices.
//!
//! Frequencies on this boundary are linear GHz (omega / 2pi); times are ns.
//! Exit codes: 0 success, 2 validation error, 3 tolerance failure, 4 range
//! error.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::CliError;
use config::FileConfig;

#[derive(Parser)]
#[command(
    name = "starxy",
    version,
    about = "Ancilla-coupled resonator lattices: tunable couplings, spectra, bands, and dynamics"
)]
struct Cli {
    /// JSON config file; explicit flags override its values.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Option<CommandKind>,
}

#[derive(Subcommand)]
enum CommandKind {
    /// Sweep the effective coupling J_n over (omega_a, f).
    CouplingSweep(commands::SweepArgs),
    /// Decouple one star and report closed-form agreements.
    StarVerify(commands::VerifyArgs),
    /// Real-space spectrum of a lattice model.
    Spectrum(commands::SpectrumArgs),
    /// Band structure of a periodic lattice model.
    Bands(commands::BandsArgs),
    /// Time evolution of a single-excitation state.
    Dynamics(commands::DynamicsArgs),
    /// Invert the flux -> E_J -> omega_a -> J_n chain for a target coupling.
    Tune(commands::TuneArgs),
}

impl CommandKind {
    fn name(&self) -> &'static str {
        match self {
            CommandKind::CouplingSweep(_) => "coupling-sweep",
            CommandKind::StarVerify(_) => "star-verify",
            CommandKind::Spectrum(_) => "spectrum",
            CommandKind::Bands(_) => "bands",
            CommandKind::Dynamics(_) => "dynamics",
            CommandKind::Tune(_) => "tune",
        }
    }

    fn from_name(name: &str) -> Option<Self> {
        match name {
            "coupling-sweep" => Some(CommandKind::CouplingSweep(Default::default())),
            "star-verify" => Some(CommandKind::StarVerify(Default::default())),
            "spectrum" => Some(CommandKind::Spectrum(Default::default())),
            "bands" => Some(CommandKind::Bands(Default::default())),
            "dynamics" => Some(CommandKind::Dynamics(Default::default())),
            "tune" => Some(CommandKind::Tune(Default::default())),
            _ => None,
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = match &cli.config {
        Some(path) => FileConfig::load(path).map_err(CliError::Validation)?,
        None => FileConfig::default(),
    };

    let command = match cli.command {
        Some(command) => {
            if let Some(cfg_name) = &cfg.command {
                if cfg_name != command.name() {
                    return Err(CliError::Validation(format!(
                        "config requests command `{cfg_name}` but `{}` was invoked",
                        command.name()
                    )));
                }
            }
            command
        }
        None => {
            let name = cfg.command.as_deref().ok_or_else(|| {
                CliError::Validation(
                    "no subcommand given and the config has no \"command\" field".into(),
                )
            })?;
            CommandKind::from_name(name).ok_or_else(|| {
                CliError::Validation(format!("unknown command `{name}` in config"))
            })?
        }
    };

    match &command {
        CommandKind::CouplingSweep(args) => commands::run_coupling_sweep(args, &cfg),
        CommandKind::StarVerify(args) => commands::run_star_verify(args, &cfg),
        CommandKind::Spectrum(args) => commands::run_spectrum(args, &cfg),
        CommandKind::Bands(args) => commands::run_bands(args, &cfg),
        CommandKind::Dynamics(args) => commands::run_dynamics(args, &cfg),
        CommandKind::Tune(args) => commands::run_tune(args, &cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.exit_code())
        }
    }
}
