//! Command-line front end: reads a JSON scenario, runs one command and
//! writes the resulting table as CSV or JSON.

pub mod commands;
pub mod config;
pub mod error;
pub mod report;

use std::path::{Path, PathBuf};

use rotoshift_core::PhysicalConstants;

use crate::config::{Format, PhotonM, Requirements, Scenario, ScenarioConfig};
pub use crate::error::CliError;
use crate::report::Table;

pub const THREADS_ENV: &str = "ROTOSHIFT_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Spectrum,
    Drfs,
    Doppler,
    CompareStark,
    Sweep,
}

#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub photon_m: Option<PhotonM>,
}

/// Thread cap for sweeps from `ROTOSHIFT_THREADS`; 0 or unset means one
/// thread per core.
pub fn threads_from_env() -> Result<usize, CliError> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Validation(format!("{THREADS_ENV}: expected a non-negative integer, got `{v}`"))),
        Err(std::env::VarError::NotPresent) => Ok(0),
        Err(e) => Err(CliError::Validation(format!("{THREADS_ENV}: {e}"))),
    }
}

/// Run `command` on a parsed configuration and return its table.
pub fn run_scenario(
    command: Command,
    config: &ScenarioConfig,
    photon_m: Option<PhotonM>,
    threads: usize,
) -> Result<Table, CliError> {
    let c = PhysicalConstants::codata2018();
    let needs = |transition, drive_magnitude, sweep| Requirements {
        allow_hz: command == Command::CompareStark,
        transition,
        drive_magnitude,
        sweep,
    };
    match command {
        Command::Doppler => {
            let section = config
                .doppler
                .as_ref()
                .ok_or_else(|| CliError::Validation("doppler: required".into()))?;
            commands::doppler(section, &c)
        }
        Command::Spectrum => commands::spectrum(&Scenario::validate(config, needs(false, false, false), photon_m)?, &c),
        Command::Drfs => commands::drfs(&Scenario::validate(config, needs(true, false, false), photon_m)?, &c),
        Command::CompareStark => {
            commands::compare_stark(&Scenario::validate(config, needs(false, true, false), photon_m)?, &c)
        }
        Command::Sweep => {
            let scenario = Scenario::validate(config, needs(true, false, true), photon_m)?;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| CliError::Validation(format!("thread pool: {e}")))?;
            commands::sweep(&scenario, &c, &pool)
        }
    }
}

pub fn read_config(path: &Path) -> Result<ScenarioConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(format!("config {}", path.display()), e))?;
    ScenarioConfig::from_json(&text)
}

/// Full run: read, compute, write. Output goes to `--out`, else the
/// config's `output.path`, else stdout.
pub fn execute(command: Command, config_path: &Path, overrides: &Overrides) -> Result<(), CliError> {
    let config = read_config(config_path)?;
    let threads = threads_from_env()?;
    let table = run_scenario(command, &config, overrides.photon_m, threads)?;
    let format = overrides.format.or(config.output.format).unwrap_or_default();
    let text = table.render(format);
    match overrides.out.as_ref().or(config.output.path.as_ref()) {
        Some(path) => report::write_atomic(path, &text),
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| CliError::io("stdout", e))
        }
    }
}
