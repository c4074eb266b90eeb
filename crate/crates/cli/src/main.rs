use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use rotoshift_cli::config::{Format, PhotonM};
use rotoshift_cli::{execute, Command, Overrides};

/// Quasi-energy spectra and rotational frequency shifts of rotating emitters.
#[derive(Debug, Parser)]
#[command(name = "rotoshift", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// Scenario configuration (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Output file; written atomically. Defaults to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Photon angular-momentum projection: `auto` (M = m_z - m_z') or an integer.
    #[arg(long = "M", allow_hyphen_values = true)]
    photon_m: Option<PhotonM>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = Args::parse();
    let overrides = Overrides {
        out: args.out,
        format: args.format,
        photon_m: args.photon_m,
    };
    match execute(args.command, &args.config, &overrides) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("rotoshift: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
