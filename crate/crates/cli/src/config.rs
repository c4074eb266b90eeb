//! Scenario configuration: the JSON schema and its validation into library
//! types. All angular frequencies are rad/s unless the field name says Hz.

use std::f64::consts::PI;
use std::path::PathBuf;

use rotoshift_core::{LevelLabel, RotorConfig, Transition, Vec3};
use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Harmonic,
    Coulomb,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RotorSection {
    pub omega_rad_s: Option<f64>,
    pub omega_over_2pi_hz: Option<f64>,
    pub radius_m: f64,
    pub omega0_rad_s: Option<f64>,
    #[serde(rename = "Z")]
    pub z: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
enum AutoKeyword {
    Auto,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawPhotonM {
    Fixed(i32),
    Keyword(AutoKeyword),
}

/// Photon angular-momentum projection: an integer or `"auto"`
/// (M = m_z − m_z′).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(from = "RawPhotonM")]
pub enum PhotonM {
    Fixed(i32),
    Auto,
}

impl From<RawPhotonM> for PhotonM {
    fn from(raw: RawPhotonM) -> Self {
        match raw {
            RawPhotonM::Fixed(m) => Self::Fixed(m),
            RawPhotonM::Keyword(AutoKeyword::Auto) => Self::Auto,
        }
    }
}

impl std::str::FromStr for PhotonM {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "auto" {
            return Ok(Self::Auto);
        }
        s.parse()
            .map(Self::Fixed)
            .map_err(|_| format!("expected `auto` or an integer, got `{s}`"))
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionSection {
    pub upper: (u32, i32),
    pub lower: (u32, i32),
    #[serde(rename = "M")]
    pub m: Option<PhotonM>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Parallel,
    Antiparallel,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DriveSection {
    #[serde(rename = "E_V_per_m")]
    pub e_v_per_m: Option<f64>,
    pub orientation: Orientation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Omega,
    Radius,
    Drive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub axis: Axis,
    pub from: f64,
    pub to: f64,
    pub points: usize,
    #[serde(default)]
    pub scale: Scale,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub format: Option<Format>,
    pub path: Option<PathBuf>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisSection {
    pub n_max: u32,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DopplerSection {
    #[serde(rename = "delta_e_J")]
    pub delta_e_j: f64,
    pub v_m_per_s: [f64; 3],
    pub direction: [f64; 3],
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub model: Option<ModelKind>,
    pub rotor: Option<RotorSection>,
    pub transition: Option<TransitionSection>,
    pub drive: Option<DriveSection>,
    pub sweep: Option<SweepSection>,
    #[serde(default)]
    pub output: OutputSection,
    pub basis: Option<BasisSection>,
    pub doppler: Option<DopplerSection>,
}

impl ScenarioConfig {
    /// Parse JSON text; syntax and schema errors carry line and column.
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Validation(format!("config: {e}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Drive {
    pub magnitude: f64,
    pub orientation: Orientation,
}

impl Drive {
    /// Field vector along the radius vector (parallel) or against it.
    pub fn vector(&self) -> Vec3 {
        let sign = match self.orientation {
            Orientation::Parallel => 1.0,
            Orientation::Antiparallel => -1.0,
        };
        // the radius vector points along −y
        Vec3::new(0.0, -sign * self.magnitude, 0.0)
    }

    pub fn with_magnitude(&self, magnitude: f64) -> Self {
        Self { magnitude, ..*self }
    }
}

/// Validated rotor, model and transition shared by the commands.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub model: ModelKind,
    pub rotor: RotorConfig,
    pub transition: Option<Transition>,
    pub drive: Option<Drive>,
    pub sweep: Option<SweepSection>,
    pub n_max: Option<u32>,
}

fn field(path: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Validation(format!("{path}: {msg}"))
}

fn finite(path: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(field(path, "must be finite"))
    }
}

pub fn rotor(config: &ScenarioConfig, allow_hz: bool) -> Result<(ModelKind, RotorConfig), CliError> {
    let model = config
        .model
        .ok_or_else(|| field("model", "required (harmonic or coulomb)"))?;
    let r = config.rotor.as_ref().ok_or_else(|| field("rotor", "required"))?;
    let omega = match (r.omega_rad_s, r.omega_over_2pi_hz) {
        (Some(w), None) => finite("rotor.omega_rad_s", w)?,
        (None, Some(hz)) if allow_hz => 2.0 * PI * finite("rotor.omega_over_2pi_hz", hz)?,
        (None, Some(_)) => return Err(field("rotor.omega_over_2pi_hz", "only accepted by compare-stark")),
        (Some(_), Some(_)) => return Err(field("rotor", "give omega_rad_s or omega_over_2pi_hz, not both")),
        (None, None) => return Err(field("rotor.omega_rad_s", "required")),
    };
    let radius = finite("rotor.radius_m", r.radius_m)?;
    if radius < 0.0 {
        return Err(field("rotor.radius_m", "must be non-negative"));
    }
    let rotor = match model {
        ModelKind::Harmonic => {
            if r.z.is_some() {
                return Err(field("rotor.Z", "not used by the harmonic model"));
            }
            let omega0 = r
                .omega0_rad_s
                .ok_or_else(|| field("rotor.omega0_rad_s", "required for the harmonic model"))?;
            RotorConfig::harmonic(finite("rotor.omega0_rad_s", omega0)?, omega, radius)
        }
        ModelKind::Coulomb => {
            if r.omega0_rad_s.is_some() {
                return Err(field("rotor.omega0_rad_s", "not used by the coulomb model"));
            }
            RotorConfig::coulomb(omega, radius, r.z.unwrap_or(1))
        }
    }
    .map_err(|e| CliError::from_core("rotor", e))?;
    Ok((model, rotor))
}

fn level(path: &str, model: ModelKind, (q, m_z): (u32, i32)) -> Result<LevelLabel, CliError> {
    let max = match model {
        ModelKind::Harmonic => q as i64,
        ModelKind::Coulomb => {
            if q < 1 {
                return Err(field(path, "principal quantum number must be at least 1"));
            }
            q as i64 - 1
        }
    };
    if (m_z as i64).abs() > max {
        return Err(field(path, format!("|m_z| = {} exceeds {max}", m_z.abs())));
    }
    Ok(LevelLabel::new(q, m_z))
}

pub fn transition(
    section: &TransitionSection,
    model: ModelKind,
    m_override: Option<PhotonM>,
) -> Result<Transition, CliError> {
    let upper = level("transition.upper", model, section.upper)?;
    let lower = level("transition.lower", model, section.lower)?;
    Ok(match m_override.or(section.m).unwrap_or(PhotonM::Auto) {
        PhotonM::Auto => Transition::conserving(upper, lower),
        PhotonM::Fixed(m) => Transition::with_photon_m(upper, lower, m),
    })
}

fn drive(section: &DriveSection, model: ModelKind, needs_magnitude: bool) -> Result<Drive, CliError> {
    if model != ModelKind::Coulomb {
        return Err(field("drive", "only the coulomb model accepts a drive field"));
    }
    let magnitude = match section.e_v_per_m {
        Some(e) => finite("drive.E_V_per_m", e)?,
        None if needs_magnitude => return Err(field("drive.E_V_per_m", "required")),
        None => 0.0,
    };
    if magnitude < 0.0 {
        return Err(field("drive.E_V_per_m", "must be non-negative"));
    }
    Ok(Drive {
        magnitude,
        orientation: section.orientation,
    })
}

pub fn sweep(section: &SweepSection, model: ModelKind, has_drive: bool) -> Result<SweepSection, CliError> {
    finite("sweep.from", section.from)?;
    finite("sweep.to", section.to)?;
    if section.points < 2 {
        return Err(field("sweep.points", "must be at least 2"));
    }
    if section.from == section.to {
        return Err(field("sweep", "degenerate range (from = to)"));
    }
    if section.scale == Scale::Log && !(section.from > 0.0 && section.to > 0.0) {
        return Err(field("sweep", "log scale needs positive endpoints"));
    }
    match section.axis {
        Axis::Radius if section.from.min(section.to) < 0.0 => {
            return Err(field("sweep", "radius must be non-negative"));
        }
        Axis::Drive if model != ModelKind::Coulomb || !has_drive => {
            return Err(field(
                "sweep.axis",
                "drive sweeps need the coulomb model and a drive block",
            ));
        }
        Axis::Drive if section.from.min(section.to) < 0.0 => {
            return Err(field("sweep", "drive magnitude must be non-negative"));
        }
        _ => {}
    }
    Ok(section.clone())
}

/// Grid values in ascending axis order with both endpoints pinned exactly.
pub fn grid(section: &SweepSection) -> Vec<f64> {
    let (lo, hi) = if section.from <= section.to {
        (section.from, section.to)
    } else {
        (section.to, section.from)
    };
    let last = section.points - 1;
    (0..section.points)
        .map(|i| match i {
            0 => lo,
            i if i == last => hi,
            i => {
                let t = i as f64 / last as f64;
                match section.scale {
                    Scale::Linear => lo + (hi - lo) * t,
                    Scale::Log => (lo.ln() + (hi.ln() - lo.ln()) * t).exp(),
                }
            }
        })
        .collect()
}

pub struct Requirements {
    pub allow_hz: bool,
    pub transition: bool,
    pub drive_magnitude: bool,
    pub sweep: bool,
}

impl Scenario {
    pub fn validate(
        config: &ScenarioConfig,
        needs: Requirements,
        m_override: Option<PhotonM>,
    ) -> Result<Self, CliError> {
        let (model, rotor) = rotor(config, needs.allow_hz)?;
        let transition = match &config.transition {
            Some(t) => Some(transition(t, model, m_override)?),
            None if needs.transition => return Err(field("transition", "required")),
            None => None,
        };
        let drive = match &config.drive {
            Some(d) => Some(drive(d, model, needs.drive_magnitude)?),
            None if needs.drive_magnitude => return Err(field("drive", "required")),
            None => None,
        };
        let sweep = match &config.sweep {
            Some(s) => Some(sweep(s, model, drive.is_some())?),
            None if needs.sweep => return Err(field("sweep", "required")),
            None => None,
        };
        let n_max = config.basis.as_ref().map(|b| b.n_max);
        Ok(Self {
            model,
            rotor,
            transition,
            drive,
            sweep,
            n_max,
        })
    }
}
