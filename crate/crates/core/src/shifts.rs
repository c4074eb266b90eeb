//! Observable frequency shifts: Doppler, the kinematic ΩM shift, emitted
//! photon frequencies from quasi-energy conservation, and the dynamical
//! rotational frequency shift (DRFS) with its comparison ratios.

use std::f64::consts::PI;

use crate::constants::{atomic_velocity, PhysicalConstants};
use crate::error::{invalid, Error, Result};
use crate::quasi_energy::{
    coulomb_expansion_parameter, driven_rotating_levels, harmonic_level, rotating_coulomb_levels, LevelLabel,
    QuasiEnergy, SpectrumResult,
};
use crate::rotor::{RotorConfig, RotorModel, Vec3};

/// Largest v/c accepted by the non-relativistic Doppler formula.
pub const MAX_DOPPLER_BETA: f64 = 0.01;

/// Largest expansion parameter 3nRΩ/(2v_a) accepted by the series form.
pub const MAX_SERIES_PARAMETER: f64 = 0.3;

/// The rounded engineering prefactor 4π²m/e ≈ 2.24e-10 kg/C used to
/// evaluate mΩ²R/(eE) from Ω/2π in Hz.
pub const ENGINEERING_PREFACTOR: f64 = 2.24e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Helicity {
    Positive,
    Negative,
}

/// Cylindrical field mode (ω, M, k_z, χ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldModeLabel {
    omega: f64,
    m: i32,
    k_z: f64,
    helicity: Helicity,
}

impl FieldModeLabel {
    pub fn new(omega: f64, m: i32, k_z: f64, helicity: Helicity, constants: &PhysicalConstants) -> Result<Self> {
        if !(omega.is_finite() && omega > 0.0) {
            return invalid("mode frequency must be positive");
        }
        if !(k_z.abs() <= omega / constants.light_speed) {
            return invalid("|k_z| must not exceed omega/c");
        }
        Ok(Self {
            omega,
            m,
            k_z,
            helicity,
        })
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn angular_momentum(&self) -> i32 {
        self.m
    }

    pub fn k_z(&self) -> f64 {
        self.k_z
    }

    pub fn helicity(&self) -> Helicity {
        self.helicity
    }

    /// Photon quasi-energy frequency ω − ΩM seen in the rotating frame.
    pub fn rotating_frame_frequency(&self, omega_rot: f64) -> f64 {
        self.omega - rotational_kinematic_shift(omega_rot, self.m)
    }
}

/// ω = ΔE/ħ + v·k.
pub fn doppler_frequency(delta_e: f64, v: &Vec3, k: &Vec3, constants: &PhysicalConstants) -> Result<f64> {
    if !(delta_e > 0.0) {
        return invalid("transition energy must be positive");
    }
    check_beta(v, constants)?;
    Ok(delta_e / constants.hbar + v.dot(k))
}

/// Doppler frequency for emission along `direction`, with |k| = ω/c solved
/// self-consistently: ω = (ΔE/ħ) / (1 − v·n̂/c).
pub fn doppler_frequency_along(delta_e: f64, v: &Vec3, direction: &Vec3, constants: &PhysicalConstants) -> Result<f64> {
    if !(delta_e > 0.0) {
        return invalid("transition energy must be positive");
    }
    let norm = direction.norm();
    if !(norm > 0.0 && norm.is_finite()) {
        return invalid("emission direction must be a non-zero vector");
    }
    check_beta(v, constants)?;
    let beta = v.dot(direction) / (norm * constants.light_speed);
    Ok(delta_e / constants.hbar / (1.0 - beta))
}

fn check_beta(v: &Vec3, constants: &PhysicalConstants) -> Result<()> {
    let beta = v.norm() / constants.light_speed;
    if !beta.is_finite() {
        return invalid("velocity must be finite");
    }
    if beta > MAX_DOPPLER_BETA {
        return Err(Error::OutOfRegime(format!("v/c = {beta:e} exceeds {MAX_DOPPLER_BETA}")));
    }
    Ok(())
}

/// ΩM.
pub fn rotational_kinematic_shift(omega: f64, m: i32) -> f64 {
    omega * m as f64
}

/// A radiative transition (upper → lower) emitting a photon with angular
/// momentum projection M.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Transition {
    pub upper: LevelLabel,
    pub lower: LevelLabel,
    photon_m: i32,
    conservation_enforced: bool,
}

impl Transition {
    /// M = m_z − m_z′.
    pub fn conserving(upper: LevelLabel, lower: LevelLabel) -> Self {
        Self {
            upper,
            lower,
            photon_m: upper.m_z - lower.m_z,
            conservation_enforced: true,
        }
    }

    pub fn with_photon_m(upper: LevelLabel, lower: LevelLabel, photon_m: i32) -> Self {
        Self {
            upper,
            lower,
            photon_m,
            conservation_enforced: false,
        }
    }

    pub fn photon_m(&self) -> i32 {
        self.photon_m
    }

    pub fn conservation_enforced(&self) -> bool {
        self.conservation_enforced
    }

    /// m_z − m_z′
    pub fn delta_m(&self) -> i32 {
        self.upper.m_z - self.lower.m_z
    }

    /// Same transition with Ω-reflected quantum numbers (m_z, m_z′, M) → −(…).
    pub fn mirrored(&self) -> Self {
        let flip = |l: LevelLabel| LevelLabel::new(l.q, -l.m_z);
        Self {
            upper: flip(self.upper),
            lower: flip(self.lower),
            photon_m: -self.photon_m,
            ..*self
        }
    }
}

/// ω = (𝓔_upper − 𝓔_lower)/ħ + ΩM from a labelled quasi-energy spectrum.
pub fn emitted_frequency(
    levels: &SpectrumResult,
    t: &Transition,
    omega: f64,
    constants: &PhysicalConstants,
) -> Result<f64> {
    let find = |label| {
        levels
            .find(label)
            .map(|l| l.quasi_energy)
            .ok_or_else(|| Error::NotFound(format!("no level labelled {label}")))
    };
    let (upper, lower) = (find(t.upper)?, find(t.lower)?);
    let freq = (upper - lower) / constants.hbar + rotational_kinematic_shift(omega, t.photon_m);
    if !(freq > 0.0) {
        return Err(Error::UnphysicalTransition(freq));
    }
    Ok(freq)
}

/// Leading-order shift in the two prefactor conventions: `angular` expands
/// the exact formula with v_c = ΩR; `revolutions` carries the extra factor
/// 4π² that appears when Ω inside (v_c/v_a)² is read as a revolution rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesShift {
    pub angular: f64,
    pub revolutions: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ShiftRatios {
    /// DRFS / (ω v_c²/2c²) from the angular-convention series.
    pub transverse_doppler: Option<f64>,
    /// Same ratio with the revolutions-convention series.
    pub transverse_doppler_revolutions: Option<f64>,
    /// mΩ²R / (eE) when a drive field is present.
    pub force_ratio: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftReport {
    pub transition: Transition,
    pub upper: QuasiEnergy,
    pub lower: QuasiEnergy,
    /// Frequency emitted at rest, rad/s.
    pub omega_rest: f64,
    /// omega_rest + drfs, rad/s.
    pub omega_rotating: f64,
    /// ω(Ω) − ω(0), rad/s.
    pub drfs: f64,
    /// ΩM − Ω(m_z − m_z′)
    pub kinematic_part: f64,
    /// Level-modification part, the difference of the quasi-energy
    /// corrections divided by ħ.
    pub dynamic_part: f64,
    pub series: Option<SeriesShift>,
    pub ratios: ShiftRatios,
}

fn report(
    t: &Transition,
    omega: f64,
    upper: QuasiEnergy,
    lower: QuasiEnergy,
    constants: &PhysicalConstants,
) -> ShiftReport {
    let hbar = constants.hbar;
    let omega_rest = (upper.unperturbed - lower.unperturbed) / hbar;
    let kinematic_part = rotational_kinematic_shift(omega, t.photon_m) - rotational_kinematic_shift(omega, t.delta_m());
    let dynamic_part = (upper.correction - lower.correction) / hbar;
    let drfs = kinematic_part + dynamic_part;
    ShiftReport {
        transition: *t,
        upper,
        lower,
        omega_rest,
        omega_rotating: omega_rest + drfs,
        drfs,
        kinematic_part,
        dynamic_part,
        series: None,
        ratios: ShiftRatios::default(),
    }
}

fn coulomb_charge(rotor: &RotorConfig) -> Result<u32> {
    rotor
        .charge()
        .ok_or_else(|| Error::InvalidArgument("DRFS requires a Coulomb rotor".into()))
}

/// Exact DRFS from the rotating Coulomb quasi-energies. Series values and
/// transverse-Doppler ratios are attached when the series regime holds.
pub fn drfs_exact(t: &Transition, rotor: &RotorConfig, constants: &PhysicalConstants) -> Result<ShiftReport> {
    coulomb_charge(rotor)?;
    let upper = rotating_coulomb_levels(t.upper.q, t.upper.m_z, rotor, constants)?;
    let lower = rotating_coulomb_levels(t.lower.q, t.lower.m_z, rotor, constants)?;
    let mut r = report(t, rotor.omega(), upper, lower, constants);
    if let (Ok(angular), Ok(revolutions)) = (
        drfs_series(t, rotor, constants),
        drfs_series_revolutions(t, rotor, constants),
    ) {
        r.series = Some(SeriesShift { angular, revolutions });
        if r.omega_rest > 0.0 && rotor.orbital_speed() != 0.0 {
            let scale = transverse_doppler_scale(r.omega_rest, rotor, constants);
            r.ratios.transverse_doppler = Some(angular / scale);
            r.ratios.transverse_doppler_revolutions = Some(revolutions / scale);
        }
    }
    Ok(r)
}

/// Exact DRFS with a true electric field frozen in the rotating frame.
pub fn drfs_exact_driven(
    t: &Transition,
    rotor: &RotorConfig,
    drive_e: &Vec3,
    constants: &PhysicalConstants,
) -> Result<ShiftReport> {
    coulomb_charge(rotor)?;
    let upper = driven_rotating_levels(t.upper.q, t.upper.m_z, rotor, drive_e, constants)?;
    let lower = driven_rotating_levels(t.lower.q, t.lower.m_z, rotor, drive_e, constants)?;
    let mut r = report(t, rotor.omega(), upper, lower, constants);
    let e = drive_e.norm();
    if e > 0.0 {
        r.ratios.force_ratio = Some(force_ratio(rotor, e, constants)?.direct);
    }
    Ok(r)
}

/// Shift of the harmonic turntable from its closed-form quasi-energies.
/// The Ω-dependent offset is common to all levels, so the dynamic part
/// vanishes identically.
pub fn harmonic_shift(t: &Transition, rotor: &RotorConfig, constants: &PhysicalConstants) -> Result<ShiftReport> {
    let upper = harmonic_level(t.upper.q, t.upper.m_z, rotor, constants)?;
    let lower = harmonic_level(t.lower.q, t.lower.m_z, rotor, constants)?;
    let mut r = report(t, rotor.omega(), upper, lower, constants);
    r.series = Some(SeriesShift {
        angular: r.kinematic_part,
        revolutions: r.kinematic_part,
    });
    if r.omega_rest > 0.0 && rotor.orbital_speed() != 0.0 {
        let scale = transverse_doppler_scale(r.omega_rest, rotor, constants);
        r.ratios.transverse_doppler = Some(r.kinematic_part / scale);
        r.ratios.transverse_doppler_revolutions = Some(r.kinematic_part / scale);
    }
    Ok(r)
}

/// C = (9/8)(n′² m_z′ − n² m_z), the coefficient of Ω (v_c/v_a)² in the
/// expansion of the exact shift.
pub fn series_coefficient(t: &Transition) -> f64 {
    let sq = |l: LevelLabel| (l.q as f64).powi(2) * l.m_z as f64;
    9.0 / 8.0 * (sq(t.lower) - sq(t.upper))
}

fn series_parts(t: &Transition, rotor: &RotorConfig, constants: &PhysicalConstants) -> Result<(f64, f64)> {
    let z = coulomb_charge(rotor)?;
    for label in [t.upper, t.lower] {
        let x = coulomb_expansion_parameter(label.q, rotor, constants)?;
        if !(x.abs() < MAX_SERIES_PARAMETER) {
            return Err(Error::OutOfRegime(format!(
                "expansion parameter 3nRΩ/(2v_a) = {x:e} for n = {} is not below {MAX_SERIES_PARAMETER}",
                label.q
            )));
        }
    }
    let omega = rotor.omega();
    let va = atomic_velocity(z, constants)?;
    let kinematic = rotational_kinematic_shift(omega, t.photon_m) - rotational_kinematic_shift(omega, t.delta_m());
    let leading = series_coefficient(t) * omega * (rotor.orbital_speed() / va).powi(2);
    Ok((kinematic, leading))
}

/// Leading-order DRFS: Ω(M − Δm_z) + C Ω (v_c/v_a)².
pub fn drfs_series(t: &Transition, rotor: &RotorConfig, constants: &PhysicalConstants) -> Result<f64> {
    let (kinematic, leading) = series_parts(t, rotor, constants)?;
    Ok(kinematic + leading)
}

/// As [`drfs_series`] with the coefficient multiplied by 4π² (the 9π²/2
/// prefactor form).
pub fn drfs_series_revolutions(t: &Transition, rotor: &RotorConfig, constants: &PhysicalConstants) -> Result<f64> {
    let (kinematic, leading) = series_parts(t, rotor, constants)?;
    Ok(kinematic + 4.0 * PI * PI * leading)
}

/// Quadratic (transverse) Doppler shift ω v_c² / (2c²).
pub fn transverse_doppler_scale(omega_rest: f64, rotor: &RotorConfig, constants: &PhysicalConstants) -> f64 {
    omega_rest * rotor.orbital_speed().powi(2) / (2.0 * constants.light_speed.powi(2))
}

/// drfs_series / (ω v_c² / 2c²).
pub fn transverse_doppler_ratio(
    t: &Transition,
    rotor: &RotorConfig,
    omega_rest: f64,
    constants: &PhysicalConstants,
) -> Result<f64> {
    if !(omega_rest > 0.0) {
        return invalid("rest frequency must be positive");
    }
    if rotor.orbital_speed() == 0.0 {
        return invalid("transverse Doppler ratio needs a non-zero orbital speed");
    }
    Ok(drfs_series(t, rotor, constants)? / transverse_doppler_scale(omega_rest, rotor, constants))
}

/// Closed form of [`transverse_doppler_ratio`] for M = m_z − m_z′:
/// (9/4)(n′²m_z′ − n²m_z) / (Zα)² · Ω/ω, independent of the orbit radius.
pub fn transverse_doppler_ratio_closed_form(
    t: &Transition,
    omega: f64,
    omega_rest: f64,
    z: u32,
    constants: &PhysicalConstants,
) -> Result<f64> {
    if !(omega_rest > 0.0) {
        return invalid("rest frequency must be positive");
    }
    if t.photon_m != t.delta_m() {
        return invalid("closed form assumes M = m_z - m_z'");
    }
    let za = z as f64 * constants.fine_structure();
    Ok(2.0 * series_coefficient(t) / (za * za) * omega / omega_rest)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForceRatio {
    /// mΩ²R / (eE) from SI constants.
    pub direct: f64,
    /// 2.24e-10 (Ω/2π)² R / E with the rounded prefactor.
    pub engineering: f64,
}

/// Centrifugal-to-electric force ratio mΩ²R / (eE).
pub fn force_ratio(rotor: &RotorConfig, drive_e: f64, constants: &PhysicalConstants) -> Result<ForceRatio> {
    if !(drive_e > 0.0 && drive_e.is_finite()) {
        return invalid("drive field magnitude must be positive");
    }
    let omega = rotor.omega();
    let r = rotor.radius();
    let direct = constants.electron_mass * omega * omega * r / (constants.elementary_charge * drive_e);
    let hz = omega / (2.0 * PI);
    let engineering = ENGINEERING_PREFACTOR * hz * hz * r / drive_e;
    Ok(ForceRatio { direct, engineering })
}

/// Exact value of the engineering prefactor, 4π²m/e.
pub fn engineering_prefactor_exact(constants: &PhysicalConstants) -> f64 {
    4.0 * PI * PI * constants.electron_mass / constants.elementary_charge
}

/// Shift report for either rotor model.
pub fn shift_report(t: &Transition, rotor: &RotorConfig, constants: &PhysicalConstants) -> Result<ShiftReport> {
    match rotor.model() {
        RotorModel::Harmonic { .. } => harmonic_shift(t, rotor, constants),
        RotorModel::Coulomb { .. } => drfs_exact(t, rotor, constants),
    }
}
