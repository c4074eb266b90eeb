//! Quasi-energy spectra of the rotating emitters, numerically (dense
//! diagonalisation, first-order degenerate perturbation theory) and in
//! closed form.
//!
//! Sign convention: the m_z-dependent term of every closed-form level is
//! −ħΩ m_z √(…), continuous with the −Ω·L term of the rotating-frame
//! Hamiltonian. Energies are in joules.

use std::cmp::Ordering;
use std::fmt;

use log::warn;

use crate::constants::{atomic_velocity, PhysicalConstants};
use crate::eigen::{dominant_components, eigen_decomposition};
use crate::error::{invalid, Result};
use crate::operators::{BasisKind, BasisLabel, HermitianOperator};
use crate::rotor::{check_resonance, CrossedFields, RotorConfig, RotorModel, Vec3};

/// Quasi-energy quantum numbers: q is the oscillator shell N or the
/// principal quantum number n; m_z is the L_z / ħ projection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LevelLabel {
    pub q: u32,
    pub m_z: i32,
}

impl LevelLabel {
    pub fn new(q: u32, m_z: i32) -> Self {
        Self { q, m_z }
    }
}

impl fmt::Display for LevelLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(q={}, m_z={})", self.q, self.m_z)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Diagonalization,
    FirstOrderPt,
    Analytic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level {
    /// J
    pub quasi_energy: f64,
    pub label: Option<LevelLabel>,
    /// Dominant basis state, for numerically obtained levels.
    pub basis_state: Option<BasisLabel>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisInfo {
    pub kind: Option<BasisKind>,
    pub dimension: usize,
    /// N_max, or n for a hydrogen manifold.
    pub truncation: Option<u32>,
}

/// Levels sorted ascending by quasi-energy, ties broken by label order.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumResult {
    levels: Vec<Level>,
    method: Method,
    basis_info: BasisInfo,
}

fn level_order(a: &Level, b: &Level) -> Ordering {
    a.quasi_energy
        .total_cmp(&b.quasi_energy)
        .then_with(|| a.label.cmp(&b.label))
        .then_with(|| a.basis_state.cmp(&b.basis_state))
}

impl SpectrumResult {
    pub fn new(mut levels: Vec<Level>, method: Method, basis_info: BasisInfo) -> Result<Self> {
        if levels.iter().any(|l| !l.quasi_energy.is_finite()) {
            return invalid("quasi-energies must be finite");
        }
        levels.sort_by(level_order);
        Ok(Self {
            levels,
            method,
            basis_info,
        })
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn basis_info(&self) -> BasisInfo {
        self.basis_info
    }

    pub fn energies(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.quasi_energy).collect()
    }

    /// Lowest level carrying `label`.
    pub fn find(&self, label: LevelLabel) -> Option<&Level> {
        self.levels.iter().find(|l| l.label == Some(label))
    }

    /// The lowest ⌊len × fraction⌋ levels.
    pub fn lowest_fraction(&self, fraction: f64) -> &[Level] {
        let k = ((self.levels.len() as f64) * fraction).floor() as usize;
        &self.levels[..k.min(self.levels.len())]
    }
}

/// Full spectrum of `h` by dense diagonalisation.
pub fn eigen_spectrum(h: &HermitianOperator) -> Result<SpectrumResult> {
    let d = eigen_decomposition(h)?;
    let labels = h.basis().labels();
    let levels = d
        .values
        .iter()
        .zip(dominant_components(&d))
        .map(|(&v, dom)| Level {
            quasi_energy: v * h.unit(),
            label: None,
            basis_state: Some(labels[dom]),
        })
        .collect();
    let basis = h.basis();
    SpectrumResult::new(
        levels,
        Method::Diagonalization,
        BasisInfo {
            kind: Some(basis.kind()),
            dimension: basis.dimension(),
            truncation: Some(basis.truncation()),
        },
    )
}

/// Levels E0 + eig(W) of a degenerate shell split by the perturbation W.
pub fn first_order_degenerate_levels(e0: f64, w: &HermitianOperator) -> Result<SpectrumResult> {
    let spectrum = eigen_spectrum(w)?;
    let levels = spectrum
        .levels
        .into_iter()
        .map(|l| Level {
            quasi_energy: e0 + l.quasi_energy,
            ..l
        })
        .collect();
    SpectrumResult::new(levels, Method::FirstOrderPt, spectrum.basis_info)
}

/// Re-label a numerical spectrum from a closed-form one of the same size by
/// position in the sorted lists. Only meaningful where the two agree, which
/// for truncated oscillator bases means away from the basis edge.
pub fn label_by_reference(numeric: &SpectrumResult, reference: &SpectrumResult) -> Result<SpectrumResult> {
    if numeric.levels.len() != reference.levels.len() {
        return invalid(format!(
            "spectra differ in size: {} vs {}",
            numeric.levels.len(),
            reference.levels.len()
        ));
    }
    let levels = numeric
        .levels
        .iter()
        .zip(&reference.levels)
        .map(|(n, r)| Level { label: r.label, ..*n })
        .collect();
    SpectrumResult::new(levels, numeric.method, numeric.basis_info)
}

/// A quasi-energy split into its unperturbed value, the part linear in Ω
/// (−ħΩ m_z) and the remaining correction. The split keeps small
/// rotational shifts resolvable next to large binding energies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuasiEnergy {
    pub unperturbed: f64,
    pub linear: f64,
    pub correction: f64,
}

impl QuasiEnergy {
    pub fn total(&self) -> f64 {
        self.unperturbed + self.linear + self.correction
    }
}

/// √(1 + x²) − 1 without cancellation.
pub fn root_excess(x: f64) -> f64 {
    let x2 = x * x;
    x2 / (1.0 + (1.0 + x2).sqrt())
}

fn check_mz(q_max_abs: u32, m_z: i32) -> Result<()> {
    if m_z.unsigned_abs() > q_max_abs {
        return invalid(format!("|m_z| = {} exceeds {q_max_abs}", m_z.unsigned_abs()));
    }
    Ok(())
}

// --- harmonic turntable ---------------------------------------------------

/// ħω0(N + 3/2) − ħΩ m_z − mω0²Ω²R² / (2(ω0² − Ω²)).
pub fn harmonic_level(shell: u32, m_z: i32, rotor: &RotorConfig, constants: &PhysicalConstants) -> Result<QuasiEnergy> {
    let RotorModel::Harmonic { omega0 } = rotor.model() else {
        return invalid("harmonic levels require a harmonic rotor");
    };
    check_mz(shell, m_z)?;
    let omega = rotor.omega();
    check_resonance(omega0, omega)?;
    let hbar = constants.hbar;
    let r = rotor.radius();
    let offset =
        constants.electron_mass * omega0 * omega0 * omega * omega * r * r / (2.0 * (omega0 * omega0 - omega * omega));
    Ok(QuasiEnergy {
        unperturbed: hbar * omega0 * (shell as f64 + 1.5),
        linear: -hbar * omega * m_z as f64,
        correction: -offset,
    })
}

/// Closed-form oscillator spectrum over all shells N ≤ `n_max`; the level
/// (N, m_z) appears ⌊(N − |m_z|)/2⌋ + 1 times.
pub fn harmonic_analytic_spectrum(
    n_max: u32,
    rotor: &RotorConfig,
    constants: &PhysicalConstants,
) -> Result<SpectrumResult> {
    let mut levels = Vec::new();
    for shell in 0..=n_max {
        for m_z in -(shell as i32)..=shell as i32 {
            let e = harmonic_level(shell, m_z, rotor, constants)?.total();
            let degeneracy = (shell - m_z.unsigned_abs()) / 2 + 1;
            for _ in 0..degeneracy {
                levels.push(Level {
                    quasi_energy: e,
                    label: Some(LevelLabel::new(shell, m_z)),
                    basis_state: None,
                });
            }
        }
    }
    let dimension = levels.len();
    SpectrumResult::new(
        levels,
        Method::Analytic,
        BasisInfo {
            kind: Some(BasisKind::Ho3d),
            dimension,
            truncation: Some(n_max),
        },
    )
}

// --- Coulomb turntable ----------------------------------------------------

/// Unperturbed hydrogenic level −m v_a² / (2n²).
pub fn bohr_level(n: u32, z: u32, constants: &PhysicalConstants) -> Result<f64> {
    if n < 1 {
        return invalid("principal quantum number must be at least 1");
    }
    let va = atomic_velocity(z, constants)?;
    Ok(-constants.electron_mass * va * va / (2.0 * (n as f64).powi(2)))
}

fn shell_gap(n: u32, z: u32, constants: &PhysicalConstants) -> Result<f64> {
    Ok(bohr_level(n + 1, z, constants)? - bohr_level(n, z, constants)?)
}

fn warn_if_nonperturbative(n: u32, z: u32, level_spacing: f64, constants: &PhysicalConstants) {
    if n < 2 {
        return;
    }
    if let Ok(gap) = shell_gap(n, z, constants) {
        let splitting = (n - 1) as f64 * level_spacing.abs();
        if splitting > 0.01 * gap {
            warn!("shell n = {n}: splitting {splitting:e} J exceeds 1% of the shell gap {gap:e} J; first-order results degrade");
        }
    }
}

/// √((e𝔅/2m)² + (12πε0ħ / (2Zem))² n² 𝔈²) in rad/s, signed by 𝔅_z, where
/// 𝔈 is the magnitude of the total Stark field (pseudo plus drive).
pub fn crossed_field_frequency(n: u32, z: u32, fields: &CrossedFields, constants: &PhysicalConstants) -> Result<f64> {
    if z < 1 {
        return invalid("nuclear charge Z must be at least 1");
    }
    let c = constants;
    let (m, e) = (c.electron_mass, c.elementary_charge);
    let larmor = e * fields.pseudo_b.z / (2.0 * m);
    let stark_coeff = 12.0 * std::f64::consts::PI * c.epsilon0 * c.hbar / (2.0 * z as f64 * e * m);
    let stark = stark_coeff * n as f64 * fields.stark_field().norm();
    let sign = if fields.pseudo_b.z < 0.0 { -1.0 } else { 1.0 };
    Ok(sign * larmor.hypot(stark))
}

/// Lowest-order crossed-field level of shell n for nuclear charge Z.
pub fn crossed_field_levels(
    n: u32,
    m_z: i32,
    z: u32,
    fields: &CrossedFields,
    constants: &PhysicalConstants,
) -> Result<f64> {
    if n < 1 {
        return invalid("principal quantum number must be at least 1");
    }
    check_mz(n - 1, m_z)?;
    let freq = crossed_field_frequency(n, z, fields, constants)?;
    warn_if_nonperturbative(n, z, constants.hbar * freq, constants);
    Ok(bohr_level(n, z, constants)? - constants.hbar * m_z as f64 * freq)
}

/// x = 3nRΩ / (2v_a), the expansion parameter of the rotating Coulomb level.
pub fn coulomb_expansion_parameter(n: u32, rotor: &RotorConfig, constants: &PhysicalConstants) -> Result<f64> {
    let Some(z) = rotor.charge() else {
        return invalid("Coulomb levels require a Coulomb rotor");
    };
    let va = atomic_velocity(z, constants)?;
    Ok(3.0 * n as f64 * rotor.radius() * rotor.omega() / (2.0 * va))
}

fn coulomb_level_from_x(
    n: u32,
    m_z: i32,
    z: u32,
    omega: f64,
    x: f64,
    constants: &PhysicalConstants,
) -> Result<QuasiEnergy> {
    if n < 1 {
        return invalid("principal quantum number must be at least 1");
    }
    check_mz(n - 1, m_z)?;
    let hbar = constants.hbar;
    let linear = -hbar * omega * m_z as f64;
    warn_if_nonperturbative(n, z, hbar * omega * (1.0 + x * x).sqrt(), constants);
    Ok(QuasiEnergy {
        unperturbed: bohr_level(n, z, constants)?,
        linear,
        correction: linear * root_excess(x),
    })
}

/// −m v_a²/(2n²) − ħΩ m_z √(1 + (3nRΩ/(2v_a))²).
pub fn rotating_coulomb_levels(
    n: u32,
    m_z: i32,
    rotor: &RotorConfig,
    constants: &PhysicalConstants,
) -> Result<QuasiEnergy> {
    let x = coulomb_expansion_parameter(n, rotor, constants)?;
    let z = rotor.charge().expect("checked by expansion parameter");
    coulomb_level_from_x(n, m_z, z, rotor.omega(), x, constants)
}

/// Net in-plane force mΩ²R + eE on the electron, R pointing along -y.
pub fn driven_force(rotor: &RotorConfig, drive_e: &Vec3, constants: &PhysicalConstants) -> Vec3 {
    let m = constants.electron_mass;
    let omega = rotor.omega();
    rotor.radius_vector() * (m * omega * omega) + drive_e * constants.elementary_charge
}

/// Expansion parameter with a true field frozen in the rotating frame:
/// x = 3n |mΩ²R + eE| / (2 m v_a Ω).
pub fn driven_expansion_parameter(
    n: u32,
    rotor: &RotorConfig,
    drive_e: &Vec3,
    constants: &PhysicalConstants,
) -> Result<f64> {
    let Some(z) = rotor.charge() else {
        return invalid("driven levels require a Coulomb rotor");
    };
    if drive_e.z != 0.0 {
        return invalid("drive field must lie in the orbital plane");
    }
    let omega = rotor.omega();
    let force = driven_force(rotor, drive_e, constants).norm();
    if omega == 0.0 {
        if drive_e.norm() == 0.0 {
            return Ok(0.0);
        }
        return invalid("rotation frequency must be non-zero when a drive field is present");
    }
    let va = atomic_velocity(z, constants)?;
    Ok(3.0 * n as f64 * force / (2.0 * constants.electron_mass * va * omega.abs()))
}

/// −m v_a²/(2n²) − ħΩ m_z √(1 + (3n|mΩ²R + eE| / (2mv_aΩ))²).
pub fn driven_rotating_levels(
    n: u32,
    m_z: i32,
    rotor: &RotorConfig,
    drive_e: &Vec3,
    constants: &PhysicalConstants,
) -> Result<QuasiEnergy> {
    let x = driven_expansion_parameter(n, rotor, drive_e, constants)?;
    let z = rotor.charge().expect("checked by expansion parameter");
    coulomb_level_from_x(n, m_z, z, rotor.omega(), x, constants)
}

/// Closed-form rotating Coulomb spectrum for the given shells; the level
/// (n, m_z) appears n − |m_z| times.
pub fn coulomb_analytic_spectrum(
    shells: &[u32],
    rotor: &RotorConfig,
    constants: &PhysicalConstants,
) -> Result<SpectrumResult> {
    let mut levels = Vec::new();
    for &n in shells {
        if n < 1 {
            return invalid("principal quantum number must be at least 1");
        }
        let k = n as i32 - 1;
        for m_z in -k..=k {
            let e = rotating_coulomb_levels(n, m_z, rotor, constants)?.total();
            for _ in 0..(n - m_z.unsigned_abs()) {
                levels.push(Level {
                    quasi_energy: e,
                    label: Some(LevelLabel::new(n, m_z)),
                    basis_state: None,
                });
            }
        }
    }
    let dimension = levels.len();
    SpectrumResult::new(
        levels,
        Method::Analytic,
        BasisInfo {
            kind: None,
            dimension,
            truncation: None,
        },
    )
}
