//! Physical constants, SI/atomic unit conversion and a few characteristic
//! quantities of the turntable models.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};
use crate::rotor::{CrossedFields, RotorConfig};

/// CODATA 2018 constants in SI units.
///
/// Only the primary constants are stored; the fine-structure constant and
/// the Bohr radius are derived from them so that their defining identities
/// hold to rounding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// J s
    pub hbar: f64,
    /// kg
    pub electron_mass: f64,
    /// C
    pub elementary_charge: f64,
    /// F/m
    pub epsilon0: f64,
    /// m/s
    pub light_speed: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::codata2018()
    }
}

impl PhysicalConstants {
    pub const fn codata2018() -> Self {
        Self {
            hbar: 1.054_571_817e-34,
            electron_mass: 9.109_383_701_5e-31,
            elementary_charge: 1.602_176_634e-19,
            epsilon0: 8.854_187_812_8e-12,
            light_speed: 299_792_458.0,
        }
    }

    /// e² / 4πε0, the Coulomb coupling of a unit charge pair (J m).
    pub fn coulomb_coupling(&self) -> f64 {
        self.elementary_charge.powi(2) / (4.0 * PI * self.epsilon0)
    }

    pub fn fine_structure(&self) -> f64 {
        self.coulomb_coupling() / (self.hbar * self.light_speed)
    }

    /// a0 = 4πε0 ħ² / (m e²)
    pub fn bohr_radius(&self) -> f64 {
        self.hbar.powi(2) / (self.electron_mass * self.coulomb_coupling())
    }

    /// E_h = ħ² / (m a0²)
    pub fn hartree(&self) -> f64 {
        self.hbar.powi(2) / (self.electron_mass * self.bohr_radius().powi(2))
    }
}

/// Characteristic electron velocity v_a = Z e² / (4πε0 ħ); equals αc for Z = 1.
pub fn atomic_velocity(z: u32, constants: &PhysicalConstants) -> Result<f64> {
    if z < 1 {
        return invalid("nuclear charge Z must be at least 1");
    }
    Ok(z as f64 * constants.coulomb_coupling() / constants.hbar)
}

/// Pseudo-fields reproducing the inertial forces on the orbiting electron:
/// e𝔈 = mΩ²R along the radius vector, e𝔅 = 2mΩ along the rotation axis.
/// Returned in SI (V/m and T).
pub fn fictitious_fields(rotor: &RotorConfig, constants: &PhysicalConstants) -> CrossedFields {
    let m = constants.electron_mass;
    let e = constants.elementary_charge;
    let omega = rotor.omega();
    let pseudo_e = rotor.radius_vector() * (m * omega * omega / e);
    let pseudo_b = rotor.omega_vector() * (2.0 * m / e);
    CrossedFields::new(pseudo_e, pseudo_b, None).expect("inertial pseudo-fields are always crossed")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dimension {
    Length,
    Energy,
    /// Angular frequency.
    Frequency,
    ElectricField,
    MagneticField,
    Velocity,
}

impl FromStr for Dimension {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "length" => Self::Length,
            "energy" => Self::Energy,
            "frequency" => Self::Frequency,
            "electric-field" => Self::ElectricField,
            "magnetic-field" => Self::MagneticField,
            "velocity" => Self::Velocity,
            other => return invalid(format!("unknown dimension '{other}'")),
        })
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Self::Length => "length",
            Self::Energy => "energy",
            Self::Frequency => "frequency",
            Self::ElectricField => "electric-field",
            Self::MagneticField => "magnetic-field",
            Self::Velocity => "velocity",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitMode {
    Si,
    Atomic,
}

/// A unit system, described by the SI value of its unit in each dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitSystem {
    pub mode: UnitMode,
    pub length: f64,
    pub energy: f64,
    pub frequency: f64,
    pub electric_field: f64,
    pub magnetic_field: f64,
    pub velocity: f64,
}

impl UnitSystem {
    pub fn si() -> Self {
        Self {
            mode: UnitMode::Si,
            length: 1.0,
            energy: 1.0,
            frequency: 1.0,
            electric_field: 1.0,
            magnetic_field: 1.0,
            velocity: 1.0,
        }
    }

    /// Hartree atomic units (ħ = m = e = 4πε0 = 1).
    pub fn atomic(constants: &PhysicalConstants) -> Self {
        let a0 = constants.bohr_radius();
        let eh = constants.hartree();
        let e = constants.elementary_charge;
        let hbar = constants.hbar;
        Self {
            mode: UnitMode::Atomic,
            length: a0,
            energy: eh,
            frequency: eh / hbar,
            electric_field: eh / (e * a0),
            magnetic_field: hbar / (e * a0 * a0),
            velocity: a0 * eh / hbar,
        }
    }

    pub fn scale(&self, dimension: Dimension) -> f64 {
        match dimension {
            Dimension::Length => self.length,
            Dimension::Energy => self.energy,
            Dimension::Frequency => self.frequency,
            Dimension::ElectricField => self.electric_field,
            Dimension::MagneticField => self.magnetic_field,
            Dimension::Velocity => self.velocity,
        }
    }
}

pub fn convert(value: f64, dimension: Dimension, from: &UnitSystem, to: &UnitSystem) -> f64 {
    if from.mode == to.mode {
        return value;
    }
    value * (from.scale(dimension) / to.scale(dimension))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn derived_identities() {
        let c = PhysicalConstants::codata2018();
        let e = c.elementary_charge;
        let alpha = e * e / (4.0 * PI * c.epsilon0 * c.hbar * c.light_speed);
        assert!(rel(c.fine_structure(), alpha) < 1e-9);
        let a0 = 4.0 * PI * c.epsilon0 * c.hbar.powi(2) / (c.electron_mass * e * e);
        assert!(rel(c.bohr_radius(), a0) < 1e-9);
        // agreement with the published CODATA values
        assert!(rel(c.fine_structure(), 7.297_352_569_3e-3) < 1e-9);
        assert!(rel(c.bohr_radius(), 5.291_772_109_03e-11) < 2e-9);
    }

    #[test]
    fn atomic_velocity_matches_alpha_c() {
        let c = PhysicalConstants::codata2018();
        let v1 = atomic_velocity(1, &c).unwrap();
        assert!(rel(v1, c.fine_structure() * c.light_speed) < 1e-14);
        assert!((v1 - 2.2e6).abs() / 2.2e6 < 0.01);
        assert_eq!(atomic_velocity(2, &c).unwrap(), 2.0 * v1);
        assert!(matches!(atomic_velocity(0, &c), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn pseudo_fields() {
        let c = PhysicalConstants::codata2018();
        let rotor = RotorConfig::coulomb(0.0, 1e-10, 1).unwrap();
        let f = fictitious_fields(&rotor, &c);
        assert_eq!(f.pseudo_e.norm(), 0.0);
        assert_eq!(f.pseudo_b.norm(), 0.0);

        let omega = 2.0 * PI * 80e6;
        let rotor = RotorConfig::coulomb(omega, 5e-11, 1).unwrap();
        let f = fictitious_fields(&rotor, &c);
        let force = c.elementary_charge * f.pseudo_e.norm();
        assert!(rel(force, 1.15e-23) < 0.01, "{force}");
        assert!(f.pseudo_b.x == 0.0 && f.pseudo_b.y == 0.0 && f.pseudo_b.z > 0.0);

        let doubled = RotorConfig::coulomb(2.0 * omega, 5e-11, 1).unwrap();
        let g = fictitious_fields(&doubled, &c);
        assert!(rel(g.pseudo_e.norm(), 4.0 * f.pseudo_e.norm()) < 1e-15);
        assert!(rel(g.pseudo_b.norm(), 2.0 * f.pseudo_b.norm()) < 1e-15);
    }

    #[test]
    fn bohr_radius_in_si() {
        let c = PhysicalConstants::codata2018();
        let au = UnitSystem::atomic(&c);
        let si = UnitSystem::si();
        let a0 = convert(1.0, Dimension::Length, &au, &si);
        assert!(rel(a0, 5.29177e-11) < 1e-5);
        assert_eq!(convert(0.0, Dimension::Energy, &au, &si), 0.0);
        // αc is the atomic unit of velocity
        let v = convert(1.0, Dimension::Velocity, &au, &si);
        assert!(rel(v, c.fine_structure() * c.light_speed) < 1e-14);
    }

    #[test]
    fn unknown_dimension_rejected() {
        assert!(matches!("mass".parse::<Dimension>(), Err(Error::InvalidArgument(_))));
        assert_eq!("electric-field".parse::<Dimension>().unwrap(), Dimension::ElectricField);
    }

    const DIMS: [Dimension; 6] = [
        Dimension::Length,
        Dimension::Energy,
        Dimension::Frequency,
        Dimension::ElectricField,
        Dimension::MagneticField,
        Dimension::Velocity,
    ];

    proptest! {
        #[test]
        fn round_trip(x in -1e6f64..1e6, d in 0usize..6) {
            let c = PhysicalConstants::codata2018();
            let (au, si) = (UnitSystem::atomic(&c), UnitSystem::si());
            let back = convert(convert(x, DIMS[d], &si, &au), DIMS[d], &au, &si);
            prop_assert!((back - x).abs() <= 1e-12 * x.abs());
        }

        #[test]
        fn additive(x in -1e3f64..1e3, y in -1e3f64..1e3, d in 0usize..6) {
            let c = PhysicalConstants::codata2018();
            let (au, si) = (UnitSystem::atomic(&c), UnitSystem::si());
            let f = |v| convert(v, DIMS[d], &au, &si);
            let lhs = f(x) + f(y);
            let rhs = f(x + y);
            prop_assert!((lhs - rhs).abs() <= 1e-12 * (f(x).abs() + f(y).abs()).max(f64::MIN_POSITIVE));
        }
    }
}
