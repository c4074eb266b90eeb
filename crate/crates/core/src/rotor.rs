//! Rotor geometry and the crossed pseudo-fields it induces.
//!
//! Orientation convention: the rotation axis is +z, the orbit radius vector
//! points along -y, so the orbital velocity Ω×R points along +x.

use nalgebra::Vector3;

use crate::error::{invalid, Error, Result};

pub type Vec3 = Vector3<f64>;

/// Minimum allowed |ω0² − Ω²| in units of ω0².
pub const RESONANCE_GUARD: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RotorModel {
    /// Isotropic harmonic trap of angular frequency ω0 (rad/s).
    Harmonic { omega0: f64 },
    /// Hydrogenic Coulomb centre of charge Z.
    Coulomb { z: u32 },
}

/// An emitter whose potential centre orbits the z axis at radius R with
/// angular velocity Ω.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotorConfig {
    omega: f64,
    radius: f64,
    model: RotorModel,
}

impl RotorConfig {
    pub fn harmonic(omega0: f64, omega: f64, radius: f64) -> Result<Self> {
        if !(omega0.is_finite() && omega0 > 0.0) {
            return invalid("trap frequency omega0 must be positive and finite");
        }
        check_resonance(omega0, omega)?;
        Self::new(omega, radius, RotorModel::Harmonic { omega0 })
    }

    pub fn coulomb(omega: f64, radius: f64, z: u32) -> Result<Self> {
        if z < 1 {
            return invalid("nuclear charge Z must be at least 1");
        }
        Self::new(omega, radius, RotorModel::Coulomb { z })
    }

    fn new(omega: f64, radius: f64, model: RotorModel) -> Result<Self> {
        if !omega.is_finite() {
            return invalid("rotation frequency must be finite");
        }
        if !(radius.is_finite() && radius >= 0.0) {
            return invalid("orbit radius must be finite and non-negative");
        }
        if let RotorModel::Harmonic { omega0 } = model {
            check_resonance(omega0, omega)?;
        }
        Ok(Self { omega, radius, model })
    }

    pub fn with_omega(&self, omega: f64) -> Result<Self> {
        Self::new(omega, self.radius, self.model)
    }

    pub fn with_radius(&self, radius: f64) -> Result<Self> {
        Self::new(self.omega, radius, self.model)
    }

    /// Ω in rad/s; the sign gives the sense of rotation about +z.
    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn model(&self) -> RotorModel {
        self.model
    }

    /// v_c = Ω R (signed with Ω).
    pub fn orbital_speed(&self) -> f64 {
        self.omega * self.radius
    }

    pub fn omega_vector(&self) -> Vec3 {
        Vec3::new(0.0, 0.0, self.omega)
    }

    pub fn radius_vector(&self) -> Vec3 {
        Vec3::new(0.0, -self.radius, 0.0)
    }

    /// Ω × R, which lies along +x for Ω > 0.
    pub fn orbital_velocity(&self) -> Vec3 {
        self.omega_vector().cross(&self.radius_vector())
    }

    pub fn omega0(&self) -> Option<f64> {
        match self.model {
            RotorModel::Harmonic { omega0 } => Some(omega0),
            RotorModel::Coulomb { .. } => None,
        }
    }

    pub fn charge(&self) -> Option<u32> {
        match self.model {
            RotorModel::Coulomb { z } => Some(z),
            RotorModel::Harmonic { .. } => None,
        }
    }
}

pub(crate) fn check_resonance(omega0: f64, omega: f64) -> Result<()> {
    let gap = (omega0 * omega0 - omega * omega).abs();
    let guard = RESONANCE_GUARD * omega0 * omega0;
    if gap < guard {
        return Err(Error::ResonanceSingularity { gap, guard });
    }
    Ok(())
}

/// Effective fields acting on a bound electron in the rotating frame: the
/// inertial pseudo-fields plus an optional true electric field frozen in
/// the rotating frame. All SI.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossedFields {
    /// V/m, in the orbital plane.
    pub pseudo_e: Vec3,
    /// T, along the rotation axis.
    pub pseudo_b: Vec3,
    /// V/m, in the orbital plane.
    pub drive_e: Option<Vec3>,
}

impl CrossedFields {
    pub fn new(pseudo_e: Vec3, pseudo_b: Vec3, drive_e: Option<Vec3>) -> Result<Self> {
        let finite = |v: &Vec3| v.iter().all(|c| c.is_finite());
        if !finite(&pseudo_e) || !finite(&pseudo_b) || !drive_e.as_ref().is_none_or(finite) {
            return invalid("field components must be finite");
        }
        let b_perp = pseudo_b.x.hypot(pseudo_b.y);
        if b_perp > 1e-12 * pseudo_b.norm() {
            return invalid("pseudo-magnetic field must be parallel to the rotation axis");
        }
        for (name, v) in [("pseudo-electric", Some(pseudo_e)), ("drive", drive_e)] {
            if let Some(v) = v {
                if v.z.abs() > 1e-12 * v.norm() {
                    return invalid(format!("{name} field must lie in the orbital plane"));
                }
            }
        }
        Ok(Self {
            pseudo_e,
            pseudo_b,
            drive_e,
        })
    }

    pub fn with_drive(mut self, drive_e: Vec3) -> Result<Self> {
        self.drive_e = Some(drive_e);
        Self::new(self.pseudo_e, self.pseudo_b, self.drive_e)
    }

    /// Field entering the linear Stark term: 𝔈 + E.
    pub fn stark_field(&self) -> Vec3 {
        self.pseudo_e + self.drive_e.unwrap_or_else(Vec3::zeros)
    }
}
