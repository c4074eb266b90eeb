//! Shared fixtures for the criterion benchmarks.

use rotoshift_core::{build_ho_basis, CrossedFields, PhysicalConstants, RotorConfig, TruncatedBasis, Vec3};

/// Rotor with Ω = 0.1 ω0 and a small orbit, in the well-converged regime.
pub fn harmonic_rotor() -> RotorConfig {
    RotorConfig::harmonic(1e15, 1e14, 2e-10).expect("valid rotor")
}

pub fn ho_basis(n_max: i64) -> TruncatedBasis {
    build_ho_basis(n_max).expect("valid truncation")
}

/// Crossed pseudo-fields of a hydrogen atom at Ω = 1e13 rad/s, R = 1 Å.
pub fn hydrogen_fields(constants: &PhysicalConstants) -> CrossedFields {
    let rotor = RotorConfig::coulomb(1e13, 1e-10, 1).expect("valid rotor");
    let fields = rotoshift_core::fictitious_fields(&rotor, constants);
    fields.with_drive(Vec3::new(1e5, 0.0, 0.0)).expect("in-plane drive")
}
