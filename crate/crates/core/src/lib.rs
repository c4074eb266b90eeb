//! Quasi-energy spectra of bound charges in a rotating frame and the
//! frequency shifts of the light they emit.
//!
//! Two rotor models are supported: a three-dimensional harmonic trap whose
//! rotating-frame spectrum is exactly solvable, and a hydrogen-like atom
//! carried on a circular orbit, treated by degenerate perturbation theory
//! within each principal shell.

// guards like `!(x > 0.0)` are negated on purpose so NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod angular;
pub mod constants;
pub mod eigen;
pub mod error;
pub mod operators;
pub mod quasi_energy;
pub mod radial;
pub mod rotor;
pub mod shifts;

pub use constants::{atomic_velocity, convert, fictitious_fields, Dimension, PhysicalConstants, UnitMode, UnitSystem};
pub use eigen::{eigen_decomposition, eigenvalues, EigenDecomposition};
pub use error::{Error, Result};
pub use operators::{
    build_ho_basis, hydrogen_manifold_basis, BasisKind, BasisLabel, HermitianOperator, TruncatedBasis,
};
pub use quasi_energy::{LevelLabel, Method, QuasiEnergy, SpectrumResult};
pub use rotor::{CrossedFields, RotorConfig, RotorModel, Vec3};
pub use shifts::{ShiftReport, Transition};
