//! Truncated bases and Hermitian operator matrices for the harmonic and
//! Coulomb turntable models.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::angular;
use crate::constants::{PhysicalConstants, UnitSystem};
use crate::error::{invalid, Result};
use crate::radial::{radial_dipole_integral, MAX_PRINCIPAL};
use crate::rotor::{check_resonance, CrossedFields, RotorConfig, RotorModel, Vec3};

/// Default oscillator truncation.
pub const DEFAULT_HO_NMAX: u32 = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisKind {
    Ho3d,
    HydrogenManifold,
}

/// Quantum numbers of one basis state. Ordered lexicographically on the
/// tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisLabel {
    /// Cartesian oscillator occupations.
    Ho {
        nx: u32,
        ny: u32,
        nz: u32,
    },
    Hydrogen {
        n: u32,
        l: u32,
        m: i32,
    },
}

impl BasisLabel {
    /// Total oscillator quantum number, or the principal quantum number.
    pub fn shell(&self) -> u32 {
        match *self {
            Self::Ho { nx, ny, nz } => nx + ny + nz,
            Self::Hydrogen { n, .. } => n,
        }
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Ho { nx, ny, nz } => write!(f, "({nx},{ny},{nz})"),
            Self::Hydrogen { n, l, m } => write!(f, "({n},{l},{m})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedBasis {
    kind: BasisKind,
    /// N_max for oscillators, n for a hydrogen manifold.
    truncation: u32,
    labels: Vec<BasisLabel>,
}

impl TruncatedBasis {
    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn dimension(&self) -> usize {
        self.labels.len()
    }

    pub fn index_of(&self, label: &BasisLabel) -> Option<usize> {
        self.labels.binary_search(label).ok()
    }
}

/// All Cartesian occupation triples with n_x + n_y + n_z ≤ N_max.
pub fn build_ho_basis(n_max: i64) -> Result<TruncatedBasis> {
    if n_max < 0 {
        return invalid(format!("N_max must be non-negative, got {n_max}"));
    }
    let n_max = u32::try_from(n_max).map_err(|_| crate::Error::InvalidArgument("N_max too large".into()))?;
    let mut labels = Vec::new();
    for nx in 0..=n_max {
        for ny in 0..=n_max - nx {
            for nz in 0..=n_max - nx - ny {
                labels.push(BasisLabel::Ho { nx, ny, nz });
            }
        }
    }
    Ok(TruncatedBasis {
        kind: BasisKind::Ho3d,
        truncation: n_max,
        labels,
    })
}

/// The n² states (n, l, m_l) of one hydrogenic shell.
pub fn hydrogen_manifold_basis(n: u32) -> Result<TruncatedBasis> {
    if !(1..=MAX_PRINCIPAL).contains(&n) {
        return invalid(format!("principal quantum number {n} outside 1..={MAX_PRINCIPAL}"));
    }
    let labels = (0..n)
        .flat_map(|l| (-(l as i32)..=l as i32).map(move |m| BasisLabel::Hydrogen { n, l, m }))
        .collect();
    Ok(TruncatedBasis {
        kind: BasisKind::HydrogenManifold,
        truncation: n,
        labels,
    })
}

/// Dense Hermitian matrix over a labelled basis. Entries are in units of
/// `unit` (joules per matrix unit; 1 for dimensionless operators).
#[derive(Debug, Clone)]
pub struct HermitianOperator {
    basis: TruncatedBasis,
    matrix: DMatrix<Complex64>,
    unit: f64,
    hermiticity_defect: f64,
}

impl HermitianOperator {
    pub fn new(basis: TruncatedBasis, matrix: DMatrix<Complex64>, unit: f64) -> Result<Self> {
        let dim = basis.dimension();
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return invalid(format!(
                "matrix is {}x{} but basis has dimension {dim}",
                matrix.nrows(),
                matrix.ncols()
            ));
        }
        if !(unit.is_finite() && unit > 0.0) {
            return invalid("operator unit must be positive");
        }
        let defect = hermiticity_defect(&matrix);
        let scale = max_abs(&matrix);
        if !(defect <= 1e-12 * scale) {
            return invalid(format!("matrix is not Hermitian: defect {defect:e} vs scale {scale:e}"));
        }
        Ok(Self {
            basis,
            matrix,
            unit,
            hermiticity_defect: defect,
        })
    }

    pub fn basis(&self) -> &TruncatedBasis {
        &self.basis
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn unit(&self) -> f64 {
        self.unit
    }

    pub fn hermiticity_defect(&self) -> f64 {
        self.hermiticity_defect
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.matrix)
    }

    /// Largest entry of |[A, B]| in units of A.unit × B.unit.
    pub fn commutator_max(&self, other: &HermitianOperator) -> f64 {
        let c = &self.matrix * &other.matrix - &other.matrix * &self.matrix;
        max_abs(&c)
    }
}

pub(crate) fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub(crate) fn hermiticity_defect(m: &DMatrix<Complex64>) -> f64 {
    let n = m.nrows();
    let mut defect = 0.0f64;
    for i in 0..n {
        for j in i..n {
            defect = defect.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    defect
}

/// Dimensionless parameters of the rotating oscillator in units of ħω0.
#[derive(Debug, Clone, Copy)]
struct HoParams {
    /// Ω / ω0
    omega_ratio: f64,
    /// v_c / √(ħω0/m), signed
    drift: f64,
    /// azimuth of v_c in the orbital plane
    drift_angle: f64,
}

fn ho_matrix(basis: &TruncatedBasis, p: HoParams) -> DMatrix<Complex64> {
    let dim = basis.dimension();
    let mut h = DMatrix::<Complex64>::zeros(dim, dim);
    let i = Complex64::i();
    let (ux, uy) = (p.drift * p.drift_angle.cos(), p.drift * p.drift_angle.sin());
    for (col, label) in basis.labels().iter().enumerate() {
        let BasisLabel::Ho { nx, ny, nz } = *label else {
            unreachable!()
        };
        let mut add = |target: BasisLabel, value: Complex64| {
            if let Some(row) = basis.index_of(&target) {
                h[(row, col)] += value;
            }
        };
        let (fx, fy) = (nx as f64, ny as f64);
        add(*label, Complex64::from((nx + ny + nz) as f64 + 1.5));

        // -Ω L_z with L_z = i (a_x a_y† − a_x† a_y)
        if p.omega_ratio != 0.0 {
            if nx > 0 {
                add(
                    BasisLabel::Ho {
                        nx: nx - 1,
                        ny: ny + 1,
                        nz,
                    },
                    -p.omega_ratio * i * (fx * (fy + 1.0)).sqrt(),
                );
            }
            if ny > 0 {
                add(
                    BasisLabel::Ho {
                        nx: nx + 1,
                        ny: ny - 1,
                        nz,
                    },
                    p.omega_ratio * i * ((fx + 1.0) * fy).sqrt(),
                );
            }
        }

        // -v_c·p with p = i (a† − a) / √2
        for (u, along_x) in [(ux, true), (uy, false)] {
            if u == 0.0 {
                continue;
            }
            let n = if along_x { fx } else { fy };
            let (up, down) = if along_x {
                (
                    BasisLabel::Ho { nx: nx + 1, ny, nz },
                    (nx > 0).then(|| BasisLabel::Ho { nx: nx - 1, ny, nz }),
                )
            } else {
                (
                    BasisLabel::Ho { nx, ny: ny + 1, nz },
                    (ny > 0).then(|| BasisLabel::Ho { nx, ny: ny - 1, nz }),
                )
            };
            add(up, -u * i * ((n + 1.0) / 2.0).sqrt());
            if let Some(down) = down {
                add(down, u * i * (n / 2.0).sqrt());
            }
        }
    }
    h
}

fn ho_params(rotor: &RotorConfig, constants: &PhysicalConstants) -> Result<(f64, f64, f64)> {
    let RotorModel::Harmonic { omega0 } = rotor.model() else {
        return invalid("harmonic Hamiltonian requires a harmonic rotor");
    };
    let velocity_unit = (constants.hbar * omega0 / constants.electron_mass).sqrt();
    Ok((omega0, rotor.omega() / omega0, rotor.orbital_speed() / velocity_unit))
}

/// p²/2m + mω0²r²/2 − Ω L_z − v_c·p in the truncated Cartesian oscillator
/// basis, in units of ħω0, with v_c along +x.
pub fn ho_rotating_hamiltonian(
    basis: &TruncatedBasis,
    rotor: &RotorConfig,
    constants: &PhysicalConstants,
) -> Result<HermitianOperator> {
    ho_rotating_hamiltonian_along(basis, rotor, constants, 0.0)
}

/// As [`ho_rotating_hamiltonian`] with v_c pointing at azimuth `drift_angle`
/// in the orbital plane.
pub fn ho_rotating_hamiltonian_along(
    basis: &TruncatedBasis,
    rotor: &RotorConfig,
    constants: &PhysicalConstants,
    drift_angle: f64,
) -> Result<HermitianOperator> {
    if basis.kind() != BasisKind::Ho3d {
        return invalid("harmonic Hamiltonian requires an HO3D basis");
    }
    let (omega0, omega_ratio, drift) = ho_params(rotor, constants)?;
    let matrix = ho_matrix(
        basis,
        HoParams {
            omega_ratio,
            drift,
            drift_angle,
        },
    );
    HermitianOperator::new(basis.clone(), matrix, constants.hbar * omega0)
}

/// L_z / ħ in an oscillator basis.
pub fn ho_angular_momentum_z(basis: &TruncatedBasis) -> Result<HermitianOperator> {
    if basis.kind() != BasisKind::Ho3d {
        return invalid("oscillator L_z requires an HO3D basis");
    }
    // -Ω L_z at Ω/ω0 = -1 minus the number operator
    let mut m = ho_matrix(
        basis,
        HoParams {
            omega_ratio: -1.0,
            drift: 0.0,
            drift_angle: 0.0,
        },
    );
    for (k, label) in basis.labels().iter().enumerate() {
        m[(k, k)] -= Complex64::from(label.shell() as f64 + 1.5);
    }
    HermitianOperator::new(basis.clone(), m, 1.0)
}

/// Total oscillator number N̂ = n_x + n_y + n_z (diagonal).
pub fn ho_number_operator(basis: &TruncatedBasis) -> Result<HermitianOperator> {
    if basis.kind() != BasisKind::Ho3d {
        return invalid("number operator requires an HO3D basis");
    }
    let diag = basis.labels().iter().map(|l| Complex64::from(l.shell() as f64));
    let m = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(basis.dimension(), diag));
    HermitianOperator::new(basis.clone(), m, 1.0)
}

/// Displacement vectors (a, b) of the unitary that restores the standard
/// oscillator form: a = mω0²/(ω0²−Ω²) Ω×R (momentum), b = Ω²/(ω0²−Ω²) R
/// (length).
pub fn displacement_parameters(rotor: &RotorConfig, constants: &PhysicalConstants) -> Result<(Vec3, Vec3)> {
    let RotorModel::Harmonic { omega0 } = rotor.model() else {
        return invalid("displacement parameters require a harmonic rotor");
    };
    let omega = rotor.omega();
    check_resonance(omega0, omega)?;
    let den = omega0 * omega0 - omega * omega;
    let a = rotor.orbital_velocity() * (constants.electron_mass * omega0 * omega0 / den);
    let b = rotor.radius_vector() * (omega * omega / den);
    Ok((a, b))
}

/// W = −e(𝔈 + E)·r − (e/2m) 𝔅 L_z restricted to the hydrogenic shell n of a
/// nucleus with charge Z. Built in atomic units; `unit()` is the hartree.
pub fn manifold_perturbation(
    n: u32,
    z: u32,
    fields: &CrossedFields,
    constants: &PhysicalConstants,
) -> Result<HermitianOperator> {
    if z < 1 {
        return invalid("nuclear charge Z must be at least 1");
    }
    let basis = hydrogen_manifold_basis(n)?;
    let au = UnitSystem::atomic(constants);
    let stark = fields.stark_field() / au.electric_field;
    let zeeman = fields.pseudo_b.z / au.magnetic_field;
    let field = [stark.x, stark.y, stark.z];

    let dim = basis.dimension();
    let mut w = DMatrix::<Complex64>::zeros(dim, dim);
    for (col, ket) in basis.labels().iter().enumerate() {
        let BasisLabel::Hydrogen { l, m, .. } = *ket else {
            unreachable!()
        };
        w[(col, col)] -= Complex64::from(0.5 * zeeman * m as f64);
        for (row, bra) in basis.labels().iter().enumerate() {
            let BasisLabel::Hydrogen { l: lp, m: mp, .. } = *bra else {
                unreachable!()
            };
            if lp.abs_diff(l) != 1 || mp.abs_diff(m) > 1 {
                continue;
            }
            let radial = radial_dipole_integral(n, l, lp)? / z as f64;
            let angular = angular::unit_vector(lp, mp, l, m);
            let dot: Complex64 = angular.iter().zip(field).map(|(a, f)| a * f).sum();
            w[(row, col)] -= dot * radial;
        }
    }
    HermitianOperator::new(basis, w, au.energy)
}
