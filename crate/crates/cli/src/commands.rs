//! One function per subcommand; each returns the table it would write.

use rayon::prelude::*;
use rotoshift_core::operators::{ho_rotating_hamiltonian, manifold_perturbation, DEFAULT_HO_NMAX};
use rotoshift_core::quasi_energy::{
    bohr_level, coulomb_expansion_parameter, driven_expansion_parameter, driven_rotating_levels, eigen_spectrum,
    first_order_degenerate_levels, harmonic_analytic_spectrum, label_by_reference, root_excess,
    rotating_coulomb_levels, BasisInfo, Level, Method, QuasiEnergy,
};
use rotoshift_core::shifts::{
    doppler_frequency_along, drfs_exact, drfs_exact_driven, engineering_prefactor_exact, force_ratio, harmonic_shift,
    ShiftReport,
};
use rotoshift_core::{
    build_ho_basis, fictitious_fields, LevelLabel, PhysicalConstants, RotorConfig, SpectrumResult, Transition, Vec3,
};

use crate::config::{grid, Axis, Drive, ModelKind, Orientation, Scenario};
use crate::error::CliError;
use crate::report::{Cell, Table};

/// Largest oscillator truncation accepted by `spectrum`.
pub const MAX_HO_NMAX: u32 = 24;

/// Largest hydrogen shell accepted by `spectrum`.
pub const MAX_SHELL: u32 = 10;

pub const REPORT_COLUMNS: [&str; 15] = [
    "axis_value",
    "quasi_energy_upper_J",
    "quasi_energy_lower_J",
    "omega_rest_rad_s",
    "drfs_exact_rad_s",
    "drfs_series_rad_s",
    "drfs_series_rev_rad_s",
    "kinematic_part_rad_s",
    "dynamic_part_rad_s",
    "transverse_doppler_ratio",
    "transverse_doppler_ratio_rev",
    "force_ratio",
    "root_factor_upper",
    "root_factor_lower",
    "M",
];

fn core(context: &str) -> impl Fn(rotoshift_core::Error) -> CliError + '_ {
    move |e| CliError::from_core(context, e)
}

fn root_factor(n: u32, rotor: &RotorConfig, drive: Option<&Drive>, c: &PhysicalConstants) -> Result<f64, CliError> {
    let x = match drive {
        Some(d) => driven_expansion_parameter(n, rotor, &d.vector(), c),
        None => coulomb_expansion_parameter(n, rotor, c),
    }
    .map_err(core("root factor"))?;
    Ok(1.0 + root_excess(x))
}

/// Shift report for one rotor and optional drive, with root factors for
/// Coulomb levels.
pub fn evaluate(
    model: ModelKind,
    t: &Transition,
    rotor: &RotorConfig,
    drive: Option<&Drive>,
    c: &PhysicalConstants,
) -> Result<(ShiftReport, Option<(f64, f64)>), CliError> {
    match model {
        ModelKind::Harmonic => Ok((harmonic_shift(t, rotor, c).map_err(core("drfs"))?, None)),
        ModelKind::Coulomb => {
            let report = match drive {
                Some(d) => drfs_exact_driven(t, rotor, &d.vector(), c),
                None => drfs_exact(t, rotor, c),
            }
            .map_err(core("drfs"))?;
            let roots = (
                root_factor(t.upper.q, rotor, drive, c)?,
                root_factor(t.lower.q, rotor, drive, c)?,
            );
            Ok((report, Some(roots)))
        }
    }
}

fn report_row(axis_value: Cell, r: &ShiftReport, roots: Option<(f64, f64)>) -> Vec<Cell> {
    vec![
        axis_value,
        r.upper.total().into(),
        r.lower.total().into(),
        r.omega_rest.into(),
        r.drfs.into(),
        r.series.map(|s| s.angular).into(),
        r.series.map(|s| s.revolutions).into(),
        r.kinematic_part.into(),
        r.dynamic_part.into(),
        r.ratios.transverse_doppler.into(),
        r.ratios.transverse_doppler_revolutions.into(),
        r.ratios.force_ratio.into(),
        roots.map(|r| r.0).into(),
        roots.map(|r| r.1).into(),
        r.transition.photon_m().into(),
    ]
}

pub fn drfs(s: &Scenario, c: &PhysicalConstants) -> Result<Table, CliError> {
    let t = s.transition.as_ref().expect("validated");
    let (report, roots) = evaluate(s.model, t, &s.rotor, s.drive.as_ref(), c)?;
    let mut table = Table::new("drfs", &REPORT_COLUMNS);
    table.push(report_row(Cell::Empty, &report, roots));
    Ok(table)
}

/// Evaluate every grid point, concurrently on `pool`, and emit rows in axis
/// order. The first failing point (in axis order) is reported.
pub fn sweep(s: &Scenario, c: &PhysicalConstants, pool: &rayon::ThreadPool) -> Result<Table, CliError> {
    let t = s.transition.as_ref().expect("validated");
    let section = s.sweep.as_ref().expect("validated");
    let points = grid(section);
    let eval = |value: f64| -> Result<Vec<Cell>, CliError> {
        let context = format!("sweep point {}", crate::report::format_float(value));
        let (rotor, drive) = match section.axis {
            Axis::Omega => (s.rotor.with_omega(value).map_err(core(&context))?, s.drive),
            Axis::Radius => (s.rotor.with_radius(value).map_err(core(&context))?, s.drive),
            Axis::Drive => (s.rotor, s.drive.map(|d| d.with_magnitude(value))),
        };
        let (report, roots) = evaluate(s.model, t, &rotor, drive.as_ref(), c)?;
        Ok(report_row(value.into(), &report, roots))
    };
    let results: Vec<_> = pool.install(|| points.par_iter().map(|&v| eval(v)).collect());
    let mut table = Table::new("sweep", &REPORT_COLUMNS);
    for row in results {
        table.push(row?);
    }
    Ok(table)
}

pub const SPECTRUM_COLUMNS: [&str; 7] = [
    "index",
    "q",
    "m_z",
    "quasi_energy_numeric_J",
    "quasi_energy_analytic_J",
    "relative_difference",
    "trusted",
];

fn coulomb_shell_reference(
    n: u32,
    rotor: &RotorConfig,
    drive: Option<&Drive>,
    c: &PhysicalConstants,
) -> Result<SpectrumResult, CliError> {
    let mut levels = Vec::new();
    let k = n as i32 - 1;
    for m_z in -k..=k {
        let q = match drive {
            Some(d) => driven_rotating_levels(n, m_z, rotor, &d.vector(), c),
            None => rotating_coulomb_levels(n, m_z, rotor, c),
        }
        .map_err(core("spectrum"))?;
        for _ in 0..(n - m_z.unsigned_abs()) {
            levels.push(Level {
                quasi_energy: q.total(),
                label: Some(LevelLabel::new(n, m_z)),
                basis_state: None,
            });
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
    .map_err(core("spectrum"))
}

fn push_spectrum(
    table: &mut Table,
    numeric: &SpectrumResult,
    exact: &SpectrumResult,
    trusted: usize,
) -> Result<(), CliError> {
    let labelled = label_by_reference(numeric, exact).map_err(core("spectrum"))?;
    let offset = table.rows.len();
    for (i, (level, reference)) in labelled.levels().iter().zip(exact.levels()).enumerate() {
        let label = level.label.expect("labelled by reference");
        let exact = reference.quasi_energy;
        table.push(vec![
            ((offset + i) as u32).into(),
            label.q.into(),
            label.m_z.into(),
            level.quasi_energy.into(),
            exact.into(),
            ((level.quasi_energy - exact) / exact).abs().into(),
            u32::from(i < trusted).into(),
        ]);
    }
    Ok(())
}

/// Numerical quasi-energies next to the closed form. Oscillator levels in
/// the upper half of the truncated spectrum are flagged untrusted.
pub fn spectrum(s: &Scenario, c: &PhysicalConstants) -> Result<Table, CliError> {
    let mut table = Table::new("spectrum", &SPECTRUM_COLUMNS);
    match s.model {
        ModelKind::Harmonic => {
            let n_max = s.n_max.unwrap_or(DEFAULT_HO_NMAX);
            if n_max > MAX_HO_NMAX {
                return Err(CliError::Validation(format!("basis.n_max: at most {MAX_HO_NMAX}")));
            }
            let basis = build_ho_basis(n_max.into()).map_err(core("basis"))?;
            let h = ho_rotating_hamiltonian(&basis, &s.rotor, c).map_err(core("spectrum"))?;
            let numeric = eigen_spectrum(&h).map_err(core("spectrum"))?;
            let exact = harmonic_analytic_spectrum(n_max, &s.rotor, c).map_err(core("spectrum"))?;
            push_spectrum(&mut table, &numeric, &exact, numeric.levels().len() / 2)?;
        }
        ModelKind::Coulomb => {
            let default_max = s.transition.map_or(3, |t| t.upper.q.max(t.lower.q));
            let n_max = s.n_max.unwrap_or(default_max);
            if !(1..=MAX_SHELL).contains(&n_max) {
                return Err(CliError::Validation(format!(
                    "basis.n_max: must lie in 1..={MAX_SHELL}"
                )));
            }
            let z = s.rotor.charge().expect("coulomb rotor");
            let mut fields = fictitious_fields(&s.rotor, c);
            if let Some(d) = &s.drive {
                fields = fields.with_drive(d.vector()).map_err(core("drive"))?;
            }
            for n in 1..=n_max {
                let e0 = bohr_level(n, z, c).map_err(core("spectrum"))?;
                let w = manifold_perturbation(n, z, &fields, c).map_err(core("spectrum"))?;
                let numeric = first_order_degenerate_levels(e0, &w).map_err(core("spectrum"))?;
                let exact = coulomb_shell_reference(n, &s.rotor, s.drive.as_ref(), c)?;
                push_spectrum(&mut table, &numeric, &exact, numeric.levels().len())?;
            }
        }
    }
    Ok(table)
}

pub const DOPPLER_COLUMNS: [&str; 4] = [
    "delta_e_J",
    "omega_rest_rad_s",
    "omega_doppler_rad_s",
    "doppler_shift_rad_s",
];

pub fn doppler(section: &crate::config::DopplerSection, c: &PhysicalConstants) -> Result<Table, CliError> {
    let v = Vec3::from(section.v_m_per_s);
    let direction = Vec3::from(section.direction);
    let omega = doppler_frequency_along(section.delta_e_j, &v, &direction, c).map_err(core("doppler"))?;
    let rest = section.delta_e_j / c.hbar;
    let mut table = Table::new("doppler", &DOPPLER_COLUMNS);
    table.push(vec![
        section.delta_e_j.into(),
        rest.into(),
        omega.into(),
        (omega - rest).into(),
    ]);
    Ok(table)
}

pub const COMPARE_STARK_COLUMNS: [&str; 9] = [
    "orientation",
    "n",
    "m_z",
    "quasi_energy_J",
    "level_shift_J",
    "root_factor",
    "force_ratio",
    "force_ratio_engineering",
    "engineering_prefactor_exact",
];

/// Centrifugal-to-electric force ratio and the driven levels for the
/// undriven, enhancing (parallel) and reducing (antiparallel) cases.
pub fn compare_stark(s: &Scenario, c: &PhysicalConstants) -> Result<Table, CliError> {
    let drive = s.drive.expect("validated");
    if s.model != ModelKind::Coulomb {
        return Err(CliError::Validation(
            "model: compare-stark needs the coulomb model".into(),
        ));
    }
    let ratio = force_ratio(&s.rotor, drive.magnitude, c).map_err(core("force ratio"))?;
    let prefactor = engineering_prefactor_exact(c);
    let shells: Vec<u32> = match s.transition {
        Some(t) if t.upper.q == t.lower.q => vec![t.upper.q],
        Some(t) => vec![t.upper.q.max(t.lower.q), t.upper.q.min(t.lower.q)],
        None => vec![2],
    };
    let cases = [
        ("none", None),
        (
            "parallel",
            Some(Drive {
                orientation: Orientation::Parallel,
                ..drive
            }),
        ),
        (
            "antiparallel",
            Some(Drive {
                orientation: Orientation::Antiparallel,
                ..drive
            }),
        ),
    ];
    let mut table = Table::new("compare-stark", &COMPARE_STARK_COLUMNS);
    for (name, case) in cases {
        for &n in &shells {
            let k = n as i32 - 1;
            for m_z in -k..=k {
                let q: QuasiEnergy = match &case {
                    Some(d) => driven_rotating_levels(n, m_z, &s.rotor, &d.vector(), c),
                    None => rotating_coulomb_levels(n, m_z, &s.rotor, c),
                }
                .map_err(core("compare-stark"))?;
                table.push(vec![
                    name.into(),
                    n.into(),
                    m_z.into(),
                    q.total().into(),
                    (q.linear + q.correction).into(),
                    root_factor(n, &s.rotor, case.as_ref(), c)?.into(),
                    ratio.direct.into(),
                    ratio.engineering.into(),
                    prefactor.into(),
                ]);
            }
        }
    }
    Ok(table)
}
