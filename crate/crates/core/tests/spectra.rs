use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rotoshift_core::operators::{ho_rotating_hamiltonian_along, manifold_perturbation, DEFAULT_HO_NMAX};
use rotoshift_core::quasi_energy::{
    bohr_level, crossed_field_frequency, crossed_field_levels, eigen_spectrum, first_order_degenerate_levels,
    harmonic_analytic_spectrum,
};
use rotoshift_core::{build_ho_basis, CrossedFields, PhysicalConstants, RotorConfig, Vec3};

fn harmonic_rotor(omega_ratio: f64, drift: f64, c: &PhysicalConstants) -> RotorConfig {
    let omega0 = 1e15;
    let omega = omega_ratio * omega0;
    let speed = drift * (c.hbar * omega0 / c.electron_mass).sqrt();
    RotorConfig::harmonic(omega0, omega, speed / omega).unwrap()
}

fn max_lower_half_error(rotor: &RotorConfig, angle: f64, c: &PhysicalConstants) -> f64 {
    let basis = build_ho_basis(DEFAULT_HO_NMAX as i64).unwrap();
    let h = ho_rotating_hamiltonian_along(&basis, rotor, c, angle).unwrap();
    let numeric = eigen_spectrum(&h).unwrap();
    let exact = harmonic_analytic_spectrum(DEFAULT_HO_NMAX, rotor, c).unwrap();
    numeric
        .lowest_fraction(0.5)
        .iter()
        .zip(exact.levels())
        .map(|(a, b)| ((a.quasi_energy - b.quasi_energy) / b.quasi_energy).abs())
        .fold(0.0, f64::max)
}

#[test]
fn oscillator_matches_closed_form_in_converged_regime() {
    let c = PhysicalConstants::codata2018();
    for (ratio, drift) in [(0.05, 0.01), (0.05, 0.05), (0.1, 0.01), (0.1, 0.03)] {
        let err = max_lower_half_error(&harmonic_rotor(ratio, drift, &c), 0.0, &c);
        assert!(err < 1e-8, "Ω/ω0={ratio} u={drift}: {err:e}");
    }
}

#[test]
fn oscillator_spectrum_is_orientation_independent() {
    let c = PhysicalConstants::codata2018();
    let rotor = harmonic_rotor(0.1, 0.03, &c);
    let basis = build_ho_basis(8).unwrap();
    let a = eigen_spectrum(&ho_rotating_hamiltonian_along(&basis, &rotor, &c, 0.0).unwrap()).unwrap();
    let b = eigen_spectrum(&ho_rotating_hamiltonian_along(&basis, &rotor, &c, 1.234).unwrap()).unwrap();
    let scale = a.energies().iter().fold(0.0f64, |m, e| m.max(e.abs()));
    for (x, y) in a.energies().iter().zip(b.energies()) {
        assert!((x - y).abs() < 1e-12 * scale);
    }
}

/// Random weak crossed fields; splittings stay below 1e-3 of the n=4 → 5 gap.
fn random_fields(rng: &mut ChaCha8Rng) -> CrossedFields {
    let b = rng.random_range(-1.0..1.0);
    let e = Vec3::new(rng.random_range(-2e5..2e5), rng.random_range(-2e5..2e5), 0.0);
    let fields = CrossedFields::new(e, Vec3::new(0.0, 0.0, b), None).unwrap();
    if rng.random_bool(0.5) {
        let drive = Vec3::new(rng.random_range(-1e5..1e5), rng.random_range(-1e5..1e5), 0.0);
        fields.with_drive(drive).unwrap()
    } else {
        fields
    }
}

#[test]
fn brute_force_manifold_matches_crossed_field_formula() {
    let c = PhysicalConstants::codata2018();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let fields = random_fields(&mut rng);
        for n in 2..=4u32 {
            // splittings relative to E0; adding E0 would round them away
            let w = manifold_perturbation(n, 1, &fields, &c).unwrap();
            let numeric = first_order_degenerate_levels(0.0, &w).unwrap().energies();
            let freq = crossed_field_frequency(n, 1, &fields, &c).unwrap();
            let e0 = bohr_level(n, 1, &c).unwrap();
            let mut formula = Vec::new();
            for m in -(n as i32 - 1)..n as i32 {
                let level = crossed_field_levels(n, m, 1, &fields, &c).unwrap();
                assert!((level - e0 + c.hbar * m as f64 * freq).abs() <= 4.0 * f64::EPSILON * e0.abs());
                for _ in 0..(n - m.unsigned_abs()) {
                    formula.push(-c.hbar * m as f64 * freq);
                }
            }
            formula.sort_by(f64::total_cmp);
            let splitting = formula.last().unwrap() - formula[0];
            for (a, b) in numeric.iter().zip(&formula) {
                assert!((a - b).abs() <= 1e-8 * splitting, "n={n}: {a:e} vs {b:e}");
            }
        }
    }
}
