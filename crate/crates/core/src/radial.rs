//! Hydrogenic radial functions and same-shell dipole radial integrals.
//!
//! Lengths are in units of a0 / Z. Radial functions follow the convention
//! in which R_nl(r) > 0 as r → 0 (associated Laguerre polynomials with
//! positive value at the origin).

use std::sync::OnceLock;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{invalid, Error, Result};

/// Highest principal quantum number supported by the manifold routines.
pub const MAX_PRINCIPAL: u32 = 10;

const QUADRATURE_NODES: usize = 24;

/// Generalised Laguerre polynomial L_k^(α)(x) by the three-term recurrence.
pub fn laguerre(k: u32, alpha: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if k == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - x;
    for j in 1..k {
        let j = j as f64;
        let next = ((2.0 * j + 1.0 + alpha - x) * cur - (j + alpha) * prev) / (j + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// R_nl(r) for a unit-charge Coulomb centre, r in units of a0.
pub fn hydrogen_radial(n: u32, l: u32, r: f64) -> f64 {
    debug_assert!(l < n);
    let nf = n as f64;
    let rho = 2.0 * r / nf;
    radial_norm(n, l) * (-rho / 2.0).exp() * rho.powi(l as i32) * laguerre(n - l - 1, (2 * l + 1) as f64, rho)
}

fn radial_norm(n: u32, l: u32) -> f64 {
    let nf = n as f64;
    ((2.0 / nf).powi(3) * factorial(n - l - 1) / (2.0 * nf * factorial(n + l))).sqrt()
}

/// Gauss–Laguerre rule (weight e^{-x}), exact for polynomials of degree
/// below 2 × nodes.
pub struct GaussLaguerre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLaguerre {
    /// Golub–Welsch on the Jacobi matrix, then one Newton polish per node.
    pub fn new(size: usize) -> Self {
        assert!(size >= 1);
        let jacobi = DMatrix::from_fn(size, size, |i, j| {
            if i == j {
                (2 * i + 1) as f64
            } else if i.abs_diff(j) == 1 {
                (i.max(j)) as f64
            } else {
                0.0
            }
        });
        let eig = SymmetricEigen::new(jacobi);
        let mut nodes: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        nodes.sort_by(f64::total_cmp);
        let k = size as u32;
        let mut weights = Vec::with_capacity(size);
        for x in nodes.iter_mut() {
            for _ in 0..3 {
                // L_k'(x) = k (L_k(x) - L_{k-1}(x)) / x
                let lk = laguerre(k, 0.0, *x);
                let dlk = k as f64 * (lk - laguerre(k - 1, 0.0, *x)) / *x;
                *x -= lk / dlk;
            }
            let lk1 = laguerre(k + 1, 0.0, *x);
            weights.push(*x / ((k as f64 + 1.0).powi(2) * lk1 * lk1));
        }
        Self { nodes, weights }
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

fn rule() -> &'static GaussLaguerre {
    static RULE: OnceLock<GaussLaguerre> = OnceLock::new();
    RULE.get_or_init(|| GaussLaguerre::new(QUADRATURE_NODES))
}

fn check_pair(n: u32, l: u32, l_prime: u32) -> Result<()> {
    if !(1..=MAX_PRINCIPAL).contains(&n) {
        return invalid(format!("principal quantum number {n} outside 1..={MAX_PRINCIPAL}"));
    }
    if l.abs_diff(l_prime) != 1 {
        return Err(Error::SelectionRule { l, l_prime });
    }
    if l >= n || l_prime >= n {
        return invalid(format!("l = {l}, l' = {l_prime} not both below n = {n}"));
    }
    Ok(())
}

/// ⟨n l'| r |n l⟩ in units of a0 / Z, by Gauss–Laguerre quadrature.
///
/// With ρ = 2r/n the integrand is a polynomial of degree 2n + 1 times e^{-ρ},
/// so the 24-node rule is exact up to rounding for every supported n.
pub fn radial_dipole_integral(n: u32, l: u32, l_prime: u32) -> Result<f64> {
    check_pair(n, l, l_prime)?;
    let nf = n as f64;
    let (a, b) = (radial_norm(n, l), radial_norm(n, l_prime));
    let (ka, kb) = (n - l - 1, n - l_prime - 1);
    let (alpha_a, alpha_b) = ((2 * l + 1) as f64, (2 * l_prime + 1) as f64);
    // r³ dr = (n/2)^4 ρ³ dρ
    let jac = (nf / 2.0).powi(4);
    let integral = rule()
        .integrate(|rho| rho.powi((l + l_prime + 3) as i32) * laguerre(ka, alpha_a, rho) * laguerre(kb, alpha_b, rho));
    Ok(a * b * jac * integral)
}

/// Closed form of the same-shell radial integral,
/// ⟨n l−1| r |n l⟩ = −(3n/2) √(n² − l²) in units of a0 / Z.
pub fn radial_dipole_closed_form(n: u32, l: u32, l_prime: u32) -> Result<f64> {
    check_pair(n, l, l_prime)?;
    let upper = l.max(l_prime) as f64;
    let nf = n as f64;
    Ok(-1.5 * nf * (nf * nf - upper * upper).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Composite Simpson on [0, r_max] as an independent quadrature.
    fn simpson(f: impl Fn(f64) -> f64, r_max: f64, steps: usize) -> f64 {
        let h = r_max / steps as f64;
        let mut s = f(0.0) + f(r_max);
        for i in 1..steps {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            s += w * f(i as f64 * h);
        }
        s * h / 3.0
    }

    #[test]
    fn explicit_low_functions() {
        // R_10 = 2 e^{-r}, R_21 = r e^{-r/2} / (2√6)
        for r in [0.0, 0.3, 1.0, 4.5] {
            assert!((hydrogen_radial(1, 0, r) - 2.0 * (-r).exp()).abs() < 1e-14);
            let r21 = r * (-r / 2.0).exp() / (2.0 * 6f64.sqrt());
            assert!((hydrogen_radial(2, 1, r) - r21).abs() < 1e-14);
            let r20 = (1.0 - r / 2.0) * (-r / 2.0).exp() / 2f64.sqrt();
            assert!((hydrogen_radial(2, 0, r) - r20).abs() < 1e-14);
        }
    }

    #[test]
    fn normalisation() {
        for n in 1..=6 {
            for l in 0..n {
                let norm = simpson(|r| (hydrogen_radial(n, l, r) * r).powi(2), 60.0 * n as f64, 20_000);
                assert!((norm - 1.0).abs() < 1e-9, "n={n} l={l}: {norm}");
            }
        }
    }

    #[test]
    fn n2_value() {
        let v = radial_dipole_integral(2, 0, 1).unwrap();
        assert!((v + 3.0 * 3f64.sqrt()).abs() < 1e-12, "{v}");
        let oracle = simpson(
            |r| hydrogen_radial(2, 0, r) * hydrogen_radial(2, 1, r) * r.powi(3),
            80.0,
            20_000,
        );
        assert!((oracle + 3.0 * 3f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn quadrature_matches_closed_form() {
        for n in 2..=MAX_PRINCIPAL {
            for l in 1..n {
                let q = radial_dipole_integral(n, l - 1, l).unwrap();
                let q_sym = radial_dipole_integral(n, l, l - 1).unwrap();
                let c = radial_dipole_closed_form(n, l - 1, l).unwrap();
                assert!(((q - c) / c).abs() < 1e-10, "n={n} l={l}: {q} vs {c}");
                assert!(((q_sym - c) / c).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn selection_rules() {
        assert!(matches!(
            radial_dipole_integral(1, 0, 1),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            radial_dipole_integral(3, 0, 2),
            Err(Error::SelectionRule { .. })
        ));
        assert!(matches!(
            radial_dipole_integral(3, 1, 1),
            Err(Error::SelectionRule { .. })
        ));
        assert!(radial_dipole_integral(11, 0, 1).is_err());
    }

    #[test]
    fn gauss_laguerre_moments() {
        // ∫ x^k e^{-x} dx = k!
        let rule = GaussLaguerre::new(QUADRATURE_NODES);
        for k in 0..30u32 {
            let v = rule.integrate(|x| x.powi(k as i32));
            assert!(((v - factorial(k)) / factorial(k)).abs() < 1e-12, "k={k}");
        }
    }
}
