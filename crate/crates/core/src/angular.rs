//! Angular matrix elements of the unit position vector between spherical
//! harmonics (Condon–Shortley phases).

use num_complex::Complex64;

fn ratio(num: i64, den: i64) -> f64 {
    (num as f64 / den as f64).sqrt()
}

/// ⟨l' m'| cos θ |l m⟩
pub fn cos_theta(l_prime: u32, m_prime: i32, l: u32, m: i32) -> f64 {
    if m_prime != m {
        return 0.0;
    }
    let (l, m) = (l as i64, m as i64);
    match l_prime as i64 - l {
        1 => ratio((l + 1).pow(2) - m * m, (2 * l + 1) * (2 * l + 3)),
        -1 => ratio(l * l - m * m, (2 * l - 1) * (2 * l + 1)),
        _ => 0.0,
    }
}

/// ⟨l' m'| sin θ e^{iφ} |l m⟩, the (x + iy)/r raising component.
pub fn sin_theta_raise(l_prime: u32, m_prime: i32, l: u32, m: i32) -> f64 {
    if m_prime != m + 1 {
        return 0.0;
    }
    let (l, m) = (l as i64, m as i64);
    match l_prime as i64 - l {
        1 => -ratio((l + m + 1) * (l + m + 2), (2 * l + 1) * (2 * l + 3)),
        -1 => ratio((l - m) * (l - m - 1), (2 * l - 1) * (2 * l + 1)),
        _ => 0.0,
    }
}

/// ⟨l' m'| sin θ e^{-iφ} |l m⟩, the adjoint of [`sin_theta_raise`].
pub fn sin_theta_lower(l_prime: u32, m_prime: i32, l: u32, m: i32) -> f64 {
    sin_theta_raise(l, m, l_prime, m_prime)
}

/// ⟨l' m'| r̂ |l m⟩ as Cartesian components (x/r, y/r, z/r).
pub fn unit_vector(l_prime: u32, m_prime: i32, l: u32, m: i32) -> [Complex64; 3] {
    let up = sin_theta_raise(l_prime, m_prime, l, m);
    let down = sin_theta_lower(l_prime, m_prime, l, m);
    let x = Complex64::new(0.5 * (up + down), 0.0);
    let y = Complex64::new(0.0, -0.5 * (up - down));
    let z = Complex64::new(cos_theta(l_prime, m_prime, l, m), 0.0);
    [x, y, z]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fact(n: i64) -> f64 {
        (1..=n).map(|k| k as f64).product()
    }

    /// Racah's formula for the Wigner 3j symbol (integer arguments).
    fn wigner_3j(j1: i64, j2: i64, j3: i64, m1: i64, m2: i64, m3: i64) -> f64 {
        if m1 + m2 + m3 != 0 || j3 > j1 + j2 || j3 < (j1 - j2).abs() {
            return 0.0;
        }
        if m1.abs() > j1 || m2.abs() > j2 || m3.abs() > j3 {
            return 0.0;
        }
        let delta = (fact(j1 + j2 - j3) * fact(j1 - j2 + j3) * fact(-j1 + j2 + j3) / fact(j1 + j2 + j3 + 1)).sqrt();
        let pre =
            (fact(j1 + m1) * fact(j1 - m1) * fact(j2 + m2) * fact(j2 - m2) * fact(j3 + m3) * fact(j3 - m3)).sqrt();
        let kmin = 0.max(j2 - j3 - m1).max(j1 - j3 + m2);
        let kmax = (j1 + j2 - j3).min(j1 - m1).min(j2 + m2);
        let mut sum = 0.0;
        for k in kmin..=kmax {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sum += sign
                / (fact(k)
                    * fact(j1 + j2 - j3 - k)
                    * fact(j1 - m1 - k)
                    * fact(j2 + m2 - k)
                    * fact(j3 - j2 + m1 + k)
                    * fact(j3 - j1 - m2 + k));
        }
        let phase = if (j1 - j2 - m3).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        phase * delta * pre * sum
    }

    /// ⟨l' m'| C^1_q |l m⟩ via the Wigner–Eckart theorem.
    fn c1(lp: i64, mp: i64, q: i64, l: i64, m: i64) -> f64 {
        let phase = if mp.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        phase
            * (((2 * lp + 1) * (2 * l + 1)) as f64).sqrt()
            * wigner_3j(lp, 1, l, -mp, q, m)
            * wigner_3j(lp, 1, l, 0, 0, 0)
    }

    #[test]
    fn matches_wigner_eckart() {
        // C^1_0 = cos θ, C^1_{+1} = -sin θ e^{iφ}/√2, C^1_{-1} = sin θ e^{-iφ}/√2
        let s2 = 2f64.sqrt();
        for l in 0..6u32 {
            for lp in 0..6u32 {
                for m in -(l as i32)..=l as i32 {
                    for mp in -(lp as i32)..=lp as i32 {
                        let (li, lpi, mi, mpi) = (l as i64, lp as i64, m as i64, mp as i64);
                        let z = c1(lpi, mpi, 0, li, mi);
                        let up = -s2 * c1(lpi, mpi, 1, li, mi);
                        let down = s2 * c1(lpi, mpi, -1, li, mi);
                        assert!((cos_theta(lp, mp, l, m) - z).abs() < 1e-13);
                        assert!((sin_theta_raise(lp, mp, l, m) - up).abs() < 1e-13, "{lp} {mp} {l} {m}");
                        assert!((sin_theta_lower(lp, mp, l, m) - down).abs() < 1e-13);
                    }
                }
            }
        }
    }

    #[test]
    fn y00_to_y11() {
        // sin θ e^{iφ} Y00 = -√(2/3) Y11
        assert!((sin_theta_raise(1, 1, 0, 0) + (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
    }
}
