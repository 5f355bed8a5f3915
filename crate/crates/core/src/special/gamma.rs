//! Complex log-gamma.
//!
//! Stirling's series is applied once `Re w >= 15`; smaller arguments are
//! shifted upward with `ln Gamma(z) = ln Gamma(z + n) - sum ln(z + k)`. Summing
//! principal logarithms keeps the result on the branch that is analytic in
//! the plane cut along the negative real axis.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const SHIFT_TO: f64 = 15.0;

// B_{2k} / (2k (2k - 1)) for k = 1..10.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
];

fn is_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// Principal branch of `ln Gamma(z)`.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::domain("log_gamma needs a finite argument"));
    }
    if is_pole(z) {
        return Err(Error::Pole);
    }
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.re < SHIFT_TO {
        shift += w.ln();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut p = inv;
    for c in STIRLING {
        series += p * c;
        p *= inv2;
    }
    Ok((w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln() + series - shift)
}

pub fn gamma(z: Complex64) -> Result<Complex64> {
    Ok(log_gamma(z)?.exp())
}

/// `1/Gamma(z)`, zero at the poles of gamma.
pub fn rgamma(z: Complex64) -> Complex64 {
    match log_gamma(z) {
        Ok(l) => (-l).exp(),
        Err(_) => Complex64::new(0.0, 0.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn half_is_sqrt_pi() {
        let g = gamma(c(0.5, 0.0)).unwrap();
        assert!((g - PI.sqrt()).norm() < 1e-14);
    }

    #[test]
    fn factorials() {
        let mut f = 1.0;
        for n in 1..20 {
            let g = gamma(c(n as f64, 0.0)).unwrap();
            assert!((g.re - f).abs() <= 1e-13 * f, "n={n}");
            f *= n as f64;
        }
    }

    #[test]
    fn recurrence() {
        let z = c(2.3, 1.1);
        let lhs = gamma(z + 1.0).unwrap();
        let rhs = z * gamma(z).unwrap();
        assert!((lhs - rhs).norm() < 1e-11 * rhs.norm());
    }

    #[test]
    fn reflection_identity() {
        // Gamma(z) Gamma(1-z) = pi / sin(pi z), checked on the left half-plane too
        for z in [c(-3.7, 0.4), c(-9.2, -1.3), c(0.25, 2.0), c(7.5, -3.0)] {
            let lhs = gamma(z).unwrap() * gamma(1.0 - z).unwrap();
            let rhs = PI / (z * PI).sin();
            assert!((lhs - rhs).norm() < 1e-12 * rhs.norm(), "z={z}");
        }
    }

    #[test]
    fn branch_is_continuous_across_real_axis_above_zero() {
        let a = log_gamma(c(3.3, 1e-9)).unwrap();
        let b = log_gamma(c(3.3, -1e-9)).unwrap();
        assert!((a - b).norm() < 1e-8);
    }

    #[test]
    fn poles() {
        assert_eq!(log_gamma(c(0.0, 0.0)), Err(Error::Pole));
        assert_eq!(log_gamma(c(-4.0, 0.0)), Err(Error::Pole));
        assert_eq!(rgamma(c(-2.0, 0.0)), c(0.0, 0.0));
    }
}
