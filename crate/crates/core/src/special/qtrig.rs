//! q-trigonometric functions
//! `Cos_q(z) = sum (-1)^n q^{n(2n-1)} z^{2n} / [2n]_q!` and
//! `Sin_q(z) = sum (-1)^n q^{n(2n+1)} z^{2n+1} / [2n+1]_q!`.

use num_complex::Complex64;

use super::SeriesSum;
use crate::error::{Error, Result};

const MAX_TERMS: usize = 100_000;

fn q_int(k: u32, q: Complex64) -> Complex64 {
    if (1.0 - q).norm() < 1e-2 {
        let mut s = Complex64::new(0.0, 0.0);
        let mut p = Complex64::new(1.0, 0.0);
        for _ in 0..k {
            s += p;
            p *= q;
        }
        s
    } else {
        (1.0 - q.powu(k)) / (1.0 - q)
    }
}

/// Lower bound for `|[j]_q|` over all `j >= k`.
fn q_int_floor(k: u32, q: Complex64) -> f64 {
    let d = (1.0 - q).norm();
    if d == 0.0 {
        return k as f64;
    }
    -(k as f64 * q.norm().ln()).exp_m1() / d
}

fn check_q(q: Complex64) -> Result<()> {
    if q.norm() < 1.0 || q == Complex64::new(1.0, 0.0) {
        Ok(())
    } else {
        Err(Error::domain("q-trigonometric series need |q| < 1 or q = 1"))
    }
}

/// Sum `sum_n t_n` where `t_0 = first` and `t_{n+1} = t_n * -q^{4n+e} z^2 / ([2n+o][2n+o+1])`.
fn trig_series(q: Complex64, z: Complex64, first: Complex64, e: u32, o: u32, tol: f64) -> Result<SeriesSum> {
    let z2 = z * z;
    let qa = q.norm();
    let mut term = first;
    let mut sum = term;
    let mut abs_sum = term.norm();
    for n in 0..MAX_TERMS as u32 {
        let k = 2 * n + o;
        term *= -q.powu(4 * n + e) * z2 / (q_int(k, q) * q_int(k + 1, q));
        sum += term;
        abs_sum += term.norm();
        let k1 = k + 2;
        let rho = qa.powi((4 * (n + 1) + e) as i32) * z2.norm() / (q_int_floor(k1, q) * q_int_floor(k1 + 1, q));
        if rho < 1.0 {
            let tail = term.norm() * rho / (1.0 - rho);
            let rounding = 4.0 * f64::EPSILON * abs_sum;
            if tail + rounding <= tol || tail <= rounding {
                return Ok(SeriesSum { value: sum, terms: n as usize + 2, tail_bound: tail + rounding });
            }
        }
    }
    Err(Error::ToleranceUnreachable { tol, achieved: f64::NAN })
}

pub fn q_cos(q: Complex64, z: Complex64, tol: f64) -> Result<SeriesSum> {
    check_q(q)?;
    trig_series(q, z, Complex64::new(1.0, 0.0), 1, 1, tol)
}

pub fn q_sin(q: Complex64, z: Complex64, tol: f64) -> Result<SeriesSum> {
    check_q(q)?;
    trig_series(q, z, z, 3, 2, tol)
}

/// `Cos_q(z) / Sin_q(z)`.
pub fn q_cotan(q: Complex64, z: Complex64, tol: f64) -> Result<Complex64> {
    let c = q_cos(q, z, tol)?;
    let s = q_sin(q, z, tol)?;
    if s.value.norm() <= 1e-14 * c.value.norm().max(1.0) {
        return Err(Error::ZeroDenominator);
    }
    Ok(c.value / s.value)
}

/// `q^{-1/2} Cotan_q(q^{-1/2})`, the q-deformation of `cot 1`.
pub fn cotan_one_qvalue(q: Complex64, tol: f64) -> Result<Complex64> {
    if q.norm() == 0.0 {
        return Err(Error::domain("need q != 0"));
    }
    let w = q.sqrt().inv();
    Ok(w * q_cotan(q, w, tol)?)
}
