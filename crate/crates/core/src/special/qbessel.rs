//! q-Bessel series `J(c, q, z)`, its continued-fraction ratio, and the
//! q-values of arithmetic-progression expansions built from it.

use num_complex::Complex64;

use super::gamma::log_gamma;
use super::SeriesSum;
use crate::cf_core::IntPoly;
use crate::error::{Error, Result};
use crate::q_series::IntLaurent;

const MAX_TERMS: usize = 100_000;
const POLE_TOL: f64 = 1e-14;

/// `J(c, q, z) = sum_n (-1)^n q^{n(n-1)} c^n z^n / ((c;q)_n (q;q)_n)`.
pub fn q_bessel(c: Complex64, q: Complex64, z: Complex64, tol: f64) -> Result<SeriesSum> {
    let qa = q.norm();
    if !(qa < 1.0) {
        return Err(Error::domain("q-Bessel series needs |q| < 1"));
    }
    let ca = c.norm();
    let cz = c * z;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut abs_sum = 1.0;
    // q^n, kept incrementally
    let mut qn = Complex64::new(1.0, 0.0);
    let mut best = f64::INFINITY;
    for n in 0..MAX_TERMS {
        let den_c = 1.0 - c * qn;
        if den_c.norm() < POLE_TOL {
            return Err(Error::PoleParameter { index: n });
        }
        let qn1 = qn * q;
        // t_{n+1}/t_n = -q^{2n} c z / ((1 - c q^n)(1 - q^{n+1}))
        term *= -(qn * qn) * cz / (den_c * (1.0 - qn1));
        sum += term;
        abs_sum += term.norm();
        let rounding = 4.0 * f64::EPSILON * abs_sum;
        // later ratios are bounded by |q|^{2k}|cz| / ((1 - |c||q|^k)(1 - |q|^{k+1})), decreasing in k
        let k = (n + 1) as i32;
        let qk = qa.powi(k);
        if ca * qk < 1.0 {
            let rho = qk * qk * cz.norm() / ((1.0 - ca * qk) * (1.0 - qk * qa));
            if rho < 1.0 {
                let tail = term.norm() * rho / (1.0 - rho);
                best = best.min(tail + rounding);
                if tail + rounding <= tol || tail <= rounding {
                    return Ok(SeriesSum { value: sum, terms: n + 2, tail_bound: tail + rounding });
                }
            }
        }
        qn = qn1;
    }
    Err(Error::ToleranceUnreachable { tol, achieved: best })
}

/// Depth-`depth` truncation of the continued fraction for `J(qy, q, x) / J(y, q, x)`:
/// `(1 - y) / L_0` with `L_k = 1 - q^k y - q^k x y / L_{k+1}`.
pub fn kslem_cf(y: Complex64, q: Complex64, x: Complex64, depth: usize) -> Complex64 {
    let qk = |k: usize| q.powu(k as u32);
    let mut l = 1.0 - qk(depth) * y;
    for k in (0..depth).rev() {
        let p = qk(k);
        l = 1.0 - p * y - p * x * y / l;
    }
    (1.0 - y) / l
}

/// `[s]_q J(q^s, q^r, x) / J(q^{r+s}, q^r, x)` with `x = (1 - q)^2 / q`.
///
/// This is the q-deformation of the number with expansion `(s, s+r, s+2r, ...)`.
pub fn transcendental_qvalue(s: u32, r: u32, q: Complex64, tol: f64) -> Result<Complex64> {
    if s < 1 || r < 1 {
        return Err(Error::domain("need s >= 1 and r >= 1"));
    }
    if q.norm() == 0.0 || !(q.norm() < 1.0) {
        return Err(Error::domain("need 0 < |q| < 1"));
    }
    let x = (1.0 - q) * (1.0 - q) / q;
    let qr = q.powu(r);
    let num = q_bessel(q.powu(s), qr, x, tol * 1e-3)?;
    let den = q_bessel(q.powu(r + s), qr, x, tol * 1e-3)?;
    if den.value.norm() < 1e-300 {
        return Err(Error::ZeroDenominator);
    }
    let qs = (1.0 - q.powu(s)) / (1.0 - q);
    Ok(qs * num.value / den.value)
}

/// Classical value of the progression `(s, s+r, ...)`: `J_{s/r-1}(2/r) / J_{s/r}(2/r)`.
pub fn transcendental_limit(s: u32, r: u32, tol: f64) -> Result<f64> {
    if s < 1 || r < 1 {
        return Err(Error::domain("need s >= 1 and r >= 1"));
    }
    let nu = s as f64 / r as f64;
    let z = 2.0 / r as f64;
    let num = classical_bessel(nu - 1.0, z, tol * 1e-3)?;
    let den = classical_bessel(nu, z, tol * 1e-3)?;
    Ok(num.value.re / den.value.re)
}

/// Bessel function of the first kind `J_nu(z)` for real `nu` and `z >= 0`.
pub fn classical_bessel(nu: f64, z: f64, tol: f64) -> Result<SeriesSum> {
    if !(z >= 0.0) || !nu.is_finite() {
        return Err(Error::domain("classical_bessel needs finite nu and z >= 0"));
    }
    if nu < 0.0 && nu == nu.round() {
        // J_{-n} = (-1)^n J_n
        let s = classical_bessel(-nu, z, tol)?;
        let sign = if (nu as i64) % 2 == 0 { 1.0 } else { -1.0 };
        return Ok(SeriesSum { value: s.value * sign, ..s });
    }
    if z == 0.0 {
        let v = if nu == 0.0 { 1.0 } else { 0.0 };
        if nu < 0.0 {
            return Err(Error::Pole);
        }
        return Ok(SeriesSum { value: Complex64::new(v, 0.0), terms: 1, tail_bound: 0.0 });
    }
    let half = z / 2.0;
    let lg = log_gamma(Complex64::new(nu + 1.0, 0.0))?;
    // the imaginary part of lg carries the sign of Gamma(nu+1)
    let mut term = (Complex64::new(nu * half.ln(), 0.0) - lg).exp().re;
    let mut sum = term;
    let mut abs_sum = term.abs();
    let h2 = half * half;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        term *= -h2 / ((nf + 1.0) * (nf + nu + 1.0));
        sum += term;
        abs_sum += term.abs();
        let k = nf + 2.0;
        if k + nu > 0.0 {
            let rho = h2 / (k * (k + nu));
            if rho < 1.0 {
                let tail = term.abs() * rho / (1.0 - rho);
                let rounding = 4.0 * f64::EPSILON * abs_sum;
                if tail + rounding <= tol || tail <= rounding {
                    return Ok(SeriesSum { value: Complex64::new(sum, 0.0), terms: n + 2, tail_bound: tail + rounding });
                }
            }
        }
    }
    Err(Error::ToleranceUnreachable { tol, achieved: f64::NAN })
}

/// `J_m(2)_q = sum_n (-1)^n q^{n(n+m-1)} / ([n]_q! [n+m]_q!)` as an integer
/// series modulo `q^order`.
///
/// This is `J(q^{m+1}, q, (1-q)^2/q) / [m]_q!` written out term by term.
pub fn bessel_bridge_series(m: u32, order: usize) -> Result<IntLaurent> {
    let order_i = order as i64;
    let mut acc = IntLaurent::zero(order_i);
    let mut fact_n = IntPoly::one();
    let mut fact = vec![IntPoly::one()];
    let mut n: u32 = 0;
    loop {
        let e = n as i64 * (n as i64 + m as i64 - 1);
        if e >= order_i && n > 0 {
            break;
        }
        if n > 0 {
            fact_n = &fact_n * &IntPoly::q_int(n);
        }
        while fact.len() <= (n + m) as usize {
            let k = fact.len() as u32;
            let next = &fact[k as usize - 1] * &IntPoly::q_int(k);
            fact.push(next);
        }
        let den = &fact_n * &fact[(n + m) as usize];
        if e < order_i {
            let mut t = IntLaurent::from_poly(&den, order_i).inverse()?.mul_q_pow(e).truncate(order_i);
            if n % 2 == 1 {
                t = -&t;
            }
            acc = &acc + &t;
        }
        n += 1;
    }
    Ok(acc)
}

/// `J_1(2)_q / J_2(2)_q` modulo `q^order`.
pub fn bessel_bridge_ratio(order: usize) -> Result<IntLaurent> {
    let num = bessel_bridge_series(1, order)?;
    let den = bessel_bridge_series(2, order)?;
    num.div(&den)
}
