//! The interaction series `phi`, `h_1`, `h_2` and the roots `beta_n`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// A real value with an absolute error bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Bounded {
    pub value: f64,
    pub err: f64,
}

fn check(q: f64, z: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&q) || z < 0.0 || !z.is_finite() {
        return Err(Error::domain("needs 0 <= q <= 1 and z >= 0"));
    }
    if q * z >= 1.0 {
        return Err(Error::domain("needs q z < 1"));
    }
    Ok(())
}

fn qn(n: u32, q: f64) -> f64 {
    if q == 1.0 {
        n as f64
    } else {
        (1.0 - q.powi(n as i32)) / (1.0 - q)
    }
}

/// `sum_{n > big_n} x^{n-1}/[n]_q^2 <= x^N / ((1 - x) [N+1]_q^2)` for `x < 1`.
fn phi_tail(big_n: u32, q: f64, x: f64) -> f64 {
    x.powi(big_n as i32) / ((1.0 - x) * qn(big_n + 1, q).powi(2))
}

/// `phi(q, z) = sum_{n >= 2} (q z)^{n-1} / [n]_q^2`.
///
/// The literal series vanishes at `q = 0`. At `q = z = 1` it is
/// `sum 1/n^2` from `n = 2`, summed with an integral tail estimate.
pub fn phi_series(q: f64, z: f64, tol: f64) -> Result<Bounded> {
    if q == 1.0 && z == 1.0 {
        return Ok(basel_minus_one(tol));
    }
    check(q, z)?;
    let x = q * z;
    let mut sum = 0.0;
    let mut n = 2u32;
    loop {
        sum += x.powi(n as i32 - 1) / qn(n, q).powi(2);
        let tail = phi_tail(n, q, x);
        if tail <= tol || x == 0.0 {
            return Ok(Bounded { value: sum, err: tail + 4.0 * f64::EPSILON * sum * n as f64 });
        }
        n += 1;
    }
}

fn basel_minus_one(tol: f64) -> Bounded {
    // tail after N lies in [1/(N+1), 1/N]
    let big_n = (0.5 / tol.max(1e-14)).sqrt().ceil() as u64 + 1;
    let sum: f64 = (2..=big_n).rev().map(|n| 1.0 / (n as f64 * n as f64)).sum();
    let (lo, hi) = (1.0 / (big_n as f64 + 1.0), 1.0 / big_n as f64);
    Bounded { value: sum + 0.5 * (lo + hi), err: 0.5 * (hi - lo) + 1e-15 }
}

/// Smallest `N` with `phi_tail(N) <= target`.
fn cutoff(q: f64, x: f64, target: f64) -> u32 {
    let mut n = 2;
    while phi_tail(n, q, x) > target {
        n += 1;
    }
    n
}

/// `h_1(q, z) = sum_{m, p >= 1} q^{m+p} z^p / ([m+1]_q [p+1]_q + q^{m+p+1})^2`.
pub fn h1_series(q: f64, z: f64, tol: f64) -> Result<Bounded> {
    if q == 1.0 && z == 1.0 {
        return Ok(h1_at_one(tol));
    }
    check(q, z)?;
    if q == 0.0 {
        return Ok(Bounded { value: 0.0, err: 0.0 });
    }
    let phi_q = phi_series(q, 1.0, tol)?;
    let phi_z = phi_series(q, z, tol)?;
    // term(m, p) <= (q^m/[m+1]^2)((q z)^p/[p+1]^2); the index shift n = m + 1
    // turns each factor's tail into a phi tail.
    let m_max = cutoff(q, q, tol / (4.0 * (phi_z.value + phi_z.err))) - 1;
    let p_max = cutoff(q, q * z, tol / (4.0 * (phi_q.value + phi_q.err))) - 1;
    let ints: Vec<f64> = (0..=m_max.max(p_max) + 2).map(|n| qn(n, q)).collect();
    let value: f64 = (1..=p_max)
        .into_par_iter()
        .map(|p| {
            let wp = q.powi(p as i32) * z.powi(p as i32);
            let mut s = 0.0;
            for m in (1..=m_max).rev() {
                let d = ints[m as usize + 1] * ints[p as usize + 1] + q.powi((m + p + 1) as i32);
                s += q.powi(m as i32) / (d * d);
            }
            wp * s
        })
        .collect::<Vec<f64>>()
        .iter()
        .sum();
    let tail = phi_tail(m_max + 1, q, q) * (phi_z.value + phi_z.err) + (phi_q.value + phi_q.err) * phi_tail(p_max + 1, q, q * z);
    Ok(Bounded { value, err: tail + 1e-14 * value.abs() })
}

/// Trigamma for `x >= 1` by upward shift and the asymptotic series.
fn trigamma(mut x: f64) -> f64 {
    let mut acc = 0.0;
    while x < 20.0 {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    let x2 = 1.0 / (x * x);
    acc + 1.0 / x + x2 / 2.0 + x2 / x * (1.0 / 6.0 - x2 * (1.0 / 30.0 - x2 * (1.0 / 42.0 - x2 * (1.0 / 30.0 - x2 * 5.0 / 66.0))))
}

/// `h_1(1) = sum_{P >= 2} psi_1(2 + 1/P) / P^2`, the inner sum over `m` in closed form.
fn h1_at_one(tol: f64) -> Bounded {
    let big_p = ((trigamma(2.0) / tol.max(1e-13)).sqrt().ceil() as u64).max(100);
    let sum: f64 = (2..=big_p).rev().map(|p| trigamma(2.0 + 1.0 / p as f64) / (p * p) as f64).sum();
    let lo = trigamma(2.0 + 1.0 / (big_p + 1) as f64) / (big_p + 1) as f64;
    let hi = trigamma(2.0) / big_p as f64;
    Bounded { value: sum + 0.5 * (lo + hi), err: 0.5 * (hi - lo) + 1e-13 }
}

const CHEB_NODES: usize = 40;

/// `h_2(q, z) = sum q^{m_1+p_1+m_2+p_2} z^{p_1+p_2} / D(m_1+1, p_1, m_2, p_2+1)^2`
/// with the five-term polynomial
/// `D(m_1, p_1, m_2, p_2) = [m_1][p_1][m_2][p_2] + q^{m_1+p_1-1}[m_2][p_2]
///  + q^-1 [m_1][p_2] + q^{m_2+p_2-1}[m_1][p_1] + q^{m_1+p_1+m_2+p_2-2}`.
///
/// Here `D(m_1+1, p_1, m_2, p_2+1)` is `q^-1` times the continuant used by
/// [`h2_continuant_series`], so `h_2 = q^2` times that sum.
pub fn h2_series(q: f64, z: f64, tol: f64) -> Result<Bounded> {
    if q == 0.0 {
        check(q, z)?;
        return Ok(Bounded { value: 0.0, err: 0.0 });
    }
    let inner = h2_continuant_series(q, z, tol / (q * q))?;
    Ok(Bounded { value: q * q * inner.value, err: q * q * inner.err })
}

/// The quadruple sum over `m_1, p_1, m_2, p_2 >= 1` of
/// `q^{m_1+p_1+m_2+p_2} z^{p_1+p_2} / a(m_1+2, 2^{p_1-1}, m_2+2, 2^{p_2})^2`.
///
/// Splitting the word as `u w` with `u = (m_1+2, 2^{p_1-1})` gives
/// `a(uw) = a(u) (a(w) - kappa [p_2+1]_q)` with `0 <= kappa < q` depending on
/// `u` only, so the inner sum over `w` is a smooth function `g(kappa)`. It is
/// tabulated once by Chebyshev interpolation on `[0, q]`.
///
/// Since `a(uw) >= a(u) a(w)/(1+q)`, `a(u) >= [m_1+1][p_1]` and
/// `a(w) >= [m_2+1][p_2+1]`, truncation tails are bounded by products of
/// one-dimensional `phi`-type tails.
pub fn h2_continuant_series(q: f64, z: f64, tol: f64) -> Result<Bounded> {
    check(q, z)?;
    if q == 0.0 {
        return Ok(Bounded { value: 0.0, err: 0.0 });
    }
    let x = q * z;
    let phi_q = phi_series(q, 1.0, tol)?;
    let phi_z = phi_series(q, z, tol)?;
    let g_m = phi_q.value + phi_q.err;
    let g_p2 = phi_z.value + phi_z.err;
    let g_p1 = x * (1.0 + g_p2);
    let scale = (1.0 + q).powi(2);
    let budget = tol / (8.0 * scale * (1.0 + g_m) * (1.0 + g_m) * (1.0 + g_p1) * (1.0 + g_p2));
    let m_max = cutoff(q, q, budget) - 1;
    // p_1 uses (q z)^p/[p]^2: its tail beyond P is x phi_tail(P)
    let p_max = cutoff(q, x, budget / x.max(1e-300)).max(cutoff(q, x, budget)) - 1;
    let t_m = phi_tail(m_max + 1, q, q);
    let t_p2 = phi_tail(p_max + 1, q, x);
    let t_p1 = x * phi_tail(p_max, q, x);
    let trunc = scale * (2.0 * t_m * g_m * g_p1 * g_p2 + g_m * g_m * (t_p1 * g_p2 + g_p1 * t_p2));

    let ints: Vec<f64> = (0..=m_max.max(p_max) + 3).map(|n| qn(n, q)).collect();
    let qp: Vec<f64> = (0..=2 * (m_max + p_max) + 4).map(|k| q.powi(k as i32)).collect();
    let zp: Vec<f64> = (0..=p_max + 1).map(|k| z.powi(k as i32)).collect();

    let inner = |kappa: f64| -> f64 {
        let mut s = 0.0;
        for p2 in (1..=p_max as usize).rev() {
            let ip = ints[p2 + 1];
            let mut row = 0.0;
            for m2 in (1..=m_max as usize).rev() {
                let aw = ints[m2 + 1] * ip + qp[m2 + p2 + 1];
                let d = aw - kappa * ip;
                row += qp[m2] / (d * d);
            }
            s += qp[p2] * zp[p2] * row;
        }
        s
    };
    let nodes: Vec<f64> = (0..CHEB_NODES)
        .map(|j| 0.5 * q * (1.0 + (std::f64::consts::PI * (j as f64 + 0.5) / CHEB_NODES as f64).cos()))
        .collect();
    let samples: Vec<f64> = nodes.par_iter().map(|&k| inner(k)).collect();
    let coeffs = chebyshev_coeffs(&samples);
    let cheb_err: f64 = coeffs[CHEB_NODES - 4..].iter().map(|c| c.abs()).sum::<f64>() * 2.0;

    let mut outer_weight = 0.0;
    let rows: Vec<(f64, f64)> = (1..=p_max as usize)
        .into_par_iter()
        .map(|p1| {
            let mut s = 0.0;
            let mut wsum = 0.0;
            for m1 in (1..=m_max as usize).rev() {
                let au = ints[m1 + 1] * ints[p1] + qp[m1 + p1];
                let (prev, c_minus_1) = if p1 >= 2 {
                    (ints[m1 + 1] * ints[p1 - 1] + qp[m1 + p1 - 1], 1)
                } else {
                    (1.0, m1 + 1)
                };
                let kappa = qp[c_minus_1] * prev / au;
                let w = qp[m1 + p1] * zp[p1] / (au * au);
                s += w * chebyshev_eval(&coeffs, 2.0 * kappa / q - 1.0);
                wsum += w;
            }
            (s, wsum)
        })
        .collect();
    let mut value = 0.0;
    for (s, w) in rows {
        value += s;
        outer_weight += w;
    }
    Ok(Bounded { value, err: trunc + outer_weight * cheb_err + 1e-13 * value })
}

fn chebyshev_coeffs(samples: &[f64]) -> Vec<f64> {
    let n = samples.len();
    (0..n)
        .map(|k| {
            let s: f64 = samples
                .iter()
                .enumerate()
                .map(|(j, f)| f * (std::f64::consts::PI * k as f64 * (j as f64 + 0.5) / n as f64).cos())
                .sum();
            let c = 2.0 * s / n as f64;
            if k == 0 {
                c / 2.0
            } else {
                c
            }
        })
        .collect()
}

/// Evaluate a Chebyshev series at `t` in `[-1, 1]` (Clenshaw).
fn chebyshev_eval(c: &[f64], t: f64) -> f64 {
    let (mut b1, mut b2) = (0.0, 0.0);
    for &ck in c.iter().skip(1).rev() {
        let b0 = 2.0 * t * b1 - b2 + ck;
        b2 = b1;
        b1 = b0;
    }
    t * b1 - b2 + c[0]
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BetaRoot {
    pub level: u8,
    pub value: f64,
    pub lo: f64,
    pub hi: f64,
}

/// Root in `(0, 1)` of `phi(q)(1 + q) = 1` (level 0) or
/// `h_n(q)(1 + q)^2 = 1` (levels 1, 2), by bisection.
pub fn beta_root(level: u8, tol: f64) -> Result<BetaRoot> {
    let (mut lo, mut hi, inner_tol) = match level {
        0 => (0.5, 0.95, 1e-12),
        1 => (0.5, 0.95, 1e-11),
        2 => (0.85, 0.98, 1e-8),
        _ => return Err(Error::domain("beta_root supports levels 0, 1, 2")),
    };
    let f = |q: f64| -> Result<f64> {
        Ok(match level {
            0 => phi_series(q, 1.0, inner_tol)?.value * (1.0 + q) - 1.0,
            1 => h1_series(q, 1.0, inner_tol)?.value * (1.0 + q).powi(2) - 1.0,
            _ => h2_series(q, 1.0, inner_tol)?.value * (1.0 + q).powi(2) - 1.0,
        })
    };
    if !(f(lo)? < 0.0 && f(hi)? > 0.0) {
        return Err(Error::BracketingFailure { lo, hi });
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if f(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(BetaRoot { level, value: 0.5 * (lo + hi), lo, hi })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_endpoints() {
        assert_eq!(phi_series(0.0, 1.0, 1e-12).unwrap().value, 0.0);
        let one = phi_series(1.0, 1.0, 1e-10).unwrap();
        let want = std::f64::consts::PI.powi(2) / 6.0 - 1.0;
        assert!((one.value - want).abs() <= one.err + 1e-12, "{one:?}");
        assert!(phi_series(0.8, 1.3, 1e-10).is_err());
    }

    #[test]
    fn phi_oversummation() {
        let b = phi_series(0.5, 1.0, 1e-10).unwrap();
        let long: f64 = (2..400).map(|n| 0.5f64.powi(n - 1) / qn(n as u32, 0.5).powi(2)).sum();
        assert!((b.value - long).abs() <= b.err);
    }

    #[test]
    fn trigamma_values() {
        let zeta2 = std::f64::consts::PI.powi(2) / 6.0;
        assert!((trigamma(1.0) - zeta2).abs() < 1e-14);
        assert!((trigamma(2.0) - (zeta2 - 1.0)).abs() < 1e-14);
    }

    #[test]
    fn h1_values() {
        assert_eq!(h1_series(0.0, 1.0, 1e-12).unwrap().value, 0.0);
        let h = h1_series(1.0, 1.0, 1e-9).unwrap();
        assert!((h.value - 0.34).abs() < 0.015, "{h:?}");
        // brute-force partial sums approach from below
        let brute: f64 = (1..300)
            .flat_map(|m| (1..300).map(move |p| 1.0 / (((m + 1) * (p + 1) + 1) as f64).powi(2)))
            .sum();
        assert!(brute < h.value && h.value - brute < 0.02);
    }

    #[test]
    fn h1_dominated_by_phi_product() {
        let q = 0.6;
        let h = h1_series(q, 1.0, 1e-12).unwrap().value;
        let phi = phi_series(q, 1.0, 1e-12).unwrap().value;
        assert!(h <= phi * phi);
    }

    fn continuant(d: &[u32], q: f64) -> f64 {
        let (mut prev, mut cur) = (1.0, qn(d[0], q));
        for k in 1..d.len() {
            let next = qn(d[k], q) * cur - q.powi(d[k - 1] as i32 - 1) * prev;
            prev = cur;
            cur = next;
        }
        cur
    }

    #[test]
    fn h1_matches_general_continuant() {
        // a_{p+1}(m+2, 2^p) = [m+1][p+1] + q^{m+p+1}
        let q = 0.37;
        for (m, p) in [(1u32, 1u32), (2, 3), (4, 1)] {
            let mut d = vec![m + 2];
            d.extend(std::iter::repeat(2).take(p as usize));
            let want = qn(m + 1, q) * qn(p + 1, q) + q.powi((m + p + 1) as i32);
            assert!((continuant(&d, q) - want).abs() < 1e-13);
        }
    }

    #[test]
    fn h2_against_brute_force() {
        let q = 0.3;
        let n = 22u32;
        let mut brute = 0.0;
        for m1 in 1..n {
            for p1 in 1..n {
                for m2 in 1..n {
                    for p2 in 1..n {
                        let mut d = vec![m1 + 2];
                        d.extend(std::iter::repeat(2).take(p1 as usize - 1));
                        d.push(m2 + 2);
                        d.extend(std::iter::repeat(2).take(p2 as usize));
                        let a = continuant(&d, q);
                        brute += q.powi((m1 + p1 + m2 + p2) as i32) / (a * a);
                    }
                }
            }
        }
        let h = h2_continuant_series(q, 1.0, 1e-12).unwrap();
        assert!((h.value - brute).abs() < 1e-10, "{} vs {brute}", h.value);
    }

    fn d_poly(m1: u32, p1: u32, m2: u32, p2: u32, q: f64) -> f64 {
        let n = |k: u32| qn(k, q);
        n(m1) * n(p1) * n(m2) * n(p2)
            + q.powi((m1 + p1) as i32 - 1) * n(m2) * n(p2)
            + n(m1) * n(p2) / q
            + q.powi((m2 + p2) as i32 - 1) * n(m1) * n(p1)
            + q.powi((m1 + p1 + m2 + p2) as i32 - 2)
    }

    #[test]
    fn five_term_polynomial_is_scaled_continuant() {
        let q = 0.41;
        for (m1, p1, m2, p2) in [(1u32, 1u32, 1u32, 1u32), (2, 3, 1, 2), (3, 1, 4, 1), (1, 4, 2, 3)] {
            let mut d = vec![m1 + 2];
            d.extend(std::iter::repeat(2).take(p1 as usize - 1));
            d.push(m2 + 2);
            d.extend(std::iter::repeat(2).take(p2 as usize));
            let a = continuant(&d, q);
            assert!((d_poly(m1 + 1, p1, m2, p2 + 1, q) - a / q).abs() < 1e-12);
        }
    }

    #[test]
    fn h2_matches_five_term_sum() {
        let q = 0.25;
        let mut brute = 0.0;
        for m1 in 1..25 {
            for p1 in 1..25 {
                for m2 in 1..25 {
                    for p2 in 1..25 {
                        let d = d_poly(m1 + 1, p1, m2, p2 + 1, q);
                        brute += q.powi((m1 + p1 + m2 + p2) as i32) / (d * d);
                    }
                }
            }
        }
        let h = h2_series(q, 1.0, 1e-13).unwrap();
        assert!((h.value - brute).abs() < 1e-11, "{} vs {brute}", h.value);
    }

    #[test]
    fn h2_stable_under_tighter_truncation() {
        let a = h2_series(0.5, 1.0, 1e-6).unwrap();
        let b = h2_series(0.5, 1.0, 1e-11).unwrap();
        assert!((a.value - b.value).abs() <= a.err + b.err);
    }

    #[test]
    fn chebyshev_round_trip() {
        let f = |t: f64| 1.0 / (3.0 - t);
        let samples: Vec<f64> = (0..CHEB_NODES)
            .map(|j| f((std::f64::consts::PI * (j as f64 + 0.5) / CHEB_NODES as f64).cos()))
            .collect();
        let c = chebyshev_coeffs(&samples);
        assert!((chebyshev_eval(&c, 0.3) - f(0.3)).abs() < 1e-14);
    }

    #[test]
    fn beta_levels() {
        let b0 = beta_root(0, 1e-6).unwrap().value;
        assert!((b0 - 0.816).abs() < 0.005, "{b0}");
        let b1 = beta_root(1, 1e-6).unwrap().value;
        assert!((b1 - 0.863).abs() < 0.005, "{b1}");
        let b2 = beta_root(2, 1e-4).unwrap().value;
        assert!((b2 - 0.94).abs() < 0.01, "{b2}");
        assert!(beta_root(3, 1e-3).is_err());
    }
}
