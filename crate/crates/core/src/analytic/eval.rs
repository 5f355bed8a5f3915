//! Numerical evaluation of `[x]_q` through the reciprocal series
//! `1/[x]_q = sum_j q^{C_j} / (a_j a_{j+1})`.
//!
//! Terms are generated from continuant ratios `R_j = a_{j+1}/a_j`, so no
//! continuant is ever formed explicitly and nothing overflows.

use num_complex::Complex64;
use serde::Serialize;

use super::region::{continuant_min_modulus, solve_a, DISK_RADIUS};
use crate::cf_core::{left_limit, CFWord, DigitSource};
use crate::error::{Error, Result};
use crate::q_series::R_STAR;

const EPS: f64 = f64::EPSILON;
const MAX_TERMS: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Flag {
    Certified,
    Heuristic,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Cx {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for Cx {
    fn from(z: Complex64) -> Self {
        Cx { re: z.re, im: z.im }
    }
}

/// A complex value with an error estimate. When `flag` is
/// [`Flag::Certified`], `|value - truth| <= err` is guaranteed.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CertifiedComplex {
    #[serde(serialize_with = "ser_cx")]
    pub value: Complex64,
    pub err: f64,
    pub flag: Flag,
    pub terms: usize,
}

fn ser_cx<S: serde::Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    Cx::from(*z).serialize(s)
}

pub(crate) fn q_int(c: u32, q: Complex64) -> Complex64 {
    if c <= 8 {
        let mut s = Complex64::new(0.0, 0.0);
        let mut p = Complex64::new(1.0, 0.0);
        for _ in 0..c {
            s += p;
            p *= q;
        }
        s
    } else {
        (Complex64::new(1.0, 0.0) - q.powu(c)) / (Complex64::new(1.0, 0.0) - q)
    }
}

/// Streaming generator of `T_j = q^{C_j}/(a_j a_{j+1})`.
pub(crate) struct TermWalk<'a, S: DigitSource + ?Sized> {
    src: &'a S,
    q: Complex64,
    j: usize,
    ratio: Complex64,
    term: Complex64,
    last_digit: u32,
    /// `sum_{i <= j} ln |R_i|`, i.e. `ln |a_{j+1}|`.
    pub ln_abs_a: f64,
    /// `sum_{i <= j} c_i`.
    pub digit_sum: u64,
}

impl<'a, S: DigitSource + ?Sized> TermWalk<'a, S> {
    pub(crate) fn new(src: &'a S, q: Complex64) -> Self {
        TermWalk {
            src,
            q,
            j: 0,
            ratio: Complex64::new(0.0, 0.0),
            term: Complex64::new(0.0, 0.0),
            last_digit: 0,
            ln_abs_a: 0.0,
            digit_sum: 0,
        }
    }

    /// Next term, consuming one digit; `None` once a finite source ends.
    pub(crate) fn next_term(&mut self) -> Option<Complex64> {
        let c = self.src.digit(self.j)?;
        if self.j == 0 {
            self.ratio = q_int(c, self.q);
            self.term = self.ratio.inv();
        } else {
            let prev = self.ratio;
            let qp = self.q.powu(self.last_digit - 1);
            self.ratio = q_int(c, self.q) - qp / prev;
            self.term = self.term * qp / (prev * self.ratio);
        }
        self.ln_abs_a += self.ratio.norm().ln();
        self.digit_sum += c as u64;
        self.last_digit = c;
        self.j += 1;
        Some(self.term)
    }

    pub(crate) fn consumed(&self) -> usize {
        self.j
    }
}

/// Propagate an absolute error `eps` on `psi` to `1/psi`.
fn reciprocal(psi: Complex64, eps: f64) -> Option<(Complex64, f64)> {
    let m = psi.norm();
    if m <= 2.0 * eps || m == 0.0 {
        return None;
    }
    let v = psi.inv();
    Some((v, eps / (m * (m - eps)) + 4.0 * EPS * v.norm()))
}

fn trivial_at_zero() -> CertifiedComplex {
    CertifiedComplex { value: Complex64::new(1.0, 0.0), err: 0.0, flag: Flag::Certified, terms: 0 }
}

/// Evaluate `[x]_q` for `q` in region D with a certified error bound.
///
/// After `N` digits the tail of the reciprocal series is at most
/// `r^{-1/2}/(1 - a^-2) * r^{sum_{i<=N}(c_i - 2)} * a^{-2N-1}`; floating-point
/// rounding is added as a running allowance.
pub fn eval_in_d<S: DigitSource + ?Sized>(src: &S, q: Complex64, tol: f64) -> Result<CertifiedComplex> {
    if q.norm() == 0.0 {
        return Ok(trivial_at_zero());
    }
    let p = solve_a(q)?;
    let k0 = p.r.powf(-0.5) / (1.0 - p.a.powi(-2));
    let (ln_r, ln_a) = (p.r.ln(), p.a.ln());
    let mut walk = TermWalk::new(src, q);
    let mut psi = Complex64::new(0.0, 0.0);
    let mut rounding = 0.0;
    let mut best = f64::INFINITY;
    loop {
        let Some(t) = walk.next_term() else {
            if !src.is_complete() {
                return Err(Error::StreamExhausted { order: walk.consumed() as i64 });
            }
            return match reciprocal(psi, rounding) {
                Some((v, e)) if e <= tol => Ok(CertifiedComplex { value: v, err: e, flag: Flag::Certified, terms: walk.consumed() }),
                Some((_, e)) => Err(Error::ToleranceUnreachable { tol, achieved: e }),
                None => Err(Error::ZeroDenominator),
            };
        };
        psi += t;
        let n = walk.consumed();
        rounding += 32.0 * EPS * (n as f64 + 1.0) * t.norm() + EPS * psi.norm();
        let excess = walk.digit_sum as f64 - 2.0 * n as f64;
        let tail = k0 * (excess * ln_r - (2.0 * n as f64 + 1.0) * ln_a).exp();
        if let Some((v, e)) = reciprocal(psi, tail + rounding) {
            if e <= tol {
                return Ok(CertifiedComplex { value: v, err: e, flag: Flag::Certified, terms: n });
            }
            best = best.min(e);
            if tail < rounding {
                return Err(Error::ToleranceUnreachable { tol, achieved: e });
            }
        }
        if n >= MAX_TERMS {
            return Err(Error::ToleranceUnreachable { tol, achieved: best });
        }
    }
}

/// Geometric tail estimate from the last few term magnitudes.
fn geometric_tail(mags: &[f64]) -> Option<(f64, f64)> {
    let n = mags.len();
    if n < 2 || mags.iter().any(|&m| m == 0.0) {
        return None;
    }
    let xs: Vec<f64> = (0..n).map(|i| i as f64).collect();
    let ys: Vec<f64> = mags.iter().map(|m| m.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n as f64;
    let my = ys.iter().sum::<f64>() / n as f64;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let rho = (sxy / sxx).exp();
    // Pad the estimate so a mildly noisy fit never undershoots the last term.
    let last = mags[n - 1].max(mags[n - 2] * rho);
    Some((rho, last * rho / (1.0 - rho)))
}

/// Evaluate `[x]_q` for `|q| < 2 - sqrt 3` with a heuristic stopping rule.
///
/// Stops once three consecutive terms fall below the target and a fitted
/// geometric tail agrees; `|a_N(q)| >= M(C_N, R*, |q|)` is checked along the
/// way.
pub fn eval_in_disk<S: DigitSource + ?Sized>(src: &S, q: Complex64, tol: f64) -> Result<CertifiedComplex> {
    let r = q.norm();
    if r >= DISK_RADIUS {
        return Err(Error::OutsideDisk);
    }
    if r == 0.0 {
        return Ok(trivial_at_zero());
    }
    let mut walk = TermWalk::new(src, q);
    let mut psi = Complex64::new(0.0, 0.0);
    let mut mags: Vec<f64> = Vec::new();
    let mut rounding = 0.0;
    loop {
        let Some(t) = walk.next_term() else {
            if !src.is_complete() {
                return Err(Error::StreamExhausted { order: walk.consumed() as i64 });
            }
            let (v, e) = reciprocal(psi, rounding).ok_or(Error::ZeroDenominator)?;
            return Ok(CertifiedComplex { value: v, err: e, flag: Flag::Certified, terms: walk.consumed() });
        };
        psi += t;
        let n = walk.consumed();
        rounding += 32.0 * EPS * (n as f64 + 1.0) * t.norm() + EPS * psi.norm();
        let weight = walk.digit_sum - n as u64;
        let bound = continuant_min_modulus(weight as u32, R_STAR, r)?;
        if walk.ln_abs_a < bound.ln() - 1e-9 * (1.0 + bound.ln().abs()) {
            return Err(Error::BoundViolation { step: n, value: walk.ln_abs_a.exp(), bound });
        }
        mags.push(t.norm());
        if mags.len() > 10 {
            mags.remove(0);
        }
        let target = tol * psi.norm_sqr() / 4.0;
        let small = mags.len() >= 3 && mags[mags.len() - 3..].iter().all(|&m| m < target);
        if small {
            if let Some((rho, tail)) = geometric_tail(&mags) {
                if rho < 1.0 {
                    if let Some((v, e)) = reciprocal(psi, tail + rounding) {
                        if e <= tol {
                            return Ok(CertifiedComplex { value: v, err: e, flag: Flag::Heuristic, terms: n });
                        }
                    }
                }
            }
        }
        if n >= MAX_TERMS {
            return Err(Error::NoDecayDetected { terms: n });
        }
    }
}

/// Evaluate `[x]_q` for real `q` in `(-R*, 0)`.
///
/// Terms are accumulated until a least-squares fit of `ln |T_j|` over the
/// last ten terms shows a ratio below 0.999; the fitted geometric series
/// then bounds the tail. The result is labelled heuristic.
pub fn eval_negative_q<S: DigitSource + ?Sized>(src: &S, q: f64, tol: f64) -> Result<CertifiedComplex> {
    if !(-R_STAR < q && q < 0.0) {
        return Err(Error::OutsideInterval);
    }
    let qc = Complex64::new(q, 0.0);
    let mut walk = TermWalk::new(src, qc);
    let mut psi = 0.0f64;
    let mut mags: Vec<f64> = Vec::new();
    let mut rounding = 0.0;
    loop {
        let Some(t) = walk.next_term() else {
            if !src.is_complete() {
                return Err(Error::StreamExhausted { order: walk.consumed() as i64 });
            }
            let (v, e) = reciprocal(Complex64::new(psi, 0.0), rounding).ok_or(Error::ZeroDenominator)?;
            return Ok(CertifiedComplex { value: v, err: e, flag: Flag::Heuristic, terms: walk.consumed() });
        };
        psi += t.re;
        let n = walk.consumed();
        rounding += 32.0 * EPS * (n as f64 + 1.0) * t.re.abs() + EPS * psi.abs();
        mags.push(t.re.abs());
        if mags.len() > 10 {
            mags.remove(0);
        }
        if mags.len() == 10 {
            if let Some((rho, tail)) = geometric_tail(&mags) {
                if rho < 0.999 {
                    if let Some((v, e)) = reciprocal(Complex64::new(psi, 0.0), tail + rounding) {
                        if e <= tol {
                            return Ok(CertifiedComplex { value: v, err: e, flag: Flag::Heuristic, terms: n });
                        }
                    }
                }
            }
        }
        if n >= MAX_TERMS {
            return Err(Error::NoDecayDetected { terms: n });
        }
    }
}

/// Numeric left limit `[x]_q^-` from the symbolic form.
pub fn left_limit_value(word: &CFWord, q: Complex64) -> Complex64 {
    left_limit(word).eval_complex(q)
}

/// `lim_{x -> +oo} [x]_q = 1/(1 - q)`.
pub fn x_limits(q: Complex64) -> Complex64 {
    (Complex64::new(1.0, 0.0) - q).inv()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf_core::{q_rational, CFStream};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn w(d: &[u32]) -> CFWord {
        CFWord::new(d.to_vec()).unwrap()
    }

    /// `[phi]_q = [2]_q - q/y` with `y` the root of `y^2 - [3]_q y + q^2 = 0`
    /// that tends to 1 as `q -> 0`.
    fn golden_oracle(q: Complex64) -> Complex64 {
        let b = q_int(3, q);
        let disc = (b * b - 4.0 * q * q).sqrt();
        let y1 = (b + disc) / 2.0;
        let y2 = (b - disc) / 2.0;
        let y = if (y1 - 1.0).norm() < (y2 - 1.0).norm() { y1 } else { y2 };
        q_int(2, q) - q / y
    }

    #[test]
    fn integer_word() {
        for q in [c(0.3, 0.1), c(-0.1, 0.05), c(0.1, 0.0)] {
            let got = eval_in_d(&w(&[5]), q, 1e-12).unwrap();
            let exact = q_int(5, q);
            assert!((got.value - exact).norm() <= got.err + 1e-15);
        }
    }

    #[test]
    fn golden_in_d() {
        let q = c(0.1, 0.0);
        let got = eval_in_d(&CFStream::golden(), q, 1e-12).unwrap();
        assert_eq!(got.flag, Flag::Certified);
        assert!((got.value - golden_oracle(q)).norm() <= got.err, "{got:?} vs {}", golden_oracle(q));
    }

    #[test]
    fn golden_throughout_small_disk() {
        for k in 0..12 {
            let th = k as f64 * std::f64::consts::TAU / 12.0;
            let q = Complex64::from_polar(0.17, th);
            let got = eval_in_d(&CFStream::golden(), q, 1e-10).unwrap();
            assert!((got.value - golden_oracle(q)).norm() <= got.err.max(1e-13));
        }
    }

    #[test]
    fn outside_region_is_rejected() {
        assert!(matches!(eval_in_d(&w(&[2]), c(-0.2, 0.0), 1e-8), Err(Error::OutsideRegion { .. })));
        assert!(matches!(eval_in_d(&w(&[2]), c(0.3, 0.0), 1e-30), Err(Error::ToleranceUnreachable { .. })));
    }

    #[test]
    fn disk_examples() {
        let got = eval_in_disk(&w(&[2]), c(0.25, 0.0), 1e-12).unwrap();
        assert!((got.value.re - 1.25).abs() < 1e-14);
        let phi = CFStream::golden();
        let q = c(0.1, 0.1);
        let a = eval_in_disk(&phi, q, 1e-10).unwrap();
        let b = eval_in_d(&phi, q, 1e-10).unwrap();
        assert_eq!(a.flag, Flag::Heuristic);
        assert!((a.value - b.value).norm() < 2e-10);
        assert!(matches!(eval_in_disk(&phi, c(0.3, 0.0), 1e-8), Err(Error::OutsideDisk)));
    }

    #[test]
    fn disk_and_negative_axis_agree_outside_d() {
        let phi = CFStream::golden();
        let a = eval_in_disk(&phi, c(-0.2, 0.0), 1e-10).unwrap();
        let b = eval_negative_q(&phi, -0.2, 1e-10).unwrap();
        assert!((a.value - b.value).norm() < 1e-9);
        assert!((b.value - golden_oracle(c(-0.2, 0.0))).norm() < 1e-9);
    }

    #[test]
    fn negative_q_matches_exact_rationals() {
        for d in [&[3u32, 2][..], &[2, 2, 3], &[4, 3, 2, 5], &[2, 7]] {
            let word = w(d);
            let f = q_rational(&word);
            for q in [-0.05, -0.15, -0.3] {
                let got = eval_negative_q(&word, q, 1e-12).unwrap();
                assert!((got.value.re - f.eval_f64(q)).abs() < 1e-10);
            }
        }
        assert!(matches!(eval_negative_q(&w(&[2]), -0.5, 1e-8), Err(Error::OutsideInterval)));
    }

    #[test]
    fn left_limits() {
        let q = c(0.3, 0.0);
        let m = 4;
        let lhs = left_limit_value(&w(&[m]), q);
        let rhs = q_int(m, q) - q.powu(m - 1) * (1.0 - q);
        assert!((lhs - rhs).norm() < 1e-14);
        let x = w(&[3, 2]);
        assert!(q_rational(&x).eval_f64(0.3) - left_limit_value(&x, q).re > 0.0);
        // q -> 1 recovers x
        assert!((left_limit(&x).eval_f64(1.0 - 1e-9) - 2.5).abs() < 1e-6);
    }

    #[test]
    fn limits_at_infinity() {
        assert!((x_limits(c(0.5, 0.0)).re - 2.0).abs() < 1e-15);
        let q = 0.3;
        // exact rational arithmetic: the gap is 0.3^40/0.7 ~ 1.7e-21
        use num_bigint::BigInt;
        use num_rational::BigRational;
        use num_traits::ToPrimitive;
        let q3 = BigRational::new(BigInt::from(3), BigInt::from(10));
        let gap = crate::cf_core::IntPoly::q_int(40).eval_rational(&q3) - BigRational::new(BigInt::from(10), BigInt::from(7));
        assert!(gap.to_f64().unwrap().abs() < 1e-20);
        assert!(crate::cf_core::RatFuncQ::q_int(-10).eval_f64(q).abs() > 1e3);
    }
}
