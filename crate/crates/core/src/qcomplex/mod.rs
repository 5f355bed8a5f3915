//! The q-deformed complex number `[tau]_q` on the upper half-plane.
//!
//! With `q = e^{-t}`, `s = t/(2 pi i)` and `lambda = lambda(tau)`:
//!
//! ```text
//! [tau]_q = i e^{pi i s} ((1-lambda)/lambda)^{2s}
//!           F(1/2-s, 1/2+s; 1+2s; 1-lambda) / F(1/2-s, 1/2+s; 1+2s; lambda)
//! ```
//!
//! taken on principal branches. That is valid while `lambda` avoids
//! `(-oo, 0] u [1, oo)`, which holds on the interior of
//! `E = {|Re tau| < 1, |tau - 1/2| > 1/2, |tau + 1/2| > 1/2}`. Other points are
//! moved into the standard fundamental domain and mapped back with
//! `[tau + 1]_q = q [tau]_q + 1` and `[-1/tau]_q = -1/(q [tau]_q)`.
//!
//! Near the cusp (`|lambda| < 0.3`) the equivalent form
//! `G (..)^{2s} F(..; 1-2s; lambda)/F(..; 1+2s; lambda) + 1/(1-q)` is used.

mod boundary;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::analytic::Cx;
use crate::error::{Error, Result};
use crate::special::{gauss_2f1, log_gamma, theta_lambda, ModularPoint};

pub use boundary::{boundary_check, left_limit_rational, Approach, BoundaryReport, BoundaryRow};

const FORM2_RADIUS: f64 = 0.3;
const CUT_ANGLE: f64 = 1e-6;
const POLE_FLOOR: f64 = 1e-10;
const E_MARGIN: f64 = 0.05;

fn ser_cx<S: Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    Cx::from(*z).serialize(s)
}

/// `t > 0`, `q = e^{-t}` and the purely imaginary `s = t/(2 pi i)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QComplexParams {
    pub t: f64,
    pub q: f64,
    #[serde(serialize_with = "ser_cx")]
    pub s: Complex64,
}

impl QComplexParams {
    pub fn new(t: f64) -> Result<Self> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::domain("t must be positive"));
        }
        Ok(QComplexParams { t, q: (-t).exp(), s: Complex64::new(0.0, -t / (2.0 * PI)) })
    }

    /// `Gamma(1+2s) Gamma(2s) / (Gamma(1/2+s) Gamma(1/2+3s))`.
    pub fn gamma_ratio(&self) -> Result<Complex64> {
        gamma_ratio(self.s)
    }
}

fn gamma_ratio(s: Complex64) -> Result<Complex64> {
    let l = log_gamma(1.0 + 2.0 * s)? + log_gamma(2.0 * s)? - log_gamma(0.5 + s)? - log_gamma(0.5 + 3.0 * s)?;
    Ok(l.exp())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    Form1,
    Form2,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QComplexValue {
    #[serde(serialize_with = "ser_cx")]
    pub tau: Complex64,
    pub q: f64,
    #[serde(serialize_with = "ser_cx")]
    pub value: Complex64,
    pub err: f64,
    pub form: Form,
    /// Number of modular moves used to reach the evaluation point.
    pub depth: usize,
}

fn check_cut(lambda: Complex64) -> Result<()> {
    let near_negative = lambda.arg().abs() > PI - CUT_ANGLE;
    let beyond_one = (lambda - 1.0).arg().abs() < CUT_ANGLE;
    if near_negative || beyond_one || lambda.norm() == 0.0 {
        let distance = if near_negative { lambda.im.abs() } else { (lambda - 1.0).im.abs() };
        return Err(Error::BranchAmbiguity { distance });
    }
    Ok(())
}

/// Quotient `n/d` with its propagated error; a tiny denominator is a pole.
fn quotient(n: crate::special::SeriesSum, d: crate::special::SeriesSum) -> Result<(Complex64, f64)> {
    if d.value.norm() < POLE_FLOOR {
        return Err(Error::Pole);
    }
    let v = n.value / d.value;
    let rel = n.tail_bound / n.value.norm().max(1e-300) + d.tail_bound / d.value.norm();
    Ok((v, rel * v.norm()))
}

/// The first formula at arbitrary complex `s`, with `e^{pi i s}` as written.
pub fn form1_at(s: Complex64, lambda: Complex64, tol: f64) -> Result<(Complex64, f64)> {
    check_cut(lambda)?;
    let a = 0.5 - s;
    let b = 0.5 + s;
    let c = 1.0 + 2.0 * s;
    let inner = tol * 1e-2;
    let num = gauss_2f1(a, b, c, 1.0 - lambda, inner)?;
    let den = gauss_2f1(a, b, c, lambda, inner)?;
    let (ratio, err) = quotient(num, den)?;
    let pre = Complex64::i() * (Complex64::i() * PI * s).exp() * ((1.0 - lambda) / lambda).powc(2.0 * s);
    Ok((pre * ratio, pre.norm() * err))
}

pub fn form1(lambda: Complex64, params: &QComplexParams, tol: f64) -> Result<(Complex64, f64)> {
    form1_at(params.s, lambda, tol)
}

pub fn form2(lambda: Complex64, params: &QComplexParams, tol: f64) -> Result<(Complex64, f64)> {
    check_cut(lambda)?;
    let s = params.s;
    let a = 0.5 - s;
    let b = 0.5 + s;
    let inner = tol * 1e-2;
    let num = gauss_2f1(a, b, 1.0 - 2.0 * s, lambda, inner)?;
    let den = gauss_2f1(a, b, 1.0 + 2.0 * s, lambda, inner)?;
    let (ratio, err) = quotient(num, den)?;
    let pre = Complex64::i() * (0.5 * params.t).exp() * params.gamma_ratio()? * ((1.0 - lambda) / lambda).powc(2.0 * s);
    Ok((pre * ratio + 1.0 / (1.0 - params.q), pre.norm() * err))
}

/// `tau` lies in `E`, kept `margin` away from its boundary.
pub fn in_region_e(tau: Complex64, margin: f64) -> bool {
    tau.im > 0.0
        && tau.re.abs() < 1.0 - margin
        && (tau - 0.5).norm() > 0.5 + margin
        && (tau + 0.5).norm() > 0.5 + margin
}

/// Evaluate at `tau` without modular reduction.
pub fn q_complex_direct(point: &ModularPoint, params: &QComplexParams, tol: f64) -> Result<QComplexValue> {
    let lambda = point.lambda;
    let (form, (value, err)) = if lambda.norm() < FORM2_RADIUS {
        (Form::Form2, form2(lambda, params, tol)?)
    } else {
        (Form::Form1, form1(lambda, params, tol)?)
    };
    Ok(QComplexValue { tau: point.tau, q: params.q, value, err, form, depth: 0 })
}

#[derive(Clone, Copy, Debug)]
enum Move {
    Shift(i64),
    Invert,
}

/// `[tau]_q` anywhere in the upper half-plane.
pub fn q_complex_value(tau: Complex64, params: &QComplexParams, tol: f64) -> Result<QComplexValue> {
    if !(tau.im > 0.0) {
        return Err(Error::domain("tau must lie in the upper half-plane"));
    }
    if in_region_e(tau, E_MARGIN) && tau.im >= 0.3 {
        let p = theta_lambda(tau, tol * 1e-2)?;
        return q_complex_direct(&p, params, tol);
    }
    let mut moves = Vec::new();
    let mut w = tau;
    for _ in 0..10_000 {
        let n = w.re.round();
        if n != 0.0 {
            w -= n;
            moves.push(Move::Shift(n as i64));
        }
        if w.norm() < 1.0 - 1e-15 {
            w = -w.inv();
            moves.push(Move::Invert);
        } else {
            break;
        }
    }
    if w.norm() < 1.0 - 1e-15 || w.re.abs() > 0.5 + 1e-12 {
        return Err(Error::EvaluationFailure("modular reduction did not terminate".into()));
    }
    let p = theta_lambda(w, tol * 1e-2)?;
    let base = q_complex_direct(&p, params, tol)?;
    let q = params.q;
    let mut v = base.value;
    let mut err = base.err;
    for m in moves.iter().rev() {
        match *m {
            Move::Shift(n) => {
                let qn = q.powi(n as i32);
                v = qn * v + (1.0 - qn) / (1.0 - q);
                err *= qn;
            }
            Move::Invert => {
                let nv = -1.0 / (q * v);
                err *= nv.norm() / v.norm();
                v = nv;
            }
        }
        err += 4.0 * f64::EPSILON * v.norm();
    }
    Ok(QComplexValue { tau, q, value: v, err, form: base.form, depth: moves.len() })
}

/// `h(t, tau) = e^{t tau}([tau]_q - 1/(1-q))`, evaluated from its own
/// hypergeometric formula in the nome.
pub fn h_value(tau: Complex64, params: &QComplexParams, tol: f64) -> Result<Complex64> {
    let p = theta_lambda(tau, tol * 1e-2)?;
    let lambda = p.lambda;
    check_cut(lambda)?;
    let s = params.s;
    let (a, b) = (0.5 - s, 0.5 + s);
    let num = gauss_2f1(a, b, 1.0 - 2.0 * s, lambda, tol * 1e-2)?;
    let den = gauss_2f1(a, b, 1.0 + 2.0 * s, lambda, tol * 1e-2)?;
    let (ratio, _) = quotient(num, den)?;
    let base = p.nome * (1.0 - lambda) / lambda;
    if base.arg().abs() > PI - CUT_ANGLE {
        return Err(Error::BranchAmbiguity { distance: base.im.abs() });
    }
    Ok(Complex64::i() * (0.5 * params.t).exp() * params.gamma_ratio()? * base.powc(2.0 * s) * ratio)
}

/// Limit of `h` at the cusp: `i e^{t/2} 2^{-8s} Gamma(1+2s)Gamma(2s)/(Gamma(1/2+s)Gamma(1/2+3s))`.
pub fn h_cusp_limit(params: &QComplexParams) -> Result<Complex64> {
    let two = Complex64::new(2.0, 0.0);
    Ok(Complex64::i() * (0.5 * params.t).exp() * two.powc(-8.0 * params.s) * params.gamma_ratio()?)
}

/// The same constant written through `log q`, as the coefficient of the
/// leading asymptotic term of `[tau]_q - 1/(1-q)`.
pub fn asymptotic_constant(params: &QComplexParams) -> Result<Complex64> {
    let lq = Complex64::new(-params.t, 0.0);
    let ipi = Complex64::new(0.0, PI);
    let u = lq / ipi;
    let two = Complex64::new(2.0, 0.0);
    let g = log_gamma(1.0 - u)? + log_gamma(-u)? - log_gamma(0.5 - u / 2.0)? - log_gamma(0.5 - 3.0 * u / 2.0)?;
    Ok(Complex64::i() * params.q.powf(-0.5) * two.powc(4.0 * u) * g.exp())
}

/// Renormalised Jacobi polynomial
/// `P_n(z) = sum_k (-1)^k (n+k)!/((n-k)! k!) (2n+1)!/(2n+1+k)! ((1-z)/2)^k`.
pub fn jacobi_poly(n: u32, z: Complex64) -> Complex64 {
    let w = (1.0 - z) / 2.0;
    let mut coef = 1.0f64;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut wk = Complex64::new(1.0, 0.0);
    for k in 0..=n {
        acc += coef * wk;
        let kf = k as f64;
        let nf = n as f64;
        coef *= -(nf + kf + 1.0) * (nf - kf) / ((kf + 1.0) * (2.0 * nf + 2.0 + kf));
        wk *= w;
    }
    acc
}

fn jacobi_ratio(n: u32, lambda: Complex64, top: Complex64, bottom: Complex64) -> Complex64 {
    let sign = if n % 2 == 0 { -1.0 } else { 1.0 };
    let d = jacobi_poly(n, bottom);
    if d.norm() == 0.0 {
        return Complex64::new(f64::INFINITY, 0.0);
    }
    sign * ((1.0 - lambda) / lambda).powu(2 * n + 1) * jacobi_poly(n, top) / d
}

/// `[tau]` at `s = n + 1/2`:
/// `(-1)^{n+1} ((1-lambda)/lambda)^{2n+1} P_n(2 lambda - 1) / P_n(1 - 2 lambda)`.
///
/// This is what the first formula reduces to when its series terminate.
pub fn jacobi_special(n: u32, tau: Complex64) -> Result<Complex64> {
    let l = theta_lambda(tau, 1e-16)?.lambda;
    Ok(jacobi_ratio(n, l, 2.0 * l - 1.0, 1.0 - 2.0 * l))
}

/// Variant with `P_n(1 + 2 lambda)` in the numerator.
pub fn jacobi_special_alt(n: u32, tau: Complex64) -> Result<Complex64> {
    let l = theta_lambda(tau, 1e-16)?.lambda;
    Ok(jacobi_ratio(n, l, 1.0 + 2.0 * l, 1.0 - 2.0 * l))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rho() -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * PI / 3.0)
    }

    #[test]
    fn params_roundtrip() {
        let p = QComplexParams::new(0.7).unwrap();
        let back = (-2.0 * PI * Complex64::i() * p.s).exp();
        assert!((back - p.q).norm() < 1e-13);
        assert!(QComplexParams::new(0.0).is_err());
    }

    #[test]
    fn special_values() {
        for t in [0.3, 0.7, 1.5] {
            let p = QComplexParams::new(t).unwrap();
            let vi = q_complex_value(c(0.0, 1.0), &p, 1e-12).unwrap();
            assert!((vi.value - c(0.0, p.q.powf(-0.5))).norm() < 1e-9, "t={t} {vi:?}");
            let vr = q_complex_value(rho(), &p, 1e-12).unwrap();
            assert!((vr.value - rho() / p.q).norm() < 1e-9, "t={t} {vr:?}");
        }
    }

    #[test]
    fn gauss_value_at_one() {
        for t in [0.3, 0.7, 1.5] {
            let p = QComplexParams::new(t).unwrap();
            let s = p.s;
            let f = gauss_2f1(0.5 - s, 0.5 - 3.0 * s, 1.0 - 2.0 * s, c(1.0, 0.0), 1e-14).unwrap();
            let expect = Complex64::i() / (p.q.powf(-0.5) - p.q.sqrt());
            assert!((f.value - expect).norm() < 1e-10);
        }
    }

    #[test]
    fn equivariance_by_direct_evaluation() {
        let p = QComplexParams::new(0.5).unwrap();
        let tau = c(0.2, 1.3);
        let f = |z: Complex64| q_complex_direct(&theta_lambda(z, 1e-16).unwrap(), &p, 1e-12).unwrap().value;
        let v = f(tau);
        assert!((f(tau - 1.0 + 0.0) - (v - 1.0) / p.q).norm() < 1e-8);
        assert!((f(-tau.inv()) + 1.0 / (p.q * v)).norm() < 1e-8);
    }

    #[test]
    fn forms_agree() {
        let p = QComplexParams::new(0.7).unwrap();
        for tau in [c(0.0, 1.0), c(0.3, 1.1), c(-0.45, 0.95), c(0.1, 1.6)] {
            let l = theta_lambda(tau, 1e-16).unwrap().lambda;
            let a = form1(l, &p, 1e-12).unwrap().0;
            let b = form2(l, &p, 1e-12).unwrap().0;
            assert!((a - b).norm() < 1e-9, "tau={tau}: {a} vs {b}");
        }
    }

    #[test]
    fn h_relations() {
        let p = QComplexParams::new(0.5).unwrap();
        let tau = c(0.1, 2.0);
        let h = h_value(tau, &p, 1e-12).unwrap();
        let f = q_complex_value(tau, &p, 1e-12).unwrap().value;
        let rebuilt = (-p.t * tau).exp() * h + 1.0 / (1.0 - p.q);
        assert!((f - rebuilt).norm() < 1e-10);
        let h1 = h_value(tau + 1.0, &p, 1e-12).unwrap();
        assert!((h1 - h).norm() < 1e-9);
    }

    #[test]
    fn cusp_constant_two_ways() {
        for t in [0.3, 0.7, 1.5] {
            let p = QComplexParams::new(t).unwrap();
            let a = h_cusp_limit(&p).unwrap();
            let b = asymptotic_constant(&p).unwrap();
            assert!((a - b).norm() < 1e-9 * a.norm());
            let deep = h_value(c(0.0, 6.0), &p, 1e-12).unwrap();
            assert!((deep - a).norm() < 1e-6 * a.norm());
        }
    }

    #[test]
    fn asymptotic_along_diagonal() {
        let p = QComplexParams::new(0.7).unwrap();
        let h0 = h_cusp_limit(&p).unwrap();
        let y = 8.0;
        let tau = c(y, y);
        let v = q_complex_value(tau, &p, 1e-12).unwrap().value;
        let lead = h0 * (-p.t * tau).exp();
        let rel = ((v - 1.0 / (1.0 - p.q)) / lead - 1.0).norm();
        assert!(rel < 0.05, "rel={rel}");
    }

    #[test]
    fn gamma_modulus_identity() {
        let p = QComplexParams::new(0.7).unwrap();
        let g = p.gamma_ratio().unwrap().inv().norm();
        let q = p.q;
        let expect = (q.powf(-0.5) - q.sqrt()) / (1.0 / q - 1.0 + q).sqrt();
        assert!((g - expect).abs() < 1e-12, "{g} vs {expect}");
    }

    #[test]
    fn jacobi_low_orders() {
        let tau = c(0.0, 1.5);
        let l = theta_lambda(tau, 1e-16).unwrap().lambda;
        let j0 = jacobi_special(0, tau).unwrap();
        assert!((j0 + (1.0 - l) / l).norm() < 1e-14);
        assert!((jacobi_special(0, c(0.0, 1.0)).unwrap() + 1.0).norm() < 1e-13);
        // the n = 1 display, with the cube on (1 - lambda)/lambda, matches the P_n(1 + 2 lambda) variant
        let shown = ((1.0 - l) / l).powu(3) * (2.0 + l) / (2.0 - l);
        assert!((jacobi_special_alt(1, tau).unwrap() - shown).norm() < 1e-12);
        let from_form1 = ((1.0 - l) / l).powu(3) * (1.0 + l) / (2.0 - l);
        assert!((jacobi_special(1, tau).unwrap() - from_form1).norm() < 1e-12);
    }

    #[test]
    fn jacobi_matches_terminating_hypergeometric() {
        for n in 0..5u32 {
            for tau in [c(0.0, 1.5), c(0.3, 1.1), c(-0.2, 0.9)] {
                let l = theta_lambda(tau, 1e-16).unwrap().lambda;
                let s = c(n as f64 + 0.5, 0.0);
                let (v, _) = form1_at(s, l, 1e-13).unwrap();
                let j = jacobi_special(n, tau).unwrap();
                assert!((v - j).norm() < 1e-10 * j.norm().max(1.0), "n={n} tau={tau}: {v} vs {j}");
            }
        }
    }

    #[test]
    fn branch_ambiguity_reported() {
        let p = QComplexParams::new(0.7).unwrap();
        assert!(matches!(form1(c(-0.5, 0.0), &p, 1e-10), Err(Error::BranchAmbiguity { .. })));
        assert!(matches!(form1(c(1.5, 1e-9), &p, 1e-10), Err(Error::BranchAmbiguity { .. })));
    }
}
