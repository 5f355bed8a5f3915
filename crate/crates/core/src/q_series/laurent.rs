use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cf_core::{IntPoly, RatFuncQ};
use crate::error::{Error, Result};

/// Integer Laurent series known exactly up to (excluding) `q^order`.
///
/// Stored densely from the valuation up to `order - 1`. Leading zeros are
/// folded into the valuation, so the zero series has `val == order` and no
/// coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntLaurent {
    val: i64,
    order: i64,
    coeffs: Vec<BigInt>,
}

impl IntLaurent {
    pub fn new(val: i64, mut coeffs: Vec<BigInt>, order: i64) -> Self {
        let keep = (order - val).max(0) as usize;
        coeffs.truncate(keep);
        coeffs.resize(keep, BigInt::zero());
        let lead = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(coeffs.len());
        coeffs.drain(..lead);
        IntLaurent { val: (val + lead as i64).min(order), order, coeffs }
    }

    pub fn zero(order: i64) -> Self {
        IntLaurent { val: order, order, coeffs: Vec::new() }
    }

    pub fn one(order: i64) -> Self {
        IntLaurent::new(0, vec![BigInt::one()], order)
    }

    pub fn from_poly(p: &IntPoly, order: i64) -> Self {
        IntLaurent::new(0, p.coeffs().to_vec(), order)
    }

    /// Expand a rational function whose denominator has constant term 1.
    pub fn from_ratfunc(f: &RatFuncQ, order: i64) -> Result<Self> {
        let num = IntLaurent::from_poly(f.num(), order - f.val());
        let den = IntLaurent::from_poly(f.den(), order - f.val());
        Ok(num.div(&den)?.mul_q_pow(f.val()))
    }

    pub fn val(&self) -> i64 {
        self.val
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `q^n`, or `None` when `n` is beyond the exact order.
    pub fn coeff(&self, n: i64) -> Option<BigInt> {
        if n >= self.order {
            return None;
        }
        if n < self.val {
            return Some(BigInt::zero());
        }
        Some(self.coeffs[(n - self.val) as usize].clone())
    }

    /// `(exponent, coefficient)` pairs for every known coefficient from the
    /// valuation on.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().enumerate().map(move |(i, c)| (self.val + i as i64, c))
    }

    /// Coefficients `beta_0 .. beta_{order-1}` of a power series.
    pub fn power_coeffs(&self) -> Result<Vec<BigInt>> {
        if self.val < 0 {
            return Err(Error::domain("series has negative powers"));
        }
        Ok((0..self.order).map(|n| self.coeff(n).unwrap()).collect())
    }

    pub fn truncate(&self, order: i64) -> Self {
        IntLaurent::new(self.val, self.coeffs.clone(), order.min(self.order))
    }

    pub fn mul_q_pow(&self, k: i64) -> Self {
        IntLaurent { val: self.val + k, order: self.order + k, coeffs: self.coeffs.clone() }
    }

    /// Agreement modulo `q^order`.
    pub fn congruent(&self, other: &Self, order: i64) -> bool {
        if order > self.order.min(other.order) {
            return false;
        }
        let lo = self.val.min(other.val);
        (lo..order).all(|n| self.coeff(n) == other.coeff(n))
    }

    /// `1 / self`; the lowest coefficient must be a unit.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let g0 = &self.coeffs[0];
        if !g0.abs().is_one() {
            return Err(Error::domain("series inverse needs a unit leading coefficient"));
        }
        let n = self.coeffs.len();
        let mut h: Vec<BigInt> = Vec::with_capacity(n);
        h.push(g0.clone());
        for k in 1..n {
            let mut s = BigInt::zero();
            for j in 1..=k {
                s += &self.coeffs[j] * &h[k - j];
            }
            h.push(-(s * g0));
        }
        Ok(IntLaurent::new(-self.val, h, self.order - 2 * self.val))
    }

    pub fn div(&self, d: &Self) -> Result<Self> {
        Ok(self * &d.inverse()?)
    }

    /// `q^n f + [n]_q`.
    pub fn translate(&self, n: i64) -> Self {
        let qn = RatFuncQ::q_int(n);
        let order = self.order + n;
        let shift = IntLaurent::from_ratfunc(&qn, order).expect("q-integers expand");
        &self.mul_q_pow(n) + &shift
    }

    /// CSV rows `n,beta_n` (decimal integers) for every known coefficient.
    pub fn write_csv<W: std::io::Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        let io = |e: csv::Error| Error::EvaluationFailure(e.to_string());
        wr.write_record(["n", "beta_n"]).map_err(io)?;
        for n in self.val.min(0)..self.order {
            let c = self.coeff(n).unwrap();
            wr.write_record([n.to_string(), c.to_string()]).map_err(io)?;
        }
        wr.flush().map_err(|e| Error::EvaluationFailure(e.to_string()))
    }
}

impl fmt::Debug for IntLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntLaurent(q^{}: {:?} + O(q^{}))", self.val, self.coeffs, self.order)
    }
}

fn combine(a: &IntLaurent, b: &IntLaurent, sign: i32) -> IntLaurent {
    let order = a.order.min(b.order);
    let lo = a.val.min(b.val).min(order);
    let coeffs = (lo..order)
        .map(|n| {
            let x = a.coeff(n).unwrap();
            let y = b.coeff(n).unwrap();
            if sign > 0 { x + y } else { x - y }
        })
        .collect();
    IntLaurent::new(lo, coeffs, order)
}

impl Add for &IntLaurent {
    type Output = IntLaurent;
    fn add(self, rhs: &IntLaurent) -> IntLaurent {
        combine(self, rhs, 1)
    }
}

impl Sub for &IntLaurent {
    type Output = IntLaurent;
    fn sub(self, rhs: &IntLaurent) -> IntLaurent {
        combine(self, rhs, -1)
    }
}

impl Mul for &IntLaurent {
    type Output = IntLaurent;
    fn mul(self, rhs: &IntLaurent) -> IntLaurent {
        let order = (self.val + rhs.order).min(rhs.val + self.order);
        let val = self.val + rhs.val;
        let n = (order - val).max(0) as usize;
        let mut out = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n - i) {
                out[i + j] += a * b;
            }
        }
        IntLaurent::new(val, out, order)
    }
}

impl Neg for &IntLaurent {
    type Output = IntLaurent;
    fn neg(self) -> IntLaurent {
        IntLaurent { val: self.val, order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Add for IntLaurent {
    type Output = IntLaurent;
    fn add(self, rhs: IntLaurent) -> IntLaurent {
        &self + &rhs
    }
}

impl Sub for IntLaurent {
    type Output = IntLaurent;
    fn sub(self, rhs: IntLaurent) -> IntLaurent {
        &self - &rhs
    }
}

impl Mul for IntLaurent {
    type Output = IntLaurent;
    fn mul(self, rhs: IntLaurent) -> IntLaurent {
        &self * &rhs
    }
}

/// `a * b mod q^k` on plain coefficient vectors.
pub(crate) fn mul_trunc(a: &[BigInt], b: &[BigInt], k: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); k.min(a.len() + b.len())];
    let n = out.len();
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(val: i64, cs: &[i64], order: i64) -> IntLaurent {
        IntLaurent::new(val, cs.iter().map(|&c| BigInt::from(c)).collect(), order)
    }

    #[test]
    fn geometric_inverse() {
        // 1/(1-q) = 1 + q + q^2 + ...
        let f = s(0, &[1, -1], 8);
        let g = f.inverse().unwrap();
        assert_eq!(g, s(0, &[1; 8], 8));
        assert!((&f * &g).congruent(&IntLaurent::one(8), 8));
    }

    #[test]
    fn laurent_inverse_tracks_order() {
        let f = s(2, &[1, 1], 10);
        let g = f.inverse().unwrap();
        assert_eq!(g.val(), -2);
        assert_eq!(g.order(), 6);
        assert!((&f * &g).congruent(&IntLaurent::one(4), 4));
    }

    #[test]
    fn leading_zeros_fold_into_valuation() {
        let f = s(0, &[0, 0, 3, 1], 6);
        assert_eq!(f.val(), 2);
        assert_eq!(f.coeff(1), Some(BigInt::zero()));
        assert_eq!(f.coeff(6), None);
        assert!(IntLaurent::zero(5).is_zero());
    }

    #[test]
    fn translation_by_one() {
        // [x+1] = q[x] + 1 with [x] = 1 + q gives 1 + q + q^2 = [3]_q
        let f = s(0, &[1, 1], 10);
        assert_eq!(f.translate(1), s(0, &[1, 1, 1], 11));
    }

    #[test]
    fn csv_rows() {
        let mut buf = Vec::new();
        s(0, &[1, -2], 3).write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "n,beta_n\n0,1\n1,-2\n2,0\n");
    }
}
