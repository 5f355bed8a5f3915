//! Reduced rational functions in `q`, with Laurent monomial factors allowed.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::poly::IntPoly;
use crate::error::{Error, Result};

/// `q^val * num(q) / den(q)` in canonical form.
///
/// Canonical means: `num(0) != 0` (unless the function is zero, in which
/// case `val = 0` and `den = 1`), `den(0) > 0`, and `num`, `den` coprime in
/// `Z[q]`. Two equal rational functions therefore compare equal
/// structurally.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawRatFunc")]
pub struct RatFuncQ {
    val: i64,
    num: IntPoly,
    den: IntPoly,
}

#[derive(Deserialize)]
struct RawRatFunc {
    val: i64,
    num: IntPoly,
    den: IntPoly,
}

impl TryFrom<RawRatFunc> for RatFuncQ {
    type Error = Error;
    fn try_from(r: RawRatFunc) -> Result<Self> {
        RatFuncQ::with_shift(r.val, r.num, r.den)
    }
}

impl RatFuncQ {
    pub fn zero() -> Self {
        RatFuncQ { val: 0, num: IntPoly::zero(), den: IntPoly::one() }
    }

    pub fn one() -> Self {
        RatFuncQ::from_poly(IntPoly::one())
    }

    pub fn from_int(n: i64) -> Self {
        RatFuncQ::from_poly(IntPoly::constant(BigInt::from(n)))
    }

    pub fn from_poly(p: IntPoly) -> Self {
        RatFuncQ::with_shift(0, p, IntPoly::one()).expect("denominator is one")
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        RatFuncQ { val: k, num: IntPoly::one(), den: IntPoly::one() }
    }

    /// `[n]_q = (1 - q^n)/(1 - q)` for any integer `n`.
    pub fn q_int(n: i64) -> Self {
        if n >= 0 {
            RatFuncQ::from_poly(IntPoly::q_int(n as u32))
        } else {
            // [-m]_q = -q^{-m} [m]_q
            let m = -n;
            RatFuncQ::with_shift(-m, -IntPoly::q_int(m as u32), IntPoly::one()).unwrap()
        }
    }

    pub fn new(num: IntPoly, den: IntPoly) -> Result<Self> {
        RatFuncQ::with_shift(0, num, den)
    }

    /// Build and reduce `q^val * num / den`.
    pub fn with_shift(val: i64, num: IntPoly, den: IntPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFuncQ::zero());
        }
        let vn = num.valuation().unwrap();
        let vd = den.valuation().unwrap();
        let mut num = num.shift_down(vn);
        let mut den = den.shift_down(vd);
        let g = num.gcd(&den);
        if !g.is_one() {
            num = num.div_exact(&g).expect("gcd divides numerator");
            den = den.div_exact(&g).expect("gcd divides denominator");
        }
        if den.coeff(0).is_negative() {
            num = -num;
            den = -den;
        }
        Ok(RatFuncQ { val: val + vn as i64 - vd as i64, num, den })
    }

    pub fn val(&self) -> i64 {
        self.val
    }

    pub fn num(&self) -> &IntPoly {
        &self.num
    }

    pub fn den(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Numerator and denominator as ordinary polynomials, with the monomial
    /// factor folded into whichever side keeps exponents nonnegative.
    pub fn to_polys(&self) -> (IntPoly, IntPoly) {
        if self.val >= 0 {
            (self.num.shift_up(self.val as usize), self.den.clone())
        } else {
            (self.num.clone(), self.den.shift_up((-self.val) as usize))
        }
    }

    /// True when the function is a Laurent polynomial (denominator 1).
    pub fn is_laurent_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFuncQ::with_shift(-self.val, self.den.clone(), self.num.clone())
    }

    pub fn mul_q_pow(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        RatFuncQ { val: self.val + k, ..self.clone() }
    }

    /// Substitute `q -> 1/q`.
    pub fn invert_parameter(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let dn = self.num.degree().unwrap() as i64;
        let dd = self.den.degree().unwrap() as i64;
        RatFuncQ::with_shift(-self.val - dn + dd, self.num.reversed(), self.den.reversed())
            .expect("reversed denominator is nonzero")
    }

    pub fn eval_complex(&self, q: Complex64) -> Complex64 {
        q.powi(self.val as i32) * self.num.eval_complex(q) / self.den.eval_complex(q)
    }

    pub fn eval_f64(&self, q: f64) -> f64 {
        q.powi(self.val as i32) * self.num.eval_f64(q) / self.den.eval_f64(q)
    }

    fn add_impl(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let m = self.val.min(rhs.val);
        let a = (&self.num * &rhs.den).shift_up((self.val - m) as usize);
        let b = (&rhs.num * &self.den).shift_up((rhs.val - m) as usize);
        RatFuncQ::with_shift(m, &a + &b, &self.den * &rhs.den).unwrap()
    }
}

impl fmt::Debug for RatFuncQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for RatFuncQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.val != 0 {
            write!(f, "q^{} * ", self.val)?;
        }
        if self.den.is_one() {
            write!(f, "({})", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Add for &RatFuncQ {
    type Output = RatFuncQ;
    fn add(self, rhs: &RatFuncQ) -> RatFuncQ {
        self.add_impl(rhs)
    }
}

impl Sub for &RatFuncQ {
    type Output = RatFuncQ;
    fn sub(self, rhs: &RatFuncQ) -> RatFuncQ {
        self.add_impl(&-rhs)
    }
}

impl Mul for &RatFuncQ {
    type Output = RatFuncQ;
    fn mul(self, rhs: &RatFuncQ) -> RatFuncQ {
        if self.is_zero() || rhs.is_zero() {
            return RatFuncQ::zero();
        }
        RatFuncQ::with_shift(self.val + rhs.val, &self.num * &rhs.num, &self.den * &rhs.den).unwrap()
    }
}

impl Div for &RatFuncQ {
    type Output = Result<RatFuncQ>;
    fn div(self, rhs: &RatFuncQ) -> Result<RatFuncQ> {
        Ok(self * &rhs.recip()?)
    }
}

impl Neg for &RatFuncQ {
    type Output = RatFuncQ;
    fn neg(self) -> RatFuncQ {
        RatFuncQ { val: self.val, num: -&self.num, den: self.den.clone() }
    }
}

impl Add for RatFuncQ {
    type Output = RatFuncQ;
    fn add(self, rhs: RatFuncQ) -> RatFuncQ {
        &self + &rhs
    }
}

impl Sub for RatFuncQ {
    type Output = RatFuncQ;
    fn sub(self, rhs: RatFuncQ) -> RatFuncQ {
        &self - &rhs
    }
}

impl Mul for RatFuncQ {
    type Output = RatFuncQ;
    fn mul(self, rhs: RatFuncQ) -> RatFuncQ {
        &self * &rhs
    }
}

impl Neg for RatFuncQ {
    type Output = RatFuncQ;
    fn neg(self) -> RatFuncQ {
        -&self
    }
}

impl From<IntPoly> for RatFuncQ {
    fn from(p: IntPoly) -> Self {
        RatFuncQ::from_poly(p)
    }
}

impl One for RatFuncQ {
    fn one() -> Self {
        RatFuncQ::one()
    }
}

impl Zero for RatFuncQ {
    fn zero() -> Self {
        RatFuncQ::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> IntPoly {
        IntPoly::from_i64s(cs)
    }

    #[test]
    fn reduction_is_canonical() {
        // (q + q^2) / (q^2 - 1) = -q / (1 - q)
        let f = RatFuncQ::new(p(&[0, 1, 1]), p(&[-1, 0, 1])).unwrap();
        let g = RatFuncQ::with_shift(1, p(&[-1]), p(&[1, -1])).unwrap();
        assert_eq!(f, g);
        assert_eq!(f.val(), 1);
        assert!(f.den().coeff(0).is_positive());
    }

    #[test]
    fn negative_q_integers() {
        // [-1]_q = -q^{-1}
        assert_eq!(RatFuncQ::q_int(-1), RatFuncQ::with_shift(-1, p(&[-1]), p(&[1])).unwrap());
        // [n]_q + q^n [-n]_q = 0
        for n in 1..6 {
            let lhs = &RatFuncQ::q_int(n) + &RatFuncQ::q_int(-n).mul_q_pow(n);
            assert!(lhs.is_zero());
        }
    }

    #[test]
    fn parameter_inversion_is_involutive() {
        let f = RatFuncQ::with_shift(2, p(&[1, 2, 1, 1]), p(&[1, 1])).unwrap();
        assert_eq!(f.invert_parameter().invert_parameter(), f);
        // [n]_{1/q} = q^{1-n} [n]_q
        let n = RatFuncQ::q_int(4);
        assert_eq!(n.invert_parameter(), n.mul_q_pow(-3));
    }

    #[test]
    fn field_operations() {
        let a = RatFuncQ::new(p(&[1, 1]), p(&[1, 0, 1])).unwrap();
        let b = RatFuncQ::new(p(&[2, -1]), p(&[1, 3])).unwrap();
        let s = &a + &b;
        assert_eq!(&s - &b, a);
        let m = &a * &b;
        assert_eq!((&m / &b).unwrap(), a);
        assert_eq!(&a * &a.recip().unwrap(), RatFuncQ::one());
        assert!(RatFuncQ::zero().recip().is_err());
    }

    #[test]
    fn serde_round_trip() {
        let f = RatFuncQ::with_shift(-2, p(&[1, 2]), p(&[1, 1, 1])).unwrap();
        let js = serde_json::to_string(&f).unwrap();
        let back: RatFuncQ = serde_json::from_str(&js).unwrap();
        assert_eq!(back, f);
    }
}
