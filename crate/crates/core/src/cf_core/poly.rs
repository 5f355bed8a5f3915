//! Dense integer polynomials in `q`, lowest degree first.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Polynomial with arbitrary-precision integer coefficients.
///
/// Trailing zero coefficients are always stripped, so structural equality is
/// polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        IntPoly::new(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `q^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = BigInt::one();
        IntPoly { coeffs: c }
    }

    /// The q-integer `[n]_q = 1 + q + ... + q^(n-1)` for `n >= 0`.
    pub fn q_int(n: u32) -> Self {
        IntPoly { coeffs: vec![BigInt::one(); n as usize] }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Multiply by `q^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs: c }
    }

    /// Divide by `q^k`; the low `k` coefficients must be zero.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(self.coeffs.iter().take(k).all(Zero::is_zero));
        IntPoly::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        IntPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Coefficients in reverse order, i.e. `q^deg P(1/q)`.
    pub fn reversed(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        IntPoly::new(c)
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divide out the content; the sign of the leading coefficient is kept.
    pub fn primitive_part(&self) -> Self {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        IntPoly::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Remainder of `self` by `d` up to a nonzero scalar factor.
    fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let dd = d.degree().expect("pseudo_rem by zero polynomial");
        let ld = d.leading().unwrap().clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let lr = r.leading().unwrap().clone();
            let g = lr.gcd(&ld);
            let (fr, fd) = (&ld / &g, &lr / &g);
            r = &r.scale(&fr) - &d.shift_up(dr - dd).scale(&fd);
            r = r.primitive_part();
        }
        r
    }

    /// Greatest common divisor over `Z[q]`, with positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.normalized_sign();
        }
        if other.is_zero() {
            return self.normalized_sign();
        }
        let c = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part().normalized_sign().scale(&c)
    }

    fn normalized_sign(&self) -> IntPoly {
        match self.leading() {
            Some(l) if l.is_negative() => -self,
            _ => self.clone(),
        }
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self` in `Z[q]`.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        let dd = d.degree()?;
        let ld = d.leading().unwrap();
        let mut r = self.clone();
        let Some(dr) = r.degree() else {
            return Some(IntPoly::zero());
        };
        if dr < dd {
            return None;
        }
        let mut quot = vec![BigInt::zero(); dr - dd + 1];
        while let Some(dr) = r.degree() {
            if dr < dd {
                return None;
            }
            let (qc, rem) = r.leading().unwrap().div_rem(ld);
            if !rem.is_zero() {
                return None;
            }
            r = &r - &d.shift_up(dr - dd).scale(&qc);
            quot[dr - dd] = qc;
        }
        Some(IntPoly::new(quot))
    }

    pub fn eval_f64(&self, q: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * q + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn eval_complex(&self, q: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * q + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn eval_rational(&self, q: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * q + BigRational::from_integer(c.clone()))
    }

    /// Exact evaluation at the Gaussian rational `re + i im`.
    pub fn eval_gaussian(&self, re: &BigRational, im: &BigRational) -> (BigRational, BigRational) {
        let mut acc = (BigRational::zero(), BigRational::zero());
        for c in self.coeffs.iter().rev() {
            let nr = &acc.0 * re - &acc.1 * im + BigRational::from_integer(c.clone());
            let ni = &acc.0 * im + &acc.1 * re;
            acc = (nr, ni);
        }
        acc
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{a}q")?,
                (_, true) => write!(f, "q^{i}")?,
                (_, false) => write!(f, "{a}q^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let strs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        strs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let strs: Vec<String> = Vec::deserialize(d)?;
        let coeffs = strs
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(D::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IntPoly::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> IntPoly {
        IntPoly::from_i64s(cs)
    }

    #[test]
    fn trailing_zeros_are_stripped() {
        assert_eq!(p(&[1, 2, 0, 0]), p(&[1, 2]));
        assert_eq!(p(&[0, 0]).degree(), None);
    }

    #[test]
    fn product_of_q_integers() {
        // [2][3] = 1 + 2q + 2q^2 + q^3
        assert_eq!(&IntPoly::q_int(2) * &IntPoly::q_int(3), p(&[1, 2, 2, 1]));
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let f = p(&[1, 1]);
        let a = &f * &p(&[1, 0, 1]);
        let b = &f * &p(&[2, 3]);
        assert_eq!(a.gcd(&b), f);
        assert_eq!(p(&[2, 4]).gcd(&p(&[6, 12])), p(&[2, 4]));
        assert!(p(&[1, 1]).gcd(&p(&[1, 0, 1])).is_one());
    }

    #[test]
    fn exact_division() {
        let a = &p(&[1, 1]) * &p(&[3, 0, 2]);
        assert_eq!(a.div_exact(&p(&[1, 1])), Some(p(&[3, 0, 2])));
        assert_eq!(p(&[1, 0, 1]).div_exact(&p(&[1, 1])), None);
    }

    #[test]
    fn json_uses_decimal_strings() {
        let s = serde_json::to_string(&p(&[1, -2, 3])).unwrap();
        assert_eq!(s, r#"["1","-2","3"]"#);
        let back: IntPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p(&[1, -2, 3]));
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(p(&[1, -1, 0, 2]).to_string(), "1 - q + 2q^3");
    }
}
