//! q-continuants and the exact q-deformed rationals built from them.

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::encode::cf_encode_rational;
use super::poly::IntPoly;
use super::ratfunc::RatFuncQ;
use super::word::CFWord;
use crate::error::{Error, Result};

/// Continuants `u_0, ..., u_N` of the three-term recursion
/// `u_k = [c_k]_q u_{k-1} - q^{c_{k-1}-1} u_{k-2}`.
fn continuant_run(digits: &[u32], u0: IntPoly, u1: IntPoly) -> Vec<IntPoly> {
    let mut out = Vec::with_capacity(digits.len() + 1);
    out.push(u0);
    if digits.is_empty() {
        return out;
    }
    out.push(u1);
    for k in 1..digits.len() {
        let next = &(&IntPoly::q_int(digits[k]) * &out[k]) - &out[k - 1].shift_up(digits[k - 1] as usize - 1);
        out.push(next);
    }
    out
}

/// Numerator continuants `a_0 = 1, a_1 = [c_1]_q, ..., a_N`.
pub fn numerator_continuants(digits: &[u32]) -> Vec<IntPoly> {
    let a1 = digits.first().map(|&c| IntPoly::q_int(c)).unwrap_or_default();
    continuant_run(digits, IntPoly::one(), a1)
}

/// Denominator continuants `b_0 = 0, b_1 = 1, ..., b_N`.
pub fn denominator_continuants(digits: &[u32]) -> Vec<IntPoly> {
    continuant_run(digits, IntPoly::zero(), IntPoly::one())
}

/// `(a_N, b_N)` for the word `c_1..c_N`.
pub fn q_continuants(word: &CFWord) -> (IntPoly, IntPoly) {
    let d = word.digits();
    (numerator_continuants(d).pop().unwrap(), denominator_continuants(d).pop().unwrap())
}

/// The q-deformed rational `[x]_q = a_N / b_N` for `x = [[word]]`.
pub fn q_rational(word: &CFWord) -> RatFuncQ {
    let (a, b) = q_continuants(word);
    RatFuncQ::new(a, b).expect("b_N is nonzero")
}

/// `[x]_q` for any rational `x`, extending from `x >= 1` by `[x+1]_q = q[x]_q + 1`.
pub fn q_number(x: &BigRational) -> Result<RatFuncQ> {
    let one = BigRational::one();
    if *x >= one {
        return Ok(q_rational(&cf_encode_rational(x)?));
    }
    let n = (&one - x.floor()).to_integer();
    let n = n.to_i64().ok_or_else(|| Error::domain("shift too large"))?;
    let y = x + BigRational::from_integer(n.into());
    let fy = q_rational(&cf_encode_rational(&y)?);
    Ok(translate(&fy, -n))
}

/// `[x + n]_q = q^n [x]_q + [n]_q`, valid for every integer `n`.
pub fn translate(f: &RatFuncQ, n: i64) -> RatFuncQ {
    &f.mul_q_pow(n) + &RatFuncQ::q_int(n)
}

/// `[1/x]_q` for rational `x > 0` through the inversion recursion
/// `[1/x] = [1/y] / ([1/y] + q^-1)` with `y = x - 1`.
///
/// Only `0 < x <= 1` touches the continued fraction itself, so this is an
/// independent route to the reciprocal.
pub fn reciprocal_by_recursion(x: &BigRational) -> Result<RatFuncQ> {
    if !x.is_positive() {
        return Err(Error::domain("reciprocal recursion needs x > 0"));
    }
    let one = BigRational::one();
    let mut steps = 0i64;
    let mut y = x.clone();
    while y > one {
        y -= &one;
        steps += 1;
    }
    let mut f = q_rational(&cf_encode_rational(&y.recip())?);
    let qinv = RatFuncQ::q_pow(-1);
    for _ in 0..steps {
        f = (&f / &(&f + &qinv))?;
    }
    Ok(f)
}

/// `[-x]_q = -q^-1 / [1/x]_q` for rational `x != 0`.
pub fn negate_reciprocal(x: &BigRational) -> Result<RatFuncQ> {
    if x.is_zero() {
        return Err(Error::domain("negate_reciprocal needs x != 0"));
    }
    let inv = if x.is_positive() { reciprocal_by_recursion(x)? } else { q_number(&x.recip())? };
    if inv.is_zero() {
        return Err(Error::DivisionByZero);
    }
    &(-RatFuncQ::q_pow(-1)) / &inv
}

/// Substitute `q -> q^-1`.
pub fn parameter_inverse(f: &RatFuncQ) -> RatFuncQ {
    f.invert_parameter()
}

/// `A_N = a_N - q^{c_N - 1}(1 - q) a_{N-1}`, which equals
/// `(1 - q) a_{N+1}(c_1, ..., c_N, oo)`.
pub fn infinity_continuant(word: &CFWord) -> IntPoly {
    infinity_continuant_digits(word.digits())
}

pub(crate) fn infinity_continuant_digits(digits: &[u32]) -> IntPoly {
    if digits.is_empty() {
        return IntPoly::one();
    }
    let a = numerator_continuants(digits);
    let n = digits.len();
    let cn = digits[n - 1] as usize;
    let one_minus_q = IntPoly::from_i64s(&[1, -1]);
    &a[n] - &(&one_minus_q * &a[n - 1]).shift_up(cn - 1)
}

/// The left limit `[x]_q^- = [[c_1, ..., c_N, oo]]_q = A_N(c) / A_{N-1}(c_2..c_N)`.
pub fn left_limit(word: &CFWord) -> RatFuncQ {
    let d = word.digits();
    let num = infinity_continuant_digits(d);
    let den = infinity_continuant_digits(&d[1..]);
    RatFuncQ::new(num, den).expect("A_{N-1} has constant term 1")
}
