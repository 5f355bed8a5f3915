//! Negative (Hirzebruch-Jung) continued fraction expansion and evaluation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::word::CFWord;
use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Greedy expansion `x = c_1 - 1/(c_2 - ...)` of a rational `x >= 1`.
pub fn cf_encode_rational(x: &Rational) -> Result<CFWord> {
    if *x < Rational::one() {
        return Err(Error::domain(format!("cf_encode_rational needs x >= 1, got {x}")));
    }
    let mut digits = Vec::new();
    let mut y = x.clone();
    loop {
        let c = y.ceil();
        digits.push(digit_u32(c.to_integer())?);
        if y == c {
            break;
        }
        y = (c - y).recip();
    }
    CFWord::new(digits)
}

fn digit_u32(c: BigInt) -> Result<u32> {
    c.to_u32().ok_or_else(|| Error::domain(format!("digit {c} does not fit in 32 bits")))
}

/// Evaluate `[[c_1, ..., c_N]]` exactly.
pub fn cf_decode(word: &CFWord) -> Rational {
    decode_digits(word.digits()).expect("a valid word never divides by zero")
}

pub(crate) fn decode_digits(digits: &[u32]) -> Result<Rational> {
    let mut it = digits.iter().rev();
    let mut v = Rational::from_integer(BigInt::from(*it.next().ok_or(Error::domain("empty word"))?));
    for &c in it {
        if v.is_zero() {
            return Err(Error::DivisionByZero);
        }
        v = Rational::from_integer(BigInt::from(c)) - v.recip();
    }
    Ok(v)
}

/// First `n` digits shared by every real number in the closed interval
/// `[lo, hi]`.
///
/// Fails with `PrecisionExhausted` as soon as the interval straddles a
/// digit boundary.
pub fn cf_encode_interval(lo: &Rational, hi: &Rational, n: usize) -> Result<Vec<u32>> {
    if lo > hi || *lo < Rational::one() {
        return Err(Error::domain("interval must satisfy 1 <= lo <= hi"));
    }
    let mut digits = Vec::with_capacity(n);
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    while digits.len() < n {
        let exhausted = Error::PrecisionExhausted { digits_obtained: digits.len() };
        if lo.is_integer() && lo != hi {
            return Err(exhausted);
        }
        let c = lo.ceil();
        if hi > c {
            return Err(exhausted);
        }
        digits.push(digit_u32(c.to_integer())?);
        if lo == c {
            // Degenerate interval at an integer: the expansion ends here.
            break;
        }
        if hi == c {
            if digits.len() < n {
                return Err(Error::PrecisionExhausted { digits_obtained: digits.len() });
            }
            break;
        }
        let nlo = (&c - &lo).recip();
        let nhi = (&c - &hi).recip();
        lo = nlo;
        hi = nhi;
    }
    Ok(digits)
}

/// Digits of a number given as a decimal string with `P` fractional digits,
/// read as the interval `[d, d + 10^-P]`.
pub fn cf_encode_real(x: &str, n: usize) -> Result<Vec<u32>> {
    let (lo, width) = parse_decimal(x)?;
    let hi = &lo + &width;
    cf_encode_interval(&lo, &hi, n)
}

/// Parse a nonnegative decimal into its exact value and the width of its
/// last digit.
pub fn parse_decimal(s: &str) -> Result<(Rational, Rational)> {
    let s = s.trim();
    let bad = || Error::domain(format!("not a decimal number: {s:?}"));
    let (int_part, frac_part) = match s.split_once('.') {
        Some((a, b)) => (a, b),
        None => (s, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
    let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
    Ok((Rational::new(n, scale.clone()), Rational::new(BigInt::one(), scale)))
}

/// Parse `p/q` or an integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::domain(format!("not a rational number: {s:?}"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let r = Rational::new(p, q);
    if r.denom().is_negative() {
        return Err(bad());
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> Rational {
        Rational::new(p.into(), q.into())
    }

    #[test]
    fn small_expansions() {
        assert_eq!(cf_encode_rational(&rat(7, 5)).unwrap().digits(), &[2, 2, 3]);
        assert_eq!(cf_encode_rational(&rat(5, 2)).unwrap().digits(), &[3, 2]);
        assert_eq!(cf_encode_rational(&rat(1, 1)).unwrap().digits(), &[1]);
        assert_eq!(cf_encode_rational(&rat(4, 1)).unwrap().digits(), &[4]);
        assert!(cf_encode_rational(&rat(1, 2)).is_err());
    }

    #[test]
    fn decode_inverts_encode() {
        for (p, q) in [(7, 5), (5, 2), (13, 8), (101, 7), (3, 1)] {
            let x = rat(p, q);
            assert_eq!(cf_decode(&cf_encode_rational(&x).unwrap()), x);
        }
    }

    #[test]
    fn decimal_interval_expansion() {
        assert_eq!(cf_encode_real("1.8304877", 3).unwrap(), vec![2, 6, 10]);
        assert_eq!(cf_encode_real("2.0", 1), Err(Error::PrecisionExhausted { digits_obtained: 0 }));
    }

    #[test]
    fn interval_collapsed_on_rational() {
        let x = rat(7, 5);
        assert_eq!(cf_encode_interval(&x, &x, 5).unwrap(), vec![2, 2, 3]);
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rational("10/4").unwrap(), rat(5, 2));
        assert_eq!(parse_rational("-3").unwrap(), rat(-3, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_decimal("1.2.3").is_err());
        assert_eq!(parse_decimal("1.25").unwrap(), (rat(5, 4), rat(1, 100)));
    }
}
