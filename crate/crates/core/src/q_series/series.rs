use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::laurent::{mul_trunc, IntLaurent};
use crate::cf_core::DigitSource;
use crate::error::{Error, Result};

/// Continuants `a_j mod q^k` generated digit by digit.
struct ContinuantWalk<'a, S: DigitSource + ?Sized> {
    src: &'a S,
    k: usize,
    /// (a_{j-1}, a_j) and (b_{j-1}, b_j)
    a: (Vec<BigInt>, Vec<BigInt>),
    b: (Vec<BigInt>, Vec<BigInt>),
    j: usize,
    weight: u64,
    last: u32,
}

fn q_int_trunc(c: u32, k: usize) -> Vec<BigInt> {
    vec![BigInt::one(); (c as usize).min(k)]
}

fn sub_shifted(x: &mut Vec<BigInt>, y: &[BigInt], shift: usize, k: usize) {
    if x.len() < k.min(y.len() + shift) {
        x.resize(k.min(y.len() + shift), BigInt::zero());
    }
    for (i, c) in y.iter().enumerate() {
        if i + shift >= k {
            break;
        }
        x[i + shift] -= c;
    }
}

impl<'a, S: DigitSource + ?Sized> ContinuantWalk<'a, S> {
    fn new(src: &'a S, k: usize) -> Self {
        ContinuantWalk {
            src,
            k,
            a: (Vec::new(), vec![BigInt::one()]),
            b: (Vec::new(), Vec::new()),
            j: 0,
            weight: 0,
            last: 0,
        }
    }

    /// Advance from `j` to `j + 1`; `false` when the source has ended.
    fn step(&mut self) -> bool {
        let Some(c) = self.src.digit(self.j) else {
            return false;
        };
        let qc = q_int_trunc(c, self.k);
        let (na, nb) = if self.j == 0 {
            (qc, vec![BigInt::one()])
        } else {
            let shift = self.last as usize - 1;
            let mut na = mul_trunc(&qc, &self.a.1, self.k);
            sub_shifted(&mut na, &self.a.0, shift, self.k);
            let mut nb = mul_trunc(&qc, &self.b.1, self.k);
            sub_shifted(&mut nb, &self.b.0, shift, self.k);
            (na, nb)
        };
        self.a = (std::mem::take(&mut self.a.1), na);
        self.b = (std::mem::take(&mut self.b.1), nb);
        self.j += 1;
        self.weight += c as u64 - 1;
        self.last = c;
        true
    }
}

/// The q-adic limit `[x]_q` modulo `q^order`.
///
/// Uses the first convergent `a_N / b_N` with `C_N >= order`; convergents
/// agree modulo `q^{C_N}`. A complete finite word is exact to any order.
pub fn q_real_series<S: DigitSource + ?Sized>(src: &S, order: usize) -> Result<IntLaurent> {
    if order == 0 {
        return Ok(IntLaurent::zero(0));
    }
    let mut walk = ContinuantWalk::new(src, order);
    while walk.weight < order as u64 || walk.j == 0 {
        if !walk.step() {
            if walk.j > 0 && src.is_complete() {
                break;
            }
            return Err(Error::StreamExhausted { order: order as i64 });
        }
    }
    let k = order as i64;
    let a = IntLaurent::new(0, walk.a.1, k);
    let b = IntLaurent::new(0, walk.b.1, k);
    a.div(&b)
}

/// `1/[x]_q = sum_j q^{C_j} / (a_j a_{j+1})` modulo `q^order`.
pub fn reciprocal_series<S: DigitSource + ?Sized>(src: &S, order: usize) -> Result<IntLaurent> {
    let k = order as i64;
    let mut walk = ContinuantWalk::new(src, order);
    let mut sum = IntLaurent::zero(k);
    loop {
        let cj = walk.weight;
        if cj >= order as u64 {
            break;
        }
        let aj = IntLaurent::new(0, walk.a.1.clone(), k);
        if !walk.step() {
            if walk.j > 0 && src.is_complete() {
                break;
            }
            return Err(Error::StreamExhausted { order: k });
        }
        let aj1 = IntLaurent::new(0, walk.a.1.clone(), k);
        let term = (&aj * &aj1).inverse()?.mul_q_pow(cj as i64).truncate(k);
        sum = &sum + &term;
    }
    Ok(sum)
}

/// Continuant weights `C_1, C_2, ...` of the first `n` digits.
pub fn weights<S: DigitSource + ?Sized>(src: &S, n: usize) -> Result<Vec<u64>> {
    let mut out = Vec::with_capacity(n);
    let mut w = 0;
    for i in 0..n {
        let c = src.digit(i).ok_or(Error::StreamExhausted { order: i as i64 })?;
        w += c as u64 - 1;
        out.push(w);
    }
    Ok(out)
}

/// Windowed root-test estimate of `1/R` for a power series.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RadiusEstimate {
    /// `max |beta_n|^{1/n}` over the window; a lower bound proxy for the limsup.
    pub inverse_radius: f64,
    pub window: usize,
    pub first_index: i64,
    pub last_index: i64,
    /// Index at which the maximum was attained.
    pub argmax: i64,
}

/// `ln |b|` for big integers beyond the `f64` range.
pub fn ln_abs(b: &BigInt) -> f64 {
    let bits = b.bits();
    if bits < 1000 {
        return num_traits::ToPrimitive::to_f64(b).unwrap().abs().ln();
    }
    let shift = bits - 64;
    let top: BigInt = b >> shift;
    num_traits::ToPrimitive::to_f64(&top).unwrap().abs().ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn radius_estimate(series: &IntLaurent, window: usize) -> Result<RadiusEstimate> {
    let last = series.order() - 1;
    let first = last + 1 - window as i64;
    if window == 0 || first < 1 {
        return Err(Error::InsufficientData { needed: window + 1, available: series.order().max(0) as usize });
    }
    let mut best = (0.0f64, first);
    for n in first..=last {
        let c = series.coeff(n).unwrap();
        if c.is_zero() {
            continue;
        }
        let v = (ln_abs(&c) / n as f64).exp();
        if v > best.0 {
            best = (v, n);
        }
    }
    Ok(RadiusEstimate { inverse_radius: best.0, window, first_index: first, last_index: last, argmax: best.1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf_core::{q_rational, CFStream, CFWord, WordPrefix};

    fn w(d: &[u32]) -> CFWord {
        CFWord::new(d.to_vec()).unwrap()
    }

    #[test]
    fn golden_series_leading_coefficients() {
        let s = q_real_series(&CFStream::golden(), 12).unwrap();
        let want = [1, 0, 1, -1, 2, -4, 8, -17, 37, -82, 185, -423];
        let got: Vec<i64> = s.power_coeffs().unwrap().iter().map(|c| c.try_into().unwrap()).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn finite_word_matches_rational_function() {
        let word = w(&[3, 2]);
        let f = q_rational(&word);
        let s = q_real_series(&word, 20).unwrap();
        assert_eq!(s, IntLaurent::from_ratfunc(&f, 20).unwrap());
    }

    #[test]
    fn incomplete_prefix_runs_out() {
        let p = WordPrefix(vec![2, 3]);
        assert!(q_real_series(&p, 3).is_ok());
        assert_eq!(q_real_series(&p, 4), Err(Error::StreamExhausted { order: 4 }));
    }

    #[test]
    fn first_reciprocal_term() {
        // j = 0 alone: 1/[c_1]_q, visible below q^{C_1}
        let word = w(&[4, 2]);
        let r = reciprocal_series(&word, 3).unwrap();
        let direct = IntLaurent::from_poly(&crate::cf_core::IntPoly::q_int(4), 3).inverse().unwrap();
        assert!(r.congruent(&direct, 3));
    }

    #[test]
    fn reciprocal_of_golden() {
        let phi = CFStream::golden();
        let s = q_real_series(&phi, 30).unwrap();
        let r = reciprocal_series(&phi, 30).unwrap();
        assert!((&s * &r).congruent(&IntLaurent::one(30), 30));
    }

    #[test]
    fn polynomial_radius_is_small() {
        let s = IntLaurent::from_poly(&crate::cf_core::IntPoly::q_int(5), 40);
        assert!(radius_estimate(&s, 10).unwrap().inverse_radius <= 1.0);
        assert!(radius_estimate(&s, 40).is_err());
    }

    #[test]
    fn five_halves_radius_near_one() {
        let s = q_real_series(&w(&[3, 2]), 200).unwrap();
        let est = radius_estimate(&s, 50).unwrap().inverse_radius;
        assert!((est - 1.0).abs() < 0.01, "{est}");
    }

    #[test]
    fn big_log() {
        let b = BigInt::from(3u32).pow(2000);
        assert!((ln_abs(&b) - 2000.0 * 3f64.ln()).abs() < 1e-9);
    }
}
