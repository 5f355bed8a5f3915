//! Approach to a rational boundary point along a horocycle.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use super::{q_complex_value, QComplexParams};
use crate::analytic::Cx;
use crate::cf_core::{cf_encode_rational, left_limit, q_number, translate, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Approach {
    Right,
    Left,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundaryRow {
    pub n: usize,
    pub tau: Cx,
    pub value: Cx,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundaryReport {
    pub x: String,
    pub approach: Approach,
    pub q: f64,
    pub target: f64,
    pub rows: Vec<BoundaryRow>,
    /// Residuals are non-increasing along the path.
    pub decreasing: bool,
}

/// `[x]_q^-` for any rational `x`, by translating into `x >= 1`.
pub fn left_limit_rational(x: &Rational) -> Result<crate::cf_core::RatFuncQ> {
    let fl = x.floor().to_integer();
    let k = if fl < BigInt::one() { (BigInt::one() - fl).to_i64().ok_or_else(|| Error::domain("x too small"))? } else { 0 };
    let y = x + Rational::from_integer(BigInt::from(k));
    let f = left_limit(&cf_encode_rational(&y)?);
    Ok(translate(&f, -k))
}

/// Follow `tau_n = g(-n + iM)` (right) or `g(n + iM)` (left), where
/// `g in PSL_2(Z)` sends infinity to `x`, and compare `[tau_n]_q` with the
/// right value `[x]_q` or the left limit `[x]_q^-`.
pub fn boundary_check(
    x: &Rational,
    approach: Approach,
    steps: usize,
    height: f64,
    params: &QComplexParams,
    tol: f64,
) -> Result<BoundaryReport> {
    if !(height > 0.0) {
        return Err(Error::domain("height must be positive"));
    }
    let p = x.numer();
    let r = x.denom();
    // p v - u r = 1
    let e = p.extended_gcd(r);
    let (v, u) = (e.x.clone(), -e.y.clone());
    debug_assert!((p * &v - &u * r).abs().is_one());
    let f = |b: &BigInt| b.to_f64().unwrap_or(f64::NAN);
    let (pf, rf, uf, vf) = (f(p), f(r), f(&u), f(&v));
    let q = params.q;
    let target = match approach {
        Approach::Right => q_number(x)?.eval_f64(q),
        Approach::Left => left_limit_rational(x)?.eval_f64(q),
    };
    let sign = match approach {
        Approach::Right => -1.0,
        Approach::Left => 1.0,
    };
    let mut rows = Vec::with_capacity(steps);
    for n in 1..=steps {
        let w = Complex64::new(sign * n as f64, height);
        let tau = (pf * w + uf) / (rf * w + vf);
        let val = q_complex_value(tau, params, tol)
            .map_err(|e| Error::EvaluationFailure(format!("at n = {n}: {e}")))?
            .value;
        rows.push(BoundaryRow { n, tau: tau.into(), value: val.into(), residual: (val - target).norm() });
    }
    let decreasing = rows.windows(2).all(|w| w[1].residual <= w[0].residual);
    Ok(BoundaryReport { x: x.to_string(), approach, q, target, rows, decreasing })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf_core::parse_rational;

    #[test]
    fn left_limit_of_zero_and_one() {
        let q = 0.4;
        let l0 = left_limit_rational(&parse_rational("0").unwrap()).unwrap().eval_f64(q);
        assert!((l0 - (1.0 - 1.0 / q)).abs() < 1e-14);
        let l1 = left_limit_rational(&parse_rational("1").unwrap()).unwrap().eval_f64(q);
        assert!((l1 - q).abs() < 1e-14);
    }

    fn assert_geometric(rep: &BoundaryReport, q: f64) {
        assert!(rep.decreasing, "{rep:?}");
        let res: Vec<f64> = rep.rows.iter().map(|r| r.residual).collect();
        let k = res.len();
        // successive residuals shrink by a factor tending to q
        assert!((res[k - 1] / res[k - 2] - q).abs() < 1e-2, "{res:?}");
    }

    #[test]
    fn right_approach_to_two() {
        let p = QComplexParams::new(0.7).unwrap();
        let rep = boundary_check(&parse_rational("2").unwrap(), Approach::Right, 14, 2.0, &p, 1e-12).unwrap();
        assert_geometric(&rep, p.q);
        assert!(rep.rows[5].residual < 1e-2);
        assert!(rep.rows[7].residual < 1e-3);
        assert!(rep.rows[13].residual < 2e-5);
    }

    #[test]
    fn left_approach_to_one() {
        let p = QComplexParams::new(0.7).unwrap();
        let rep = boundary_check(&parse_rational("1").unwrap(), Approach::Left, 14, 2.0, &p, 1e-12).unwrap();
        assert!((rep.target - p.q).abs() < 1e-15);
        assert_geometric(&rep, p.q);
    }

    #[test]
    fn both_sides_of_a_fraction() {
        let p = QComplexParams::new(0.7).unwrap();
        let x = parse_rational("5/3").unwrap();
        let right = boundary_check(&x, Approach::Right, 14, 2.0, &p, 1e-12).unwrap();
        let left = boundary_check(&x, Approach::Left, 14, 2.0, &p, 1e-12).unwrap();
        assert_geometric(&right, p.q);
        assert_geometric(&left, p.q);
        // the two targets differ by the jump at 5/3
        assert!(right.target - left.target > 1e-3);
    }

    #[test]
    fn zero_via_translation() {
        let p = QComplexParams::new(0.7).unwrap();
        let rep = boundary_check(&parse_rational("0").unwrap(), Approach::Left, 12, 2.0, &p, 1e-12).unwrap();
        assert!((rep.target - (1.0 - 1.0 / p.q)).abs() < 1e-14);
        assert_geometric(&rep, p.q);
    }
}
