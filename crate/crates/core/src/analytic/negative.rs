//! Golden-ratio envelope of `x -> [x]_q` on `q = -r`, `0 < r < R*`.

use serde::Serialize;

use super::eval::eval_negative_q;
use crate::cf_core::CFStream;
use crate::error::{Error, Result};
use crate::q_series::R_STAR;

/// Envelope values at `q = -r` together with the closed forms built from
/// `a = (r - 1 + 1/r + sqrt((1/r - 3 + r)(1/r + 1 + r)))/2`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EnvelopeValues {
    pub r: f64,
    pub a: f64,
    /// `[phi]_q` from the reciprocal series.
    pub sup: f64,
    /// `[1 + phi]_q = q [phi]_q + 1`.
    pub inf: f64,
    /// `1 - r + 1/a`, equal to `[phi]_q`.
    pub sup_closed: f64,
    /// `r a`, equal to `[1 + phi]_q`.
    pub inf_closed: f64,
    /// `1 + a - r`, the alternative form built on the other root.
    pub sup_alt: f64,
    /// `r / a`, likewise.
    pub inf_alt: f64,
    pub err: f64,
}

pub fn envelope_root(r: f64) -> f64 {
    let inv = 1.0 / r;
    0.5 * (r - 1.0 + inv + ((inv - 3.0 + r) * (inv + 1.0 + r)).sqrt())
}

/// Evaluate the envelope at `q = -r`.
pub fn golden_envelope(r: f64, tol: f64) -> Result<EnvelopeValues> {
    if !(0.0 < r && r < R_STAR) {
        return Err(Error::OutsideInterval);
    }
    let a = envelope_root(r);
    let phi = eval_negative_q(&CFStream::golden(), -r, tol)?;
    let sup = phi.value.re;
    Ok(EnvelopeValues {
        r,
        a,
        sup,
        inf: 1.0 - r * sup,
        sup_closed: 1.0 - r + 1.0 / a,
        inf_closed: r * a,
        sup_alt: 1.0 + a - r,
        inf_alt: r / a,
        err: phi.err,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms_match_series() {
        for r in [0.05, 0.2, 0.35] {
            let e = golden_envelope(r, 1e-12).unwrap();
            assert!((e.sup - e.sup_closed).abs() < 1e-10, "{e:?}");
            assert!((e.inf - e.inf_closed).abs() < 1e-10, "{e:?}");
            assert!(e.inf_alt < e.inf && e.sup_alt > e.sup);
        }
    }

    #[test]
    fn root_solves_quadratic() {
        let r = 0.2;
        let a = envelope_root(r);
        // a + 1/a = 1/r - 1 + r
        assert!((a + 1.0 / a - (1.0 / r - 1.0 + r)).abs() < 1e-12);
    }

    #[test]
    fn endpoint_behaviour() {
        // closed form tends to R* at the endpoint
        let r = R_STAR - 1e-12;
        assert!((r * envelope_root(r) - R_STAR).abs() < 1e-5);
        assert!(golden_envelope(0.5, 1e-8).is_err());
    }
}
