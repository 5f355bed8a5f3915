//! Theta constants and the modular lambda function.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::analytic::Cx;
use crate::error::{Error, Result};

/// Below this imaginary part the theta series need too many terms; apply a
/// modular transformation first.
pub const IM_TAU_FLOOR: f64 = 0.05;

/// A point of the upper half-plane with its nome and theta data.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModularPoint {
    pub tau: Complex64,
    /// `e^{i pi tau}`.
    pub nome: Complex64,
    pub lambda: Complex64,
    pub theta00: Complex64,
    pub theta10: Complex64,
    pub theta01: Complex64,
    pub terms: usize,
}

impl Serialize for ModularPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ModularPoint", 6)?;
        st.serialize_field("tau", &Cx::from(self.tau))?;
        st.serialize_field("nome", &Cx::from(self.nome))?;
        st.serialize_field("lambda", &Cx::from(self.lambda))?;
        st.serialize_field("theta00", &Cx::from(self.theta00))?;
        st.serialize_field("theta10", &Cx::from(self.theta10))?;
        st.serialize_field("theta01", &Cx::from(self.theta01))?;
        st.end()
    }
}

/// Evaluate the theta constants at `tau` and `lambda = theta10^4 / theta00^4`.
pub fn theta_lambda(tau: Complex64, tol: f64) -> Result<ModularPoint> {
    if !(tau.im > 0.0) {
        return Err(Error::domain("tau must lie in the upper half-plane"));
    }
    if tau.im < IM_TAU_FLOOR {
        return Err(Error::ConvergenceTooSlow { im_tau: tau.im });
    }
    let i_pi = Complex64::new(0.0, PI);
    let nome = (i_pi * tau).exp();
    let qa = nome.norm();
    let cutoff = (tol * 1e-2).max(f64::MIN_POSITIVE);
    // theta00 = 1 + 2 sum q^{n^2}, theta01 = 1 + 2 sum (-1)^n q^{n^2},
    // theta10 = 2 q^{1/4} sum_{n>=0} q^{n(n+1)}
    let mut s00 = Complex64::new(0.0, 0.0);
    let mut s01 = Complex64::new(0.0, 0.0);
    let mut s10 = Complex64::new(1.0, 0.0);
    let mut n = 1u64;
    loop {
        let e_sq = (n * n) as f64;
        let e_pr = (n * (n + 1)) as f64;
        if qa.powf(e_sq) < cutoff && qa.powf(e_pr) < cutoff {
            break;
        }
        let t_sq = (i_pi * tau * e_sq).exp();
        s00 += t_sq;
        s01 += if n % 2 == 0 { t_sq } else { -t_sq };
        s10 += (i_pi * tau * e_pr).exp();
        n += 1;
    }
    let theta00 = 1.0 + 2.0 * s00;
    let theta01 = 1.0 + 2.0 * s01;
    let quarter = (i_pi * tau * 0.25).exp();
    let theta10 = 2.0 * quarter * s10;
    // theta10^4 = 16 q (sum)^4, free of the quarter-power branch
    let s10_2 = s10 * s10;
    let lambda = 16.0 * nome * s10_2 * s10_2 / theta00.powu(4);
    Ok(ModularPoint { tau, nome, lambda, theta00, theta10, theta01, terms: n as usize })
}
