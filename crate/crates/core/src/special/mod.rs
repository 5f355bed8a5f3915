//! Special functions: complex gamma, Gauss hypergeometric, q-Bessel,
//! q-trigonometric functions and the modular lambda function.

mod gamma;
mod hyper;
mod qbessel;
mod qtrig;
mod theta;

use num_complex::Complex64;
use serde::Serialize;

use crate::analytic::Cx;

pub use gamma::{gamma, log_gamma, rgamma};
pub use hyper::{euler_transform, gauss_2f1, gauss_sum_at_one};
pub use qbessel::{
    bessel_bridge_ratio, bessel_bridge_series, classical_bessel, kslem_cf, q_bessel, transcendental_limit,
    transcendental_qvalue,
};
pub use qtrig::{cotan_one_qvalue, q_cos, q_cotan, q_sin};
pub use theta::{theta_lambda, ModularPoint, IM_TAU_FLOOR};

/// A summed series with a bound on the neglected tail plus rounding.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesSum {
    pub value: Complex64,
    pub terms: usize,
    pub tail_bound: f64,
}

impl Serialize for SeriesSum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SeriesSum", 3)?;
        st.serialize_field("value", &Cx::from(self.value))?;
        st.serialize_field("err", &self.tail_bound)?;
        st.serialize_field("terms", &self.terms)?;
        st.end()
    }
}
