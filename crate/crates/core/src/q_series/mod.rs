//! Formal power series in `q` with integer coefficients.
//!
//! For an infinite digit source the convergents `[x]_{N,q}` stabilise
//! q-adically: `[x]_{N,q}` and `[x]_{N+1,q}` agree modulo `q^{C_N}`. The
//! limit is returned as an [`IntLaurent`] carrying its exact order.

mod counterexample;
mod laurent;
mod series;

pub use counterexample::{counterexample_stream, GrowthSchedule, StageRecord, DEFAULT_STAGE_BUDGET, R_STAR};
pub use laurent::IntLaurent;
pub use series::{ln_abs, q_real_series, radius_estimate, reciprocal_series, weights, RadiusEstimate};
