//! Numerical evaluation of `[x]_q` at complex `q`.
//!
//! Inside region D the tails of the reciprocal series have an explicit
//! geometric bound, so [`eval_in_d`] returns certified results. The disk
//! `|q| < 2 - sqrt 3` and the interval `(-R*, 0)` are handled by
//! [`eval_in_disk`] and [`eval_negative_q`] with heuristic tail control.

mod eval;
mod negative;
mod region;

pub use eval::{eval_in_d, eval_in_disk, eval_negative_q, left_limit_value, x_limits, CertifiedComplex, Cx, Flag};
pub(crate) use eval::q_int;
pub use negative::{envelope_root, golden_envelope, EnvelopeValues};
pub use region::{
    boundary_radius, continuant_min_modulus, in_drop_region, in_region_d, in_region_dprime, negative_axis_crossing,
    region_scan, solve_a, RegionParams, RegionRow, DISK_RADIUS,
};
