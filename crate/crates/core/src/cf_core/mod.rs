//! Exact layer: negative continued fractions, integer polynomials, reduced
//! rational functions and the q-deformed rationals built from q-continuants.
//!
//! - [`IntPoly`] and [`RatFuncQ`] carry exact coefficients.
//! - [`CFWord`] is a finite expansion, [`CFStream`] an infinite one; both
//!   implement [`DigitSource`].
//! - [`q_rational`] and [`q_number`] produce `[x]_q`; [`translate`],
//!   [`negate_reciprocal`] and [`parameter_inverse`] are the symmetries used
//!   to extend it to all rationals.

mod encode;
mod poly;
mod qnum;
mod ratfunc;
mod word;

pub use encode::{cf_decode, cf_encode_interval, cf_encode_rational, cf_encode_real, parse_decimal, parse_rational, Rational};
pub use poly::IntPoly;
pub use qnum::{
    denominator_continuants, infinity_continuant, left_limit, negate_reciprocal, numerator_continuants,
    parameter_inverse, q_continuants, q_number, q_rational, reciprocal_by_recursion, translate,
};
pub(crate) use qnum::infinity_continuant_digits;
pub use ratfunc::RatFuncQ;
pub use word::{CFStream, CFWord, DigitSource, WordPrefix};
pub(crate) use word::weight;
