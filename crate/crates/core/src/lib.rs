//! q-deformed real numbers.
//!
//! Every real `x >= 1` has a negative continued fraction `x = c_1 - 1/(c_2 - ...)`.
//! Replacing each digit by a q-integer gives the q-deformation `[x]_q`: an
//! exact rational function of `q` for rational `x`, and a power series with
//! integer coefficients for irrational `x`.
//!
//! The crate is organised bottom-up:
//!
//! - [`cf_core`]: exact continued fractions, polynomials, rational functions.
//! - [`q_series`]: truncated integer Laurent series and the q-adic limit.
//! - [`analytic`]: numerical evaluation at complex `q`, with certified tails
//!   inside region D.
//! - [`jump`]: jumps of `x -> [x]_q` at rationals, total jump, interaction
//!   series and their critical values.
//! - [`special`]: gamma, Gauss hypergeometric, q-Bessel and q-trigonometric
//!   functions, theta constants.
//! - [`qcomplex`]: the modular-equivariant extension `[tau]_q` to the upper
//!   half-plane.

pub mod analytic;
pub mod cf_core;
pub mod error;
pub mod jump;
pub mod q_series;
pub mod qcomplex;
pub mod special;

pub use cf_core::{CFStream, CFWord, DigitSource, IntPoly, RatFuncQ, Rational};
pub use error::{Error, Result};
pub use num_complex::Complex64;
