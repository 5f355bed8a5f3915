//! Regions of the `q`-disk where the reciprocal series is controlled.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// `2 - sqrt 3`, radius of the disk where the reciprocal series converges.
pub const DISK_RADIUS: f64 = 0.267_949_192_431_122_7;

/// Polar data of `q` together with the root `a > 1` controlling the tails.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RegionParams {
    pub r: f64,
    /// `arg q` in `[0, 2 pi)`.
    pub theta: f64,
    pub a: f64,
    /// `sqrt(r) * a`, the growth factor `|a_{N+1}| >= alpha |a_N|`.
    pub alpha: f64,
}

fn polar(q: Complex64) -> Result<(f64, f64)> {
    let r = q.norm();
    if r == 0.0 {
        return Err(Error::domain("q = 0 is inside every region by convention"));
    }
    if r > 1.0 || !r.is_finite() {
        return Err(Error::domain("|q| > 1: map through q -> 1/q first"));
    }
    Ok((r, q.arg().rem_euclid(TAU)))
}

/// Membership in D: `r + 1/r - 2 > 4 sin(theta/2)`.
pub fn in_region_d(q: Complex64) -> Result<bool> {
    let (r, theta) = polar(q)?;
    Ok(r + 1.0 / r - 2.0 > 4.0 * (theta / 2.0).sin())
}

/// The root `a > 1` of `a + 1/a = (1/r - r)/sqrt(r + 1/r - 2 cos theta)`.
pub fn solve_a(q: Complex64) -> Result<RegionParams> {
    let (r, theta) = polar(q)?;
    let outside = Error::OutsideRegion { re: q.re, im: q.im };
    if !in_region_d(q)? {
        return Err(outside);
    }
    let l = (1.0 / r - r) / (r + 1.0 / r - 2.0 * theta.cos()).sqrt();
    if l <= 2.0 {
        return Err(outside);
    }
    // Larger root of a^2 - l a + 1 = 0, written to avoid cancellation.
    let a = (l + (l * l - 4.0).sqrt()) / 2.0;
    Ok(RegionParams { r, theta, a, alpha: r.sqrt() * a })
}

/// Membership in D': `q` in D and `a^-2 < 1 - r`.
pub fn in_region_dprime(q: Complex64) -> Result<bool> {
    match solve_a(q) {
        Ok(p) => Ok(p.a.powi(-2) < 1.0 - p.r),
        Err(Error::OutsideRegion { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Membership in the region `|q + 1 + sqrt(1 - q + q^2)| >= 3 sqrt|q|`
/// (principal square root), inside the unit disk.
pub fn in_drop_region(q: Complex64) -> bool {
    if q.norm() >= 1.0 {
        return false;
    }
    let s = (Complex64::new(1.0, 0.0) - q + q * q).sqrt();
    (q + 1.0 + s).norm() >= 3.0 * q.norm().sqrt()
}

/// Lower bound for `|a(z)|` on `|z| = r` over monic degree-`d` polynomials
/// with constant term 1 whose roots avoid the annulus `R < |z| < 1/R`.
pub fn continuant_min_modulus(d: u32, big_r: f64, r: f64) -> Result<f64> {
    if !(0.0 < r && r < big_r && big_r <= 1.0) || d == 0 {
        return Err(Error::domain("continuant_min_modulus needs 0 < r < R <= 1 and d >= 1"));
    }
    let pair = (big_r - r) * (1.0 / big_r - r);
    Ok(if d % 2 == 0 {
        pair.powf(d as f64 / 2.0)
    } else {
        pair.powf((d - 1) as f64 / 2.0) * (1.0 - r)
    })
}

/// One grid point of a region scan.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegionRow {
    pub re: f64,
    pub im: f64,
    pub in_d: bool,
    pub in_dprime: bool,
    /// `None` outside D; infinite at `q = 0`.
    pub a: Option<f64>,
}

fn scan_point(re: f64, im: f64) -> RegionRow {
    let q = Complex64::new(re, im);
    if q.norm() == 0.0 {
        return RegionRow { re, im, in_d: true, in_dprime: true, a: Some(f64::INFINITY) };
    }
    match solve_a(q) {
        Ok(p) => RegionRow { re, im, in_d: true, in_dprime: p.a.powi(-2) < 1.0 - p.r, a: Some(p.a) },
        Err(_) => RegionRow { re, im, in_d: false, in_dprime: false, a: None },
    }
}

/// Rectangular grid scan, row-major in `im` then `re`, computed in parallel.
pub fn region_scan(re: (f64, f64), im: (f64, f64), n_re: usize, n_im: usize) -> Vec<RegionRow> {
    let step = |lo: f64, hi: f64, n: usize, i: usize| if n <= 1 { lo } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 };
    (0..n_im)
        .into_par_iter()
        .flat_map_iter(|j| {
            let y = step(im.0, im.1, n_im, j);
            (0..n_re).map(move |i| scan_point(step(re.0, re.1, n_re, i), y))
        })
        .collect()
}

/// Locate a boundary crossing of `pred` along the negative real axis by
/// bisection between `lo` (inside) and `hi` (outside) magnitudes.
pub fn negative_axis_crossing(pred: impl Fn(Complex64) -> bool, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if pred(Complex64::new(-mid, 0.0)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Radius of the boundary of D in direction `theta`:
/// `1 + 2s - 2 sqrt(s(1 + s))` with `s = sin(theta/2)`.
pub fn boundary_radius(theta: f64) -> f64 {
    let s = (theta.rem_euclid(TAU) / 2.0).sin();
    1.0 + 2.0 * s - 2.0 * (s * (1.0 + s)).sqrt()
}
