//! Float math shims.
//!
//! `f64`'s transcendental methods live in `std`, not `core`; route them
//! through `libm` so the crate builds without `std` and produces the same
//! bits on every platform.

#![allow(dead_code)]

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub(crate) fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub(crate) fn log2(x: f64) -> f64 {
    libm::log2(x)
}

#[inline]
pub(crate) fn log10(x: f64) -> f64 {
    libm::log10(x)
}

#[inline]
pub(crate) fn powf(base: f64, exp: f64) -> f64 {
    libm::pow(base, exp)
}

#[inline]
pub(crate) fn cos(x: f64) -> f64 {
    libm::cos(x)
}

#[inline]
pub(crate) fn sin(x: f64) -> f64 {
    libm::sin(x)
}

#[inline]
pub(crate) fn hypot(x: f64, y: f64) -> f64 {
    libm::hypot(x, y)
}

/// 10^(db/10): decibels to a linear power factor.
#[inline]
pub(crate) fn db_to_linear(db: f64) -> f64 {
    powf(10.0, db / 10.0)
}

/// 10*log10(linear): linear power factor to decibels.
#[inline]
pub(crate) fn linear_to_db(linear: f64) -> f64 {
    10.0 * log10(linear)
}
