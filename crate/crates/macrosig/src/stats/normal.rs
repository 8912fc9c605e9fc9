//! Standard normal density and tail functions.
//!
//! Both tails are computed through `erfc` so that relative accuracy is
//! preserved far from the mean; `0.5 * erfc(z / sqrt(2))` stays accurate
//! where `1 - cdf(z)` would lose every significant digit.

use std::f64::consts::{PI, SQRT_2};

/// Density of the standard normal at `z`.
pub fn pdf(z: f64) -> f64 {
    (-0.5 * z * z).exp() / (2.0 * PI).sqrt()
}

/// Lower tail P(Z <= z).
pub fn cdf(z: f64) -> f64 {
    0.5 * libm::erfc(-z / SQRT_2)
}

/// Upper tail P(Z >= z).
pub fn sf(z: f64) -> f64 {
    0.5 * libm::erfc(z / SQRT_2)
}
