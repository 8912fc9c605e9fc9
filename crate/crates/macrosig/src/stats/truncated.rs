use super::normal;
use super::regions::{RegionFlags, RegionStatistics};
use crate::error::{Error, Result};

/// Exact three-region statistics of a Gaussian with the given mean and
/// variance, split at `±s/2`.
///
/// Conditional moments come from the inverse-Mills-ratio closed forms for
/// truncated normals; tail probabilities go through `erfc`, so outer-region
/// masses keep full relative accuracy far into the tails. A region whose
/// probability underflows to zero is reported with the same empty-region
/// convention as the empirical partition (mean on the inner boundary, zero
/// variance, flag set).
pub fn truncated_gaussian_region_stats(
    mean: f64,
    variance: f64,
    s: f64,
) -> Result<RegionStatistics> {
    if !mean.is_finite() {
        return Err(Error::NonFinite(mean));
    }
    if !(variance > 0.0 && variance.is_finite()) {
        return Err(Error::InvalidVariance(variance));
    }
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::InvalidSeparation(s));
    }

    let sigma = variance.sqrt();
    let half = 0.5 * s;
    let z_lo = (-half - mean) / sigma;
    let z_hi = (half - mean) / sigma;

    let p_minus = normal::cdf(z_lo);
    let p_plus = normal::sf(z_hi);
    let p_zero = (1.0 - p_minus - p_plus).max(0.0);

    // Upper region x >= half: mean = mu + sigma*lam, lam the Mills ratio.
    let (mu_plus, var_plus, empty_plus) = {
        let lam = normal::pdf(z_hi) / p_plus;
        if p_plus > 0.0 && lam.is_finite() {
            (
                mean + sigma * lam,
                (variance * (1.0 + z_hi * lam - lam * lam)).max(0.0),
                false,
            )
        } else {
            (half, 0.0, true)
        }
    };

    // Lower region x <= -half, mirrored.
    let (mu_minus, var_minus, empty_minus) = {
        let ratio = normal::pdf(z_lo) / p_minus;
        if p_minus > 0.0 && ratio.is_finite() {
            (
                mean - sigma * ratio,
                (variance * (1.0 - z_lo * ratio - ratio * ratio)).max(0.0),
                false,
            )
        } else {
            (-half, 0.0, true)
        }
    };

    // Interior -half < x < half, doubly truncated.
    let (mu_zero, var_zero, empty_zero) = {
        let d_pdf = (normal::pdf(z_lo) - normal::pdf(z_hi)) / p_zero;
        let d_zpdf = (z_lo * normal::pdf(z_lo) - z_hi * normal::pdf(z_hi)) / p_zero;
        if p_zero > 0.0 && d_pdf.is_finite() && d_zpdf.is_finite() {
            (
                mean + sigma * d_pdf,
                (variance * (1.0 + d_zpdf - d_pdf * d_pdf)).max(0.0),
                false,
            )
        } else {
            (0.0, 0.0, true)
        }
    };

    Ok(RegionStatistics {
        s,
        p_minus,
        p_zero,
        p_plus,
        mu_minus,
        mu_zero,
        mu_plus,
        var_minus,
        var_zero,
        var_plus,
        flags: RegionFlags {
            empty_minus,
            empty_zero,
            empty_plus,
        },
    })
}
