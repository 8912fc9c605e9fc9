use super::CompensatedSum;
use crate::error::{Error, Result};

/// Result of inferring one observable from a correlated auxiliary one.
///
/// The inferred spread is the variance of the residual `p - g * p_b`. With
/// `g` left free it is minimized at `g = cov(p, p_b) / var(p_b)`, giving
/// `var_inf = var(p) - cov²/var(p_b)`; any fixed `g` yields a larger (hence
/// still valid) spread.
#[derive(Debug, Clone, Copy)]
pub struct InferenceFit {
    /// Linear gain applied to the auxiliary observable.
    pub g: f64,
    /// Variance of the residual at that gain.
    pub var_inf: f64,
    /// Set when the auxiliary observable carried no variance, forcing
    /// `g = 0` and `var_inf = var(p)`.
    pub degenerate: bool,
}

impl InferenceFit {
    /// Optimal fit from analytic second moments.
    pub fn from_moments(var_p: f64, var_pb: f64, cov: f64) -> Result<Self> {
        for v in [var_p, var_pb, cov] {
            if !v.is_finite() {
                return Err(Error::NonFinite(v));
            }
        }
        if var_p < 0.0 {
            return Err(Error::NegativeVariance(var_p));
        }
        if var_pb < 0.0 {
            return Err(Error::NegativeVariance(var_pb));
        }
        if var_pb == 0.0 {
            return Ok(Self {
                g: 0.0,
                var_inf: var_p,
                degenerate: true,
            });
        }
        let g = cov / var_pb;
        let var_inf = var_p - cov * cov / var_pb;
        if var_inf < -1e-12 * var_p.max(1.0) {
            return Err(Error::NotPositiveSemidefinite(var_inf));
        }
        Ok(Self {
            g,
            var_inf: var_inf.max(0.0),
            degenerate: false,
        })
    }
}

/// Fit from equally weighted `(p, p_b)` outcome pairs. Pass `Some(g)` to
/// evaluate a fixed gain instead of the variance-minimizing one.
pub fn inference_fit(pairs: &[(f64, f64)], g: Option<f64>) -> Result<InferenceFit> {
    let weights = vec![1.0; pairs.len()];
    inference_fit_weighted(pairs, &weights, g)
}

/// Fit from weighted outcome pairs; weights must be nonnegative with
/// positive total mass and at least two pairs are required.
pub fn inference_fit_weighted(
    pairs: &[(f64, f64)],
    weights: &[f64],
    g: Option<f64>,
) -> Result<InferenceFit> {
    if pairs.len() < 2 {
        return Err(Error::InsufficientData {
            needed: 2,
            got: pairs.len(),
        });
    }
    if pairs.len() != weights.len() {
        return Err(Error::LengthMismatch {
            outcomes: pairs.len(),
            weights: weights.len(),
        });
    }
    let mut total = CompensatedSum::default();
    for (&(p, pb), &w) in pairs.iter().zip(weights) {
        for v in [p, pb, w] {
            if !v.is_finite() {
                return Err(Error::NonFinite(v));
            }
        }
        if w < 0.0 {
            return Err(Error::NegativeWeight(w));
        }
        total.add(w);
    }
    let total = total.value();
    if total <= 0.0 {
        return Err(Error::ZeroWeightSum);
    }
    if let Some(g) = g {
        if !g.is_finite() {
            return Err(Error::NonFinite(g));
        }
    }

    let mut mean_p = CompensatedSum::default();
    let mut mean_pb = CompensatedSum::default();
    for (&(p, pb), &w) in pairs.iter().zip(weights) {
        mean_p.add(w / total * p);
        mean_pb.add(w / total * pb);
    }
    let (mean_p, mean_pb) = (mean_p.value(), mean_pb.value());

    let (g, degenerate) = match g {
        Some(g) => (g, false),
        None => {
            let mut cov = CompensatedSum::default();
            let mut var_pb = CompensatedSum::default();
            for (&(p, pb), &w) in pairs.iter().zip(weights) {
                let dp = p - mean_p;
                let db = pb - mean_pb;
                cov.add(w / total * dp * db);
                var_pb.add(w / total * db * db);
            }
            let var_pb = var_pb.value();
            if var_pb <= 0.0 {
                (0.0, true)
            } else {
                (cov.value() / var_pb, false)
            }
        }
    };

    // Two-pass variance of the residual p - g * p_b.
    let mean_res = mean_p - g * mean_pb;
    let mut var = CompensatedSum::default();
    for (&(p, pb), &w) in pairs.iter().zip(weights) {
        let d = (p - g * pb) - mean_res;
        var.add(w / total * d * d);
    }

    Ok(InferenceFit {
        g,
        var_inf: var.value().max(0.0),
        degenerate,
    })
}
