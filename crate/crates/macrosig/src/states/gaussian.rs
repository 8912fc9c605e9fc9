use crate::error::{Error, Result};
use crate::stats::{truncated_gaussian_region_stats, InferenceFit, RegionStatistics};

/// Gaussian quadrature statistics of a single mode.
///
/// Quadratures are normalized so the vacuum has unit variance in both and
/// Heisenberg reads `Δ²x · Δ²p ≥ 1`; every constructed model satisfies that
/// floor (up to 1e-12 of rounding).
#[derive(Debug, Clone, Copy)]
pub struct GaussianModel {
    pub var_x: f64,
    pub var_p: f64,
    pub mean_x: f64,
    pub mean_p: f64,
}

impl GaussianModel {
    pub fn new(var_x: f64, var_p: f64) -> Result<Self> {
        Self::with_means(var_x, var_p, 0.0, 0.0)
    }

    pub fn with_means(var_x: f64, var_p: f64, mean_x: f64, mean_p: f64) -> Result<Self> {
        if !(var_x > 0.0 && var_x.is_finite()) {
            return Err(Error::InvalidVariance(var_x));
        }
        if !(var_p > 0.0 && var_p.is_finite()) {
            return Err(Error::InvalidVariance(var_p));
        }
        if !(mean_x.is_finite() && mean_p.is_finite()) {
            return Err(Error::NonFinite(if mean_x.is_finite() { mean_p } else { mean_x }));
        }
        let product = var_x * var_p;
        if product < 1.0 - 1e-12 {
            return Err(Error::BelowQuantumFloor(product.sqrt()));
        }
        Ok(Self {
            var_x,
            var_p,
            mean_x,
            mean_p,
        })
    }

    /// `Δx · Δp`, the purity proxy: 1 for minimum-uncertainty states.
    pub fn uncertainty_product(&self) -> f64 {
        (self.var_x * self.var_p).sqrt()
    }

    pub fn is_pure(&self) -> bool {
        (self.uncertainty_product() - 1.0).abs() <= 1e-9
    }

    /// Exact region statistics of the position marginal at separation `s`.
    pub fn region_stats(&self, s: f64) -> Result<RegionStatistics> {
        truncated_gaussian_region_stats(self.mean_x, self.var_x, s)
    }
}

/// Minimum-uncertainty squeezed mode: `Δ²x = e^{2r}`, `Δ²p = e^{−2r}`.
/// Positive `r` stretches position and squeezes momentum.
pub fn single_mode_squeezed(r: f64) -> Result<GaussianModel> {
    if !r.is_finite() {
        return Err(Error::NonFinite(r));
    }
    GaussianModel::new((2.0 * r).exp(), (-2.0 * r).exp())
}

/// Gaussian with the given position variance and uncertainty product
/// `ΔxΔp ≥ 1`: `var_p = product²/var_x`.
pub fn impure_gaussian(var_x: f64, uncertainty_product: f64) -> Result<GaussianModel> {
    if !(uncertainty_product.is_finite() && uncertainty_product >= 1.0) {
        return Err(Error::BelowQuantumFloor(uncertainty_product));
    }
    if !(var_x > 0.0 && var_x.is_finite()) {
        return Err(Error::InvalidVariance(var_x));
    }
    GaussianModel::new(var_x, uncertainty_product * uncertainty_product / var_x)
}

/// Real position-space amplitude of a pure squeezed mode:
/// `ψ(x) = exp[−x²/(4Δ²x)] / (2πΔ²x)^{1/4}`, so `|ψ|²` is the Gaussian
/// density with variance `Δ²x`.
pub fn wavefunction(model: &GaussianModel, x: f64) -> Result<f64> {
    if !model.is_pure() {
        return Err(Error::ImpureModel(model.uncertainty_product()));
    }
    let v = model.var_x;
    let d = x - model.mean_x;
    Ok((-d * d / (4.0 * v)).exp() / (2.0 * std::f64::consts::PI * v).powf(0.25))
}

/// Joint momentum statistics of a two-mode state: the local quadrature
/// variances, the partner variance, and their covariance, from which the
/// inferred spread `var_inf = var_p − cov²/var_pB` derives.
#[derive(Debug, Clone, Copy)]
pub struct TwoModeGaussianModel {
    pub var_x: f64,
    pub var_p: f64,
    pub var_pb: f64,
    pub cov_p_pb: f64,
}

impl TwoModeGaussianModel {
    pub fn new(var_x: f64, var_p: f64, var_pb: f64, cov_p_pb: f64) -> Result<Self> {
        for v in [var_x, var_p, var_pb] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidVariance(v));
            }
        }
        if !cov_p_pb.is_finite() {
            return Err(Error::NonFinite(cov_p_pb));
        }
        let model = Self {
            var_x,
            var_p,
            var_pb,
            cov_p_pb,
        };
        // Validates positive semidefiniteness of the (p, pB) covariance.
        model.inference()?;
        Ok(model)
    }

    /// Optimal inference channel for predicting `p` from `p_B`.
    pub fn inference(&self) -> Result<InferenceFit> {
        InferenceFit::from_moments(self.var_p, self.var_pb, self.cov_p_pb)
    }

    pub fn var_inf(&self) -> f64 {
        self.inference()
            .map(|fit| fit.var_inf)
            .unwrap_or(f64::NAN)
    }

    /// Exact region statistics of the position marginal at A.
    pub fn region_stats(&self, s: f64) -> Result<RegionStatistics> {
        truncated_gaussian_region_stats(0.0, self.var_x, s)
    }
}

/// Two-mode squeezed state: `var_x = var_p = var_pB = cosh 2r`,
/// `cov(p, p_B) = −sinh 2r`, hence `var_inf = 1/cosh 2r` at the optimal
/// gain `g = −tanh 2r`.
pub fn two_mode_squeezed(r: f64) -> Result<TwoModeGaussianModel> {
    if !r.is_finite() {
        return Err(Error::NonFinite(r));
    }
    let c = (2.0 * r).cosh();
    TwoModeGaussianModel::new(c, c, c, -(2.0 * r).sinh())
}
