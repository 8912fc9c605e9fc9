use super::CompensatedSum;
use crate::error::{Error, Result};

/// A finite weighted distribution over real outcomes.
///
/// Weights are normalized to unit mass at construction. Moments are
/// population moments (no Bessel correction): the criteria compare measured
/// spreads against operator bounds, not against estimator sampling error.
#[derive(Debug, Clone)]
pub struct EmpiricalDistribution {
    outcomes: Vec<f64>,
    weights: Vec<f64>,
}

impl EmpiricalDistribution {
    /// Equal-weight distribution over raw samples.
    pub fn from_samples(samples: &[f64]) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptyInput);
        }
        for &x in samples {
            if !x.is_finite() {
                return Err(Error::NonFinite(x));
            }
        }
        let w = 1.0 / samples.len() as f64;
        Ok(Self {
            outcomes: samples.to_vec(),
            weights: vec![w; samples.len()],
        })
    }

    /// Distribution over explicit (outcome, weight) pairs. Weights must be
    /// nonnegative with positive total mass; they are rescaled to sum to 1.
    pub fn from_weighted(outcomes: &[f64], weights: &[f64]) -> Result<Self> {
        if outcomes.is_empty() {
            return Err(Error::EmptyInput);
        }
        if outcomes.len() != weights.len() {
            return Err(Error::LengthMismatch {
                outcomes: outcomes.len(),
                weights: weights.len(),
            });
        }
        let mut total = CompensatedSum::default();
        for (&x, &w) in outcomes.iter().zip(weights) {
            if !x.is_finite() {
                return Err(Error::NonFinite(x));
            }
            if !w.is_finite() {
                return Err(Error::NonFinite(w));
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
        Ok(Self {
            outcomes: outcomes.to_vec(),
            weights: weights.iter().map(|w| w / total).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    pub fn outcomes(&self) -> &[f64] {
        &self.outcomes
    }

    /// Normalized weights; always sum to 1 up to rounding.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn mean(&self) -> f64 {
        let mut acc = CompensatedSum::default();
        for (&x, &w) in self.outcomes.iter().zip(&self.weights) {
            acc.add(w * x);
        }
        acc.value()
    }

    /// Population variance, computed in two passes about the mean so that
    /// pooling identities close to near machine precision.
    pub fn variance(&self) -> f64 {
        self.mean_variance().1
    }

    pub fn mean_variance(&self) -> (f64, f64) {
        let mean = self.mean();
        let mut acc = CompensatedSum::default();
        for (&x, &w) in self.outcomes.iter().zip(&self.weights) {
            let d = x - mean;
            acc.add(w * d * d);
        }
        (mean, acc.value().max(0.0))
    }

    pub fn std_dev(&self) -> f64 {
        self.variance().sqrt()
    }

    pub fn min(&self) -> f64 {
        self.outcomes.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.outcomes
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_weights_match_plain_average() {
        let d = EmpiricalDistribution::from_samples(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(d.mean(), 2.5);
        assert!((d.variance() - 1.25).abs() < 1e-15);
    }

    #[test]
    fn weights_are_rescaled_to_unit_mass() {
        let d = EmpiricalDistribution::from_weighted(&[0.0, 1.0], &[2.0, 6.0]).unwrap();
        assert_eq!(d.weights(), &[0.25, 0.75]);
        assert_eq!(d.mean(), 0.75);
        assert!((d.variance() - 0.1875).abs() < 1e-15);
    }

    #[test]
    fn two_point_distribution_variance() {
        // Symmetric pair at ±a has variance a².
        let d = EmpiricalDistribution::from_samples(&[-3.0, 3.0]).unwrap();
        assert_eq!(d.mean(), 0.0);
        assert_eq!(d.variance(), 9.0);
    }

    #[test]
    fn zero_weight_outcomes_do_not_shift_moments() {
        let d = EmpiricalDistribution::from_weighted(&[5.0, -1.0, 100.0], &[0.5, 0.5, 0.0]).unwrap();
        assert_eq!(d.mean(), 2.0);
        assert_eq!(d.variance(), 9.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            EmpiricalDistribution::from_samples(&[]),
            Err(Error::EmptyInput)
        ));
        assert!(matches!(
            EmpiricalDistribution::from_samples(&[1.0, f64::NAN]),
            Err(Error::NonFinite(_))
        ));
        assert!(matches!(
            EmpiricalDistribution::from_weighted(&[1.0], &[1.0, 2.0]),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            EmpiricalDistribution::from_weighted(&[1.0, 2.0], &[0.5, -0.1]),
            Err(Error::NegativeWeight(_))
        ));
        assert!(matches!(
            EmpiricalDistribution::from_weighted(&[1.0, 2.0], &[0.0, 0.0]),
            Err(Error::ZeroWeightSum)
        ));
    }

    #[test]
    fn variance_is_never_negative_under_rounding() {
        // All outcomes equal: the two-pass sum could round to a tiny
        // negative without the final clamp.
        let d = EmpiricalDistribution::from_samples(&[0.1; 1000]).unwrap();
        assert!(d.variance() >= 0.0);
        assert!(d.variance() < 1e-30);
    }
}
