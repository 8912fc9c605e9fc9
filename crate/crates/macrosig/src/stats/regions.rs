use super::{CompensatedSum, EmpiricalDistribution};
use crate::error::{Error, Result};

/// Which of the three regions carried no probability mass.
///
/// An empty outer region makes a violation non-certifying: the mixture bound
/// being tested only constrains states that actually occupy both sides of
/// the gap.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RegionFlags {
    pub empty_minus: bool,
    pub empty_zero: bool,
    pub empty_plus: bool,
}

impl RegionFlags {
    /// True when both outer regions are populated, i.e. a violation at this
    /// separation certifies a superposition.
    pub fn applicable(&self) -> bool {
        !self.empty_minus && !self.empty_plus
    }
}

/// Probabilities and conditional moments of an outcome axis split into
/// lower / interior / upper regions around a gap of total width `s`.
///
/// Boundary points belong to the outer regions; the interior is open.
/// Conditional moments of an empty region follow a fixed convention — the
/// mean sits on the region's inner boundary, the variance is zero — and the
/// corresponding flag is set so downstream code can tell convention from
/// measurement. When populated, `mu_plus` is at least the upper threshold
/// and `mu_minus` at most the lower one, up to rounding of the weighted
/// mean.
#[derive(Debug, Clone, Copy)]
pub struct RegionStatistics {
    /// Separation parameter the partition was evaluated at.
    pub s: f64,
    pub p_minus: f64,
    pub p_zero: f64,
    pub p_plus: f64,
    pub mu_minus: f64,
    pub mu_zero: f64,
    pub mu_plus: f64,
    pub var_minus: f64,
    pub var_zero: f64,
    pub var_plus: f64,
    pub flags: RegionFlags,
}

impl RegionStatistics {
    /// Region triples as (probability, mean, variance), lower to upper,
    /// ready for mixture pooling.
    pub fn components(&self) -> [(f64, f64, f64); 3] {
        [
            (self.p_minus, self.mu_minus, self.var_minus),
            (self.p_zero, self.mu_zero, self.var_zero),
            (self.p_plus, self.mu_plus, self.var_plus),
        ]
    }
}

fn region_index(x: f64, threshold: f64) -> usize {
    if x <= -threshold {
        0
    } else if x >= threshold {
        2
    } else {
        1
    }
}

/// Split a distribution at thresholds `±s/2`, the geometry used by the
/// quadrature criteria: outcomes at or below `-s/2` form the lower region,
/// at or above `s/2` the upper one.
pub fn partition(dist: &EmpiricalDistribution, s: f64) -> Result<RegionStatistics> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::InvalidSeparation(s));
    }
    Ok(partition_at_threshold(dist, 0.5 * s, s))
}

/// Split a distribution at thresholds `±threshold`, recording `s` as the
/// separation label. The collective-spin criterion cuts at `±s` rather than
/// `±s/2`, so the threshold is a separate argument.
pub fn partition_at_threshold(
    dist: &EmpiricalDistribution,
    threshold: f64,
    s: f64,
) -> RegionStatistics {
    let mut mass = [CompensatedSum::default(); 3];
    let mut first_moment = [CompensatedSum::default(); 3];
    for (&x, &w) in dist.outcomes().iter().zip(dist.weights()) {
        let r = region_index(x, threshold);
        mass[r].add(w);
        first_moment[r].add(w * x);
    }
    let p = [mass[0].value(), mass[1].value(), mass[2].value()];

    // Empty-region convention: mean pinned to the inner boundary (0 for the
    // interior), variance zero.
    let convention = [-threshold, 0.0, threshold];
    let mut mu = [0.0; 3];
    for r in 0..3 {
        mu[r] = if p[r] > 0.0 {
            first_moment[r].value() / p[r]
        } else {
            convention[r]
        };
    }

    let mut second_central = [CompensatedSum::default(); 3];
    for (&x, &w) in dist.outcomes().iter().zip(dist.weights()) {
        let r = region_index(x, threshold);
        let d = x - mu[r];
        second_central[r].add(w * d * d);
    }
    let mut var = [0.0; 3];
    for r in 0..3 {
        var[r] = if p[r] > 0.0 {
            (second_central[r].value() / p[r]).max(0.0)
        } else {
            0.0
        };
    }

    RegionStatistics {
        s,
        p_minus: p[0],
        p_zero: p[1],
        p_plus: p[2],
        mu_minus: mu[0],
        mu_zero: mu[1],
        mu_plus: mu[2],
        var_minus: var[0],
        var_zero: var[1],
        var_plus: var[2],
        flags: RegionFlags {
            empty_minus: p[0] == 0.0,
            empty_zero: p[1] == 0.0,
            empty_plus: p[2] == 0.0,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::mixture_moments;
    use proptest::prelude::*;

    #[test]
    fn two_point_cat_splits_cleanly() {
        let d = EmpiricalDistribution::from_samples(&[-1.0, 1.0]).unwrap();
        let r = partition(&d, 1.0).unwrap();
        assert_eq!((r.p_minus, r.p_zero, r.p_plus), (0.5, 0.0, 0.5));
        assert_eq!((r.mu_minus, r.mu_plus), (-1.0, 1.0));
        assert_eq!((r.var_minus, r.var_plus), (0.0, 0.0));
        assert!(r.flags.empty_zero);
        assert!(r.flags.applicable());
    }

    #[test]
    fn boundary_outcomes_go_to_the_outer_regions() {
        let d = EmpiricalDistribution::from_samples(&[-0.5, 0.5, 0.49999]).unwrap();
        let r = partition(&d, 1.0).unwrap();
        assert!((r.p_minus - 1.0 / 3.0).abs() < 1e-15);
        assert!((r.p_plus - 1.0 / 3.0).abs() < 1e-15);
        assert!((r.p_zero - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn empty_region_convention_pins_mean_to_boundary() {
        let d = EmpiricalDistribution::from_samples(&[1.0, 2.0, 3.0]).unwrap();
        let r = partition(&d, 1.0).unwrap();
        assert!(r.flags.empty_minus);
        assert!(!r.flags.applicable());
        assert_eq!(r.mu_minus, -0.5);
        assert_eq!(r.var_minus, 0.0);
        assert_eq!(r.p_minus, 0.0);
    }

    #[test]
    fn spin_threshold_convention_pins_mean_to_s() {
        let d = EmpiricalDistribution::from_samples(&[2.0, 3.0]).unwrap();
        let r = partition_at_threshold(&d, 2.0, 2.0);
        assert!(r.flags.empty_minus);
        assert_eq!(r.mu_minus, -2.0);
        assert_eq!(r.p_plus, 1.0);
        assert_eq!(r.mu_plus, 2.5);
    }

    #[test]
    fn probabilities_sum_to_one() {
        let xs: Vec<f64> = (0..1001).map(|k| (k as f64) * 0.01 - 5.0).collect();
        let d = EmpiricalDistribution::from_samples(&xs).unwrap();
        let r = partition(&d, 2.5).unwrap();
        assert!((r.p_minus + r.p_zero + r.p_plus - 1.0).abs() < 1e-12);
    }

    #[test]
    fn conditional_means_respect_thresholds() {
        let xs: Vec<f64> = (0..500).map(|k| ((k * 2654435761u64 % 1000) as f64) / 100.0 - 5.0).collect();
        let d = EmpiricalDistribution::from_samples(&xs).unwrap();
        let r = partition(&d, 3.0).unwrap();
        if !r.flags.empty_plus {
            assert!(r.mu_plus >= 1.5 - 1e-12);
        }
        if !r.flags.empty_minus {
            assert!(r.mu_minus <= -1.5 + 1e-12);
        }
    }

    proptest! {
        // Law of total variance: pooling the three regions reproduces the
        // full distribution's moments to near machine precision.
        #[test]
        fn pooled_regions_reproduce_total_variance(
            xs in proptest::collection::vec(-50.0f64..50.0, 2..200),
            raw_w in proptest::collection::vec(0.0f64..1.0, 2..200),
            s in 0.01f64..40.0,
        ) {
            let n = xs.len().min(raw_w.len());
            let xs = &xs[..n];
            let mut w = raw_w[..n].to_vec();
            if w.iter().sum::<f64>() == 0.0 {
                w[0] = 1.0;
            }
            let d = EmpiricalDistribution::from_weighted(xs, &w).unwrap();
            let r = partition(&d, s).unwrap();
            let (pool_mean, pool_var) = mixture_moments(&r.components()).unwrap();
            let (mean, var) = d.mean_variance();
            prop_assert!((pool_mean - mean).abs() <= 1e-12 * (1.0 + mean.abs()));
            prop_assert!((pool_var - var).abs() <= 1e-12 * (1.0 + var));
        }

        #[test]
        fn region_masses_always_sum_to_one(
            xs in proptest::collection::vec(-100.0f64..100.0, 1..100),
            s in 0.01f64..10.0,
        ) {
            let d = EmpiricalDistribution::from_samples(&xs).unwrap();
            let r = partition(&d, s).unwrap();
            prop_assert!((r.p_minus + r.p_zero + r.p_plus - 1.0).abs() < 1e-12);
            prop_assert!(r.p_minus >= 0.0 && r.p_zero >= 0.0 && r.p_plus >= 0.0);
        }
    }
}
