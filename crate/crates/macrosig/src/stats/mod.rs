//! Distribution statistics: weighted empirical distributions, three-region
//! partitions of an outcome axis, exact mixture pooling, truncated-Gaussian
//! closed forms, and linear inference between correlated observables.

mod empirical;
mod inference;
mod mixture;
pub mod normal;
mod regions;
mod truncated;

pub use empirical::EmpiricalDistribution;
pub use inference::{inference_fit, inference_fit_weighted, InferenceFit};
pub use mixture::mixture_moments;
pub use regions::{partition, partition_at_threshold, RegionFlags, RegionStatistics};
pub use truncated::truncated_gaussian_region_stats;

/// Neumaier-compensated sum. The pooling identities checked by the test
/// suite hold to 1e-12 only if weighted sums carry their rounding residue.
#[derive(Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    residue: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.residue += (self.sum - t) + v;
        } else {
            self.residue += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(self) -> f64 {
        self.sum + self.residue
    }
}

#[cfg(test)]
mod tests {
    use super::CompensatedSum;

    #[test]
    fn compensated_sum_recovers_cancelled_terms() {
        let mut acc = CompensatedSum::default();
        acc.add(1.0);
        acc.add(1e100);
        acc.add(1.0);
        acc.add(-1e100);
        assert_eq!(acc.value(), 2.0);
    }

    #[test]
    fn compensated_sum_beats_naive_on_harmonic_tail() {
        let mut acc = CompensatedSum::default();
        let mut naive = 0.0f64;
        for k in 1..=100_000u64 {
            let v = 1.0 / k as f64;
            acc.add(v);
            naive += v;
        }
        let exact: f64 = (1..=100_000u64).rev().map(|k| 1.0 / k as f64).sum();
        assert!((acc.value() - exact).abs() <= (naive - exact).abs());
    }
}
