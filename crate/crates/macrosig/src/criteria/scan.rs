use super::CriterionReport;
use crate::error::{Error, Result};

/// Separation grid for the maximum-separation search: `points` evenly
/// spaced values on `(0, ceiling]`, refined by bisection at the certifying
/// edge.
#[derive(Debug, Clone, Copy)]
pub struct ScanGrid {
    pub ceiling: f64,
    pub points: usize,
    pub bisection_steps: usize,
}

impl ScanGrid {
    pub const DEFAULT_POINTS: usize = 400;
    pub const DEFAULT_BISECTION_STEPS: usize = 12;

    pub fn new(ceiling: f64, points: usize) -> Result<Self> {
        if !(ceiling > 0.0 && ceiling.is_finite()) || points == 0 {
            return Err(Error::InvalidGrid);
        }
        Ok(Self {
            ceiling,
            points,
            bisection_steps: Self::DEFAULT_BISECTION_STEPS,
        })
    }

    /// Default grid for a distribution with the given standard deviation:
    /// 400 points up to four standard deviations.
    pub fn from_spread(std_dev: f64) -> Result<Self> {
        Self::new(4.0 * std_dev, Self::DEFAULT_POINTS)
    }

    /// The scanned separations, smallest first. Zero is excluded: the
    /// criteria are undefined there and certification at S = 0 is vacuous.
    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        let step = self.ceiling / self.points as f64;
        (1..=self.points).map(move |i| step * i as f64)
    }
}

/// Result of scanning a criterion over a separation grid.
///
/// `max_s` is the largest separation at which the criterion certified a
/// superposition (violated with both outer regions populated), refined by
/// bisection between the last certifying and first non-certifying grid
/// points; it is 0 when no grid point certifies. No monotonicity in S is
/// assumed — the scan evaluates every grid point and reports the supremum
/// of what it saw.
#[derive(Debug, Clone)]
pub struct MaxSeparationReport {
    pub max_s: f64,
    pub grid: ScanGrid,
    /// Report at the refined maximum (certifying), when one exists.
    pub at_max: Option<CriterionReport>,
    /// Report at the refined first non-certifying separation above the
    /// maximum; absent when certification persists to the scan ceiling.
    pub above: Option<CriterionReport>,
    /// Every grid-point report, in scan order.
    pub scan: Vec<CriterionReport>,
}

/// Scan `evaluate` over the grid and refine the largest certifying
/// separation.
pub fn max_certified_separation<E>(grid: ScanGrid, mut evaluate: E) -> Result<MaxSeparationReport>
where
    E: FnMut(f64) -> Result<CriterionReport>,
{
    if !(grid.ceiling > 0.0 && grid.ceiling.is_finite()) || grid.points == 0 {
        return Err(Error::InvalidGrid);
    }
    let values: Vec<f64> = grid.values().collect();
    let mut scan = Vec::with_capacity(values.len());
    for &s in &values {
        scan.push(evaluate(s)?);
    }

    let last = match scan.iter().rposition(CriterionReport::certifies) {
        None => {
            return Ok(MaxSeparationReport {
                max_s: 0.0,
                grid,
                at_max: None,
                above: None,
                scan,
            })
        }
        Some(i) => i,
    };

    if last + 1 == scan.len() {
        // Certified all the way to the ceiling; nothing to bisect against.
        return Ok(MaxSeparationReport {
            max_s: values[last],
            grid,
            at_max: Some(scan[last]),
            above: None,
            scan,
        });
    }

    let (mut lo, mut hi) = (values[last], values[last + 1]);
    let (mut at_max, mut above) = (scan[last], scan[last + 1]);
    for _ in 0..grid.bisection_steps {
        let mid = 0.5 * (lo + hi);
        let rep = evaluate(mid)?;
        if rep.certifies() {
            lo = mid;
            at_max = rep;
        } else {
            hi = mid;
            above = rep;
        }
    }

    Ok(MaxSeparationReport {
        max_s: lo,
        grid,
        at_max: Some(at_max),
        above: Some(above),
        scan,
    })
}
