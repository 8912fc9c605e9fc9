//! The three witness criteria.
//!
//! Each criterion compares a measured uncertainty product (left side)
//! against a mixture bound (right side). Any state expressible as a mixture
//! of components confined to within a separation `S` of each other obeys
//! the bound, so a strict violation certifies that every decomposition of
//! the state contains a superposition whose branches are at least `S`
//! apart:
//!
//! * `T1` — quadrature witness with a directly measured momentum spread:
//!   `(Δ²_ave x + P₀ δ) Δ²p ≥ 1`.
//! * `T2` — same left-side geometry with the inferred spread
//!   `Δ²_inf p = var(p − g·p_B)` in place of `Δ²p`.
//! * `T3` — collective-spin witness:
//!   `ΔJx · Δ_inf Jy ≥ ½ Σ_{I=±} P_I² |⟨Jz⟩_I| / (P_I + P_{0,I})`.

mod scan;

pub use scan::{max_certified_separation, MaxSeparationReport, ScanGrid};

use crate::error::{Error, Result};
use crate::stats::{
    partition, partition_at_threshold, CompensatedSum, EmpiricalDistribution, InferenceFit,
    RegionStatistics,
};

/// Which of the three witness inequalities a report refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem {
    T1,
    T2,
    T3,
}

impl Theorem {
    pub fn as_str(self) -> &'static str {
        match self {
            Theorem::T1 => "T1",
            Theorem::T2 => "T2",
            Theorem::T3 => "T3",
        }
    }
}

/// Interior probability of the spin partition split at zero: `minus` is
/// `P(-S < m < 0)`, `plus` is `P(0 <= m < S)` (zero counts toward the plus
/// side).
#[derive(Debug, Clone, Copy)]
pub struct ZeroSplit {
    pub minus: f64,
    pub plus: f64,
}

/// Spin region statistics: the three-region partition at thresholds `±S`
/// plus the interior split at zero that the T3 bound needs.
#[derive(Debug, Clone, Copy)]
pub struct SpinRegionStatistics {
    pub base: RegionStatistics,
    pub zero_split: ZeroSplit,
}

/// Outcome of evaluating one criterion at one separation.
#[derive(Debug, Clone, Copy)]
pub struct CriterionReport {
    pub theorem: Theorem,
    pub s: f64,
    pub lhs: f64,
    pub bound: f64,
    /// Strict comparison: equality is not a violation.
    pub violated: bool,
    /// The δ penalty term (T1/T2 only).
    pub delta: Option<f64>,
    pub region: RegionStatistics,
    /// Interior split at zero (T3 only).
    pub zero_split: Option<ZeroSplit>,
    /// Inference channel used for the left side (T2 only).
    pub inference: Option<InferenceFit>,
    /// T3 bound without the absolute value on the conditional means. The
    /// operative `bound` takes `|⟨Jz⟩_I|`, which is what the derivation
    /// supports; the signed variant is surfaced for inspection.
    pub signed_bound: Option<f64>,
}

impl CriterionReport {
    /// A violation certifies a superposition only when both outer regions
    /// carry probability; otherwise the state never straddled the gap.
    pub fn certifies(&self) -> bool {
        self.violated && self.region.flags.applicable()
    }
}

/// The δ penalty: how much x-variance a mixture can hide in the interior
/// region.
///
/// ```text
/// δ = (μ₊ + S/2)² + (μ₋ − S/2)² + S²/2 + Δ²₊x + Δ²₋x
/// ```
///
/// With both outer regions populated, `μ₊ ≥ S/2` and `μ₋ ≤ −S/2` make each
/// squared term at least `S²`, so `δ ≥ 5S²/2`.
pub fn delta_term(rs: &RegionStatistics) -> f64 {
    let half = 0.5 * rs.s;
    let up = rs.mu_plus + half;
    let down = rs.mu_minus - half;
    up * up + down * down + 0.5 * rs.s * rs.s + rs.var_plus + rs.var_minus
}

fn quadrature_lhs(rs: &RegionStatistics, spread: f64) -> (f64, f64) {
    let delta = delta_term(rs);
    let mut avg = CompensatedSum::default();
    avg.add(rs.p_plus * rs.var_plus);
    avg.add(rs.p_minus * rs.var_minus);
    avg.add(rs.p_zero * delta);
    (avg.value() * spread, delta)
}

/// T1 on precomputed region statistics.
pub fn theorem1_from_regions(rs: &RegionStatistics, var_p: f64) -> Result<CriterionReport> {
    if !(var_p > 0.0 && var_p.is_finite()) {
        return Err(Error::InvalidVariance(var_p));
    }
    let (lhs, delta) = quadrature_lhs(rs, var_p);
    Ok(CriterionReport {
        theorem: Theorem::T1,
        s: rs.s,
        lhs,
        bound: 1.0,
        violated: lhs < 1.0,
        delta: Some(delta),
        region: *rs,
        zero_split: None,
        inference: None,
        signed_bound: None,
    })
}

/// T1: partition the pointer distribution at `±s/2` and test
/// `(Δ²_ave x + P₀ δ) Δ²p < 1`.
pub fn theorem1(x_dist: &EmpiricalDistribution, var_p: f64, s: f64) -> Result<CriterionReport> {
    let rs = partition(x_dist, s)?;
    theorem1_from_regions(&rs, var_p)
}

/// T2 on precomputed region statistics.
pub fn theorem2_from_regions(rs: &RegionStatistics, fit: &InferenceFit) -> Result<CriterionReport> {
    if !(fit.var_inf >= 0.0 && fit.var_inf.is_finite()) {
        return Err(Error::InvalidVariance(fit.var_inf));
    }
    let (lhs, delta) = quadrature_lhs(rs, fit.var_inf);
    Ok(CriterionReport {
        theorem: Theorem::T2,
        s: rs.s,
        lhs,
        bound: 1.0,
        violated: lhs < 1.0,
        delta: Some(delta),
        region: *rs,
        zero_split: None,
        inference: Some(*fit),
        signed_bound: None,
    })
}

/// T2: same geometry as T1 with the inferred momentum spread, which may be
/// zero for perfectly correlated subsystems.
pub fn theorem2(
    x_dist: &EmpiricalDistribution,
    fit: &InferenceFit,
    s: f64,
) -> Result<CriterionReport> {
    let rs = partition(x_dist, s)?;
    theorem2_from_regions(&rs, fit)
}

/// Spin partition: outer regions at `m ≥ s` / `m ≤ −s`, interior split at
/// zero with `m = 0` counted toward the plus side.
pub fn spin_region_stats(
    m_dist: &EmpiricalDistribution,
    s: f64,
) -> Result<SpinRegionStatistics> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::InvalidSeparation(s));
    }
    let base = partition_at_threshold(m_dist, s, s);
    let mut plus = CompensatedSum::default();
    let mut minus = CompensatedSum::default();
    for (&m, &w) in m_dist.outcomes().iter().zip(m_dist.weights()) {
        if m > -s && m < s {
            if m >= 0.0 {
                plus.add(w);
            } else {
                minus.add(w);
            }
        }
    }
    Ok(SpinRegionStatistics {
        base,
        zero_split: ZeroSplit {
            minus: minus.value(),
            plus: plus.value(),
        },
    })
}

/// T3 on precomputed spin region statistics.
pub fn theorem3_from_regions(
    srs: &SpinRegionStatistics,
    delta_jx: f64,
    delta_inf_jy: f64,
) -> Result<CriterionReport> {
    for v in [delta_jx, delta_inf_jy] {
        if !(v >= 0.0 && v.is_finite()) {
            return Err(Error::NegativeVariance(v));
        }
    }
    let rs = &srs.base;
    let mut bound = 0.0;
    let mut signed = 0.0;
    if rs.p_plus > 0.0 {
        let denom = rs.p_plus + srs.zero_split.plus;
        bound += rs.p_plus * rs.p_plus * rs.mu_plus.abs() / denom;
        signed += rs.p_plus * rs.p_plus * rs.mu_plus / denom;
    }
    if rs.p_minus > 0.0 {
        let denom = rs.p_minus + srs.zero_split.minus;
        bound += rs.p_minus * rs.p_minus * rs.mu_minus.abs() / denom;
        signed += rs.p_minus * rs.p_minus * rs.mu_minus / denom;
    }
    bound *= 0.5;
    signed *= 0.5;
    let lhs = delta_jx * delta_inf_jy;
    Ok(CriterionReport {
        theorem: Theorem::T3,
        s: rs.s,
        lhs,
        bound,
        violated: lhs < bound,
        delta: None,
        region: *rs,
        zero_split: Some(srs.zero_split),
        inference: None,
        signed_bound: Some(signed),
    })
}

/// T3: test `ΔJx · Δ_inf Jy` against the conditional-mean bound of the
/// spin partition.
pub fn theorem3(
    m_dist: &EmpiricalDistribution,
    delta_jx: f64,
    delta_inf_jy: f64,
    s: f64,
) -> Result<CriterionReport> {
    let srs = spin_region_stats(m_dist, s)?;
    theorem3_from_regions(&srs, delta_jx, delta_inf_jy)
}
