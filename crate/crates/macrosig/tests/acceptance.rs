//! Acceptance gate: seven go/no-go checks, one test per criterion, each
//! printing a single PASS/FAIL line (visible with `--nocapture`). The
//! tolerances are pinned as constants next to the checks that use them.

use std::process::Command;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use macrosig::adversary::{suite_mixture, suite_spin_null};
use macrosig::criteria::{max_certified_separation, theorem1_from_regions, theorem3, ScanGrid};
use macrosig::states::{impure_gaussian, spin_entangled, spin_observables};
use macrosig::stats::{mixture_moments, partition, EmpiricalDistribution};

/// |max S/Δx − 0.50| at uncertainty product 1.
const C1_TOLERANCE: f64 = 0.02;
/// |first all-zero product − 1.66|.
const C2_CROSSING_TOLERANCE: f64 = 0.05;
/// Small-separation identity, relative to max(1, expected).
const C2_IDENTITY_TOLERANCE: f64 = 1e-6;
/// Separation at which the small-S limit is evaluated.
const C2_LIMIT_S: f64 = 1e-7;
/// Spin spread agreement and residual ceiling.
const C3_TOLERANCE: f64 = 1e-10;
/// Null models per suite; shared by criteria 4 and 7.
const C4_COUNT: u64 = 10_000;
const C4_SEED: u64 = 1001;
/// Pooling identity accuracy, relative to max(1, value).
const C5_TOLERANCE: f64 = 1e-12;
const C5_CASES: u64 = 1000;
/// Pipeline-closure band on max S, in units of Δx.
const C6_BAND: f64 = 0.05;
/// Gain recovery  |g − (−tanh 2r)|.
const C6_GAIN_TOLERANCE: f64 = 0.01;
const C6_SAMPLES: u64 = 1_000_000;
const C6_SEED: u64 = 20268;
/// Rounding floor for exact-arithmetic margins in the bound chains.
const C7_MARGIN_FLOOR: f64 = -1e-9;

/// Largest certified separation for a unit-variance model at the given
/// uncertainty product, from the analytic region statistics.
fn analytic_max_s(product: f64) -> f64 {
    let model = impure_gaussian(1.0, product).unwrap();
    let grid = ScanGrid::from_spread(1.0).unwrap();
    max_certified_separation(grid, |s| {
        theorem1_from_regions(&model.region_stats(s).unwrap(), model.var_p)
    })
    .unwrap()
    .max_s
}

fn check(criterion: usize, ok: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} — {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {criterion} failed: {detail}");
}

#[test]
fn criterion_1_minimum_uncertainty_peak() {
    let max_s = analytic_max_s(1.0);
    let ok = (max_s - 0.5).abs() <= C1_TOLERANCE;
    check(
        1,
        ok,
        &format!("max S/Δx = {max_s:.6} at ΔxΔp = 1 (want 0.50 ± {C1_TOLERANCE})"),
    );
}

#[test]
fn criterion_2_crossing_and_small_s_identity() {
    let products: Vec<f64> = (0..41).map(|k| 1.0 + 0.02 * k as f64).collect();
    let rows: Vec<(f64, f64)> = products
        .par_iter()
        .map(|&c| (c, analytic_max_s(c)))
        .collect();

    // The certifiable separation dies out exactly once, near 1.66.
    let first_zero = rows
        .iter()
        .find(|&&(_, m)| m == 0.0)
        .map(|&(c, _)| c)
        .expect("the grid reaches a product with no certifiable separation");
    let crossing_ok = (first_zero - 1.66).abs() <= C2_CROSSING_TOLERANCE;

    let monotone_ok = rows.windows(2).all(|w| w[1].1 <= w[0].1 + 1e-12);

    // lhs(S→0) = (1 − 2/π)(ΔxΔp)², checked at a tiny separation.
    let limit_factor = 1.0 - std::f64::consts::FRAC_2_PI;
    let mut worst = 0.0f64;
    for &c in &products {
        let model = impure_gaussian(1.0, c).unwrap();
        let report =
            theorem1_from_regions(&model.region_stats(C2_LIMIT_S).unwrap(), model.var_p)
                .unwrap();
        let expected = limit_factor * c * c;
        worst = worst.max((report.lhs - expected).abs() / expected.max(1.0));
    }
    let identity_ok = worst <= C2_IDENTITY_TOLERANCE;

    check(
        2,
        crossing_ok && monotone_ok && identity_ok,
        &format!(
            "first zero at ΔxΔp = {first_zero:.2} (want 1.66 ± {C2_CROSSING_TOLERANCE}), \
             rows monotone: {monotone_ok}, small-S identity worst error {worst:.2e} \
             (limit {C2_IDENTITY_TOLERANCE:.0e})"
        ),
    );
}

#[test]
fn criterion_3_spin_predictions() {
    let mut detail = String::new();
    let mut ok = true;
    for j in [1.0, 2.0, 5.0, 10.0] {
        let model = spin_entangled(j).unwrap();
        let obs = spin_observables(&model);
        let expected_spread = (j * (j + 1.0) / 3.0).sqrt();
        let spread_ok = (obs.delta_jx - expected_spread).abs() <= C3_TOLERANCE;
        let residual = obs.inference.var_inf.max(0.0).sqrt();
        let residual_ok = residual <= C3_TOLERANCE;
        let mut violated_all = true;
        let mut s = 1.0;
        while s <= j + 1e-9 {
            let report = theorem3(&obs.jz_marginal, obs.delta_jx, residual, s).unwrap();
            violated_all &= report.violated && report.certifies();
            s += 1.0;
        }
        ok &= spread_ok && residual_ok && violated_all;
        detail.push_str(&format!(
            "j={j}: all S violated {violated_all}, Δ_inf Jy = {residual:.1e}; "
        ));
    }
    check(3, ok, detail.trim_end_matches("; "));
}

#[test]
fn criterion_4_soundness_suites() {
    let quadrature_violations: u64 = (0..C4_COUNT)
        .into_par_iter()
        .map(|i| u64::from(suite_mixture(C4_SEED, i).evaluate().unwrap().violated))
        .sum();
    let spin_violations: u64 = (0..C4_COUNT)
        .into_par_iter()
        .map(|i| u64::from(suite_spin_null(C4_SEED, i).evaluate().unwrap().violated))
        .sum();
    check(
        4,
        quadrature_violations == 0 && spin_violations == 0,
        &format!(
            "{C4_COUNT} quadrature null mixtures → {quadrature_violations} violations, \
             {C4_COUNT} spin null models → {spin_violations} violations"
        ),
    );
}

#[test]
fn criterion_5_total_variance_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut unit = move || (rng.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0);
    let mut worst = 0.0f64;
    for _ in 0..C5_CASES {
        let n = 2 + (unit() * 58.0) as usize;
        let outcomes: Vec<f64> = (0..n).map(|_| -5.0 + 10.0 * unit()).collect();
        let weights: Vec<f64> = (0..n).map(|_| 0.05 + unit()).collect();
        let dist = EmpiricalDistribution::from_weighted(&outcomes, &weights).unwrap();
        let s = 0.01 + 11.99 * unit();
        let regions = partition(&dist, s).unwrap();
        let (mean, var) = dist.mean_variance();
        let (pooled_mean, pooled_var) = mixture_moments(&regions.components()).unwrap();
        worst = worst.max((pooled_mean - mean).abs() / mean.abs().max(1.0));
        worst = worst.max((pooled_var - var).abs() / var.max(1.0));
    }
    check(
        5,
        worst <= C5_TOLERANCE,
        &format!(
            "law-of-total-variance identity on {C5_CASES} random partitions: \
             worst relative error {worst:.2e} (limit {C5_TOLERANCE:.0e})"
        ),
    );
}

fn run_tool(args: &[&str]) -> (String, i32) {
    let output = Command::new(env!("CARGO_BIN_EXE_macrosig"))
        .args(args)
        .output()
        .expect("the tool binary runs");
    (
        String::from_utf8(output.stdout).expect("utf-8 output"),
        output.status.code().unwrap_or(-1),
    )
}

#[test]
fn criterion_6_pipeline_closure() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let n = C6_SAMPLES.to_string();
    let seed = C6_SEED.to_string();

    // Single mode, r = 1: Δx = e, analytic max S = 0.509299·Δx.
    let (_, code) = run_tool(&[
        "simulate", "--model", "single", "--r", "1", "--n", &n, "--seed", &seed, "--out", out,
    ]);
    assert_eq!(code, 0, "simulate single");
    let x_path = format!("{out}/x.csv");
    let p_path = format!("{out}/p.csv");
    let (stdout, code) = run_tool(&["analyze", &x_path, &p_path]);
    assert_eq!(code, 0, "analyze single should certify");
    let verdict: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let dx = std::f64::consts::E;
    let analytic = 0.5092987038483806 * dx;
    let measured = verdict["max_s"].as_f64().unwrap();
    let single_err = (measured - analytic).abs() / dx;
    let single_ok = single_err <= C6_BAND;

    // Two modes, r = 1: the joint channel recovers g = −tanh 2 and the
    // same dimensionless crossing with Δx = √cosh 2.
    let (_, code) = run_tool(&[
        "simulate", "--model", "two", "--r", "1", "--n", &n, "--seed", &seed, "--out", out,
    ]);
    assert_eq!(code, 0, "simulate two");
    let joint_path = format!("{out}/joint.csv");
    let (stdout, code) = run_tool(&["analyze", &x_path, &joint_path]);
    assert_eq!(code, 0, "analyze two should certify");
    let verdict: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let dx = (2.0f64).cosh().sqrt();
    let analytic = 0.5092987038483806 * dx;
    let measured = verdict["max_s"].as_f64().unwrap();
    let two_err = (measured - analytic).abs() / dx;
    let g = verdict["at_max"]["g"].as_f64().unwrap();
    let g_err = (g - (-(2.0f64).tanh())).abs();
    let two_ok = two_err <= C6_BAND && g_err <= C6_GAIN_TOLERANCE;
    assert_eq!(verdict["at_max"]["theorem"], "T2");

    check(
        6,
        single_ok && two_ok,
        &format!(
            "simulate→analyze at n = {C6_SAMPLES}: single-mode max S off by \
             {single_err:.4}·Δx, two-mode by {two_err:.4}·Δx (band {C6_BAND}), \
             g error {g_err:.4} (limit {C6_GAIN_TOLERANCE})"
        ),
    );
}

#[test]
fn criterion_7_bound_chain_properties() {
    let worst = (0..C4_COUNT)
        .into_par_iter()
        .map(|i| {
            let model = suite_mixture(C4_SEED, i);
            let (chain_a, chain_b) = model.crossterm_margins();
            let own_left = model.left.truncation_margin(model.s).unwrap();
            let own_right = model.right.truncation_margin(model.s).unwrap();
            let (pooled_left, pooled_right) = model.pooled_truncation_margins().unwrap();
            chain_a
                .min(chain_b)
                .min(own_left)
                .min(own_right)
                .min(pooled_left)
                .min(pooled_right)
        })
        .reduce(|| f64::INFINITY, f64::min);
    check(
        7,
        worst >= C7_MARGIN_FLOOR,
        &format!(
            "product-chain and truncation bounds on {C4_COUNT} seeded components: \
             minimum margin {worst:.2e} (floor {C7_MARGIN_FLOOR:.0e})"
        ),
    );
}
