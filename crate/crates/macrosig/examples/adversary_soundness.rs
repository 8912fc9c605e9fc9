//! Stress the witnesses with models engineered to pass them: mixtures of
//! gap-confined components at the uncertainty floor. Every bound must
//! hold on every such model — a single violation would mean the criteria
//! could flag a state with no macroscopic coherence at all.
//!
//! Run with: cargo run --example adversary_soundness

use macrosig::adversary::{random_mixture, suite_mixture, suite_spin_null};

fn main() {
    // One mixture in detail.
    let model = random_mixture(2.0, 7).unwrap();
    let report = model.evaluate().unwrap();
    println!("a two-sided null mixture at S = {}:", model.s);
    println!(
        "  left  (weight {:.3}): Δ²x = {:.4}, Δ²p = {:.4}, ΔxΔp = {:.4}",
        model.p_left,
        model.left.var_x(),
        model.left.var_p,
        model.left.heisenberg_product().sqrt()
    );
    println!(
        "  right (weight {:.3}): Δ²x = {:.4}, Δ²p = {:.4}, ΔxΔp = {:.4}",
        model.p_right,
        model.right.var_x(),
        model.right.var_p,
        model.right.heisenberg_product().sqrt()
    );
    println!(
        "  witness: lhs = {:.4} ≥ bound {} — violated: {}",
        report.lhs, report.bound, report.violated
    );
    let (chain_product, chain_unit) = model.crossterm_margins();
    println!(
        "  product-chain margins: {chain_product:.3e}, {chain_unit:.3e} (both must be ≥ 0)"
    );

    // Suites in bulk: the minimum slack observed over many random models.
    let count = 2000;
    let mut quad_min = f64::INFINITY;
    let mut quad_violations = 0;
    for index in 0..count {
        let model = suite_mixture(1, index);
        let report = model.evaluate().unwrap();
        quad_min = quad_min.min(report.lhs - report.bound);
        quad_violations += u32::from(report.violated);
    }
    let mut spin_min = f64::INFINITY;
    let mut spin_violations = 0;
    for index in 0..count {
        let model = suite_spin_null(1, index);
        let report = model.evaluate().unwrap();
        spin_min = spin_min.min(report.lhs - report.bound);
        spin_violations += u32::from(report.violated);
    }
    println!("\nover {count} random models per suite:");
    println!(
        "  quadrature mixtures: {quad_violations} violations, smallest slack {quad_min:.4}"
    );
    println!(
        "  spin null models:    {spin_violations} violations, smallest slack {spin_min:.4}"
    );
}
