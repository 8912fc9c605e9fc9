//! Partition an outcome distribution into the three regions a separation
//! defines, and verify that the pieces pool back to the total moments.
//!
//! Run with: cargo run --example partition_basics

use macrosig::stats::{mixture_moments, partition, EmpiricalDistribution};

fn main() {
    // A cat-like record set: two clumps astride the origin plus a few
    // stragglers in between.
    let samples = [
        -2.1, -1.9, -2.0, -1.95, -2.05, 0.1, -0.2, 2.0, 1.9, 2.1, 2.05, 1.95,
    ];
    let dist = EmpiricalDistribution::from_samples(&samples).unwrap();
    let (mean, variance) = dist.mean_variance();
    println!("total:   mean {mean:+.4}  variance {variance:.4}  ({} records)", dist.len());

    for s in [1.0, 2.0, 3.0, 4.5] {
        let rs = partition(&dist, s).unwrap();
        println!("\nseparation S = {s}");
        println!(
            "  P- = {:.3}  mu- = {:+.3}  var- = {:.3}",
            rs.p_minus, rs.mu_minus, rs.var_minus
        );
        println!(
            "  P0 = {:.3}  mu0 = {:+.3}  var0 = {:.3}",
            rs.p_zero, rs.mu_zero, rs.var_zero
        );
        println!(
            "  P+ = {:.3}  mu+ = {:+.3}  var+ = {:.3}",
            rs.p_plus, rs.mu_plus, rs.var_plus
        );
        if !rs.flags.applicable() {
            println!("  (an outer region is empty: no certification possible here)");
        }

        // The law of total variance stitches the regions back together.
        let (pooled_mean, pooled_var) = mixture_moments(&rs.components()).unwrap();
        println!(
            "  pooled back: mean error {:.1e}, variance error {:.1e}",
            (pooled_mean - mean).abs(),
            (pooled_var - variance).abs()
        );
    }
}
