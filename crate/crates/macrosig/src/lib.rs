//! Certify generalized macroscopic superpositions from outcome
//! statistics.
//!
//! The question this crate answers: given measured (or simulated)
//! statistics of position- and momentum-like observables, must the
//! underlying state contain a superposition of components separated by at
//! least `S`? The test is by contradiction — any state *without* such
//! coherence is a mixture of pieces confined within the gap, and every
//! such mixture obeys uncertainty bounds built from three-region
//! partitions of the outcome distribution. Measured statistics that break
//! a bound certify the superposition, and the largest `S` still violated
//! is the certified size.
//!
//! Three witnesses are implemented, named `T1`–`T3` in reports:
//!
//! * **T1** — direct momentum spread against the partitioned position
//!   distribution: `(Δ²_ave x + P₀ δ) Δ²p ≥ 1` for gap-confined mixtures.
//! * **T2** — the same with the momentum spread replaced by the inference
//!   residual `Δ²_inf p = var(p − g·p_B)` from joint records with an
//!   auxiliary mode; violations certify superpositions surviving inside
//!   an entangled pair.
//! * **T3** — collective spin: `ΔJx · Δ_inf Jy` against a bound built
//!   from outer-region `Jz` means, certifying superpositions of
//!   oppositely polarized components.
//!
//! The pipeline: [`states`] builds analytic models, [`sampler`] draws
//! reproducible records from them, [`stats`] turns records into
//! distributions and region statistics, [`criteria`] evaluates the
//! witnesses and scans for the largest certified separation, and
//! [`adversary`] generates gap-confined null models that the witnesses
//! must pass. [`io`] and [`report`] move samples and verdicts through
//! files; [`cli`] wires everything into a command-line tool.
//!
//! ```
//! use macrosig::criteria::theorem1;
//! use macrosig::stats::EmpiricalDistribution;
//!
//! // Two sharp packets astride a gap of 2, momentum spread far below
//! // the reciprocal of the packet width: the witness fires.
//! let x = EmpiricalDistribution::from_samples(&[-1.0, -1.01, 1.0, 1.01]).unwrap();
//! let report = theorem1(&x, 0.01, 2.0).unwrap();
//! assert!(report.certifies());
//! ```

pub mod adversary;
pub mod cli;
pub mod criteria;
pub mod error;
pub mod io;
pub mod report;
pub mod sampler;
pub mod states;
pub mod stats;

pub use error::{Error, Result};
