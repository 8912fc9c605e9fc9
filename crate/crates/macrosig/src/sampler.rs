//! Seeded Monte Carlo measurement records.
//!
//! Reproducibility contract: identical `(model, observable, count, seed)`
//! yields bit-identical records on every platform. Everything downstream of
//! the ChaCha stream is a fixed arithmetic transform — normals come from
//! the Box–Muller map rather than rejection sampling, discrete outcomes
//! from inverse-CDF lookup — so no code path consumes a data-dependent
//! number of random words. Each observable draws from its own stream of a
//! shared seed, so batches for different observables never overlap.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::states::{GaussianModel, SpinModel, TwoModeGaussianModel};

/// Measurement channels a batch can record.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observable {
    X,
    P,
    JointPPb,
    M,
    JointJy,
}

impl Observable {
    pub fn as_str(self) -> &'static str {
        match self {
            Observable::X => "x",
            Observable::P => "p",
            Observable::JointPPb => "joint_p_pb",
            Observable::M => "m",
            Observable::JointJy => "joint_jy",
        }
    }

    /// CSV header for serialized batches.
    pub fn column_header(self) -> &'static str {
        match self {
            Observable::X => "x",
            Observable::P => "p",
            Observable::JointPPb => "p,p_b",
            Observable::M => "m",
            Observable::JointJy => "jy,jy_b",
        }
    }

    pub fn is_pair(self) -> bool {
        matches!(self, Observable::JointPPb | Observable::JointJy)
    }

    fn stream(self) -> u64 {
        match self {
            Observable::X => 1,
            Observable::P => 2,
            Observable::JointPPb => 3,
            Observable::M => 4,
            Observable::JointJy => 5,
        }
    }
}

/// Ordered measurement records, scalar or paired.
#[derive(Debug, Clone)]
pub enum Records {
    Scalars(Vec<f64>),
    Pairs(Vec<(f64, f64)>),
}

impl Records {
    pub fn len(&self) -> usize {
        match self {
            Records::Scalars(v) => v.len(),
            Records::Pairs(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A seeded batch of measurement records for one observable.
#[derive(Debug, Clone)]
pub struct SampleBatch {
    pub observable: Observable,
    pub records: Records,
    pub seed: u64,
    pub count: usize,
}

impl SampleBatch {
    pub fn scalars(&self) -> Option<&[f64]> {
        match &self.records {
            Records::Scalars(v) => Some(v),
            Records::Pairs(_) => None,
        }
    }

    pub fn pairs(&self) -> Option<&[(f64, f64)]> {
        match &self.records {
            Records::Pairs(v) => Some(v),
            Records::Scalars(_) => None,
        }
    }
}

fn rng_for(seed: u64, observable: Observable) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(observable.stream());
    rng
}

/// Uniform in [0, 1) from the top 53 bits of one word.
fn unit(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0)
}

/// One Box–Muller pair of independent standard normals. The radial draw
/// maps to (0, 1] so the logarithm never sees zero.
fn standard_normal_pair(rng: &mut ChaCha8Rng) -> (f64, f64) {
    let u1 = ((rng.next_u64() >> 11) as f64 + 1.0) * (1.0 / 9007199254740992.0);
    let u2 = unit(rng);
    let radius = (-2.0 * u1.ln()).sqrt();
    let angle = std::f64::consts::TAU * u2;
    (radius * angle.cos(), radius * angle.sin())
}

fn normal_scalars(rng: &mut ChaCha8Rng, count: usize, mean: f64, sigma: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(count + 1);
    while out.len() < count {
        let (a, b) = standard_normal_pair(rng);
        out.push(mean + sigma * a);
        out.push(mean + sigma * b);
    }
    out.truncate(count);
    out
}

/// Draw position or momentum records from a Gaussian model.
pub fn sample_gaussian(
    model: &GaussianModel,
    observable: Observable,
    count: usize,
    seed: u64,
) -> Result<SampleBatch> {
    if count == 0 {
        return Err(Error::EmptyBatch);
    }
    let (mean, sigma) = match observable {
        Observable::X => (model.mean_x, model.var_x.sqrt()),
        Observable::P => (model.mean_p, model.var_p.sqrt()),
        other => {
            return Err(Error::WrongObservable {
                observable: other.as_str(),
            })
        }
    };
    let mut rng = rng_for(seed, observable);
    Ok(SampleBatch {
        observable,
        records: Records::Scalars(normal_scalars(&mut rng, count, mean, sigma)),
        seed,
        count,
    })
}

/// Draw joint `(p, p_B)` records from a two-mode model via the Cholesky
/// factor of its momentum covariance.
pub fn sample_joint_p(model: &TwoModeGaussianModel, count: usize, seed: u64) -> Result<SampleBatch> {
    if count == 0 {
        return Err(Error::EmptyBatch);
    }
    let residual = model.var_pb - model.cov_p_pb * model.cov_p_pb / model.var_p;
    if residual < -1e-12 * model.var_pb {
        return Err(Error::NotPositiveSemidefinite(residual));
    }
    let l00 = model.var_p.sqrt();
    let l10 = model.cov_p_pb / l00;
    let l11 = residual.max(0.0).sqrt();

    let mut rng = rng_for(seed, Observable::JointPPb);
    let mut records = Vec::with_capacity(count);
    for _ in 0..count {
        let (z1, z2) = standard_normal_pair(&mut rng);
        records.push((l00 * z1, l10 * z1 + l11 * z2));
    }
    Ok(SampleBatch {
        observable: Observable::JointPPb,
        records: Records::Pairs(records),
        seed,
        count,
    })
}

/// Inverse-CDF lookup table over a finite outcome set.
struct DiscreteTable<T: Copy> {
    outcomes: Vec<T>,
    cumulative: Vec<f64>,
}

impl<T: Copy> DiscreteTable<T> {
    fn new(entries: impl Iterator<Item = (T, f64)>) -> Self {
        let mut outcomes = Vec::new();
        let mut cumulative = Vec::new();
        let mut acc = 0.0;
        for (value, weight) in entries {
            acc += weight;
            outcomes.push(value);
            cumulative.push(acc);
        }
        Self {
            outcomes,
            cumulative,
        }
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> T {
        let u = unit(rng);
        let idx = self
            .cumulative
            .partition_point(|&c| c <= u)
            .min(self.outcomes.len() - 1);
        self.outcomes[idx]
    }
}

/// Draw `Jz` outcomes or joint `(Jy, Jy_B)` outcome pairs from the exact
/// distributions of a spin model.
pub fn sample_spin(
    model: &SpinModel,
    observable: Observable,
    count: usize,
    seed: u64,
) -> Result<SampleBatch> {
    if count == 0 {
        return Err(Error::EmptyBatch);
    }
    let obs = crate::states::spin_observables(model);
    let mut rng = rng_for(seed, observable);
    let records = match observable {
        Observable::M => {
            let table = DiscreteTable::new(
                obs.jz_marginal
                    .outcomes()
                    .iter()
                    .copied()
                    .zip(obs.jz_marginal.weights().iter().copied()),
            );
            Records::Scalars((0..count).map(|_| table.draw(&mut rng)).collect())
        }
        Observable::JointJy => {
            let table =
                DiscreteTable::new(obs.joint_jy.iter().map(|&(a, b, p)| ((a, b), p)));
            Records::Pairs((0..count).map(|_| table.draw(&mut rng)).collect())
        }
        other => {
            return Err(Error::WrongObservable {
                observable: other.as_str(),
            })
        }
    };
    Ok(SampleBatch {
        observable,
        records,
        seed,
        count,
    })
}
