//! Null models the witnesses must never flag.
//!
//! A null model is a mixture whose components each stay within the
//! separation gap on one side and satisfy the Heisenberg premise; the
//! criteria's bounds are theorems about exactly this family, so every
//! generated model is a soundness probe: a single violated report would be
//! a bug in the criteria, the pooling identities, or the generator.
//!
//! Components are statistical surrogates — an explicit x-distribution with
//! a `(var_p, mean_p)` assignment satisfying `var_x · var_p ≥ 1` — rather
//! than concrete quantum states. The bounds consume nothing but these
//! statistics, and genuine states strictly confined to a half-line do not
//! exist, so surrogates are the only way to exercise the premises exactly.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::criteria::{theorem1_from_regions, theorem3, CriterionReport};
use crate::error::{Error, Result};
use crate::stats::{mixture_moments, EmpiricalDistribution, RegionFlags, RegionStatistics};

/// Which half-domain a mixture component is confined to: `Left` keeps
/// `x < s/2`, `Right` keeps `x > -s/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// One piece of a bounded distribution: a point mass or a uniform segment.
#[derive(Debug, Clone, Copy)]
pub enum Atom {
    Point { x: f64, weight: f64 },
    Segment { lo: f64, hi: f64, weight: f64 },
}

impl Atom {
    fn weight(&self) -> f64 {
        match *self {
            Atom::Point { weight, .. } | Atom::Segment { weight, .. } => weight,
        }
    }

    fn scaled(&self, factor: f64) -> Atom {
        match *self {
            Atom::Point { x, weight } => Atom::Point {
                x,
                weight: weight * factor,
            },
            Atom::Segment { lo, hi, weight } => Atom::Segment {
                lo,
                hi,
                weight: weight * factor,
            },
        }
    }

    /// `(weight, mean, variance)` of the piece; a uniform segment of length
    /// `L` has variance `L²/12`.
    fn moments(&self) -> (f64, f64, f64) {
        match *self {
            Atom::Point { x, weight } => (weight, x, 0.0),
            Atom::Segment { lo, hi, weight } => {
                let len = hi - lo;
                (weight, 0.5 * (lo + hi), len * len / 12.0)
            }
        }
    }
}

/// A finite mixture of point masses and uniform segments with exactly
/// computable moments and region statistics.
#[derive(Debug, Clone)]
pub struct BoundedDist {
    atoms: Vec<Atom>,
}

impl BoundedDist {
    /// Validate and normalize atom weights to unit total mass.
    pub fn new(atoms: Vec<Atom>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut total = 0.0;
        for atom in &atoms {
            match *atom {
                Atom::Point { x, weight } => {
                    if !x.is_finite() || !weight.is_finite() {
                        return Err(Error::NonFinite(if x.is_finite() { weight } else { x }));
                    }
                    if weight < 0.0 {
                        return Err(Error::NegativeWeight(weight));
                    }
                }
                Atom::Segment { lo, hi, weight } => {
                    if !lo.is_finite() || !hi.is_finite() || !weight.is_finite() {
                        return Err(Error::NonFinite(weight));
                    }
                    if weight < 0.0 {
                        return Err(Error::NegativeWeight(weight));
                    }
                    if hi <= lo {
                        return Err(Error::InvalidVariance(hi - lo));
                    }
                }
            }
            total += atom.weight();
        }
        if total <= 0.0 {
            return Err(Error::ZeroWeightSum);
        }
        Ok(Self {
            atoms: atoms.iter().map(|a| a.scaled(1.0 / total)).collect(),
        })
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn support_min(&self) -> f64 {
        self.atoms
            .iter()
            .map(|a| match *a {
                Atom::Point { x, .. } => x,
                Atom::Segment { lo, .. } => lo,
            })
            .fold(f64::INFINITY, f64::min)
    }

    pub fn support_max(&self) -> f64 {
        self.atoms
            .iter()
            .map(|a| match *a {
                Atom::Point { x, .. } => x,
                Atom::Segment { hi, .. } => hi,
            })
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn mean_variance(&self) -> (f64, f64) {
        let parts: Vec<(f64, f64, f64)> = self.atoms.iter().map(Atom::moments).collect();
        mixture_moments(&parts).expect("atom weights are normalized")
    }

    pub fn mean(&self) -> f64 {
        self.mean_variance().0
    }

    pub fn variance(&self) -> f64 {
        self.mean_variance().1
    }

    /// Exact three-region statistics at thresholds `±s/2`. Segments split
    /// analytically (their boundary overlap carries no mass); points on a
    /// threshold belong to the outer region, as in the empirical partition.
    pub fn region_stats(&self, s: f64) -> Result<RegionStatistics> {
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::InvalidSeparation(s));
        }
        let half = 0.5 * s;
        let mut pieces: [Vec<(f64, f64, f64)>; 3] = [Vec::new(), Vec::new(), Vec::new()];
        for atom in &self.atoms {
            match *atom {
                Atom::Point { x, weight } => {
                    let region = if x <= -half {
                        0
                    } else if x >= half {
                        2
                    } else {
                        1
                    };
                    pieces[region].push((weight, x, 0.0));
                }
                Atom::Segment { lo, hi, weight } => {
                    let len = hi - lo;
                    let bounds = [
                        (lo, hi.min(-half)),
                        (lo.max(-half), hi.min(half)),
                        (lo.max(half), hi),
                    ];
                    for (region, &(a, b)) in bounds.iter().enumerate() {
                        if b > a {
                            let seg = b - a;
                            pieces[region].push((
                                weight * seg / len,
                                0.5 * (a + b),
                                seg * seg / 12.0,
                            ));
                        }
                    }
                }
            }
        }

        let mut p = [0.0; 3];
        let mut mu = [-half, 0.0, half];
        let mut var = [0.0; 3];
        for region in 0..3 {
            let mass: f64 = pieces[region].iter().map(|&(w, _, _)| w).sum();
            if mass > 0.0 {
                let normalized: Vec<(f64, f64, f64)> = pieces[region]
                    .iter()
                    .map(|&(w, m, v)| (w / mass, m, v))
                    .collect();
                let (m, v) = mixture_moments(&normalized)?;
                p[region] = mass;
                mu[region] = m;
                var[region] = v;
            }
        }

        Ok(RegionStatistics {
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
        })
    }
}

/// One side of a two-component null mixture: a bounded x-distribution plus
/// a momentum spread at or above the Heisenberg floor for its x-variance.
#[derive(Debug, Clone)]
pub struct MixtureComponent {
    pub side: Side,
    pub dist: BoundedDist,
    pub var_p: f64,
    pub mean_p: f64,
}

impl MixtureComponent {
    pub fn var_x(&self) -> f64 {
        self.dist.variance()
    }

    pub fn heisenberg_product(&self) -> f64 {
        self.var_x() * self.var_p
    }

    /// Margin of the truncation bound on this component's own statistics:
    ///
    /// ```text
    /// Δ²_side x ≤ Δ²_outer x + [P₀/(P₀+P_outer)]·[(s/2)² + (μ_outer ± s/2)²]
    /// ```
    ///
    /// Nonnegative for every admissible component; the returned value is
    /// `rhs − Δ²_side x`.
    pub fn truncation_margin(&self, s: f64) -> Result<f64> {
        let rs = self.dist.region_stats(s)?;
        Ok(truncation_rhs(&rs, self.side) - self.var_x())
    }
}

/// Right side of the truncation bound for the given side's outer region,
/// evaluated on arbitrary region statistics.
fn truncation_rhs(rs: &RegionStatistics, side: Side) -> f64 {
    let half = 0.5 * rs.s;
    match side {
        Side::Right => {
            let reach = rs.mu_plus + half;
            let fraction = if rs.p_zero + rs.p_plus > 0.0 {
                rs.p_zero / (rs.p_zero + rs.p_plus)
            } else {
                1.0
            };
            rs.var_plus + fraction * (half * half + reach * reach)
        }
        Side::Left => {
            let reach = rs.mu_minus - half;
            let fraction = if rs.p_zero + rs.p_minus > 0.0 {
                rs.p_zero / (rs.p_zero + rs.p_minus)
            } else {
                1.0
            };
            rs.var_minus + fraction * (half * half + reach * reach)
        }
    }
}

/// A two-component null mixture at separation `s`, with pooled statistics
/// derived exactly from the components.
#[derive(Debug, Clone)]
pub struct MixtureModel {
    pub s: f64,
    pub p_left: f64,
    pub p_right: f64,
    pub left: MixtureComponent,
    pub right: MixtureComponent,
}

impl MixtureModel {
    /// The observable x-distribution: both components pooled.
    pub fn pooled_x(&self) -> BoundedDist {
        let mut atoms: Vec<Atom> = self
            .left
            .dist
            .atoms()
            .iter()
            .map(|a| a.scaled(self.p_left))
            .collect();
        atoms.extend(self.right.dist.atoms().iter().map(|a| a.scaled(self.p_right)));
        BoundedDist::new(atoms).expect("pooling preserves validity")
    }

    /// Pooled momentum moments via the exact mixture identity.
    pub fn pooled_p(&self) -> (f64, f64) {
        mixture_moments(&[
            (self.p_left, self.left.mean_p, self.left.var_p),
            (self.p_right, self.right.mean_p, self.right.var_p),
        ])
        .expect("two weights summing to one")
    }

    pub fn region_stats(&self) -> Result<RegionStatistics> {
        self.pooled_x().region_stats(self.s)
    }

    /// Evaluate the quadrature witness on the pooled observables at the
    /// mixture's own separation.
    pub fn evaluate(&self) -> Result<CriterionReport> {
        let rs = self.region_stats()?;
        theorem1_from_regions(&rs, self.pooled_p().1)
    }

    /// Margins of the product chain
    /// `(ΣPᵢΔᵢ²x)(ΣPᵢΔᵢ²p) ≥ (ΣPᵢΔᵢxΔᵢp)² ≥ 1`
    /// on the component statistics: `(first, second)`, both nonnegative for
    /// admissible mixtures.
    pub fn crossterm_margins(&self) -> (f64, f64) {
        let (pl, pr) = (self.p_left, self.p_right);
        let (vxl, vxr) = (self.left.var_x(), self.right.var_x());
        let a = pl * vxl + pr * vxr;
        let b = pl * self.left.var_p + pr * self.right.var_p;
        let c = pl * (vxl * self.left.var_p).sqrt() + pr * (vxr * self.right.var_p).sqrt();
        (a * b - c * c, c * c - 1.0)
    }

    /// Truncation-bound margins for both components against the pooled
    /// region statistics.
    pub fn pooled_truncation_margins(&self) -> Result<(f64, f64)> {
        let rs = self.region_stats()?;
        Ok((
            truncation_rhs(&rs, Side::Left) - self.left.var_x(),
            truncation_rhs(&rs, Side::Right) - self.right.var_x(),
        ))
    }
}

/// Deterministic uniform draws for model generation.
struct Draw(ChaCha8Rng);

impl Draw {
    fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self(rng)
    }

    fn unit(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0)
    }

    fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    fn index(&mut self, n: u64) -> u64 {
        self.0.next_u64() % n
    }
}

const STREAM_LEFT: u64 = 10;
const STREAM_RIGHT: u64 = 11;
const STREAM_MIXTURE: u64 = 12;
const STREAM_SPIN: u64 = 13;
const STREAM_SUITE: u64 = 14;

/// Draw a random admissible component: 1–4 atoms strictly inside the
/// side's half-domain, momentum variance `c/var_x` with `c ∈ [1, 10]`,
/// momentum mean in `[−2, 2]`. Distributions whose x-variance degenerates
/// to zero are redrawn — they would demand infinite momentum spread.
pub fn random_component(side: Side, s: f64, seed: u64) -> Result<MixtureComponent> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::InvalidSeparation(s));
    }
    let stream = match side {
        Side::Left => STREAM_LEFT,
        Side::Right => STREAM_RIGHT,
    };
    let mut draw = Draw::new(seed, stream);
    let dist = loop {
        let gap = draw.range(0.001, 0.5) * s;
        let span = draw.range(0.5, 5.0) * s;
        let (lo, hi) = match side {
            Side::Right => (-0.5 * s + gap, -0.5 * s + gap + span),
            Side::Left => (0.5 * s - gap - span, 0.5 * s - gap),
        };
        let n_atoms = 1 + draw.index(4) as usize;
        let mut atoms = Vec::with_capacity(n_atoms);
        for _ in 0..n_atoms {
            let weight = draw.range(0.1, 1.0);
            if draw.unit() < 0.5 {
                atoms.push(Atom::Point {
                    x: draw.range(lo, hi),
                    weight,
                });
            } else {
                let (a, b) = (draw.range(lo, hi), draw.range(lo, hi));
                if (a - b).abs() > 1e-9 * s {
                    atoms.push(Atom::Segment {
                        lo: a.min(b),
                        hi: a.max(b),
                        weight,
                    });
                } else {
                    atoms.push(Atom::Point { x: a, weight });
                }
            }
        }
        let dist = BoundedDist::new(atoms)?;
        if dist.variance() > 1e-12 * s * s {
            break dist;
        }
    };
    let var_x = dist.variance();
    Ok(MixtureComponent {
        side,
        dist,
        var_p: draw.range(1.0, 10.0) / var_x,
        mean_p: draw.range(-2.0, 2.0),
    })
}

/// Draw a full two-sided null mixture at separation `s`.
pub fn random_mixture(s: f64, seed: u64) -> Result<MixtureModel> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::InvalidSeparation(s));
    }
    let mut draw = Draw::new(seed, STREAM_MIXTURE);
    let p_left = draw.range(1e-3, 1.0 - 1e-3);
    Ok(MixtureModel {
        s,
        p_left,
        p_right: 1.0 - p_left,
        left: random_component(Side::Left, s, seed)?,
        right: random_component(Side::Right, s, seed)?,
    })
}

/// One component of a three-part spin null model: a probability mass
/// function over part of the outcome lattice plus first and second moments
/// of the transverse observables, chosen to respect
/// `ΔJx · Δ_inf Jy ≥ |⟨Jz⟩|/2`.
#[derive(Debug, Clone)]
pub struct SpinNullComponent {
    pub weight: f64,
    /// `(m, probability)` over this component's support; probabilities sum
    /// to 1.
    pub pmf: Vec<(f64, f64)>,
    pub mean_jx: f64,
    pub var_jx: f64,
    pub mean_jy: f64,
    pub var_jy: f64,
}

impl SpinNullComponent {
    pub fn jz_mean(&self) -> f64 {
        self.pmf.iter().map(|&(m, p)| p * m).sum()
    }

    /// `ΔJx·Δ_inf Jy − |⟨Jz⟩|/2`; nonnegative for admissible components.
    pub fn base_relation_margin(&self) -> f64 {
        (self.var_jx * self.var_jy).sqrt() - 0.5 * self.jz_mean().abs()
    }
}

/// A three-component spin null mixture: left (`m < 0`), center
/// (`|m| < s`), right (`m > 0`).
#[derive(Debug, Clone)]
pub struct SpinNullModel {
    pub j: f64,
    pub s: f64,
    pub components: Vec<SpinNullComponent>,
}

impl SpinNullModel {
    /// Pooled outcome distribution over the lattice.
    pub fn pooled_m(&self) -> EmpiricalDistribution {
        let mut outcomes = Vec::new();
        let mut weights = Vec::new();
        for component in &self.components {
            for &(m, p) in &component.pmf {
                outcomes.push(m);
                weights.push(component.weight * p);
            }
        }
        EmpiricalDistribution::from_weighted(&outcomes, &weights)
            .expect("components carry positive total mass")
    }

    fn pooled_variance(&self, select: impl Fn(&SpinNullComponent) -> (f64, f64)) -> f64 {
        let parts: Vec<(f64, f64, f64)> = self
            .components
            .iter()
            .map(|c| {
                let (mean, var) = select(c);
                (c.weight, mean, var)
            })
            .collect();
        mixture_moments(&parts).expect("component weights sum to one").1
    }

    pub fn pooled_delta_jx(&self) -> f64 {
        self.pooled_variance(|c| (c.mean_jx, c.var_jx)).sqrt()
    }

    pub fn pooled_delta_inf_jy(&self) -> f64 {
        self.pooled_variance(|c| (c.mean_jy, c.var_jy)).sqrt()
    }

    /// Evaluate the collective-spin witness on the pooled observables at
    /// the model's own separation.
    pub fn evaluate(&self) -> Result<CriterionReport> {
        theorem3(
            &self.pooled_m(),
            self.pooled_delta_jx(),
            self.pooled_delta_inf_jy(),
            self.s,
        )
    }
}

/// Draw a random spin null model on the lattice of spin `j` at separation
/// `s ≤ j`. Component transverse moments saturate the base relation up to
/// a factor in `[1, 3]` with an arbitrary split between the two spreads.
pub fn spin_null_model(j: f64, s: f64, seed: u64) -> Result<SpinNullModel> {
    let two_j = 2.0 * j;
    if !j.is_finite() || (two_j - two_j.round()).abs() > 1e-9 || two_j.round() < 1.0 {
        return Err(Error::InvalidSpin(j));
    }
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::InvalidSeparation(s));
    }
    if s > j {
        return Err(Error::SeparationOutOfRange { s, max: j });
    }
    let dim = two_j.round() as usize + 1;
    let lattice: Vec<f64> = (0..dim).map(|k| -j + k as f64).collect();

    let mut draw = Draw::new(seed, STREAM_SPIN);
    let supports: [Vec<f64>; 3] = [
        lattice.iter().copied().filter(|&m| m < 0.0).collect(),
        lattice
            .iter()
            .copied()
            .filter(|&m| m > -s && m < s)
            .collect(),
        lattice.iter().copied().filter(|&m| m > 0.0).collect(),
    ];

    let mut weights = [0.0; 3];
    for (w, support) in weights.iter_mut().zip(&supports) {
        if !support.is_empty() {
            *w = draw.range(0.05, 1.0);
        }
    }
    let total: f64 = weights.iter().sum();

    let mut components = Vec::new();
    for (region, support) in supports.iter().enumerate() {
        if support.is_empty() {
            continue;
        }
        let raw: Vec<f64> = support.iter().map(|_| draw.range(0.01, 1.0)).collect();
        let mass: f64 = raw.iter().sum();
        let pmf: Vec<(f64, f64)> = support
            .iter()
            .zip(&raw)
            .map(|(&m, &w)| (m, w / mass))
            .collect();
        let jz_mean: f64 = pmf.iter().map(|&(m, p)| p * m).sum();
        let product = draw.range(1.0, 3.0) * 0.5 * jz_mean.abs();
        let split = draw.range(-1.0, 1.0).exp();
        components.push(SpinNullComponent {
            weight: weights[region] / total,
            pmf,
            mean_jx: draw.range(-0.5 * j, 0.5 * j),
            var_jx: product * split,
            mean_jy: draw.range(-0.5 * j, 0.5 * j),
            var_jy: product / split,
        });
    }

    Ok(SpinNullModel { j, s, components })
}

/// Model `index` of the seeded quadrature soundness suite: separation
/// drawn in `[0.2, 8]`, then a full mixture under a derived seed.
pub fn suite_mixture(seed: u64, index: u64) -> MixtureModel {
    let sub = derive_seed(seed, index);
    let mut draw = Draw::new(sub, STREAM_SUITE);
    let s = draw.range(0.2, 8.0);
    random_mixture(s, sub).expect("positive separation")
}

/// Model `index` of the seeded spin soundness suite: `j` on the
/// half-integer lattice up to 10, separation in `(0, j]`.
pub fn suite_spin_null(seed: u64, index: u64) -> SpinNullModel {
    let sub = derive_seed(seed, index);
    let mut draw = Draw::new(sub, STREAM_SUITE);
    let j = (1 + draw.index(20)) as f64 / 2.0;
    let s = j * draw.range(0.02, 1.0);
    spin_null_model(j, s, sub).expect("separation within range")
}

fn derive_seed(seed: u64, index: u64) -> u64 {
    seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15)
}
