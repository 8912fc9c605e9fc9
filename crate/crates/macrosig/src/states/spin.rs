use nalgebra::{Complex, DMatrix, DVector};

use crate::error::{Error, Result};
use crate::stats::{inference_fit_weighted, EmpiricalDistribution, InferenceFit};

type C64 = Complex<f64>;

/// Largest supported spin quantum number. The joint state carries
/// `(2j+1)²` amplitudes and the observables need one dense `(2j+1)×(2j+1)`
/// diagonalization, so this ceiling keeps everything exact and sub-second.
pub const SPIN_CEILING: f64 = 25.0;

/// The maximally correlated two-spin state
/// `(2j+1)^{-1/2} Σ_m |m⟩_A |m⟩_B` with exact operator matrices built from
/// the ladder construction `⟨m'|J±|m⟩ = √(j(j+1) − m(m±1)) δ_{m',m±1}`.
#[derive(Debug, Clone)]
pub struct SpinModel {
    j: f64,
    dim: usize,
    state: DVector<C64>,
    jx: DMatrix<C64>,
    jy: DMatrix<C64>,
    jz: DMatrix<C64>,
}

/// Everything the collective-spin criterion needs, computed exactly from
/// the state: the `Jz` marginal at A, the spread of `Jx` at A, the joint
/// `(Jy, Jy_B)` outcome distribution, and the inference channel fitted to
/// it.
#[derive(Debug, Clone)]
pub struct SpinObservables {
    pub jz_marginal: EmpiricalDistribution,
    pub delta_jx: f64,
    /// `(μ, ν, probability)` rows over the joint `Jy ⊗ Jy_B` eigenbasis.
    pub joint_jy: Vec<(f64, f64, f64)>,
    pub inference: InferenceFit,
}

/// Build the spin-entangled model for half-integer `j` up to
/// [`SPIN_CEILING`].
pub fn spin_entangled(j: f64) -> Result<SpinModel> {
    let two_j = 2.0 * j;
    if !j.is_finite() || (two_j - two_j.round()).abs() > 1e-9 || two_j.round() < 1.0 {
        return Err(Error::InvalidSpin(j));
    }
    if j > SPIN_CEILING {
        return Err(Error::SpinTooLarge {
            j,
            ceiling: SPIN_CEILING,
        });
    }
    let dim = two_j.round() as usize + 1;

    let mut plus = DMatrix::<C64>::zeros(dim, dim);
    for k in 0..dim - 1 {
        let m = -j + k as f64;
        plus[(k + 1, k)] = C64::new((j * (j + 1.0) - m * (m + 1.0)).sqrt(), 0.0);
    }
    let minus = plus.adjoint();
    let jx = (&plus + &minus) * C64::new(0.5, 0.0);
    let jy = (&plus - &minus) * C64::new(0.0, -0.5);
    let jz = DMatrix::<C64>::from_fn(dim, dim, |r, c| {
        if r == c {
            C64::new(-j + r as f64, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });

    let amp = 1.0 / (dim as f64).sqrt();
    let mut state = DVector::<C64>::zeros(dim * dim);
    for k in 0..dim {
        state[k * dim + k] = C64::new(amp, 0.0);
    }

    Ok(SpinModel {
        j,
        dim,
        state,
        jx,
        jy,
        jz,
    })
}

impl SpinModel {
    pub fn j(&self) -> f64 {
        self.j
    }

    /// Hilbert-space dimension of one subsystem, `2j + 1`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Lattice of `Jz` outcomes, `−j ..= j` in unit steps.
    pub fn m_values(&self) -> Vec<f64> {
        (0..self.dim).map(|k| -self.j + k as f64).collect()
    }

    /// Joint state vector over the product basis `|m_A⟩|m_B⟩`, indexed
    /// `m_A · dim + m_B`.
    pub fn state(&self) -> &DVector<C64> {
        &self.state
    }

    pub fn jx(&self) -> &DMatrix<C64> {
        &self.jx
    }

    pub fn jy(&self) -> &DMatrix<C64> {
        &self.jy
    }

    pub fn jz(&self) -> &DMatrix<C64> {
        &self.jz
    }

    pub fn norm(&self) -> f64 {
        self.state.norm()
    }

    /// Amplitudes reshaped to a `dim × dim` matrix `C` with
    /// `|ψ⟩ = Σ C_{ab} |a⟩|b⟩`.
    fn amplitude_matrix(&self) -> DMatrix<C64> {
        DMatrix::from_fn(self.dim, self.dim, |a, b| self.state[a * self.dim + b])
    }

    /// Reduced density matrix of subsystem A.
    pub fn reduced_density(&self) -> DMatrix<C64> {
        let c = self.amplitude_matrix();
        &c * c.adjoint()
    }
}

/// Eigendecomposition of a spin component with deterministic conventions:
/// columns ordered by ascending eigenvalue, each column's
/// largest-magnitude entry made real positive.
fn sorted_eigenbasis(matrix: &DMatrix<C64>) -> (Vec<f64>, DMatrix<C64>) {
    let eig = matrix.clone().symmetric_eigen();
    let dim = matrix.nrows();
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

    let mut vectors = DMatrix::<C64>::zeros(dim, dim);
    let mut values = Vec::with_capacity(dim);
    for (col, &src) in order.iter().enumerate() {
        values.push(eig.eigenvalues[src]);
        let mut best = 0;
        let mut best_mag = 0.0;
        for r in 0..dim {
            let mag = eig.eigenvectors[(r, src)].norm_sqr();
            if mag > best_mag {
                best_mag = mag;
                best = r;
            }
        }
        let anchor = eig.eigenvectors[(best, src)];
        let scale = anchor.conj() / C64::new(anchor.norm(), 0.0);
        for r in 0..dim {
            vectors[(r, col)] = eig.eigenvectors[(r, src)] * scale;
        }
    }
    (values, vectors)
}

/// Compute the exact observables the collective-spin criterion consumes.
pub fn spin_observables(model: &SpinModel) -> SpinObservables {
    let rho = model.reduced_density();
    let m_values = model.m_values();

    let weights: Vec<f64> = rho.diagonal().iter().map(|d| d.re.max(0.0)).collect();
    let jz_marginal = EmpiricalDistribution::from_weighted(&m_values, &weights)
        .expect("reduced density diagonal is a probability vector");

    let mean_jx = (&rho * model.jx()).trace().re;
    let mean_jx2 = (&rho * model.jx() * model.jx()).trace().re;
    let delta_jx = (mean_jx2 - mean_jx * mean_jx).max(0.0).sqrt();

    let (eigenvalues, v) = sorted_eigenbasis(model.jy());
    debug_assert!(eigenvalues
        .iter()
        .zip(&m_values)
        .all(|(e, m)| (e - m).abs() < 1e-8));

    // Joint amplitudes in the Jy ⊗ Jy_B eigenbasis: both subsystems share
    // the same operator matrix, so the same basis rotates each side.
    let t = v.adjoint() * model.amplitude_matrix() * v.conjugate();
    let mut joint_jy = Vec::with_capacity(model.dim() * model.dim());
    for mu in 0..model.dim() {
        for nu in 0..model.dim() {
            joint_jy.push((m_values[mu], m_values[nu], t[(mu, nu)].norm_sqr()));
        }
    }

    let pairs: Vec<(f64, f64)> = joint_jy.iter().map(|&(a, b, _)| (a, b)).collect();
    let probs: Vec<f64> = joint_jy.iter().map(|&(_, _, p)| p).collect();
    let inference = inference_fit_weighted(&pairs, &probs, None)
        .expect("joint distribution has at least two support points");

    SpinObservables {
        jz_marginal,
        delta_jx,
        joint_jy,
        inference,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_like_state_at_spin_one_half() {
        let model = spin_entangled(0.5).unwrap();
        assert_eq!(model.dim(), 2);
        let amp = 1.0 / 2.0f64.sqrt();
        assert!((model.state()[0].re - amp).abs() < 1e-15);
        assert!((model.state()[3].re - amp).abs() < 1e-15);
        assert_eq!(model.state()[1], C64::new(0.0, 0.0));
        assert!((model.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn equal_amplitudes_at_spin_one() {
        let model = spin_entangled(1.0).unwrap();
        let amp = 1.0 / 3.0f64.sqrt();
        for k in 0..3 {
            assert!((model.state()[k * 3 + k].re - amp).abs() < 1e-15);
        }
    }

    #[test]
    fn rejects_bad_spin_numbers() {
        assert!(matches!(spin_entangled(0.0), Err(Error::InvalidSpin(_))));
        assert!(matches!(spin_entangled(0.75), Err(Error::InvalidSpin(_))));
        assert!(matches!(spin_entangled(-1.0), Err(Error::InvalidSpin(_))));
        assert!(matches!(
            spin_entangled(25.5),
            Err(Error::SpinTooLarge { .. })
        ));
    }

    #[test]
    fn operators_satisfy_the_commutation_structure() {
        for j in [0.5, 1.0, 2.5, 7.0] {
            let model = spin_entangled(j).unwrap();
            let comm = model.jx() * model.jy() - model.jy() * model.jx();
            let expected = model.jz() * C64::new(0.0, 1.0);
            let worst = (&comm - &expected)
                .iter()
                .map(|c| c.norm())
                .fold(0.0, f64::max);
            assert!(worst < 1e-10, "j = {j}: commutator residue {worst}");
        }
    }

    #[test]
    fn marginal_is_uniform_over_the_lattice() {
        let model = spin_entangled(2.0).unwrap();
        let obs = spin_observables(&model);
        assert_eq!(obs.jz_marginal.len(), 5);
        for &w in obs.jz_marginal.weights() {
            assert!((w - 0.2).abs() < 1e-12);
        }
        assert!(obs.jz_marginal.mean().abs() < 1e-12);
    }

    #[test]
    fn jx_spread_matches_the_maximally_mixed_value() {
        for j in [1.0f64, 2.0, 5.0, 10.0] {
            let model = spin_entangled(j).unwrap();
            let obs = spin_observables(&model);
            let expected = (j * (j + 1.0) / 3.0).sqrt();
            assert!(
                (obs.delta_jx - expected).abs() < 1e-10,
                "j = {j}: {} vs {}",
                obs.delta_jx,
                expected
            );
        }
    }

    #[test]
    fn joint_jy_is_perfectly_anticorrelated() {
        for j in [0.5, 1.0, 3.5, 6.0] {
            let model = spin_entangled(j).unwrap();
            let obs = spin_observables(&model);
            let dim = model.dim() as f64;
            let mut total = 0.0;
            for &(mu, nu, p) in &obs.joint_jy {
                total += p;
                if (mu + nu).abs() > 1e-9 {
                    assert!(p < 1e-18, "j = {j}: off-antidiagonal mass {p} at ({mu}, {nu})");
                } else {
                    assert!((p - 1.0 / dim).abs() < 1e-12);
                }
            }
            assert!((total - 1.0).abs() < 1e-10);
            assert!((obs.inference.g + 1.0).abs() < 1e-10);
            assert!(obs.inference.var_inf.sqrt() <= 1e-10);
        }
    }

    #[test]
    fn inference_base_relation_holds_for_the_entangled_state() {
        // ΔJx · Δ_inf Jy ≥ |⟨Jz⟩|/2 must hold for any single state; here
        // both sides vanish to precision.
        let model = spin_entangled(4.0).unwrap();
        let obs = spin_observables(&model);
        let rho = model.reduced_density();
        let mean_jz = (&rho * model.jz()).trace().re;
        assert!(
            obs.delta_jx * obs.inference.var_inf.sqrt() >= mean_jz.abs() / 2.0 - 1e-10
        );
        assert!(mean_jz.abs() < 1e-12);
    }

    #[test]
    fn eigenbasis_conventions_are_deterministic() {
        let model = spin_entangled(3.0).unwrap();
        let (vals_a, vecs_a) = sorted_eigenbasis(model.jy());
        let (vals_b, vecs_b) = sorted_eigenbasis(model.jy());
        assert_eq!(vals_a, vals_b);
        assert_eq!(vecs_a, vecs_b);
        // Eigenvalues land on the m lattice.
        for (e, m) in vals_a.iter().zip(model.m_values()) {
            assert!((e - m).abs() < 1e-10);
        }
    }
}
