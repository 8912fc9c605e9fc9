//! Analytic state models: squeezed Gaussian quadratures and the
//! spin-entangled state, exposing exactly the distribution functionals the
//! criteria consume.

mod gaussian;
mod spin;

pub use gaussian::{
    impure_gaussian, single_mode_squeezed, two_mode_squeezed, wavefunction, GaussianModel,
    TwoModeGaussianModel,
};
pub use spin::{spin_entangled, spin_observables, SpinModel, SpinObservables, SPIN_CEILING};
