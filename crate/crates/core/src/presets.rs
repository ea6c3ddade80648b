//! Parameter sets and initial states used by the reference scenarios.

use num_complex::Complex64;

use crate::error::Result;
use crate::gaussian_state::GaussianWavefunction;
use crate::symplectic::AmplifierParams;

/// `ω_b = 3` throughout.
pub const OMEGA_B: f64 = 3.0;

/// `Ω = 9`, `k = 2`: trigonometric regime with `ν = √65/2`.
pub fn trigonometric_params() -> AmplifierParams {
    AmplifierParams::new(OMEGA_B, 9.0, 2.0).expect("valid preset")
}

/// `Ω = 1/40`, `k = 1/10`: hyperbolic regime.
pub fn hyperbolic_params() -> AmplifierParams {
    AmplifierParams::new(OMEGA_B, 1.0 / 40.0, 1.0 / 10.0).expect("valid preset")
}

pub fn squeezed(beta: f64) -> Result<GaussianWavefunction> {
    GaussianWavefunction::squeezed_vacuum_beta(beta, OMEGA_B)
}

pub fn coherent(alpha1: f64, alpha2: f64) -> GaussianWavefunction {
    GaussianWavefunction::coherent(
        Complex64::new(alpha1, 0.0),
        Complex64::new(alpha2, 0.0),
        OMEGA_B,
    )
}

/// `a₁₁ = 1`, `a₂₂ = 3`, `a₁₂ = 1.4`, `B_G = 0`.
pub fn general_gaussian() -> GaussianWavefunction {
    GaussianWavefunction::general(1.0, 1.4, 3.0, nalgebra::Vector2::zeros()).expect("valid preset")
}
