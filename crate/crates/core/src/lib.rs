//! Two-mode Gaussian states in the nondegenerate parametric amplifier.
//!
//! The crate follows a single pipeline:
//!
//! - [`symplectic`]: the time-dependent symplectic matrix `Λ(t)` built from
//!   the linear invariants of the amplifier Hamiltonian.
//! - [`gaussian_state`]: Gaussian wavefunctions, their moments and the exact
//!   propagated wavefunction obtained from the Green function.
//! - [`covariance`]: propagation of means and covariance matrices together
//!   with closed-form results for squeezed-vacuum and coherent inputs.
//! - [`tomography`]: symplectic, optical and reduced tomograms as normal
//!   distributions.
//! - [`entropy`]: linear and von Neumann entropies from a discretized density
//!   matrix.
//! - [`bell`]: the qubit portrait of tomograms, Bell-type parameters and the
//!   single-mode stripe construction.
//!
//! Units are `ħ = ω_a = 1`. Phase-space vectors are always ordered
//! `(p₁, p₂, q₁, q₂)`: momenta first, then positions.

pub mod bell;
pub mod covariance;
pub mod entropy;
pub mod error;
pub mod gaussian_state;
pub mod presets;
pub mod quadrature;
pub mod symplectic;
pub mod tomography;

pub use error::{Error, Result};
pub use gaussian_state::{GaussianMoments, GaussianWavefunction};
pub use symplectic::{AmplifierParams, Regime, SymplecticBlocks};

pub use nalgebra;
pub use num_complex::Complex64;

/// Version of this library, recorded in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
