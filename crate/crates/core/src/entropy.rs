//! Entanglement entropies from a discretized two-mode wavefunction.

use nalgebra::{DMatrix, SymmetricEigen, Vector2};
use num_complex::Complex64;
use std::f64::consts::PI;

use crate::covariance::{evolve_covariance, squeezed_eta};
use crate::error::{Error, Result};
use crate::gaussian_state::{
    EvolvedWavefunction, GaussianAmplitude, GaussianMoments, GaussianWavefunction,
    SINGULAR_PROPAGATOR_TOLERANCE,
};
use crate::symplectic::{lambda_blocks, AmplifierParams};

pub const MIN_GRID_POINTS: usize = 16;
pub const TRACE_TOLERANCE: f64 = 1e-4;
/// Eigenvalues below this are treated as zero in `e ln e`.
pub const EIGENVALUE_CLAMP: f64 = 1e-12;
/// Eigenvalues below minus this are reported as an error.
pub const NEGATIVE_EIGENVALUE_TOLERANCE: f64 = 1e-8;
pub const DEFAULT_GRID_POINTS: usize = 64;

/// Regular `n × n` grid; axis `i` spans `center[i] ± half_width[i]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub n: usize,
    pub half_width: [f64; 2],
    pub center: [f64; 2],
}

impl GridSpec {
    pub fn new(n: usize, half_width: [f64; 2], center: [f64; 2]) -> Result<Self> {
        if n < MIN_GRID_POINTS {
            return Err(Error::InvalidGrid(format!(
                "need at least {MIN_GRID_POINTS} points per axis, got {n}"
            )));
        }
        if !half_width.iter().all(|l| l.is_finite() && *l > 0.0)
            || !center.iter().all(|c| c.is_finite())
        {
            return Err(Error::InvalidGrid(format!(
                "bad extent: half widths {half_width:?}, center {center:?}"
            )));
        }
        Ok(Self {
            n,
            half_width,
            center,
        })
    }

    /// `[−L, L]²`.
    pub fn symmetric(n: usize, half_width: f64) -> Result<Self> {
        Self::new(n, [half_width; 2], [0.0; 2])
    }

    /// Grid centred on `⟨q⟩` whose half width on axis `i` is
    /// `√(π(n−1)σ_qᵢ / (2σ_pᵢ))`. The spacing then resolves momenta up to
    /// the same number of standard deviations as the extent covers in
    /// position.
    pub fn balanced(n: usize, moments: &GaussianMoments) -> Result<Self> {
        let mut half_width = [0.0; 2];
        for (i, hw) in half_width.iter_mut().enumerate() {
            let sq = moments.cov[(2 + i, 2 + i)].sqrt();
            let sp = moments.cov[(i, i)].sqrt();
            *hw = (PI * (n as f64 - 1.0) * sq / (2.0 * sp)).sqrt();
        }
        Self::new(n, half_width, [moments.mean[2], moments.mean[3]])
    }

    pub fn delta(&self, axis: usize) -> f64 {
        2.0 * self.half_width[axis] / (self.n - 1) as f64
    }

    pub fn axis(&self, axis: usize) -> Vec<f64> {
        let h = self.delta(axis);
        let start = self.center[axis] - self.half_width[axis];
        (0..self.n).map(|i| start + h * i as f64).collect()
    }
}

/// `ψ(x₁ᵢ, x₂ⱼ)` on a grid; rows index `x₁`.
#[derive(Debug, Clone)]
pub struct DiscreteWavefunction {
    pub grid: GridSpec,
    pub values: DMatrix<Complex64>,
}

impl DiscreteWavefunction {
    /// `∑ |ψ|² Δx₁ Δx₂`.
    pub fn trace(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>()
            * self.grid.delta(0)
            * self.grid.delta(1)
    }
}

/// Samples the state at time `t`. The Green-function form is used whenever
/// it is defined; at `t = 0` the initial wavefunction is sampled, and at
/// other singular times the wavefunction is rebuilt from the propagated
/// moments (equal up to a global phase).
pub fn discretize_density(
    state: &GaussianWavefunction,
    t: f64,
    params: &AmplifierParams,
    grid: &GridSpec,
) -> Result<DiscreteWavefunction> {
    let x1 = grid.axis(0);
    let x2 = grid.axis(1);
    let n = grid.n;
    let sample = |f: &dyn Fn(&Vector2<f64>) -> Complex64| {
        DMatrix::from_fn(n, n, |i, j| f(&Vector2::new(x1[i], x2[j])))
    };
    let values = if t == 0.0 {
        sample(&|y| state.value(y))
    } else if lambda_blocks(t, params).lambda3.determinant().abs() <= SINGULAR_PROPAGATOR_TOLERANCE
    {
        let moments = evolve_covariance(&state.initial_moments(), t, params);
        let amp = GaussianAmplitude::from_moments(&moments)?;
        sample(&|y| amp.value(y))
    } else {
        let evolved = EvolvedWavefunction::new(state, t, params)?;
        sample(&|y| evolved.value(y))
    };
    let psi = DiscreteWavefunction {
        grid: *grid,
        values,
    };
    let trace = psi.trace();
    if trace.is_nan() || (trace - 1.0).abs() > TRACE_TOLERANCE {
        return Err(Error::GridTooSmall {
            trace,
            tolerance: TRACE_TOLERANCE,
        });
    }
    Ok(psi)
}

/// Reduced density matrix, already scaled by the grid step of the kept
/// mode so its eigenvalues are probabilities.
#[derive(Debug, Clone)]
pub struct ReducedDensityMatrix {
    pub matrix: DMatrix<Complex64>,
}

impl ReducedDensityMatrix {
    pub fn trace(&self) -> f64 {
        self.matrix.diagonal().iter().map(|v| v.re).sum()
    }

    /// Eigenvalues of `(ρ + ρ†)/2`, largest first.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let herm = (&self.matrix + self.matrix.adjoint()) * Complex64::new(0.5, 0.0);
        let mut e: Vec<f64> = SymmetricEigen::new(herm)
            .eigenvalues
            .iter()
            .copied()
            .collect();
        e.sort_by(|a, b| b.total_cmp(a));
        e
    }
}

/// `ρ⁽¹⁾ᵢⱼ Δx₁ = ∑ₖ ψ(x₁ᵢ, x₂ₖ) ψ*(x₁ⱼ, x₂ₖ) Δx₂ Δx₁`.
pub fn reduce_mode1(psi: &DiscreteWavefunction) -> ReducedDensityMatrix {
    let scale = Complex64::new(psi.grid.delta(0) * psi.grid.delta(1), 0.0);
    ReducedDensityMatrix {
        matrix: &psi.values * psi.values.adjoint() * scale,
    }
}

pub fn reduce_mode2(psi: &DiscreteWavefunction) -> ReducedDensityMatrix {
    let scale = Complex64::new(psi.grid.delta(0) * psi.grid.delta(1), 0.0);
    ReducedDensityMatrix {
        matrix: psi.values.transpose() * psi.values.map(|v| v.conj()) * scale,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Entropies {
    pub linear: f64,
    pub von_neumann: f64,
}

pub fn entropies(rdm: &ReducedDensityMatrix) -> Result<Entropies> {
    entropies_from_spectrum(&rdm.eigenvalues())
}

/// `S_L = 1 − ∑e²`, `S_VN = −∑e ln e`.
pub fn entropies_from_spectrum(eigenvalues: &[f64]) -> Result<Entropies> {
    if let Some(&bad) = eigenvalues
        .iter()
        .find(|&&e| e < -NEGATIVE_EIGENVALUE_TOLERANCE)
    {
        return Err(Error::NegativeSpectrum(bad));
    }
    let mut purity = 0.0;
    let mut von_neumann = 0.0;
    for &e in eigenvalues {
        let e = e.clamp(0.0, 1.0);
        purity += e * e;
        if e > EIGENVALUE_CLAMP {
            von_neumann -= e * e.ln();
        }
    }
    Ok(Entropies {
        linear: 1.0 - purity,
        von_neumann,
    })
}

/// Entropies of a two-mode squeezed vacuum with `|η|² = a`.
pub fn entropies_from_eta_modulus(a: f64) -> Entropies {
    if a == 0.0 {
        return Entropies {
            linear: 0.0,
            von_neumann: 0.0,
        };
    }
    Entropies {
        linear: 2.0 * a / (1.0 + a),
        von_neumann: -(1.0 - a).ln() - a * a.ln() / (1.0 - a),
    }
}

pub fn analytic_squeezed_entropies(t: f64, r: f64, params: &AmplifierParams) -> Result<Entropies> {
    Ok(entropies_from_eta_modulus(
        squeezed_eta(t, r, params)?.norm_sqr(),
    ))
}

/// Mode-1 entropies of the evolved state. With `half_width` the grid is
/// `[−L, L]²`; otherwise [`GridSpec::balanced`] is used.
pub fn state_entropies(
    state: &GaussianWavefunction,
    t: f64,
    params: &AmplifierParams,
    n: usize,
    half_width: Option<f64>,
) -> Result<Entropies> {
    let grid = match half_width {
        Some(l) => GridSpec::symmetric(n, l)?,
        None => GridSpec::balanced(n, &evolve_covariance(&state.initial_moments(), t, params))?,
    };
    let psi = discretize_density(state, t, params, &grid)?;
    entropies(&reduce_mode1(&psi))
}
