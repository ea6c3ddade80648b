//! Time evolution of first and second moments.

use nalgebra::{Matrix2, Matrix4, Vector2};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gaussian_state::GaussianMoments;
use crate::symplectic::{lambda_blocks, symplectic_inverse, AmplifierParams, Regime};

/// Moments of a state at a given time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolvedState {
    pub t: f64,
    pub moments: GaussianMoments,
}

/// `σ(t) = Λ⁻¹ σ(0) Λ̃⁻¹` and `⟨x(t)⟩ = Λ⁻¹ ⟨x(0)⟩`, computed block by block.
pub fn evolve_covariance(
    moments0: &GaussianMoments,
    t: f64,
    params: &AmplifierParams,
) -> GaussianMoments {
    let b = lambda_blocks(t, params);
    let (l1, l2, l3, l4) = (b.lambda1, b.lambda2, b.lambda3, b.lambda4);
    let spp = moments0.sigma_pp();
    let spq = moments0.sigma_pq();
    let sqq = moments0.sigma_qq();
    let sqp = spq.transpose();

    // Rows of Λ⁻¹σ(0) for the p and q outputs.
    let p_from_p = l4.transpose() * spp - l2.transpose() * sqp;
    let p_from_q = l4.transpose() * spq - l2.transpose() * sqq;
    let q_from_p = l1.transpose() * sqp - l3.transpose() * spp;
    let q_from_q = l1.transpose() * sqq - l3.transpose() * spq;

    let pp = p_from_p * l4 - p_from_q * l2;
    let pq = p_from_q * l1 - p_from_p * l3;
    let qq = q_from_q * l1 - q_from_p * l3;

    let mean = symplectic_inverse(&b) * moments0.mean;
    let mut out = GaussianMoments::from_blocks(
        Vector2::new(mean[0], mean[1]),
        Vector2::new(mean[2], mean[3]),
        0.5 * (pp + pp.transpose()),
        pq,
        0.5 * (qq + qq.transpose()),
    );
    out.mean = mean;
    out
}

pub fn evolve_state(moments0: &GaussianMoments, t: f64, params: &AmplifierParams) -> EvolvedState {
    EvolvedState {
        t,
        moments: evolve_covariance(moments0, t, params),
    }
}

/// Squeeze parameter `η(t)` of a two-mode squeezed vacuum with squeezing `r`.
///
/// Evaluated with complex `ν` and `γ = artanh(Ω/2ν)` so the same expression
/// serves both regimes. The result does not depend on the branch of `γ`.
pub fn squeezed_eta(t: f64, r: f64, params: &AmplifierParams) -> Result<Complex64> {
    if params.k == 0.0 {
        return Err(Error::Domain("eta needs k > 0".into()));
    }
    let regime = params.regime();
    if regime == Regime::Degenerate {
        return Err(Error::Domain(
            "eta is undefined in the degenerate regime".into(),
        ));
    }
    let i = Complex64::i();
    let nu = regime.nu_complex();
    let k = params.k;
    let big_omega = params.big_omega;
    let ratio = big_omega / (2.0 * nu);
    let gamma = ratio.atanh();
    let tan_term = (nu * t + i * gamma).tan();
    let base = (nu * t).cos() - i * (nu * t).sin() * ratio;
    let e_term = 1.0 / (base * base);
    let th = r.tanh();
    // 4k²E/(Ω − 2k coth r + 2iνT), multiplied through by tanh r so r = 0 is allowed.
    let fraction =
        4.0 * k * k * e_term * th / ((big_omega + 2.0 * i * nu * tan_term) * th - 2.0 * k);
    let phase = (-i * params.pump_frequency() * t).exp();
    let eta = phase / (2.0 * k) * (fraction - 2.0 * i * nu * tan_term - big_omega);
    if !eta.is_finite() {
        return Err(Error::Domain(format!("eta is not finite at t = {t}")));
    }
    Ok(eta)
}

/// Closed-form covariance of the evolved two-mode squeezed vacuum.
pub fn squeezed_covariance_analytic(
    t: f64,
    r: f64,
    params: &AmplifierParams,
) -> Result<GaussianMoments> {
    let eta = squeezed_eta(t, r, params)?;
    Ok(covariance_from_eta(eta, params.omega_b))
}

/// Covariance of a two-mode squeezed vacuum with complex parameter `η`.
pub fn covariance_from_eta(eta: Complex64, omega_b: f64) -> GaussianMoments {
    let a = eta.norm_sqr();
    let d = 2.0 * (1.0 - a);
    let sb = omega_b.sqrt();
    let pp = Matrix2::new(
        1.0 + a,
        -2.0 * eta.re * sb,
        -2.0 * eta.re * sb,
        (1.0 + a) * omega_b,
    ) / d;
    let qq = Matrix2::new(
        1.0 + a,
        2.0 * eta.re / sb,
        2.0 * eta.re / sb,
        (1.0 + a) / omega_b,
    ) / d;
    let pq = Matrix2::new(0.0, 2.0 * eta.im / sb, 2.0 * eta.im * sb, 0.0) / d;
    GaussianMoments::from_blocks(Vector2::zeros(), Vector2::zeros(), pp, pq, qq)
}

/// Closed-form covariance of an evolved coherent state. Coherent states
/// share the vacuum covariance, so the means returned here are zero.
pub fn coherent_covariance_analytic(t: f64, params: &AmplifierParams) -> GaussianMoments {
    let regime = params.regime();
    let c = regime.cos_term(t);
    let s = regime.sin_term(t);
    let k = params.k;
    let wt = params.pump_frequency() * t;
    let sb = params.omega_b.sqrt();
    let diag = 0.5 + k * k * s * s;
    let f1 = k * (0.5 * params.big_omega * wt.cos() * s * s - wt.sin() * s * c);
    let f2 = k * (0.5 * params.big_omega * wt.sin() * s * s + wt.cos() * s * c);
    let pp = Matrix2::new(diag, f1 * sb, f1 * sb, diag * params.omega_b);
    let qq = Matrix2::new(diag, -f1 / sb, -f1 / sb, diag / params.omega_b);
    let pq = Matrix2::new(0.0, f2 / sb, f2 * sb, 0.0);
    GaussianMoments::from_blocks(Vector2::zeros(), Vector2::zeros(), pp, pq, qq)
}

/// `⟨a†a⟩ − ⟨b†b⟩` from quadrature moments.
pub fn photon_number_difference(moments: &GaussianMoments, params: &AmplifierParams) -> f64 {
    let (n1, n2) = photon_numbers(moments, params.omega_b);
    n1 - n2
}

/// Mean photon numbers `(⟨a†a⟩, ⟨b†b⟩)`.
pub fn photon_numbers(moments: &GaussianMoments, omega_b: f64) -> (f64, f64) {
    let c = &moments.cov;
    let m = &moments.mean;
    let second = |i: usize| c[(i, i)] + m[i] * m[i];
    let n1 = 0.5 * (second(0) + second(2)) - 0.5;
    let n2 = 0.5 * (second(1) / omega_b + omega_b * second(3)) - 0.5;
    (n1, n2)
}

/// Largest `|entry|` of a difference of covariance matrices.
pub fn max_abs_diff(a: &Matrix4<f64>, b: &Matrix4<f64>) -> f64 {
    (a - b).amax()
}
