//! Two-mode Gaussian wavefunctions `ψ(x) = N exp(−xᵀ A_G x + B_Gᵀ x)`.
//!
//! `A_G` is real, symmetric and positive-definite; `B_G` is complex. The
//! normalization `N` is chosen real and positive.

use nalgebra::{Matrix2, Matrix4, Vector2, Vector4};
use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::symplectic::{lambda_blocks, AmplifierParams};

/// `|det λ₃|` at or below this value makes the Green function singular.
pub const SINGULAR_PROPAGATOR_TOLERANCE: f64 = 1e-12;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

fn cplx(m: &Matrix2<f64>) -> Matrix2<Complex64> {
    m.map(|v| Complex64::new(v, 0.0))
}

fn cplx_v(v: &Vector2<f64>) -> Vector2<Complex64> {
    v.map(|x| Complex64::new(x, 0.0))
}

fn bilinear(u: &Vector2<Complex64>, m: &Matrix2<Complex64>, v: &Vector2<Complex64>) -> Complex64 {
    (u.transpose() * m * v)[(0, 0)]
}

/// Normalization of a Gaussian whose real quadratic part is `a_re` and whose
/// linear term has real part `b_re`.
fn normalization(a_re: &Matrix2<f64>, b_re: &Vector2<f64>) -> Option<f64> {
    let inv = a_re.try_inverse()?;
    let quad = (b_re.transpose() * inv * b_re)[(0, 0)];
    Some((2.0 / PI).sqrt() * a_re.determinant().powf(0.25) * (-0.25 * quad).exp())
}

fn check_positive_definite(a: &Matrix2<f64>) -> Result<()> {
    if !a.iter().all(|v| v.is_finite()) {
        return Err(Error::NotNormalizable("A_G has non-finite entries".into()));
    }
    if (a[(0, 1)] - a[(1, 0)]).abs() > 1e-12 * (1.0 + a.abs().max()) {
        return Err(Error::NotNormalizable("A_G must be symmetric".into()));
    }
    if a[(0, 0)] <= 0.0 || a.determinant() <= 0.0 {
        return Err(Error::NotNormalizable(format!(
            "A_G must be positive-definite (a11 = {}, det = {})",
            a[(0, 0)],
            a.determinant()
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianWavefunction {
    a_g: Matrix2<f64>,
    b_g: Vector2<Complex64>,
    norm: f64,
}

impl GaussianWavefunction {
    pub fn new(a_g: Matrix2<f64>, b_g: Vector2<Complex64>) -> Result<Self> {
        check_positive_definite(&a_g)?;
        if !b_g.iter().all(|b| b.is_finite()) {
            return Err(Error::NotNormalizable("B_G has non-finite entries".into()));
        }
        let a_g = 0.5 * (a_g + a_g.transpose());
        let norm = normalization(&a_g, &b_g.map(|b| b.re))
            .ok_or_else(|| Error::NotNormalizable("A_G is singular".into()))?;
        Ok(Self { a_g, b_g, norm })
    }

    /// `A_G = ¼ [[a₁₁, −a₁₂], [−a₁₂, a₂₂]]`.
    pub fn general(a11: f64, a12: f64, a22: f64, b_g: Vector2<Complex64>) -> Result<Self> {
        Self::new(0.25 * Matrix2::new(a11, -a12, -a12, a22), b_g)
    }

    /// Two-mode ground state.
    pub fn vacuum(omega_b: f64) -> Self {
        Self::coherent(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), omega_b)
    }

    /// Two-mode squeezed vacuum `S(r)|0,0⟩`.
    pub fn squeezed_vacuum(r: f64, omega_b: f64) -> Result<Self> {
        let (ch, sh) = ((2.0 * r).cosh(), (2.0 * r).sinh());
        let sb = omega_b.sqrt();
        let a_g = 0.5 * Matrix2::new(ch, sh * sb, sh * sb, ch * omega_b);
        Self::new(a_g, Vector2::zeros())
    }

    /// Squeezed vacuum labelled by `β = −tanh r`, `|β| < 1`.
    pub fn squeezed_vacuum_beta(beta: f64, omega_b: f64) -> Result<Self> {
        if beta.is_nan() || beta.abs() >= 1.0 {
            return Err(Error::NotNormalizable(format!(
                "|beta| must be < 1, got {beta}"
            )));
        }
        Self::squeezed_vacuum(squeeze_from_beta(beta), omega_b)
    }

    pub fn coherent(alpha1: Complex64, alpha2: Complex64, omega_b: f64) -> Self {
        let a_g = 0.5 * Matrix2::new(1.0, 0.0, 0.0, omega_b);
        let b_g = Vector2::new(alpha1, alpha2 * omega_b.sqrt()) * Complex64::new(2f64.sqrt(), 0.0);
        Self::new(a_g, b_g).expect("coherent-state A_G is positive-definite")
    }

    pub fn a_g(&self) -> &Matrix2<f64> {
        &self.a_g
    }

    pub fn b_g(&self) -> &Vector2<Complex64> {
        &self.b_g
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }

    /// `ψ(x)` at `t = 0`.
    pub fn value(&self, x: &Vector2<f64>) -> Complex64 {
        let quad = (x.transpose() * self.a_g * x)[(0, 0)];
        let lin = self.b_g[0] * x[0] + self.b_g[1] * x[1];
        self.norm * (lin - quad).exp()
    }

    /// Means and covariance at `t = 0`: `σ_pp = A_G`, `σ_qq = ¼ A_G⁻¹`,
    /// `σ_pq = 0`, `⟨q⟩ = ½ A_G⁻¹ Re B_G`, `⟨p⟩ = Im B_G`.
    pub fn initial_moments(&self) -> GaussianMoments {
        let inv = self.a_g.try_inverse().expect("A_G is positive-definite");
        let b_re = self.b_g.map(|b| b.re);
        let b_im = self.b_g.map(|b| b.im);
        let mean_q = 0.5 * inv * b_re;
        GaussianMoments::from_blocks(b_im, mean_q, self.a_g, Matrix2::zeros(), 0.25 * inv)
    }

    pub fn evolve(&self, t: f64, params: &AmplifierParams) -> Result<EvolvedWavefunction> {
        EvolvedWavefunction::new(self, t, params)
    }

    /// The same wavefunction as a general complex Gaussian.
    pub fn as_amplitude(&self) -> GaussianAmplitude {
        GaussianAmplitude {
            a: cplx(&self.a_g),
            b: self.b_g,
            norm: self.norm,
        }
    }
}

/// `r = −artanh β`.
pub fn squeeze_from_beta(beta: f64) -> f64 {
    -beta.atanh()
}

/// Free-function form of [`GaussianWavefunction::initial_moments`].
pub fn initial_moments(state: &GaussianWavefunction) -> GaussianMoments {
    state.initial_moments()
}

/// First and second moments in `(p₁, p₂, q₁, q₂)` order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianMoments {
    pub mean: Vector4<f64>,
    pub cov: Matrix4<f64>,
}

impl GaussianMoments {
    /// `sigma_pq[(i, j)]` is the symmetrized covariance of `p_i` and `q_j`.
    pub fn from_blocks(
        mean_p: Vector2<f64>,
        mean_q: Vector2<f64>,
        sigma_pp: Matrix2<f64>,
        sigma_pq: Matrix2<f64>,
        sigma_qq: Matrix2<f64>,
    ) -> Self {
        let mean = Vector4::new(mean_p[0], mean_p[1], mean_q[0], mean_q[1]);
        let cov =
            crate::symplectic::assemble(&sigma_pp, &sigma_pq, &sigma_pq.transpose(), &sigma_qq);
        Self { mean, cov }
    }

    pub fn sigma_pp(&self) -> Matrix2<f64> {
        self.cov.fixed_view::<2, 2>(0, 0).into_owned()
    }

    pub fn sigma_pq(&self) -> Matrix2<f64> {
        self.cov.fixed_view::<2, 2>(0, 2).into_owned()
    }

    pub fn sigma_qq(&self) -> Matrix2<f64> {
        self.cov.fixed_view::<2, 2>(2, 2).into_owned()
    }

    pub fn mean_p(&self) -> Vector2<f64> {
        Vector2::new(self.mean[0], self.mean[1])
    }

    pub fn mean_q(&self) -> Vector2<f64> {
        Vector2::new(self.mean[2], self.mean[3])
    }

    pub fn det(&self) -> f64 {
        self.cov.determinant()
    }

    /// Largest covariance between a mode-1 and a mode-2 quadrature.
    pub fn max_cross_mode(&self) -> f64 {
        // indices: p1 = 0, p2 = 1, q1 = 2, q2 = 3
        [(0, 1), (0, 3), (2, 1), (2, 3)]
            .iter()
            .map(|&(i, j)| self.cov[(i, j)].abs())
            .fold(0.0, f64::max)
    }
}

/// `G(y, x; t)`.
pub fn green_function(
    y: &Vector2<f64>,
    x: &Vector2<f64>,
    t: f64,
    params: &AmplifierParams,
) -> Result<Complex64> {
    let b = lambda_blocks(t, params);
    let det3 = b.lambda3.determinant();
    if det3.abs() <= SINGULAR_PROPAGATOR_TOLERANCE {
        return Err(Error::SingularPropagator { t, det: det3.abs() });
    }
    let l3inv = b
        .lambda3
        .try_inverse()
        .ok_or(Error::SingularPropagator { t, det: det3.abs() })?;
    let yy = (y.transpose() * l3inv * b.lambda4 * y)[(0, 0)];
    let yx = (y.transpose() * l3inv * x)[(0, 0)];
    let xx = (x.transpose() * b.lambda1 * l3inv * x)[(0, 0)];
    let phase = -0.5 * I * (yy - 2.0 * yx + xx);
    Ok(I / (2.0 * PI * Complex64::new(det3, 0.0).sqrt()) * phase.exp())
}

/// `ψ(y; t)` obtained by integrating the Green function against `ψ(x; 0)`.
///
/// Construction fixes `t`; evaluating many points is then cheap.
#[derive(Debug, Clone, Copy)]
pub struct EvolvedWavefunction {
    t: f64,
    b_g: Vector2<Complex64>,
    /// `λ₃⁻¹ λ₄`
    yy: Matrix2<Complex64>,
    /// `λ₃⁻ᵀ`, the coefficient of `y` in the linear source term.
    source: Matrix2<Complex64>,
    /// `(A_G + (i/2) λ₁ λ₃⁻¹)⁻¹`
    inv_m: Matrix2<Complex64>,
    prefactor: Complex64,
}

impl EvolvedWavefunction {
    pub fn new(state: &GaussianWavefunction, t: f64, params: &AmplifierParams) -> Result<Self> {
        let b = lambda_blocks(t, params);
        let det3 = b.lambda3.determinant();
        if det3.abs() <= SINGULAR_PROPAGATOR_TOLERANCE {
            return Err(Error::SingularPropagator { t, det: det3.abs() });
        }
        let l3inv = b
            .lambda3
            .try_inverse()
            .ok_or(Error::SingularPropagator { t, det: det3.abs() })?;
        let m = cplx(&state.a_g) + cplx(&(b.lambda1 * l3inv)) * (0.5 * I);
        let det_m = m.determinant();
        // Re M = A_G is positive-definite, so M is never singular.
        let inv_m = m.try_inverse().expect("A_G + (i/2) λ1 λ3⁻¹ is invertible");
        // Principal branch: the prefactor only fixes a global phase.
        let prefactor = I * state.norm / (2.0 * (Complex64::new(det3, 0.0) * det_m).sqrt());
        Ok(Self {
            t,
            b_g: state.b_g,
            yy: cplx(&(l3inv * b.lambda4)),
            source: cplx(&l3inv.transpose()),
            inv_m,
            prefactor,
        })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn value(&self, y: &Vector2<f64>) -> Complex64 {
        let yc = cplx_v(y);
        let j = self.b_g + self.source * yc * I;
        let exponent =
            -0.5 * I * bilinear(&yc, &self.yy, &yc) + 0.25 * bilinear(&j, &self.inv_m, &j);
        self.prefactor * exponent.exp()
    }
}

/// `ψ(y; t)` at a single point.
pub fn evolve_wavefunction(
    state: &GaussianWavefunction,
    y: &Vector2<f64>,
    t: f64,
    params: &AmplifierParams,
) -> Result<Complex64> {
    Ok(EvolvedWavefunction::new(state, t, params)?.value(y))
}

/// Pure Gaussian with a complex quadratic form, rebuilt from its moments.
///
/// Defined up to a global phase. Used where the Green function is singular.
#[derive(Debug, Clone, Copy)]
pub struct GaussianAmplitude {
    a: Matrix2<Complex64>,
    b: Vector2<Complex64>,
    norm: f64,
}

impl GaussianAmplitude {
    /// Requires a pure state: `A = ¼ σ_qq⁻¹ − ½ i σ_qq⁻¹ σ_qp`.
    pub fn from_moments(moments: &GaussianMoments) -> Result<Self> {
        let sqq = moments.sigma_qq();
        let sqq_inv = sqq
            .try_inverse()
            .ok_or_else(|| Error::NotNormalizable("sigma_qq is singular".into()))?;
        let a_re = 0.25 * sqq_inv;
        check_positive_definite(&(0.5 * (a_re + a_re.transpose())))?;
        // cov(q_i, p_j) is the transpose of the stored p-q block.
        let sigma_qp = moments.sigma_pq().transpose();
        let a_im = -0.5 * sqq_inv * sigma_qp;
        let a_im = 0.5 * (a_im + a_im.transpose());
        let mean_q = moments.mean_q();
        let b_re = 2.0 * a_re * mean_q;
        let b_im = moments.mean_p() + 2.0 * a_im * mean_q;
        let norm = normalization(&a_re, &b_re)
            .ok_or_else(|| Error::NotNormalizable("sigma_qq is singular".into()))?;
        let a = a_re.zip_map(&a_im, Complex64::new);
        let b = b_re.zip_map(&b_im, Complex64::new);
        Ok(Self { a, b, norm })
    }

    pub fn value(&self, y: &Vector2<f64>) -> Complex64 {
        let yc = cplx_v(y);
        let quad = bilinear(&yc, &self.a, &yc);
        let lin = self.b[0] * y[0] + self.b[1] * y[1];
        self.norm * (lin - quad).exp()
    }
}
