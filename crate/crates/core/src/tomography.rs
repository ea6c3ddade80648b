//! Symplectic and optical tomograms of Gaussian states.
//!
//! For a frame `(μ, ν)` the measured quadrature of mode `i` is
//! `Xᵢ = μᵢ qᵢ + νᵢ pᵢ`, so the two-mode tomogram is a bivariate normal.

use nalgebra::{Matrix2, Vector2, Vector4};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::gaussian_state::GaussianMoments;
use crate::quadrature::{std_normal_cdf, std_normal_interval};

/// Determinants of tomogram covariances at or below this are degenerate.
pub const DEGENERATE_FRAME_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementFrame {
    pub mu: f64,
    pub nu: f64,
}

impl MeasurementFrame {
    pub fn new(mu: f64, nu: f64) -> Result<Self> {
        if !mu.is_finite() || !nu.is_finite() {
            return Err(Error::DegenerateFrame(format!(
                "non-finite frame ({mu}, {nu})"
            )));
        }
        if mu == 0.0 && nu == 0.0 {
            return Err(Error::DegenerateFrame("mu and nu are both zero".into()));
        }
        Ok(Self { mu, nu })
    }

    /// `μ = s cos θ`, `ν = s⁻¹ sin θ`.
    pub fn from_scaled_angle(s: f64, theta: f64) -> Result<Self> {
        if s.is_nan() || s <= 0.0 {
            return Err(Error::DegenerateFrame(format!(
                "scale must be positive, got {s}"
            )));
        }
        Self::new(s * theta.cos(), theta.sin() / s)
    }

    /// Homodyne frame `μ = cos θ`, `ν = sin θ`.
    pub fn optical(theta: f64) -> Self {
        Self {
            mu: theta.cos(),
            nu: theta.sin(),
        }
    }

    /// `2|μν| ≤ 1`, with room for rounding in `cos θ sin θ`.
    pub fn satisfies_constraint(&self) -> bool {
        2.0 * (self.mu * self.nu).abs() <= 1.0 + 1e-12
    }

    /// Coefficients of `X` on `(p₁, p₂, q₁, q₂)` for the given mode.
    fn weights(&self, mode: Mode) -> Vector4<f64> {
        match mode {
            Mode::One => Vector4::new(self.nu, 0.0, self.mu, 0.0),
            Mode::Two => Vector4::new(0.0, self.nu, 0.0, self.mu),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    One,
    Two,
}

/// One-dimensional normal distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Normal1D {
    pub mean: f64,
    pub variance: f64,
}

impl Normal1D {
    pub fn std_dev(&self) -> f64 {
        self.variance.sqrt()
    }

    pub fn density(&self, x: f64) -> f64 {
        let d = x - self.mean;
        (-0.5 * d * d / self.variance).exp() / (2.0 * PI * self.variance).sqrt()
    }

    pub fn cdf(&self, x: f64) -> f64 {
        std_normal_cdf((x - self.mean) / self.std_dev())
    }

    /// Probability of `[lo, hi]`.
    pub fn interval(&self, lo: f64, hi: f64) -> f64 {
        let s = self.std_dev();
        std_normal_interval((lo - self.mean) / s, (hi - self.mean) / s)
    }
}

/// Bivariate normal tomogram of `(X₁, X₂)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TomogramGaussian {
    pub mean: Vector2<f64>,
    pub cov: Matrix2<f64>,
}

impl TomogramGaussian {
    pub fn density(&self, x1: f64, x2: f64) -> f64 {
        tomogram_density(self, x1, x2)
    }

    pub fn marginal(&self, mode: Mode) -> Normal1D {
        let i = match mode {
            Mode::One => 0,
            Mode::Two => 1,
        };
        Normal1D {
            mean: self.mean[i],
            variance: self.cov[(i, i)],
        }
    }

    pub fn correlation(&self) -> f64 {
        self.cov[(0, 1)] / (self.cov[(0, 0)] * self.cov[(1, 1)]).sqrt()
    }
}

/// Mean and variance of a single frame quadrature. `σ_XX` is written out as
/// `μ²σ_qq + ν²σ_pp + 2μνσ_pq` for the chosen mode.
pub fn frame_moments(
    moments: &GaussianMoments,
    frame: &MeasurementFrame,
    mode: Mode,
) -> (f64, f64) {
    let (ip, iq) = match mode {
        Mode::One => (0, 2),
        Mode::Two => (1, 3),
    };
    let c = &moments.cov;
    let (mu, nu) = (frame.mu, frame.nu);
    let mean = mu * moments.mean[iq] + nu * moments.mean[ip];
    let var = mu * mu * c[(iq, iq)] + nu * nu * c[(ip, ip)] + 2.0 * mu * nu * c[(ip, iq)];
    (mean, var)
}

pub fn symplectic_tomogram(
    moments: &GaussianMoments,
    frame1: &MeasurementFrame,
    frame2: &MeasurementFrame,
) -> Result<TomogramGaussian> {
    let c = &moments.cov;
    let (m1, v11) = frame_moments(moments, frame1, Mode::One);
    let (m2, v22) = frame_moments(moments, frame2, Mode::Two);
    // p1 = 0, p2 = 1, q1 = 2, q2 = 3
    let v12 = frame1.mu * frame2.mu * c[(2, 3)]
        + frame1.nu * frame2.nu * c[(0, 1)]
        + frame1.mu * frame2.nu * c[(2, 1)]
        + frame1.nu * frame2.mu * c[(0, 3)];
    let cov = Matrix2::new(v11, v12, v12, v22);
    let det = cov.determinant();
    if det.is_nan() || det <= DEGENERATE_FRAME_TOLERANCE || v11 <= 0.0 {
        return Err(Error::DegenerateFrame(format!(
            "tomogram covariance has determinant {det:e}"
        )));
    }
    Ok(TomogramGaussian {
        mean: Vector2::new(m1, m2),
        cov,
    })
}

/// The same covariance as [`symplectic_tomogram`], computed as `u Σ uᵀ`.
pub fn tomogram_covariance_quadratic_form(
    moments: &GaussianMoments,
    frame1: &MeasurementFrame,
    frame2: &MeasurementFrame,
) -> Matrix2<f64> {
    let u1 = frame1.weights(Mode::One);
    let u2 = frame2.weights(Mode::Two);
    let f = |a: &Vector4<f64>, b: &Vector4<f64>| (a.transpose() * moments.cov * b)[(0, 0)];
    Matrix2::new(f(&u1, &u1), f(&u1, &u2), f(&u2, &u1), f(&u2, &u2))
}

pub fn tomogram_density(tg: &TomogramGaussian, x1: f64, x2: f64) -> f64 {
    let det = tg.cov.determinant();
    let d = Vector2::new(x1, x2) - tg.mean;
    let (a, b, c) = (tg.cov[(0, 0)], tg.cov[(0, 1)], tg.cov[(1, 1)]);
    let quad = (c * d[0] * d[0] - 2.0 * b * d[0] * d[1] + a * d[1] * d[1]) / det;
    (-0.5 * quad).exp() / (2.0 * PI * det.sqrt())
}

pub fn optical_tomogram(
    moments: &GaussianMoments,
    theta1: f64,
    theta2: f64,
) -> Result<TomogramGaussian> {
    symplectic_tomogram(
        moments,
        &MeasurementFrame::optical(theta1),
        &MeasurementFrame::optical(theta2),
    )
}

/// Tomogram of one mode, the other integrated out.
pub fn reduced_tomogram(
    moments: &GaussianMoments,
    frame: &MeasurementFrame,
    mode: Mode,
) -> Result<Normal1D> {
    let (mean, variance) = frame_moments(moments, frame, mode);
    if variance.is_nan() || variance <= DEGENERATE_FRAME_TOLERANCE {
        return Err(Error::DegenerateFrame(format!(
            "reduced tomogram variance {variance:e}"
        )));
    }
    Ok(Normal1D { mean, variance })
}

/// Density sampled on a regular grid, stored with `X1` varying slowest.
#[derive(Debug, Clone, PartialEq)]
pub struct TomogramGrid {
    pub x1: Vec<f64>,
    pub x2: Vec<f64>,
    pub values: Vec<f64>,
}

impl TomogramGrid {
    pub fn rows(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        let n2 = self.x2.len();
        self.values
            .iter()
            .enumerate()
            .map(move |(idx, &w)| (self.x1[idx / n2], self.x2[idx % n2], w))
    }
}

/// `n × n` samples over `mean ± n_sigma·√(max diag cov)` on both axes.
pub fn tomogram_grid(tg: &TomogramGaussian, n: usize, n_sigma: f64) -> Result<TomogramGrid> {
    if n < 2 {
        return Err(Error::InvalidGrid(format!(
            "need at least 2 points per axis, got {n}"
        )));
    }
    let half = n_sigma * tg.cov[(0, 0)].max(tg.cov[(1, 1)]).sqrt();
    let axis = |c: f64| -> Vec<f64> {
        (0..n)
            .map(|i| c - half + 2.0 * half * i as f64 / (n - 1) as f64)
            .collect()
    };
    let x1 = axis(tg.mean[0]);
    let x2 = axis(tg.mean[1]);
    let mut values = Vec::with_capacity(n * n);
    for &a in &x1 {
        for &b in &x2 {
            values.push(tg.density(a, b));
        }
    }
    Ok(TomogramGrid { x1, x2, values })
}
