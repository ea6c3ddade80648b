//! Qubit portrait of tomograms and Bell-type parameters.
//!
//! A continuous tomogram is compressed into a four-component probability
//! vector by integrating it over a partition of its domain. Four frame
//! choices give the columns of a 4×4 column-stochastic matrix `M`, and the
//! Bell-type parameter is `B = tr(M C)`.

use nalgebra::{Matrix2, Matrix4, Vector4};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::gaussian_state::GaussianMoments;
use crate::quadrature::{bivariate_normal_cdf, std_normal_cdf};
use crate::tomography::{reduced_tomogram, symplectic_tomogram, MeasurementFrame, Mode, Normal1D};

/// Absolute tolerance of the conditional-CDF quadrature for orthants.
pub const ORTHANT_TOLERANCE: f64 = 1e-12;
/// Stripes are summed until the normal tail beyond them drops below this.
pub const STRIPE_TAIL: f64 = 1e-12;

/// Frames `a, d` act on mode 1 and `b, c` on mode 2. The columns of `M`
/// use the pairs `(a, b)`, `(a, c)`, `(d, b)`, `(d, c)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameQuad {
    pub a: MeasurementFrame,
    pub b: MeasurementFrame,
    pub c: MeasurementFrame,
    pub d: MeasurementFrame,
}

impl FrameQuad {
    pub fn new(
        a: MeasurementFrame,
        b: MeasurementFrame,
        c: MeasurementFrame,
        d: MeasurementFrame,
    ) -> Result<Self> {
        let all = [a, b, c, d];
        for i in 0..4 {
            for j in i + 1..4 {
                if all[i] == all[j] {
                    return Err(Error::DegenerateFrame(format!(
                        "frames {i} and {j} coincide"
                    )));
                }
            }
        }
        Ok(Self { a, b, c, d })
    }

    pub fn pairs(&self) -> [(MeasurementFrame, MeasurementFrame); 4] {
        [
            (self.a, self.b),
            (self.a, self.c),
            (self.d, self.b),
            (self.d, self.c),
        ]
    }

    /// Left reference frames, given to two decimals.
    pub fn reference_left() -> Self {
        Self {
            a: MeasurementFrame {
                mu: -0.39,
                nu: -0.92,
            },
            b: MeasurementFrame {
                mu: -0.99,
                nu: -0.01,
            },
            c: MeasurementFrame { mu: 0.02, nu: 0.99 },
            d: MeasurementFrame {
                mu: -0.60,
                nu: -0.80,
            },
        }
    }

    /// Left reference frames rebuilt from the angles `4.31, 3.15, 1.54, 4.07`.
    pub fn reference_left_from_angles() -> Self {
        Self {
            a: MeasurementFrame::optical(4.31),
            b: MeasurementFrame::optical(3.15),
            c: MeasurementFrame::optical(1.54),
            d: MeasurementFrame::optical(4.07),
        }
    }

    /// Right reference frames: angles `0, π/8, 3π/8, π/4` with exact cosines and sines.
    pub fn reference_right() -> Self {
        Self {
            a: MeasurementFrame::optical(0.0),
            b: MeasurementFrame::optical(PI / 8.0),
            c: MeasurementFrame::optical(3.0 * PI / 8.0),
            d: MeasurementFrame::optical(PI / 4.0),
        }
    }

    /// Right reference frames rounded to two decimals.
    pub fn reference_right_rounded() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            a: MeasurementFrame { mu: 1.0, nu: 0.0 },
            b: MeasurementFrame { mu: 0.92, nu: 0.38 },
            c: MeasurementFrame { mu: 0.38, nu: 0.92 },
            d: MeasurementFrame { mu: h, nu: h },
        }
    }
}

/// Quadrants split at `split1` on `X₁` and `split2` on `X₂`:
/// `A₁ = (≤, ≤)`, `A₂ = (≤, ≥)`, `A₃ = (≥, ≤)`, `A₄ = (≥, ≥)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductPartition {
    pub split1: f64,
    pub split2: f64,
}

impl Default for ProductPartition {
    fn default() -> Self {
        Self {
            split1: 0.0,
            split2: 0.0,
        }
    }
}

/// Four periodic families of unit intervals on the real line:
/// `Lᵢ = ±[4m + i − 1, 4m + i]` for `m = 0, 1, …`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StripePartition {
    pub width: f64,
}

impl Default for StripePartition {
    fn default() -> Self {
        Self { width: 1.0 }
    }
}

/// A 4×4 matrix whose columns are probability vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StochasticMatrix4(pub Matrix4<f64>);

impl StochasticMatrix4 {
    pub fn from_columns(columns: &[Vector4<f64>; 4]) -> Self {
        Self(Matrix4::from_columns(columns))
    }

    /// `M̃` built as the Kronecker product of two 2×2 stochastic matrices
    /// `[[x, y], [1−x, 1−y]] ⊗ [[t, z], [1−t, 1−z]]`.
    pub fn product(x: f64, y: f64, t: f64, z: f64) -> Self {
        let left = Matrix2::new(x, y, 1.0 - x, 1.0 - y);
        let right = Matrix2::new(t, z, 1.0 - t, 1.0 - z);
        Self(left.kronecker(&right).fixed_view::<4, 4>(0, 0).into_owned())
    }

    pub fn max_column_sum_error(&self) -> f64 {
        self.0
            .column_iter()
            .map(|c| (c.sum() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// `E = P₁ − P₂ − P₃ + P₄` for column `j`.
    pub fn correlator(&self, j: usize) -> f64 {
        let c = self.0.column(j);
        c[0] - c[1] - c[2] + c[3]
    }
}

/// The fixed matrix contracted with `M`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientMatrix(pub Matrix4<f64>);

impl Default for CoefficientMatrix {
    fn default() -> Self {
        let row = [1.0, -1.0, -1.0, 1.0];
        let mut m = Matrix4::zeros();
        for k in 0..4 {
            let sign = if k == 3 { -1.0 } else { 1.0 };
            for j in 0..4 {
                m[(k, j)] = sign * row[j];
            }
        }
        Self(m)
    }
}

/// Quadrant probabilities `(P(A₁), …, P(A₄))` of a two-mode tomogram.
pub fn quadrant_probabilities(
    moments: &GaussianMoments,
    frame1: &MeasurementFrame,
    frame2: &MeasurementFrame,
    partition: &ProductPartition,
) -> Result<Vector4<f64>> {
    let tg = symplectic_tomogram(moments, frame1, frame2)?;
    let s1 = tg.cov[(0, 0)].sqrt();
    let s2 = tg.cov[(1, 1)].sqrt();
    let h = (partition.split1 - tg.mean[0]) / s1;
    let k = (partition.split2 - tg.mean[1]) / s2;
    Ok(orthant_vector(h, k, tg.correlation()))
}

/// Quadrant probabilities of standardized normals split at `(h, k)`.
pub fn orthant_vector(h: f64, k: f64, rho: f64) -> Vector4<f64> {
    let p11 = bivariate_normal_cdf(h, k, rho, ORTHANT_TOLERANCE);
    let p1 = std_normal_cdf(h);
    let p2 = std_normal_cdf(k);
    let v = Vector4::new(p11, p1 - p11, p2 - p11, 1.0 - p1 - p2 + p11);
    v.map(|x| x.clamp(0.0, 1.0))
}

pub fn build_m(
    moments: &GaussianMoments,
    frames: &FrameQuad,
    partition: &ProductPartition,
) -> Result<StochasticMatrix4> {
    let mut cols = [Vector4::zeros(); 4];
    for (col, (f1, f2)) in cols.iter_mut().zip(frames.pairs()) {
        *col = quadrant_probabilities(moments, &f1, &f2, partition)?;
    }
    Ok(StochasticMatrix4::from_columns(&cols))
}

/// `B = ∑ⱼₖ M_jk C_kj`.
pub fn bell_parameter(m: &StochasticMatrix4, c: &CoefficientMatrix) -> f64 {
    (m.0 * c.0).trace()
}

/// `E(a,b) + E(a,c) + E(d,b) − E(d,c)`.
pub fn bell_parameter_correlators(m: &StochasticMatrix4) -> f64 {
    m.correlator(0) + m.correlator(1) + m.correlator(2) - m.correlator(3)
}

/// `B` for a state, frames and partition.
pub fn bell_for_state(
    moments: &GaussianMoments,
    frames: &FrameQuad,
    partition: &ProductPartition,
) -> Result<f64> {
    Ok(bell_parameter(
        &build_m(moments, frames, partition)?,
        &CoefficientMatrix::default(),
    ))
}

/// The product matrix `M̃` from the reduced tomograms.
pub fn product_matrix(
    moments: &GaussianMoments,
    frames: &FrameQuad,
    partition: &ProductPartition,
) -> Result<StochasticMatrix4> {
    let below = |frame: &MeasurementFrame, mode: Mode, split: f64| -> Result<f64> {
        Ok(reduced_tomogram(moments, frame, mode)?.cdf(split))
    };
    let x = below(&frames.a, Mode::One, partition.split1)?;
    let y = below(&frames.d, Mode::One, partition.split1)?;
    let t = below(&frames.b, Mode::Two, partition.split2)?;
    let z = below(&frames.c, Mode::Two, partition.split2)?;
    Ok(StochasticMatrix4::product(x, y, t, z))
}

/// `B̃`, the parameter of the product matrix `M̃`.
pub fn b_tilde(
    moments: &GaussianMoments,
    frames: &FrameQuad,
    partition: &ProductPartition,
) -> Result<f64> {
    Ok(bell_parameter(
        &product_matrix(moments, frames, partition)?,
        &CoefficientMatrix::default(),
    ))
}

/// `|B − B̃|`.
pub fn separability_gap(
    moments: &GaussianMoments,
    frames: &FrameQuad,
    partition: &ProductPartition,
) -> Result<f64> {
    Ok((bell_for_state(moments, frames, partition)? - b_tilde(moments, frames, partition)?).abs())
}

/// Probabilities that a 1-D normal falls in each stripe family.
pub fn stripe_probabilities(dist: &Normal1D, partition: &StripePartition) -> Vector4<f64> {
    let w = partition.width;
    let s = dist.std_dev();
    let mut p = Vector4::zeros();
    if s == 0.0 {
        // all mass at the mean; the interval boundaries have measure zero
        let cell = (dist.mean.abs() / w).floor() as i64;
        p[(cell.rem_euclid(4)) as usize] = 1.0;
        return p;
    }
    // Only cells overlapping [mean − z s, mean + z s] carry mass above the tail.
    let z = -inverse_tail(STRIPE_TAIL);
    let lo = dist.mean - z * s;
    let hi = dist.mean + z * s;
    // Positive side: cells [j w, (j+1) w] for j ≥ 0.
    add_cells(&mut p, dist, w, lo.max(0.0), hi.max(0.0), 1.0);
    // Negative side: cells [−(j+1) w, −j w], mirrored.
    add_cells(&mut p, dist, w, (-hi).max(0.0), (-lo).max(0.0), -1.0);
    p
}

fn add_cells(p: &mut Vector4<f64>, dist: &Normal1D, w: f64, from: f64, to: f64, side: f64) {
    if to <= from {
        return;
    }
    let first = (from / w).floor() as i64;
    let last = (to / w).floor() as i64;
    for j in first..=last {
        let (a, b) = (j as f64 * w, (j + 1) as f64 * w);
        let prob = if side > 0.0 {
            dist.interval(a, b)
        } else {
            dist.interval(-b, -a)
        };
        p[j.rem_euclid(4) as usize] += prob;
    }
}

/// `z` with `Φ(z) = tail`, for tiny tails; bisection is plenty here.
fn inverse_tail(tail: f64) -> f64 {
    let (mut lo, mut hi) = (-40.0, 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if std_normal_cdf(mid) < tail {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// The four single-mode frames `(μ_a, ν_b)`, `(μ_a, ν_c)`, `(μ_d, ν_b)`,
/// `(μ_d, ν_c)` of the stripe construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StripeFrames {
    pub mu_a: f64,
    pub mu_d: f64,
    pub nu_b: f64,
    pub nu_c: f64,
}

impl StripeFrames {
    /// `μ ∈ {0.1, 0.4}`, `ν ∈ {0.2, 0.3}`.
    pub fn reference() -> Self {
        Self {
            mu_a: 0.1,
            mu_d: 0.4,
            nu_b: 0.2,
            nu_c: 0.3,
        }
    }

    pub fn columns(&self) -> Result<[MeasurementFrame; 4]> {
        Ok([
            MeasurementFrame::new(self.mu_a, self.nu_b)?,
            MeasurementFrame::new(self.mu_a, self.nu_c)?,
            MeasurementFrame::new(self.mu_d, self.nu_b)?,
            MeasurementFrame::new(self.mu_d, self.nu_c)?,
        ])
    }
}

/// Stripe-portrait matrix of the mode-1 reduced tomogram.
pub fn stripe_matrix(
    moments: &GaussianMoments,
    frames: &StripeFrames,
    stripes: &StripePartition,
) -> Result<StochasticMatrix4> {
    let mut cols = [Vector4::zeros(); 4];
    for (col, frame) in cols.iter_mut().zip(frames.columns()?) {
        *col = stripe_probabilities(&reduced_tomogram(moments, &frame, Mode::One)?, stripes);
    }
    Ok(StochasticMatrix4::from_columns(&cols))
}

/// `B` of the stripe portrait; always within `[−4, 4]`.
pub fn nosignaling_bell(
    moments: &GaussianMoments,
    frames: &StripeFrames,
    stripes: &StripePartition,
) -> Result<f64> {
    Ok(bell_parameter(
        &stripe_matrix(moments, frames, stripes)?,
        &CoefficientMatrix::default(),
    ))
}
