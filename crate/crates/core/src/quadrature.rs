//! Adaptive Gauss–Kronrod quadrature and normal-distribution helpers.

use libm::erfc;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
const XK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
// Gauss weights for the odd Kronrod nodes XK[1], XK[3], XK[5], XK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_DEPTH: u32 = 60;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WK[7];
    let mut gauss = fc * WG[3];
    for i in 0..7 {
        let dx = half * XK[i];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WK[i] * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

/// Integrates `f` over `[a, b]` by recursive bisection until every panel's
/// Kronrod–Gauss difference fits its share of `abs_tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64) -> Integral {
    if a == b {
        return Integral {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: 0,
        };
    }
    let mut evaluations = 0;
    let (value, error_estimate) = refine(&f, a, b, abs_tol, 0, &mut evaluations);
    Integral {
        value,
        error_estimate,
        evaluations,
    }
}

fn refine<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    depth: u32,
    evaluations: &mut usize,
) -> (f64, f64) {
    let (value, err) = gk15(f, a, b);
    *evaluations += 15;
    if err <= tol || depth >= MAX_DEPTH {
        return (value, err);
    }
    let mid = 0.5 * (a + b);
    let (left, el) = refine(f, a, mid, 0.5 * tol, depth + 1, evaluations);
    let (right, er) = refine(f, mid, b, 0.5 * tol, depth + 1, evaluations);
    (left + right, el + er)
}

/// Standard normal density.
pub fn std_normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

/// Standard normal CDF, accurate in both tails.
pub fn std_normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x * FRAC_1_SQRT_2)
}

/// Probability that a standard normal lands in `[lo, hi]`.
pub fn std_normal_interval(lo: f64, hi: f64) -> f64 {
    if lo >= hi {
        return 0.0;
    }
    // Subtract upper-tail probabilities on the right half-line to avoid
    // cancellation between two values close to 1.
    if lo > 0.0 {
        std_normal_cdf(-lo) - std_normal_cdf(-hi)
    } else {
        std_normal_cdf(hi) - std_normal_cdf(lo)
    }
}

/// Lower orthant probability `P(Z₁ ≤ h, Z₂ ≤ k)` for standard normals with
/// correlation `rho`, by integrating the conditional CDF of `Z₂` given `Z₁`.
pub fn bivariate_normal_cdf(h: f64, k: f64, rho: f64, abs_tol: f64) -> f64 {
    const CUTOFF: f64 = 39.0;
    if h <= -CUTOFF || k <= -CUTOFF {
        return 0.0;
    }
    let h = h.min(CUTOFF);
    let k = k.min(CUTOFF);
    if rho == 0.0 {
        return std_normal_cdf(h) * std_normal_cdf(k);
    }
    let scale = (1.0 - rho * rho).max(0.0).sqrt();
    if scale == 0.0 {
        return if rho > 0.0 {
            std_normal_cdf(h.min(k))
        } else {
            (std_normal_cdf(h) - std_normal_cdf(-k)).max(0.0)
        };
    }
    let conditional = |z: f64| std_normal_pdf(z) * std_normal_cdf((k - rho * z) / scale);
    let value = if h <= 0.0 {
        integrate(conditional, -CUTOFF, h, abs_tol).value
    } else {
        std_normal_cdf(k) - integrate(conditional, h, CUTOFF, abs_tol).value
    };
    value.clamp(0.0, 1.0)
}
