//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use paramp_core::nalgebra::{Matrix4, Vector2, Vector4};
use paramp_core::symplectic::symplectic_form;
use paramp_core::{AmplifierParams, Complex64, GaussianMoments};

/// Annihilation operators as coefficient vectors on `(p₁, p₂, q₁, q₂)`.
pub fn mode_operators(omega_b: f64) -> (Vector4<Complex64>, Vector4<Complex64>) {
    let c = Complex64::new;
    let s2 = 2f64.sqrt();
    let a = Vector4::new(c(0.0, 1.0 / s2), c(0.0, 0.0), c(1.0 / s2, 0.0), c(0.0, 0.0));
    let b = Vector4::new(
        c(0.0, 0.0),
        c(0.0, 1.0 / (2.0 * omega_b).sqrt()),
        c(0.0, 0.0),
        c((omega_b / 2.0).sqrt(), 0.0),
    );
    (a, b)
}

/// Real symmetric `K(t)` with `H = ½ xᵀ K x + const`, assembled directly
/// from the creation/annihilation form of the amplifier Hamiltonian.
pub fn hamiltonian_kernel(t: f64, p: &AmplifierParams) -> Matrix4<f64> {
    let (a, b) = mode_operators(p.omega_b);
    let ad = a.map(|z| z.conj());
    let bd = b.map(|z| z.conj());
    let w = p.pump_frequency();
    let e = Complex64::new(0.0, w * t).exp();
    let r = |x: f64| Complex64::new(x, 0.0);
    let q = ad * a.transpose() * r(p.omega_a) + bd * b.transpose() * r(p.omega_b)
        - (ad * bd.transpose() * e.conj() + a * b.transpose() * e) * r(p.k);
    let k = q + q.transpose();
    assert!(
        k.map(|z| z.im).amax() < 1e-12,
        "Hamiltonian kernel is not real"
    );
    k.map(|z| z.re)
}

/// Linear invariants `I = Λ x` obey `Λ̇ = Λ Σ K(t)` with `Λ(0) = 1`.
/// Classical fourth-order Runge–Kutta.
pub fn rk4_lambda(t: f64, p: &AmplifierParams, steps: usize) -> Matrix4<f64> {
    let sigma = symplectic_form();
    let f = |s: f64, l: &Matrix4<f64>| l * sigma * hamiltonian_kernel(s, p);
    let h = t / steps as f64;
    let mut l = Matrix4::identity();
    for i in 0..steps {
        let s = i as f64 * h;
        let k1 = f(s, &l);
        let k2 = f(s + 0.5 * h, &(l + k1 * (0.5 * h)));
        let k3 = f(s + 0.5 * h, &(l + k2 * (0.5 * h)));
        let k4 = f(s + h, &(l + k3 * h));
        l += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
    }
    l
}

/// Means, covariance and norm of `|ψ|²` by the trapezoid rule on a regular
/// grid, with momentum moments from central differences of `ψ`.
pub fn wavefunction_moments<F: Fn(&Vector2<f64>) -> Complex64>(
    psi: F,
    center: [f64; 2],
    half_width: [f64; 2],
    n: usize,
) -> (f64, GaussianMoments) {
    let h = [
        2.0 * half_width[0] / (n - 1) as f64,
        2.0 * half_width[1] / (n - 1) as f64,
    ];
    let eps = 1e-5;
    let i = Complex64::new(0.0, 1.0);
    let mut norm = 0.0;
    let mut first = Vector4::<f64>::zeros();
    let mut second = Matrix4::<f64>::zeros();
    for a in 0..n {
        for b in 0..n {
            let x = Vector2::new(
                center[0] - half_width[0] + h[0] * a as f64,
                center[1] - half_width[1] + h[1] * b as f64,
            );
            let v = psi(&x);
            let dx = |k: usize| {
                let mut e = Vector2::zeros();
                e[k] = eps;
                (psi(&(x + e)) - psi(&(x - e))) / (2.0 * eps)
            };
            // (-i ∂) ψ for each mode
            let pv = [-i * dx(0), -i * dx(1)];
            let rho = v.norm_sqr();
            norm += rho;
            first[0] += (v.conj() * pv[0]).re;
            first[1] += (v.conj() * pv[1]).re;
            first[2] += x[0] * rho;
            first[3] += x[1] * rho;
            for r in 0..2 {
                for c in 0..2 {
                    second[(r, c)] += (pv[r].conj() * pv[c]).re;
                    second[(2 + r, 2 + c)] += x[r] * x[c] * rho;
                    // symmetrized p_r q_c
                    second[(r, 2 + c)] += x[c] * (v.conj() * pv[r]).re;
                }
            }
        }
    }
    let w = h[0] * h[1];
    norm *= w;
    first *= w / norm;
    second *= w / norm;
    let mut cov = second - first * first.transpose();
    for r in 0..2 {
        for c in 0..2 {
            cov[(2 + c, r)] = cov[(r, 2 + c)];
        }
    }
    (norm, GaussianMoments { mean: first, cov })
}

/// Evenly spaced points including both ends.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
        .collect()
}
