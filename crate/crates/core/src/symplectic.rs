//! Symplectic matrix of the parametric amplifier.
//!
//! The amplifier Hamiltonian
//! `H = ω_a a†a + ω_b b†b − k (a†b† e^{−iωt} + ab e^{iωt})`
//! has linear time-dependent invariants `A(t) = u a + v b†` and
//! `B(t) = u′ b + v′ a†`. Rewriting them in quadratures gives
//! `(P(t), Q(t)) = Λ(t) (p, q)` with
//! `Λ = [[λ₁, λ₂], [λ₃, λ₄]]`, where every block is 2×2 and built from the
//! functions `g₁`, `g₂` below.
//!
//! All three regimes share one code path through the pair
//! `C(t) = cos νt` and `S(t) = sin νt / ν`, which become `cosh ν̄t`,
//! `sinh ν̄t / ν̄` in the hyperbolic regime and `1`, `t` at `ν = 0`.

use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// `|Ω²/4 − k²|` at or below this value is treated as `ν = 0`.
pub const DEGENERATE_TOLERANCE: f64 = 1e-12;

/// Physical parameters in units `ħ = ω_a = 1`.
///
/// The pump frequency is implied: `ω = Ω + ω_a + ω_b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplifierParams {
    pub omega_a: f64,
    pub omega_b: f64,
    /// Detuning `Ω = ω − ω_a − ω_b`.
    pub big_omega: f64,
    /// Coupling constant `k`.
    pub k: f64,
}

impl AmplifierParams {
    /// Parameters with `ω_a = 1`.
    pub fn new(omega_b: f64, big_omega: f64, k: f64) -> Result<Self> {
        Self::with_omega_a(1.0, omega_b, big_omega, k)
    }

    /// Only `ω_a = 1` is accepted: the block formulas are written in those units.
    pub fn with_omega_a(omega_a: f64, omega_b: f64, big_omega: f64, k: f64) -> Result<Self> {
        let params = Self {
            omega_a,
            omega_b,
            big_omega,
            k,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        let all_finite = [self.omega_a, self.omega_b, self.big_omega, self.k]
            .iter()
            .all(|v| v.is_finite());
        if !all_finite {
            return Err(Error::InvalidParams("parameters must be finite".into()));
        }
        if (self.omega_a - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParams(format!(
                "omega_a must be 1 (units hbar = omega_a = 1), got {}",
                self.omega_a
            )));
        }
        if self.omega_b <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "omega_b must be positive, got {}",
                self.omega_b
            )));
        }
        if self.k < 0.0 {
            return Err(Error::InvalidParams(format!(
                "coupling k must be non-negative, got {}",
                self.k
            )));
        }
        Ok(())
    }

    /// Pump frequency `ω = Ω + ω_a + ω_b`.
    pub fn pump_frequency(&self) -> f64 {
        self.big_omega + self.omega_a + self.omega_b
    }

    pub fn regime(&self) -> Regime {
        classify_regime(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Regime {
    /// `Ω²/4 > k²`, real `ν`.
    Trigonometric { nu: f64 },
    /// `Ω²/4 < k²`, `ν = i ν̄`.
    Hyperbolic { nu_bar: f64 },
    /// `ν = 0`.
    Degenerate,
}

impl Regime {
    /// `cos νt` continued to every regime.
    pub fn cos_term(&self, t: f64) -> f64 {
        match *self {
            Regime::Trigonometric { nu } => (nu * t).cos(),
            Regime::Hyperbolic { nu_bar } => (nu_bar * t).cosh(),
            Regime::Degenerate => 1.0,
        }
    }

    /// `sin νt / ν` continued to every regime.
    pub fn sin_term(&self, t: f64) -> f64 {
        match *self {
            Regime::Trigonometric { nu } => (nu * t).sin() / nu,
            Regime::Hyperbolic { nu_bar } => (nu_bar * t).sinh() / nu_bar,
            Regime::Degenerate => t,
        }
    }

    /// `ν` as a complex number (`i ν̄` in the hyperbolic regime).
    pub fn nu_complex(&self) -> Complex64 {
        match *self {
            Regime::Trigonometric { nu } => Complex64::new(nu, 0.0),
            Regime::Hyperbolic { nu_bar } => Complex64::new(0.0, nu_bar),
            Regime::Degenerate => Complex64::new(0.0, 0.0),
        }
    }

    /// Half-period `π/ν` of the trigonometric regime, after which the
    /// invariants reduce to local rotations.
    pub fn half_period(&self) -> Option<f64> {
        match *self {
            Regime::Trigonometric { nu } => Some(std::f64::consts::PI / nu),
            _ => None,
        }
    }
}

pub fn classify_regime(params: &AmplifierParams) -> Regime {
    let disc = params.big_omega * params.big_omega / 4.0 - params.k * params.k;
    if disc.abs() <= DEGENERATE_TOLERANCE {
        Regime::Degenerate
    } else if disc > 0.0 {
        Regime::Trigonometric { nu: disc.sqrt() }
    } else {
        Regime::Hyperbolic {
            nu_bar: (-disc).sqrt(),
        }
    }
}

/// `(g₁(ω̃), g₂(ω̃))` at time `t`.
pub fn g_functions(omega_tilde: f64, t: f64, params: &AmplifierParams) -> (f64, f64) {
    let regime = params.regime();
    let phase = (params.big_omega / 2.0 + omega_tilde) * t;
    g_pair(phase.cos(), phase.sin(), t, params, &regime)
}

fn g_pair(
    cos_phase: f64,
    sin_phase: f64,
    t: f64,
    params: &AmplifierParams,
    regime: &Regime,
) -> (f64, f64) {
    let c = regime.cos_term(t);
    let s = regime.sin_term(t);
    let g1 = cos_phase * c + 0.5 * params.big_omega * sin_phase * s;
    let g2 = params.k * sin_phase * s;
    (g1, g2)
}

/// `g₁`, `g₂` with the trig argument shifted by a quarter turn,
/// `(Ω/2 + ω̃)t → (Ω/2 + ω̃)t − π/2`. Written with swapped sin/cos so that
/// nothing is divided by `t`.
fn g_quarter(omega_tilde: f64, t: f64, params: &AmplifierParams, regime: &Regime) -> (f64, f64) {
    let phase = (params.big_omega / 2.0 + omega_tilde) * t;
    // cos(φ − π/2) = sin φ, sin(φ − π/2) = −cos φ
    g_pair(phase.sin(), -phase.cos(), t, params, regime)
}

/// The four 2×2 blocks of `Λ(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymplecticBlocks {
    pub lambda1: Matrix2<f64>,
    pub lambda2: Matrix2<f64>,
    pub lambda3: Matrix2<f64>,
    pub lambda4: Matrix2<f64>,
    pub t: f64,
}

impl SymplecticBlocks {
    /// Assembled `Λ = [[λ₁, λ₂], [λ₃, λ₄]]`.
    pub fn matrix(&self) -> Matrix4<f64> {
        assemble(&self.lambda1, &self.lambda2, &self.lambda3, &self.lambda4)
    }

    pub fn inverse(&self) -> Matrix4<f64> {
        symplectic_inverse(self)
    }

    /// Entries of the four blocks that couple mode 1 with mode 2.
    pub fn cross_mode_entries(&self) -> [f64; 8] {
        let b = [self.lambda1, self.lambda2, self.lambda3, self.lambda4];
        let mut out = [0.0; 8];
        for (i, m) in b.iter().enumerate() {
            out[2 * i] = m[(0, 1)];
            out[2 * i + 1] = m[(1, 0)];
        }
        out
    }
}

pub(crate) fn assemble(
    b11: &Matrix2<f64>,
    b12: &Matrix2<f64>,
    b21: &Matrix2<f64>,
    b22: &Matrix2<f64>,
) -> Matrix4<f64> {
    let mut m = Matrix4::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(b11);
    m.fixed_view_mut::<2, 2>(0, 2).copy_from(b12);
    m.fixed_view_mut::<2, 2>(2, 0).copy_from(b21);
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(b22);
    m
}

/// `Λ(t)` for the amplifier, ordered `(p₁, p₂, q₁, q₂)`.
pub fn lambda_blocks(t: f64, params: &AmplifierParams) -> SymplecticBlocks {
    let regime = params.regime();
    let wa = params.omega_a;
    let wb = params.omega_b;
    let sb = wb.sqrt();

    let (g1a, g2a) = {
        let phase = (params.big_omega / 2.0 + wa) * t;
        g_pair(phase.cos(), phase.sin(), t, params, &regime)
    };
    let (g1b, g2b) = {
        let phase = (params.big_omega / 2.0 + wb) * t;
        g_pair(phase.cos(), phase.sin(), t, params, &regime)
    };
    let (h1a, h2a) = g_quarter(wa, t, params, &regime);
    let (h1b, h2b) = g_quarter(wb, t, params, &regime);

    let lambda1 = Matrix2::new(g1a, g2b / sb, g2a * sb, g1b);
    let lambda2 = Matrix2::new(h1a, h2b * sb, h2a * sb, h1b * wb);
    let lambda3 = Matrix2::new(-h1a, h2b / sb, h2a / sb, -h1b / wb);
    let lambda4 = Matrix2::new(g1a, -g2b * sb, -g2a / sb, g1b);

    SymplecticBlocks {
        lambda1,
        lambda2,
        lambda3,
        lambda4,
        t,
    }
}

/// Exact inverse `Λ⁻¹ = [[λ̃₄, −λ̃₂], [−λ̃₃, λ̃₁]]` (tilde is transpose).
pub fn symplectic_inverse(blocks: &SymplecticBlocks) -> Matrix4<f64> {
    assemble(
        &blocks.lambda4.transpose(),
        &(-blocks.lambda2.transpose()),
        &(-blocks.lambda3.transpose()),
        &blocks.lambda1.transpose(),
    )
}

/// The symplectic form `Σ = [[0, I], [−I, 0]]`.
pub fn symplectic_form() -> Matrix4<f64> {
    assemble(
        &Matrix2::zeros(),
        &Matrix2::identity(),
        &(-Matrix2::identity()),
        &Matrix2::zeros(),
    )
}

/// Coefficients of `A(t) = u_a a + v_a b†` and `B(t) = u_b b + v_b a†`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantCoefficients {
    pub u_a: Complex64,
    pub v_a: Complex64,
    pub u_b: Complex64,
    pub v_b: Complex64,
}

impl InvariantCoefficients {
    /// `|u|² − |v|²` for each invariant; both equal 1 for bosonic invariants.
    pub fn commutators(&self) -> (f64, f64) {
        (
            self.u_a.norm_sqr() - self.v_a.norm_sqr(),
            self.u_b.norm_sqr() - self.v_b.norm_sqr(),
        )
    }
}

pub fn invariant_coefficients(t: f64, params: &AmplifierParams) -> InvariantCoefficients {
    let regime = params.regime();
    let c = regime.cos_term(t);
    let s = regime.sin_term(t);
    let half = 0.5 * params.big_omega;
    let envelope = Complex64::new(c, -half * s);
    let coupling = Complex64::new(0.0, -params.k * s);
    let rot = |w: f64| Complex64::from_polar(1.0, (half + w) * t);
    InvariantCoefficients {
        u_a: rot(params.omega_a) * envelope,
        v_a: coupling * rot(params.omega_b).conj(),
        u_b: rot(params.omega_b) * envelope,
        v_b: coupling * rot(params.omega_a).conj(),
    }
}
