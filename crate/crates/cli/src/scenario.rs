//! Scenario files: TOML documents describing one run.

use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::{bail, ensure, Context, Result};
use paramp_core::bell::{FrameQuad, StripeFrames, StripePartition};
use paramp_core::gaussian_state::squeeze_from_beta;
use paramp_core::nalgebra::Vector2;
use paramp_core::tomography::MeasurementFrame;
use paramp_core::{AmplifierParams, Complex64, GaussianWavefunction};
use serde::{Deserialize, Serialize};

/// Points per half period `π/ν` when the time grid leaves `steps` out.
pub const POINTS_PER_HALF_PERIOD: f64 = 200.0;
/// Points used when the regime has no period and `steps` is absent.
pub const DEFAULT_APERIODIC_POINTS: usize = 201;

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    pub task: Task,
    #[serde(default)]
    pub output: Option<PathBuf>,
    pub amplifier: Amplifier,
    pub states: Vec<StateSpec>,
    #[serde(default)]
    pub time: TimeGrid,
    #[serde(default)]
    pub tomogram: TomogramOptions,
    #[serde(default)]
    pub entropy: EntropyOptions,
    #[serde(default)]
    pub bell: BellOptions,
    #[serde(default)]
    pub nosignal: NosignalOptions,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Task {
    Tomogram,
    Entropy,
    Bell,
    Nosignal,
    Covariance,
}

impl Task {
    pub fn as_str(&self) -> &'static str {
        match self {
            Task::Tomogram => "tomogram",
            Task::Entropy => "entropy",
            Task::Bell => "bell",
            Task::Nosignal => "nosignal",
            Task::Covariance => "covariance",
        }
    }
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Amplifier {
    #[serde(default = "default_omega_b")]
    pub omega_b: f64,
    /// `Ω`.
    pub detuning: f64,
    /// `k`.
    pub coupling: f64,
}

fn default_omega_b() -> f64 {
    3.0
}

impl Amplifier {
    pub fn params(&self) -> Result<AmplifierParams> {
        AmplifierParams::new(self.omega_b, self.detuning, self.coupling)
            .context("invalid [amplifier] section")
    }
}

/// A real number or a `[re, im]` pair.
#[derive(Debug, Clone, Copy, Deserialize, Serialize)]
#[serde(untagged)]
pub enum ComplexValue {
    Real(f64),
    Parts([f64; 2]),
}

impl ComplexValue {
    pub fn value(&self) -> Complex64 {
        match *self {
            ComplexValue::Real(x) => Complex64::new(x, 0.0),
            ComplexValue::Parts([re, im]) => Complex64::new(re, im),
        }
    }
}

impl Default for ComplexValue {
    fn default() -> Self {
        ComplexValue::Real(0.0)
    }
}

#[derive(Debug, Clone, Deserialize, Serialize)]
pub struct StateSpec {
    #[serde(default)]
    pub label: Option<String>,
    #[serde(flatten)]
    pub kind: StateKind,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum StateKind {
    Vacuum,
    /// Two-mode squeezed vacuum, given by `beta` or by `r` (`β = −tanh r`).
    Squeezed {
        #[serde(default)]
        beta: Option<f64>,
        #[serde(default)]
        r: Option<f64>,
    },
    Coherent {
        alpha1: ComplexValue,
        alpha2: ComplexValue,
    },
    /// `A_G = ¼[[a11, −a12], [−a12, a22]]` with linear term `(b1, b2)`.
    General {
        a11: f64,
        a12: f64,
        a22: f64,
        #[serde(default)]
        b1: ComplexValue,
        #[serde(default)]
        b2: ComplexValue,
    },
}

/// A state ready for simulation.
#[derive(Debug, Clone)]
pub struct ResolvedState {
    pub label: String,
    pub spec: StateSpec,
    pub wavefunction: GaussianWavefunction,
    /// Squeeze parameter `r` for squeezed vacua, which have closed forms.
    pub squeeze: Option<f64>,
    pub coherent: bool,
}

impl StateSpec {
    fn default_label(&self) -> &'static str {
        match self.kind {
            StateKind::Vacuum => "vacuum",
            StateKind::Squeezed { .. } => "squeezed",
            StateKind::Coherent { .. } => "coherent",
            StateKind::General { .. } => "general",
        }
    }

    pub fn resolve(&self, label: String, omega_b: f64) -> Result<ResolvedState> {
        let mut squeeze = None;
        let mut coherent = false;
        let wavefunction = match self.kind {
            StateKind::Vacuum => GaussianWavefunction::vacuum(omega_b),
            StateKind::Squeezed { beta, r } => {
                let r = match (beta, r) {
                    (Some(b), None) => {
                        ensure!(b.abs() < 1.0, "state {label}: need |beta| < 1, got {b}");
                        squeeze_from_beta(b)
                    }
                    (None, Some(r)) => r,
                    _ => bail!("state {label}: give exactly one of beta or r"),
                };
                squeeze = Some(r);
                GaussianWavefunction::squeezed_vacuum(r, omega_b)?
            }
            StateKind::Coherent { alpha1, alpha2 } => {
                coherent = true;
                GaussianWavefunction::coherent(alpha1.value(), alpha2.value(), omega_b)
            }
            StateKind::General {
                a11,
                a12,
                a22,
                b1,
                b2,
            } => GaussianWavefunction::general(a11, a12, a22, Vector2::new(b1.value(), b2.value()))
                .with_context(|| format!("state {label}"))?,
        };
        Ok(ResolvedState {
            label,
            spec: self.clone(),
            wavefunction,
            squeeze,
            coherent,
        })
    }
}

/// Labels from the file, else from the state kind, made unique by suffixes.
pub fn resolve_states(specs: &[StateSpec], omega_b: f64) -> Result<Vec<ResolvedState>> {
    ensure!(!specs.is_empty(), "scenario lists no [[states]]");
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    let mut out = Vec::with_capacity(specs.len());
    for spec in specs {
        let base = spec
            .label
            .clone()
            .unwrap_or_else(|| spec.default_label().to_string());
        ensure!(
            !base.is_empty()
                && base
                    .chars()
                    .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '.'),
            "state label {base:?} must be non-empty and use only letters, digits, '_', '-' or '.'"
        );
        let count = seen.entry(base.clone()).or_insert(0);
        *count += 1;
        let label = if *count == 1 {
            base
        } else {
            format!("{base}_{count}")
        };
        out.push(spec.resolve(label, omega_b)?);
    }
    let mut labels: Vec<_> = out.iter().map(|s| s.label.as_str()).collect();
    labels.sort_unstable();
    labels.dedup();
    ensure!(labels.len() == out.len(), "state labels are not unique");
    Ok(out)
}

/// Either a range (`start`, and `end` or `half_periods`, with `steps`
/// points) or an explicit list (`points`, or `points_half_periods` in units
/// of `π/ν`).
#[derive(Debug, Clone, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct TimeGrid {
    #[serde(default)]
    pub start: f64,
    #[serde(default)]
    pub end: Option<f64>,
    #[serde(default)]
    pub half_periods: Option<f64>,
    #[serde(default)]
    pub steps: Option<usize>,
    #[serde(default)]
    pub points: Option<Vec<f64>>,
    #[serde(default)]
    pub points_half_periods: Option<Vec<f64>>,
}

impl TimeGrid {
    pub fn is_explicit(&self) -> bool {
        self.points.is_some() || self.points_half_periods.is_some()
    }

    pub fn resolve(&self, half_period: Option<f64>) -> Result<Vec<f64>> {
        let need_period =
            || half_period.context("time given in half periods, but the regime has no period");
        let times = match (&self.points, &self.points_half_periods) {
            (Some(_), Some(_)) => bail!("[time]: give points or points_half_periods, not both"),
            (Some(p), None) => p.clone(),
            (None, Some(p)) => {
                let h = need_period()?;
                p.iter().map(|x| x * h).collect()
            }
            (None, None) => {
                let end = match (self.end, self.half_periods) {
                    (Some(e), None) => e,
                    (None, Some(n)) => n * need_period()?,
                    (Some(_), Some(_)) => bail!("[time]: give end or half_periods, not both"),
                    (None, None) => bail!("[time]: an end time (end or half_periods) is required"),
                };
                ensure!(
                    end >= self.start,
                    "[time]: end {end} precedes start {}",
                    self.start
                );
                let steps = match (self.steps, half_period) {
                    (Some(s), _) => s,
                    (None, Some(h)) => {
                        ((end - self.start) / h * POINTS_PER_HALF_PERIOD).round() as usize + 1
                    }
                    (None, None) => DEFAULT_APERIODIC_POINTS,
                };
                ensure!(steps >= 1, "[time]: steps must be at least 1");
                if steps == 1 {
                    vec![self.start]
                } else {
                    (0..steps)
                        .map(|i| self.start + (end - self.start) * i as f64 / (steps - 1) as f64)
                        .collect()
                }
            }
        };
        ensure!(!times.is_empty(), "[time]: the time grid is empty");
        ensure!(
            times.iter().all(|t| t.is_finite() && *t >= 0.0),
            "[time]: times must be finite and non-negative"
        );
        Ok(times)
    }
}

/// Frames as `[[μ₁, ν₁], [μ₂, ν₂]]` or homodyne angles `[θ₁, θ₂]`.
#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct TomogramOptions {
    #[serde(default)]
    pub frames: Option<[[f64; 2]; 2]>,
    #[serde(default)]
    pub theta: Option<[f64; 2]>,
    #[serde(default = "default_tomogram_points")]
    pub grid_n: usize,
    /// Half width of the grid in units of the largest marginal deviation.
    #[serde(default = "default_n_sigma")]
    pub n_sigma: f64,
}

fn default_tomogram_points() -> usize {
    201
}

fn default_n_sigma() -> f64 {
    5.0
}

impl Default for TomogramOptions {
    fn default() -> Self {
        Self {
            frames: None,
            theta: None,
            grid_n: default_tomogram_points(),
            n_sigma: default_n_sigma(),
        }
    }
}

impl TomogramOptions {
    pub fn measurement_frames(&self) -> Result<[MeasurementFrame; 2]> {
        match (self.frames, self.theta) {
            (Some(_), Some(_)) => bail!("[tomogram]: give frames or theta, not both"),
            (Some([[m1, n1], [m2, n2]]), None) => Ok([
                MeasurementFrame::new(m1, n1)?,
                MeasurementFrame::new(m2, n2)?,
            ]),
            (None, Some([a, b])) => {
                Ok([MeasurementFrame::optical(a), MeasurementFrame::optical(b)])
            }
            (None, None) => Ok([
                MeasurementFrame::optical(0.0),
                MeasurementFrame::optical(0.0),
            ]),
        }
    }
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct EntropyOptions {
    #[serde(default = "default_entropy_points")]
    pub grid_n: usize,
    /// Fixed grid `[−L, L]²`; absent means a grid fitted to each time.
    #[serde(default)]
    pub half_width: Option<f64>,
    /// Add closed-form columns for squeezed vacua.
    #[serde(default = "yes")]
    pub analytic: bool,
}

fn default_entropy_points() -> usize {
    paramp_core::entropy::DEFAULT_GRID_POINTS
}

fn yes() -> bool {
    true
}

impl Default for EntropyOptions {
    fn default() -> Self {
        Self {
            grid_n: default_entropy_points(),
            half_width: None,
            analytic: true,
        }
    }
}

#[derive(Debug, Clone, Copy, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CustomFrames {
    pub a: [f64; 2],
    pub b: [f64; 2],
    pub c: [f64; 2],
    pub d: [f64; 2],
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct BellOptions {
    /// Built-in sets `left`, `left_angles`, `right`, `right_rounded`, or
    /// names of entries in `custom`.
    #[serde(default = "default_frame_sets")]
    pub frame_sets: Vec<String>,
    #[serde(default)]
    pub custom: BTreeMap<String, CustomFrames>,
    #[serde(default)]
    pub split: [f64; 2],
    /// Add `B_tilde` and `gap = |B − B_tilde|` columns.
    #[serde(default)]
    pub gap: bool,
    /// Add the numerical linear entropy `S_L`, using the `[entropy]` grid.
    #[serde(default)]
    pub linear_entropy: bool,
}

fn default_frame_sets() -> Vec<String> {
    vec!["left".into()]
}

impl Default for BellOptions {
    fn default() -> Self {
        Self {
            frame_sets: default_frame_sets(),
            custom: BTreeMap::new(),
            split: [0.0; 2],
            gap: false,
            linear_entropy: false,
        }
    }
}

impl BellOptions {
    pub fn frame_quads(&self) -> Result<Vec<(String, FrameQuad)>> {
        ensure!(!self.frame_sets.is_empty(), "[bell]: frame_sets is empty");
        self.frame_sets
            .iter()
            .map(|name| {
                let quad = match name.as_str() {
                    "left" => FrameQuad::reference_left(),
                    "left_angles" => FrameQuad::reference_left_from_angles(),
                    "right" => FrameQuad::reference_right(),
                    "right_rounded" => FrameQuad::reference_right_rounded(),
                    other => {
                        let c = self
                            .custom
                            .get(other)
                            .with_context(|| format!("[bell]: unknown frame set {other:?}"))?;
                        let f = |v: [f64; 2]| MeasurementFrame::new(v[0], v[1]);
                        FrameQuad::new(f(c.a)?, f(c.b)?, f(c.c)?, f(c.d)?)?
                    }
                };
                Ok((name.clone(), quad))
            })
            .collect()
    }
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct NosignalOptions {
    /// `[μ_a, μ_d]`.
    #[serde(default = "default_mu")]
    pub mu: [f64; 2],
    /// `[ν_b, ν_c]`.
    #[serde(default = "default_nu")]
    pub nu: [f64; 2],
    #[serde(default = "default_width")]
    pub width: f64,
}

fn default_mu() -> [f64; 2] {
    [0.1, 0.4]
}

fn default_nu() -> [f64; 2] {
    [0.2, 0.3]
}

fn default_width() -> f64 {
    1.0
}

impl Default for NosignalOptions {
    fn default() -> Self {
        Self {
            mu: default_mu(),
            nu: default_nu(),
            width: default_width(),
        }
    }
}

impl NosignalOptions {
    pub fn frames(&self) -> StripeFrames {
        StripeFrames {
            mu_a: self.mu[0],
            mu_d: self.mu[1],
            nu_b: self.nu[0],
            nu_c: self.nu[1],
        }
    }

    pub fn partition(&self) -> Result<StripePartition> {
        ensure!(
            self.width > 0.0 && self.width.is_finite(),
            "[nosignal]: width must be positive"
        );
        Ok(StripePartition { width: self.width })
    }
}

/// Command-line overrides applied after parsing.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub grid_n: Option<usize>,
    pub grid_width: Option<f64>,
    pub t_steps: Option<usize>,
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Self> {
        let s: Scenario = toml::from_str(text).context("cannot parse scenario")?;
        ensure!(!s.name.trim().is_empty(), "scenario name is empty");
        Ok(s)
    }

    /// `--grid-n` and `--grid-width` act on the entropy grid, or on the
    /// tomogram grid (width in standard deviations) for tomogram runs.
    pub fn apply(&mut self, o: &Overrides) -> Result<()> {
        if let Some(n) = o.grid_n {
            match self.task {
                Task::Tomogram => self.tomogram.grid_n = n,
                _ => self.entropy.grid_n = n,
            }
        }
        if let Some(w) = o.grid_width {
            ensure!(w > 0.0 && w.is_finite(), "--grid-width must be positive");
            match self.task {
                Task::Tomogram => self.tomogram.n_sigma = w,
                _ => self.entropy.half_width = Some(w),
            }
        }
        if let Some(s) = o.t_steps {
            ensure!(
                !self.time.is_explicit(),
                "--t-steps cannot override an explicit list of time points"
            );
            self.time.steps = Some(s);
        }
        Ok(())
    }
}
