//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any criterion fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use paramp_core::bell::{
    bell_parameter, bell_parameter_correlators, build_m, nosignaling_bell, orthant_vector,
    quadrant_probabilities, separability_gap, CoefficientMatrix, FrameQuad, ProductPartition,
    StochasticMatrix4, StripeFrames, StripePartition,
};
use paramp_core::covariance::{
    coherent_covariance_analytic, evolve_covariance, max_abs_diff, photon_number_difference,
    squeezed_covariance_analytic, squeezed_eta,
};
use paramp_core::entropy::{analytic_squeezed_entropies, state_entropies};
use paramp_core::gaussian_state::squeeze_from_beta;
use paramp_core::nalgebra::{Matrix4, Vector4};
use paramp_core::presets::{
    coherent, general_gaussian, hyperbolic_params, squeezed, trigonometric_params,
};
use paramp_core::quadrature::integrate;
use paramp_core::symplectic::{lambda_blocks, symplectic_form};
use paramp_core::tomography::{symplectic_tomogram, MeasurementFrame, TomogramGaussian};
use paramp_core::{AmplifierParams, GaussianMoments, GaussianWavefunction};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rand_distr::StandardNormal;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
        .collect()
}

fn half_period(p: &AmplifierParams) -> f64 {
    p.regime().half_period().expect("oscillating regime")
}

fn moments(state: &GaussianWavefunction, t: f64, p: &AmplifierParams) -> GaussianMoments {
    evolve_covariance(&state.initial_moments(), t, p)
}

/// Largest absolute row sum.
fn inf_norm(m: &Matrix4<f64>) -> f64 {
    m.row_iter()
        .map(|r| r.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn sampled_period_times(p: &AmplifierParams, n: usize, seed: u64) -> Vec<f64> {
    let mut rng = StdRng::seed_from_u64(seed);
    let end = 2.0 * half_period(p);
    (0..n).map(|_| rng.random_range(0.0..=end)).collect()
}

fn symplectic_identity() -> Outcome {
    let p = trigonometric_params();
    let start = Instant::now();
    let sigma = symplectic_form();
    let worst = sampled_period_times(&p, 100, 1)
        .into_iter()
        .map(|t| {
            let m = lambda_blocks(t, &p).matrix();
            inf_norm(&(m * sigma * m.transpose() - sigma))
        })
        .fold(0.0, f64::max);
    let secs = start.elapsed().as_secs_f64();
    outcome(
        worst <= 1e-10 && secs < 1.0,
        format!("max ||L S L^T - S||_inf = {worst:.2e} over 100 times in {secs:.3} s"),
    )
}

fn purity_conservation() -> Outcome {
    let p = trigonometric_params();
    let m0 = squeezed(0.8).unwrap().initial_moments();
    let worst = sampled_period_times(&p, 100, 1)
        .into_iter()
        .map(|t| (evolve_covariance(&m0, t, &p).det() - 1.0 / 16.0).abs())
        .fold(0.0, f64::max);
    outcome(
        worst <= 1e-9,
        format!("max |det sigma - 1/16| = {worst:.2e}"),
    )
}

fn entropy_error(n: usize) -> Result<f64, String> {
    let p = trigonometric_params();
    let state = squeezed(0.8).unwrap();
    let r = squeeze_from_beta(0.8);
    let mut worst: f64 = 0.0;
    for t in linspace(0.0, 2.0 * half_period(&p), 50) {
        let num =
            state_entropies(&state, t, &p, n, None).map_err(|e| format!("n={n}, t={t}: {e}"))?;
        let ana = analytic_squeezed_entropies(t, r, &p).map_err(|e| e.to_string())?;
        worst = worst
            .max((num.linear - ana.linear).abs())
            .max((num.von_neumann - ana.von_neumann).abs());
    }
    Ok(worst)
}

fn entropy_oracle() -> Outcome {
    let coarse = entropy_error(64);
    let start = Instant::now();
    let fine = entropy_error(128);
    let secs = start.elapsed().as_secs_f64();
    match (coarse, fine) {
        (Ok(c), Ok(f)) => outcome(
            c <= 1e-5 && f <= 1e-6 && secs < 120.0,
            format!("max error {c:.2e} at n=64 (limit 1e-5), {f:.2e} at n=128 (limit 1e-6, {secs:.1} s)"),
        ),
        (c, f) => outcome(false, format!("n=64: {c:?}, n=128: {f:?}")),
    }
}

fn periodicity() -> Outcome {
    let p = trigonometric_params();
    let half = half_period(&p);
    let states = [
        ("squeezed 4/5", squeezed(0.8).unwrap()),
        ("squeezed 3/10", squeezed(0.3).unwrap()),
        ("coherent (1,3)", coherent(1.0, 3.0)),
        ("general", general_gaussian()),
    ];
    let mut worst: f64 = 0.0;
    for (name, state) in &states {
        for t in linspace(0.0, half, 10) {
            let a = state_entropies(state, t, &p, 128, None);
            let b = state_entropies(state, t + half, &p, 128, None);
            match (a, b) {
                (Ok(a), Ok(b)) => worst = worst.max((a.linear - b.linear).abs()),
                (a, b) => return outcome(false, format!("{name} at t={t}: {a:?} / {b:?}")),
            }
        }
    }
    outcome(
        worst <= 1e-6,
        format!("max |S_L(t + pi/nu) - S_L(t)| = {worst:.2e} over four states"),
    )
}

fn entanglement_generation() -> Outcome {
    let p = trigonometric_params();
    let half = half_period(&p);
    let state = coherent(1.0, 3.0);
    let times = linspace(0.0, half, 201);
    let mut s = Vec::with_capacity(times.len());
    for &t in &times {
        match state_entropies(&state, t, &p, 64, None) {
            Ok(e) => s.push(e.linear),
            Err(e) => return outcome(false, format!("t={t}: {e}")),
        }
    }
    let (imax, smax) = s
        .iter()
        .copied()
        .enumerate()
        .fold(
            (0, f64::NEG_INFINITY),
            |acc, (i, v)| if v > acc.1 { (i, v) } else { acc },
        );
    let step = times[1] - times[0];
    let offset = (times[imax] - 0.5 * half).abs();
    outcome(
        s[0].abs() <= 1e-8 && smax > 1e-2 && offset <= step,
        format!(
            "S_L(0) = {:.1e}, max S_L = {smax:.4} at t = {:.5} (pi/(2 nu) = {:.5}, step {step:.5})",
            s[0],
            times[imax],
            0.5 * half
        ),
    )
}

fn covariance_equivalence() -> Outcome {
    let p = trigonometric_params();
    let r = squeeze_from_beta(0.8);
    let sq = squeezed(0.8).unwrap().initial_moments();
    let co = coherent(0.8, 0.1).initial_moments();
    let mut worst: f64 = 0.0;
    for t in linspace(0.0, 2.0 * half_period(&p), 200) {
        let a = squeezed_covariance_analytic(t, r, &p).unwrap();
        worst = worst.max(max_abs_diff(&evolve_covariance(&sq, t, &p).cov, &a.cov));
        let b = coherent_covariance_analytic(t, &p);
        worst = worst.max(max_abs_diff(&evolve_covariance(&co, t, &p).cov, &b.cov));
    }
    outcome(
        worst <= 1e-9,
        format!("max entry difference {worst:.2e} over 200 times, both states"),
    )
}

fn eta_consistency() -> Outcome {
    let p = trigonometric_params();
    let r = squeeze_from_beta(0.8);
    let e0 = (squeezed_eta(0.0, r, &p).unwrap() - (-r.tanh())).norm();
    let mut worst: f64 = 0.0;
    for n in 1..=2 {
        let e = squeezed_eta(n as f64 * half_period(&p), r, &p).unwrap();
        worst = worst.max((e.norm() - r.tanh().abs()).abs());
    }
    outcome(
        e0 <= 1e-12 && worst <= 1e-9,
        format!("|eta(0) + tanh r| = {e0:.1e}, max ||eta(n pi/nu)| - |tanh r|| = {worst:.1e}"),
    )
}

fn total_mass(tg: &TomogramGaussian) -> f64 {
    let (s1, s2) = (tg.cov[(0, 0)].sqrt(), tg.cov[(1, 1)].sqrt());
    let (m1, m2) = (tg.mean[0], tg.mean[1]);
    integrate(
        |x1| {
            integrate(
                |x2| tg.density(x1, x2),
                m2 - 12.0 * s2,
                m2 + 12.0 * s2,
                1e-13,
            )
            .value
        },
        m1 - 12.0 * s1,
        m1 + 12.0 * s1,
        1e-12,
    )
    .value
}

fn tomogram_normalization() -> Outcome {
    let p = trigonometric_params();
    let half = half_period(&p);
    let f1 = MeasurementFrame::optical(PI / 4.0);
    let f2 = MeasurementFrame::optical(PI / 8.0);
    let mut mass_err: f64 = 0.0;
    for state in [squeezed(0.8).unwrap(), coherent(0.8, 0.1)] {
        for t in [0.0, half, 2.0 * half] {
            let tg = symplectic_tomogram(&moments(&state, t, &p), &f1, &f2).unwrap();
            mass_err = mass_err.max((total_mass(&tg) - 1.0).abs());
        }
    }
    let mut cross: f64 = 0.0;
    for n in 1..=3 {
        let tg = symplectic_tomogram(&moments(&coherent(0.8, 0.1), n as f64 * half, &p), &f1, &f2)
            .unwrap();
        cross = cross.max(tg.cov[(0, 1)].abs());
    }
    outcome(
        mass_err <= 1e-8 && cross <= 1e-9,
        format!("max |mass - 1| = {mass_err:.1e}, coherent max |cov X1X2 (n pi/nu)| = {cross:.1e}"),
    )
}

fn bell_bound() -> Outcome {
    let p = trigonometric_params();
    let mut worst: f64 = 0.0;
    let mut contraction_gap: f64 = 0.0;
    for state in [squeezed(0.8).unwrap(), coherent(0.8, 0.1)] {
        for frames in [FrameQuad::reference_left(), FrameQuad::reference_right()] {
            for t in linspace(0.0, 2.0 * half_period(&p), 200) {
                let m = build_m(
                    &moments(&state, t, &p),
                    &frames,
                    &ProductPartition::default(),
                )
                .unwrap();
                let b = bell_parameter(&m, &CoefficientMatrix::default());
                contraction_gap = contraction_gap.max((b - bell_parameter_correlators(&m)).abs());
                worst = worst.max(b.abs());
            }
        }
    }
    outcome(
        worst <= 2.0 + 1e-9 && contraction_gap <= 1e-12,
        format!("max |B| = {worst:.6} over both frame sets and states (forms agree to {contraction_gap:.0e})"),
    )
}

fn separability() -> Outcome {
    let p = trigonometric_params();
    let half = half_period(&p);
    let state = coherent(0.8, 0.1);
    let mut at_periods: f64 = 0.0;
    let mut interior: f64 = 0.0;
    for frames in [FrameQuad::reference_left(), FrameQuad::reference_right()] {
        let gap = |t: f64| {
            separability_gap(
                &moments(&state, t, &p),
                &frames,
                &ProductPartition::default(),
            )
            .unwrap()
        };
        for t in [0.0, half, 2.0 * half] {
            at_periods = at_periods.max(gap(t));
        }
        for t in linspace(0.0, 2.0 * half, 200) {
            interior = interior.max(gap(t));
        }
    }
    outcome(
        at_periods <= 1e-6 && interior > 1e-3,
        format!("max gap at n pi/nu = {at_periods:.1e}, max interior gap = {interior:.4}"),
    )
}

fn nosignaling_sweep(state: &GaussianWavefunction) -> (f64, f64) {
    let p = hyperbolic_params();
    let mut best: f64 = 0.0;
    let mut at = 0.0;
    for t in linspace(0.0, 50.0, 1001) {
        let b = nosignaling_bell(
            &moments(state, t, &p),
            &StripeFrames::reference(),
            &StripePartition::default(),
        )
        .unwrap()
        .abs();
        if b > best {
            best = b;
            at = t;
        }
    }
    (best, at)
}

fn nosignaling_violation() -> Outcome {
    let (sq, sq_t) = nosignaling_sweep(&squeezed(0.8).unwrap());
    let (co, co_t) = nosignaling_sweep(&coherent(100.0, 3.0));
    let cirelson = 2.0 * 2f64.sqrt();
    outcome(
        sq > cirelson && sq <= 4.0 && co <= 4.0,
        format!(
            "squeezed 4/5: max |B| = {sq:.4} at t = {sq_t:.2} (needs > {cirelson:.4}); \
             coherent (100,3): max |B| = {co:.4} at t = {co_t:.2}"
        ),
    )
}

/// Seeded Monte Carlo quadrant frequencies with standard errors.
fn monte_carlo(
    tg: &TomogramGaussian,
    split: [f64; 2],
    samples: usize,
    seed: u64,
) -> (Vector4<f64>, Vector4<f64>) {
    let mut rng = StdRng::seed_from_u64(seed);
    let l11 = tg.cov[(0, 0)].sqrt();
    let l21 = tg.cov[(0, 1)] / l11;
    let l22 = (tg.cov[(1, 1)] - l21 * l21).sqrt();
    let mut counts = [0u64; 4];
    for _ in 0..samples {
        let z1: f64 = rng.sample(StandardNormal);
        let z2: f64 = rng.sample(StandardNormal);
        let x1 = tg.mean[0] + l11 * z1;
        let x2 = tg.mean[1] + l21 * z1 + l22 * z2;
        counts[2 * usize::from(x1 > split[0]) + usize::from(x2 > split[1])] += 1;
    }
    let p = Vector4::from_iterator(counts.iter().map(|&c| c as f64 / samples as f64));
    let se = p.map(|q| (q * (1.0 - q) / samples as f64).sqrt());
    (p, se)
}

fn orthant_correctness() -> Outcome {
    let mut closed_form: f64 = 0.0;
    for rho in linspace(-0.99, 0.99, 45) {
        let v = orthant_vector(0.0, 0.0, rho);
        closed_form = closed_form.max((v[0] - (0.25 + rho.asin() / (2.0 * PI))).abs());
    }
    // zero-mean tomograms of a squeezed vacuum
    let p = trigonometric_params();
    let sq = squeezed(0.8).unwrap();
    for (f1, f2) in FrameQuad::reference_left().pairs() {
        let m = moments(&sq, 0.3, &p);
        let tg = symplectic_tomogram(&m, &f1, &f2).unwrap();
        let v = quadrant_probabilities(&m, &f1, &f2, &ProductPartition::default()).unwrap();
        closed_form = closed_form.max((v[0] - (0.25 + tg.correlation().asin() / (2.0 * PI))).abs());
    }
    let partition = ProductPartition {
        split1: 0.3,
        split2: -0.2,
    };
    let mut worst_ratio: f64 = 0.0;
    let cases = [
        (
            coherent(0.8, 0.1),
            0.4,
            FrameQuad::reference_right().pairs()[1],
        ),
        (
            squeezed(0.8).unwrap(),
            0.2,
            FrameQuad::reference_left().pairs()[2],
        ),
    ];
    for (seed, (state, t, (f1, f2))) in cases.iter().enumerate() {
        let m = moments(state, *t, &p);
        let exact = quadrant_probabilities(&m, f1, f2, &partition).unwrap();
        let tg = symplectic_tomogram(&m, f1, f2).unwrap();
        let (mc, se) = monte_carlo(
            &tg,
            [partition.split1, partition.split2],
            10_000_000,
            1000 + seed as u64,
        );
        for i in 0..4 {
            let tol = (4.0 * se[i]).max(1e-9);
            worst_ratio = worst_ratio.max((exact[i] - mc[i]).abs() / tol);
        }
    }
    outcome(
        closed_form <= 1e-9 && worst_ratio <= 1.0,
        format!("max closed-form error {closed_form:.1e}; worst Monte Carlo deviation {worst_ratio:.2} of allowance (1e7 samples)"),
    )
}

fn conserved_charge() -> Outcome {
    let trig = trigonometric_params();
    let hyp = hyperbolic_params();
    let states = [
        squeezed(0.8).unwrap(),
        squeezed(0.3).unwrap(),
        coherent(0.8, 0.1),
        coherent(1.0, 3.0),
        general_gaussian(),
    ];
    let mut worst: f64 = 0.0;
    for state in &states {
        for (p, end) in [(trig, 2.0 * half_period(&trig)), (hyp, 50.0)] {
            let n0 = photon_number_difference(&state.initial_moments(), &p);
            for t in linspace(0.0, end, 200) {
                worst =
                    worst.max((photon_number_difference(&moments(state, t, &p), &p) - n0).abs());
            }
        }
    }
    outcome(
        worst <= 1e-9,
        format!("max drift of N1 - N2 = {worst:.1e} (five states, both regimes)"),
    )
}

fn product_bound() -> Outcome {
    let c = CoefficientMatrix::default();
    let mut rng = StdRng::seed_from_u64(14);
    let mut worst: f64 = 0.0;
    for _ in 0..10_000 {
        let v: [f64; 4] = std::array::from_fn(|_| rng.random_range(0.0..=1.0));
        worst = worst
            .max(bell_parameter(&StochasticMatrix4::product(v[0], v[1], v[2], v[3]), &c).abs());
    }
    let corner = |x: f64, y: f64, t: f64, z: f64| {
        bell_parameter(&StochasticMatrix4::product(x, y, t, z), &c)
    };
    let (mut clo, mut chi) = (f64::INFINITY, f64::NEG_INFINITY);
    for bits in 0..16 {
        let b = |k: usize| ((bits >> k) & 1) as f64;
        let v = corner(b(0), b(1), b(2), b(3));
        clo = clo.min(v);
        chi = chi.max(v);
    }
    let (mut glo, mut ghi) = (f64::INFINITY, f64::NEG_INFINITY);
    let g = linspace(0.0, 1.0, 21);
    for &x in &g {
        for &y in &g {
            for &t in &g {
                for &z in &g {
                    let v = corner(x, y, t, z);
                    glo = glo.min(v);
                    ghi = ghi.max(v);
                }
            }
        }
    }
    outcome(
        worst <= 2.0 && (glo - clo).abs() < 1e-12 && (ghi - chi).abs() < 1e-12,
        format!("max |B| = {worst:.6} over 1e4 products; grid extrema [{glo}, {ghi}] = corner extrema [{clo}, {chi}]"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 14] = [
        ("symplectic identity", symplectic_identity),
        ("purity conservation", purity_conservation),
        ("entropy oracle agreement", entropy_oracle),
        ("entropy periodicity", periodicity),
        ("entanglement generation", entanglement_generation),
        ("covariance closed forms", covariance_equivalence),
        ("squeeze parameter", eta_consistency),
        ("tomogram normalization", tomogram_normalization),
        ("Bell bound", bell_bound),
        ("separability gap", separability),
        ("stripe portrait violation", nosignaling_violation),
        ("orthant probabilities", orthant_correctness),
        ("conserved charge", conserved_charge),
        ("product bound", product_bound),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {verdict} {name}: {}", i + 1, o.detail);
        if !o.pass {
            failed.push(i + 1);
        }
    }
    if failed.is_empty() {
        println!("all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!(
            "{} of {} criteria failed: {failed:?}",
            failed.len(),
            criteria.len()
        );
        ExitCode::FAILURE
    }
}
