//! Task execution and file output.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use paramp_core::bell::{b_tilde, bell_for_state, nosignaling_bell, ProductPartition};
use paramp_core::covariance::{
    coherent_covariance_analytic, evolve_covariance, max_abs_diff, photon_number_difference,
    squeezed_covariance_analytic,
};
use paramp_core::entropy::{analytic_squeezed_entropies, state_entropies};
use paramp_core::tomography::{symplectic_tomogram, tomogram_grid};
use paramp_core::{AmplifierParams, GaussianMoments, Regime};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::scenario::{resolve_states, ResolvedState, Scenario, Task};

/// A CSV file waiting to be written.
pub struct Table {
    pub file: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    fn new(file: String, header: Vec<String>) -> Self {
        Self {
            file,
            header,
            rows: Vec::new(),
        }
    }

    fn column_max_abs(&self, name: &str) -> Option<f64> {
        let j = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[j].abs()).fold(0.0, f64::max))
    }

    fn write(&self, dir: &Path) -> Result<PathBuf> {
        let path = dir.join(&self.file);
        let mut w = csv::Writer::from_path(&path)
            .with_context(|| format!("cannot create {}", path.display()))?;
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|x| x.to_string()))?;
        }
        w.flush()?;
        Ok(path)
    }
}

/// Everything a run produced, before anything touches the disk.
pub struct RunOutput {
    pub tables: Vec<Table>,
    pub summary: Vec<String>,
    pub manifest: Value,
}

fn regime_json(p: &AmplifierParams) -> Value {
    match p.regime() {
        Regime::Trigonometric { nu } => {
            json!({ "kind": "trigonometric", "nu": nu, "half_period": std::f64::consts::PI / nu })
        }
        Regime::Hyperbolic { nu_bar } => json!({ "kind": "hyperbolic", "nu_bar": nu_bar }),
        Regime::Degenerate => json!({ "kind": "degenerate" }),
    }
}

/// Evaluates `f` at every time in parallel; rows keep the order of `times`.
fn sweep<F>(times: &[f64], f: F) -> Result<Vec<Vec<f64>>>
where
    F: Fn(f64) -> Result<Vec<f64>> + Sync,
{
    times
        .par_iter()
        .map(|&t| {
            let mut row = vec![t];
            row.extend(f(t).with_context(|| format!("at t = {t}"))?);
            Ok(row)
        })
        .collect()
}

fn moments_at(state: &ResolvedState, t: f64, p: &AmplifierParams) -> GaussianMoments {
    evolve_covariance(&state.wavefunction.initial_moments(), t, p)
}

pub fn execute(scenario: &Scenario) -> Result<RunOutput> {
    let params = scenario.amplifier.params()?;
    let states = resolve_states(&scenario.states, params.omega_b)?;
    let times = scenario.time.resolve(params.regime().half_period())?;
    let mut tables = Vec::new();
    let mut summary = Vec::new();
    let options = match scenario.task {
        Task::Entropy => {
            let o = &scenario.entropy;
            for s in &states {
                let analytic = o.analytic
                    && s.squeeze
                        .is_some_and(|r| analytic_squeezed_entropies(times[0], r, &params).is_ok());
                let mut header = vec!["t", "S_L", "S_VN"];
                if analytic {
                    header.extend(["S_L_analytic", "S_VN_analytic"]);
                }
                let mut table = Table::new(format!("entropy_{}.csv", s.label), strings(&header));
                table.rows = sweep(&times, |t| {
                    let num = state_entropies(&s.wavefunction, t, &params, o.grid_n, o.half_width)?;
                    let mut row = vec![num.linear, num.von_neumann];
                    if analytic {
                        let a =
                            analytic_squeezed_entropies(t, s.squeeze.unwrap_or_default(), &params)?;
                        row.extend([a.linear, a.von_neumann]);
                    }
                    Ok(row)
                })?;
                if analytic {
                    let worst = table
                        .rows
                        .iter()
                        .map(|r| (r[1] - r[3]).abs().max((r[2] - r[4]).abs()))
                        .fold(0.0, f64::max);
                    summary.push(format!(
                        "{}: max |numeric - analytic| = {worst:.3e}",
                        s.label
                    ));
                }
                tables.push(table);
            }
            serde_json::to_value(o)?
        }
        Task::Bell => {
            let o = &scenario.bell;
            let quads = o.frame_quads()?;
            let partition = ProductPartition {
                split1: o.split[0],
                split2: o.split[1],
            };
            let suffix = |base: &str, name: &str| {
                if quads.len() == 1 {
                    base.to_string()
                } else {
                    format!("{base}_{name}")
                }
            };
            let mut header = vec!["t".to_string()];
            for (name, _) in &quads {
                header.push(suffix("B", name));
                if o.gap {
                    header.push(suffix("B_tilde", name));
                    header.push(suffix("gap", name));
                }
            }
            if o.linear_entropy {
                header.push("S_L".into());
            }
            for s in &states {
                let mut table = Table::new(format!("bell_{}.csv", s.label), header.clone());
                table.rows = sweep(&times, |t| {
                    let m = moments_at(s, t, &params);
                    let mut row = Vec::new();
                    for (_, quad) in &quads {
                        let b = bell_for_state(&m, quad, &partition)?;
                        row.push(b);
                        if o.gap {
                            let bt = b_tilde(&m, quad, &partition)?;
                            row.extend([bt, (b - bt).abs()]);
                        }
                    }
                    if o.linear_entropy {
                        let e = &scenario.entropy;
                        row.push(
                            state_entropies(&s.wavefunction, t, &params, e.grid_n, e.half_width)?
                                .linear,
                        );
                    }
                    Ok(row)
                })?;
                for (name, _) in &quads {
                    let col = suffix("B", name);
                    let max = table.column_max_abs(&col).unwrap_or_default();
                    summary.push(format!("{}: max |{col}| = {max:.6}", s.label));
                }
                tables.push(table);
            }
            json!({ "bell": o, "entropy_grid": if o.linear_entropy { serde_json::to_value(&scenario.entropy)? } else { Value::Null } })
        }
        Task::Nosignal => {
            let o = &scenario.nosignal;
            let frames = o.frames();
            let stripes = o.partition()?;
            for s in &states {
                let mut table = Table::new(
                    format!("nosignal_{}.csv", s.label),
                    strings(&["t", "B_nosignal"]),
                );
                table.rows = sweep(&times, |t| {
                    Ok(vec![nosignaling_bell(
                        &moments_at(s, t, &params),
                        &frames,
                        &stripes,
                    )?])
                })?;
                let max = table.column_max_abs("B_nosignal").unwrap_or_default();
                summary.push(format!("{}: max |B_nosignal| = {max:.6}", s.label));
                tables.push(table);
            }
            serde_json::to_value(o)?
        }
        Task::Covariance => {
            for s in &states {
                let closed_form = |t: f64| -> Option<GaussianMoments> {
                    match (s.squeeze, s.coherent) {
                        (Some(r), _) => squeezed_covariance_analytic(t, r, &params).ok(),
                        (None, true) => Some(coherent_covariance_analytic(t, &params)),
                        _ => None,
                    }
                };
                let analytic = closed_form(times[0]).is_some();
                let mut header = strings(&[
                    "t",
                    "mean_p1",
                    "mean_p2",
                    "mean_q1",
                    "mean_q2",
                    "cov_p1p1",
                    "cov_p1p2",
                    "cov_p1q1",
                    "cov_p1q2",
                    "cov_p2p2",
                    "cov_p2q1",
                    "cov_p2q2",
                    "cov_q1q1",
                    "cov_q1q2",
                    "cov_q2q2",
                    "det",
                    "n1_minus_n2",
                ]);
                if analytic {
                    header.push("analytic_max_diff".into());
                }
                let mut table = Table::new(format!("covariance_{}.csv", s.label), header);
                table.rows = sweep(&times, |t| {
                    let m = moments_at(s, t, &params);
                    let mut row: Vec<f64> = m.mean.iter().copied().collect();
                    for i in 0..4 {
                        for j in i..4 {
                            row.push(m.cov[(i, j)]);
                        }
                    }
                    row.push(m.det());
                    row.push(photon_number_difference(&m, &params));
                    if analytic {
                        let a = closed_form(t).context("closed form unavailable")?;
                        row.push(max_abs_diff(&m.cov, &a.cov));
                    }
                    Ok(row)
                })?;
                if let Some(d) = table.column_max_abs("analytic_max_diff") {
                    summary.push(format!(
                        "{}: max |propagated - closed form| = {d:.3e}",
                        s.label
                    ));
                }
                tables.push(table);
            }
            Value::Null
        }
        Task::Tomogram => {
            let o = &scenario.tomogram;
            let [f1, f2] = o.measurement_frames()?;
            for s in &states {
                let grids: Vec<_> = times
                    .par_iter()
                    .map(|&t| -> Result<_> {
                        let tg = symplectic_tomogram(&moments_at(s, t, &params), &f1, &f2)
                            .with_context(|| format!("at t = {t}"))?;
                        Ok((t, tg, tomogram_grid(&tg, o.grid_n, o.n_sigma)?))
                    })
                    .collect::<Result<_>>()?;
                let mut index = Table::new(
                    format!("tomogram_{}_times.csv", s.label),
                    strings(&[
                        "index", "t", "mean_X1", "mean_X2", "var_X1", "cov_X1X2", "var_X2",
                    ]),
                );
                for (i, (t, tg, grid)) in grids.into_iter().enumerate() {
                    index.rows.push(vec![
                        i as f64,
                        t,
                        tg.mean[0],
                        tg.mean[1],
                        tg.cov[(0, 0)],
                        tg.cov[(0, 1)],
                        tg.cov[(1, 1)],
                    ]);
                    let mut table = Table::new(
                        format!("tomogram_{}_{i:03}.csv", s.label),
                        strings(&["X1", "X2", "W"]),
                    );
                    table.rows = grid.rows().map(|(a, b, w)| vec![a, b, w]).collect();
                    tables.push(table);
                }
                summary.push(format!(
                    "{}: {} tomogram grids of {}x{}",
                    s.label,
                    index.rows.len(),
                    o.grid_n,
                    o.grid_n
                ));
                tables.push(index);
            }
            json!({ "tomogram": o, "frames": [[f1.mu, f1.nu], [f2.mu, f2.nu]] })
        }
    };
    let manifest = json!({
        "name": scenario.name,
        "task": scenario.task.as_str(),
        "library_version": paramp_core::VERSION,
        "amplifier": {
            "omega_a": params.omega_a,
            "omega_b": params.omega_b,
            "detuning": params.big_omega,
            "coupling": params.k,
            "pump_frequency": params.pump_frequency(),
            "regime": regime_json(&params),
        },
        "states": states.iter().map(|s| json!({
            "label": s.label,
            "spec": s.spec,
            "a_g": s.wavefunction.a_g().iter().collect::<Vec<_>>(),
            "b_g": s.wavefunction.b_g().iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "time": {
            "count": times.len(),
            "start": times[0],
            "end": times[times.len() - 1],
            "grid": scenario.time,
        },
        "options": options,
        "outputs": tables.iter().map(|t| json!({ "file": t.file, "columns": t.header, "rows": t.rows.len() })).collect::<Vec<_>>(),
    });
    Ok(RunOutput {
        tables,
        summary,
        manifest,
    })
}

fn strings(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

/// Writes every table and `manifest.json` into `dir`.
pub fn write_outputs(out: &RunOutput, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    let mut paths = Vec::with_capacity(out.tables.len() + 1);
    for t in &out.tables {
        paths.push(t.write(dir)?);
    }
    let manifest = dir.join("manifest.json");
    fs::write(
        &manifest,
        serde_json::to_string_pretty(&out.manifest)? + "\n",
    )
    .with_context(|| format!("cannot write {}", manifest.display()))?;
    paths.push(manifest);
    Ok(paths)
}
