//! CSV and JSON writers.
//!
//! Floats are written with Rust's shortest round-trip formatting, so parsing
//! a file back yields bit-identical values.

use crate::config::{FieldMapConfig, RunConfig, UmCurveConfig};
use crate::dynamics::{series, EnsembleResult, Outcome, StepStats};
use crate::error::{Error, Result};
use crate::scenario::Prepared;
use crate::units::PhysicalSetup;
use crate::weber::{find_um, irradiance_w_cm2, shape_field, BeamSpec, TransverseField};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

pub const TRAJECTORY_HEADER: &str = "atom_id,t,x,y,z,vx,vy,vz,theta_d,A_atomic,Kx_uK,Kyz_uK";
pub const FIELD_MAP_HEADER: &str = "x_lambda,y_lambda,intensity_W_cm2,re_psi,im_psi";
pub const UM_HEADER: &str = "a,u_M";

fn num(out: &mut String, v: f64) {
    write!(out, "{v:?}").unwrap();
}

fn row(out: &mut String, values: &[f64]) {
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        num(out, *v);
    }
    out.push('\n');
}

pub fn trajectories_csv(result: &EnsembleResult, setup: &PhysicalSetup, a_scale: f64) -> String {
    let mut out = String::from(TRAJECTORY_HEADER);
    out.push('\n');
    for (atom, s) in result.successes() {
        let samples = &s.trajectory.samples;
        for (st, o) in samples.iter().zip(series(samples, setup, a_scale)) {
            write!(out, "{},", atom.id).unwrap();
            let [x, y, z] = st.position;
            let [vx, vy, vz] = st.velocity;
            row(&mut out, &[st.time, x, y, z, vx, vy, vz, o.theta_d, o.a_atomic, o.kx_uk, o.kyz_uk]);
        }
    }
    out
}

/// Intensity and `ψ` on a regular grid. The intensity at the beam axis
/// itself is written as `NaN` (the parabolic basis is singular there).
pub fn field_map_csv(spec: &BeamSpec, field: &dyn TransverseField, cfg: &FieldMapConfig) -> Result<String> {
    let coord = |r: [f64; 2], n: usize, i: usize| {
        if n == 1 {
            r[0]
        } else {
            r[0] + (r[1] - r[0]) * i as f64 / (n - 1) as f64
        }
    };
    let rows = (0..cfg.ny)
        .into_par_iter()
        .map(|j| {
            let y = coord(cfg.y_range, cfg.ny, j);
            let mut out = String::new();
            for i in 0..cfg.nx {
                let x = coord(cfg.x_range, cfg.nx, i);
                let (intensity, psi) = match field.cartesian(x, y) {
                    Ok(d) => {
                        let (e, _) = shape_field(spec, &d);
                        (irradiance_w_cm2(&e.map(|c| c * spec.amplitude_scale)), d.psi)
                    }
                    Err(Error::Origin) => {
                        let p = crate::weber::ParabolicPoint::new(0.0, 0.0);
                        (f64::NAN, field.parabolic(p)?.psi)
                    }
                    Err(e) => return Err(e),
                };
                row(&mut out, &[x, y, intensity, psi.re, psi.im]);
            }
            Ok(out)
        })
        .collect::<Result<Vec<String>>>()?;
    Ok(format!("{FIELD_MAP_HEADER}\n{}", rows.concat()))
}

/// `u_M` against the order `a` for the parity and `k_z` of `spec`.
pub fn um_curve(spec: &BeamSpec, cfg: &UmCurveConfig) -> Result<Vec<(f64, f64)>> {
    let n = ((cfg.a_max - cfg.a_min) / cfg.a_step + 1e-9).floor() as usize + 1;
    (0..n)
        .into_par_iter()
        .map(|i| {
            let a = cfg.a_min + i as f64 * cfg.a_step;
            let s = BeamSpec { order_a: a, ..spec.clone() };
            Ok((a, find_um(&s)?))
        })
        .collect()
}

pub fn um_curve_csv(points: &[(f64, f64)]) -> String {
    let mut out = String::from(UM_HEADER);
    out.push('\n');
    for &(a, u) in points {
        row(&mut out, &[a, u]);
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct Quantiles {
    pub min: f64,
    pub q25: f64,
    pub median: f64,
    pub q75: f64,
    pub max: f64,
    pub mean: f64,
    pub std: f64,
}

impl Quantiles {
    pub fn of(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let mut v = values.to_vec();
        v.sort_by(f64::total_cmp);
        let q = |p: f64| {
            let pos = p * (v.len() - 1) as f64;
            let (lo, hi) = (pos.floor() as usize, pos.ceil() as usize);
            v[lo] + (v[hi] - v[lo]) * (pos - lo as f64)
        };
        let mean = v.iter().sum::<f64>() / v.len() as f64;
        let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / v.len() as f64;
        Some(Quantiles { min: v[0], q25: q(0.25), median: q(0.5), q75: q(0.75), max: v[v.len() - 1], mean, std: var.sqrt() })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassSummary {
    pub count: usize,
    pub abs_theta_d: Option<Quantiles>,
    pub a_atomic: Option<Quantiles>,
    pub kx_uk: Option<Quantiles>,
    pub kyz_uk: Option<Quantiles>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Diagnostics {
    pub steps: StepStats,
    pub sentinel_fraction: f64,
    pub failures: Vec<(usize, String)>,
    /// Largest `|z − z₀|` over all samples (λ).
    pub max_z_excursion: f64,
    /// Time of the largest `|dv_y/dt|` per atom (1/Γ).
    pub t_peak_ay: Option<Quantiles>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub atoms: usize,
    pub u_m: f64,
    pub amplitude_scale: f64,
    pub classes: BTreeMap<&'static str, ClassSummary>,
    pub abs_theta_d: Option<Quantiles>,
    pub initial_a_atomic: Option<Quantiles>,
    pub diagnostics: Diagnostics,
    /// Largest final-position change (λ) when rerun with direct evaluation,
    /// and the number of atoms rerun.
    pub validation: Option<(f64, usize)>,
}

impl Summary {
    pub fn new(run: &Prepared, result: &EnsembleResult) -> Self {
        let mut classes = BTreeMap::new();
        for class in Outcome::ALL {
            let members: Vec<_> = result.successes().filter(|(_, s)| s.class == class).map(|(_, s)| s).collect();
            let pick = |f: &dyn Fn(&crate::dynamics::AtomSuccess) -> f64| {
                Quantiles::of(&members.iter().map(|s| f(s)).collect::<Vec<_>>())
            };
            classes.insert(
                class.name(),
                ClassSummary {
                    count: members.len(),
                    abs_theta_d: pick(&|s| s.final_obs.theta_d.abs()),
                    a_atomic: pick(&|s| s.final_obs.a_atomic),
                    kx_uk: pick(&|s| s.final_obs.kx_uk),
                    kyz_uk: pick(&|s| s.final_obs.kyz_uk),
                },
            );
        }
        let stats = result.total_stats();
        let all: Vec<_> = result.successes().map(|(_, s)| s).collect();
        let max_z_excursion = result
            .successes()
            .flat_map(|(a, s)| s.trajectory.samples.iter().map(move |p| (p.position[2] - a.initial.position[2]).abs()))
            .fold(0.0, f64::max);
        Summary {
            atoms: result.atoms.len(),
            u_m: run.u_m,
            amplitude_scale: run.spec.amplitude_scale,
            classes,
            abs_theta_d: Quantiles::of(&all.iter().map(|s| s.final_obs.theta_d.abs()).collect::<Vec<_>>()),
            initial_a_atomic: Quantiles::of(&all.iter().map(|s| s.initial_obs.a_atomic).collect::<Vec<_>>()),
            diagnostics: Diagnostics {
                steps: stats,
                sentinel_fraction: stats.sentinel_evals as f64 / stats.force_evals.max(1) as f64,
                failures: result
                    .atoms
                    .iter()
                    .filter_map(|a| a.outcome.as_ref().err().map(|e| (a.id, e.clone())))
                    .collect(),
                max_z_excursion,
                t_peak_ay: Quantiles::of(&all.iter().map(|s| s.trajectory.t_peak_ay).collect::<Vec<_>>()),
            },
            validation: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunMetadata<'a> {
    pub command: &'a str,
    pub version: &'a str,
    pub seed: u64,
    pub amplitude_scale: f64,
    pub config: &'a RunConfig,
}

impl<'a> RunMetadata<'a> {
    pub fn new(command: &'a str, config: &'a RunConfig, amplitude_scale: f64) -> Self {
        RunMetadata { command, version: env!("CARGO_PKG_VERSION"), seed: config.cloud.seed, amplitude_scale, config }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("summary types serialise");
    s.push('\n');
    s
}

/// Writes `contents` to `dir/name`, creating `dir` if needed.
pub fn write_file(dir: &Path, name: &str, contents: &str) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let mut f = std::fs::File::create(dir.join(name))?;
    f.write_all(contents.as_bytes())?;
    Ok(())
}

/// Parses a CSV produced by this module into rows of floats (header skipped).
pub fn read_csv(text: &str) -> std::result::Result<Vec<Vec<f64>>, std::num::ParseFloatError> {
    text.lines().skip(1).filter(|l| !l.is_empty()).map(|l| l.split(',').map(str::parse).collect()).collect()
}
