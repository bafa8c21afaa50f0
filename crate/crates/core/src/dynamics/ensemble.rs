use super::integrator::{integrate, IntegratorConfig, StepStats, Trajectory};
use super::observables::{observables, Observables};
use super::{AtomState, ForceContext};
use crate::error::Result;
use crate::units::PhysicalSetup;
use crate::weber::{bright_parabola_y, BeamSpec};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    DarkDeflected,
    BrightStrong,
    Weak,
    FocusedChannel,
}

impl Outcome {
    pub const ALL: [Outcome; 4] = [Outcome::DarkDeflected, Outcome::BrightStrong, Outcome::Weak, Outcome::FocusedChannel];

    pub fn name(self) -> &'static str {
        match self {
            Outcome::DarkDeflected => "dark_deflected",
            Outcome::BrightStrong => "bright_strong",
            Outcome::Weak => "weak",
            Outcome::FocusedChannel => "focused_channel",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ClassifyConfig {
    /// Dark arrivals: `|y₀| < dark_band_factor · u_M²`.
    pub dark_band_factor: f64,
    /// Final `|θ_d|` (rad) above which an atom counts as deflected.
    pub theta_threshold: f64,
    /// Half-width (λ) of the band around a bright parabola.
    pub bright_halfwidth: f64,
    /// Number of bright parabolas considered.
    pub bright_count: usize,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig { dark_band_factor: 2.0, theta_threshold: 0.05, bright_halfwidth: 2.0, bright_count: 8 }
    }
}

/// Outcome rules evaluated against the beam geometry at the release line.
#[derive(Clone, Debug, PartialEq)]
pub struct Classifier {
    pub cfg: ClassifyConfig,
    pub u_m: f64,
    /// `|y|` of the bright parabolas at the release abscissa.
    pub bright_y: Vec<f64>,
}

impl Classifier {
    /// `maxima` are the dark-factor maxima `s_j` (first one is `u_M`).
    pub fn new(cfg: ClassifyConfig, spec: &BeamSpec, maxima: &[f64], x0: f64) -> Self {
        let bright_y = maxima
            .iter()
            .take(cfg.bright_count)
            .filter_map(|&s| bright_parabola_y(spec, s, x0))
            .map(f64::abs)
            .collect();
        Classifier { cfg, u_m: maxima.first().copied().unwrap_or(0.0), bright_y }
    }

    pub fn in_dark_band(&self, y0: f64) -> bool {
        y0.abs() < self.cfg.dark_band_factor * self.u_m * self.u_m
    }

    pub fn on_bright_parabola(&self, y0: f64) -> bool {
        self.bright_y.iter().any(|&yb| (y0.abs() - yb).abs() <= self.cfg.bright_halfwidth)
    }

    pub fn classify(&self, traj: &Trajectory) -> Outcome {
        let first = traj.initial();
        let last = traj.final_state();
        let theta = super::observables::deflection_angle(first, last).abs();
        let y0 = first.position[1];
        let deflected = theta > self.cfg.theta_threshold;
        if deflected && self.in_dark_band(y0) {
            return Outcome::DarkDeflected;
        }
        if deflected && self.on_bright_parabola(y0) {
            return Outcome::BrightStrong;
        }
        // bent toward the axis by more than the threshold angle after passing x = 0
        let kick = last.velocity[1] - first.velocity[1];
        let bend = (kick.abs() / last.velocity[0].abs()).atan();
        if last.position[0] < 0.0 && kick * last.position[1] < 0.0 && bend > self.cfg.theta_threshold {
            return Outcome::FocusedChannel;
        }
        Outcome::Weak
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AtomResult {
    pub id: usize,
    pub initial: AtomState,
    pub outcome: std::result::Result<AtomSuccess, String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AtomSuccess {
    pub trajectory: Trajectory,
    pub class: Outcome,
    pub initial_obs: Observables,
    pub final_obs: Observables,
}

impl AtomResult {
    pub fn success(&self) -> Option<&AtomSuccess> {
        self.outcome.as_ref().ok()
    }
}

#[derive(Clone, Debug)]
pub struct EnsembleResult {
    pub atoms: Vec<AtomResult>,
}

impl EnsembleResult {
    pub fn successes(&self) -> impl Iterator<Item = (&AtomResult, &AtomSuccess)> {
        self.atoms.iter().filter_map(|a| a.success().map(|s| (a, s)))
    }

    pub fn failures(&self) -> usize {
        self.atoms.iter().filter(|a| a.outcome.is_err()).count()
    }

    pub fn total_stats(&self) -> StepStats {
        let mut t = StepStats::default();
        for (_, s) in self.successes() {
            t.accepted += s.trajectory.stats.accepted;
            t.rejected += s.trajectory.stats.rejected;
            t.force_evals += s.trajectory.stats.force_evals;
            t.sentinel_evals += s.trajectory.stats.sentinel_evals;
        }
        t
    }
}

/// Ensemble runner: immutable forces plus the per-atom bookkeeping.
pub struct Ensemble<'a> {
    pub ctx: &'a ForceContext,
    pub integrator: &'a IntegratorConfig,
    pub classifier: &'a Classifier,
    pub setup: &'a PhysicalSetup,
    pub a_scale: f64,
}

impl Ensemble<'_> {
    pub fn run_atom(&self, id: usize, initial: AtomState) -> AtomResult {
        let outcome = integrate(initial, self.ctx, self.integrator)
            .map(|trajectory| {
                let class = self.classifier.classify(&trajectory);
                let initial_obs = observables(&initial, &initial, self.setup, self.a_scale);
                let final_obs = observables(&initial, trajectory.final_state(), self.setup, self.a_scale);
                AtomSuccess { trajectory, class, initial_obs, final_obs }
            })
            .map_err(|e| e.to_string());
        AtomResult { id, initial, outcome }
    }

    /// Parallel over atoms on the current rayon pool; output in atom order.
    pub fn run(&self, atoms: &[AtomState]) -> EnsembleResult {
        let atoms = atoms.par_iter().enumerate().map(|(i, a)| self.run_atom(i, *a)).collect();
        EnsembleResult { atoms }
    }

    pub fn run_sequential(&self, atoms: &[AtomState]) -> EnsembleResult {
        EnsembleResult { atoms: atoms.iter().enumerate().map(|(i, a)| self.run_atom(i, *a)).collect() }
    }
}

/// Reruns every `stride`-th atom with `direct` forces and returns the
/// largest final-position difference (λ) together with the atom count.
pub fn revalidate(result: &EnsembleResult, direct: &ForceContext, cfg: &IntegratorConfig, stride: usize) -> Result<(f64, usize)> {
    let picks: Vec<_> = result.successes().step_by(stride.max(1)).collect();
    let diffs = picks
        .par_iter()
        .map(|(a, s)| {
            let t = integrate(a.initial, direct, cfg)?;
            let p = t.final_state().position;
            let q = s.trajectory.final_state().position;
            let d = (0..3).map(|i| (p[i] - q[i]).powi(2)).sum::<f64>().sqrt();
            Ok(if t.exit == s.trajectory.exit { d } else { f64::INFINITY })
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok((diffs.iter().copied().fold(0.0, f64::max), diffs.len()))
}
