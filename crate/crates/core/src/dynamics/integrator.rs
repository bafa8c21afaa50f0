//! Dormand–Prince 5(4) with PI step control and Hermite dense output.

use super::{AtomState, ForceContext};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct IntegratorConfig {
    /// Relative/absolute step tolerance, in `[1e-12, 1e-4]`.
    pub tol: f64,
    /// 1/Γ
    pub t_max: f64,
    /// Stop once `x` drops below this (λ).
    pub x_exit: Option<f64>,
    /// Output interval (1/Γ).
    pub cadence: f64,
    /// Absolute scale of position errors (λ).
    pub position_scale: f64,
    /// Absolute scale of velocity errors (λΓ).
    pub velocity_scale: f64,
    pub h_min: f64,
    pub max_steps: usize,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig {
            tol: 1e-8,
            t_max: 1.6e5,
            x_exit: Some(-150.0),
            cadence: 1000.0,
            position_scale: 1.0,
            velocity_scale: 1e-3,
            h_min: 1e-6,
            max_steps: 5_000_000,
        }
    }
}

impl IntegratorConfig {
    pub fn validate(&self) -> Result<()> {
        if !(1e-12..=1e-4).contains(&self.tol) {
            return Err(Error::InvalidParameter(format!("sim.tol must lie in [1e-12, 1e-4], got {}", self.tol)));
        }
        if !(self.t_max > 0.0 && self.t_max.is_finite()) {
            return Err(Error::InvalidParameter("sim.t_max must be positive".into()));
        }
        if !(self.cadence > 0.0) {
            return Err(Error::InvalidParameter("sim.cadence must be positive".into()));
        }
        if !(self.position_scale > 0.0 && self.velocity_scale > 0.0 && self.h_min > 0.0) {
            return Err(Error::InvalidParameter("integrator scales must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExitReason {
    TMax,
    XExit,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct StepStats {
    pub accepted: usize,
    pub rejected: usize,
    pub force_evals: usize,
    pub sentinel_evals: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    /// States at `t = 0, cadence, 2·cadence, …` plus the final state.
    pub samples: Vec<AtomState>,
    pub exit: ExitReason,
    pub stats: StepStats,
    /// Largest `|dv_y/dt|` seen at step starts, and when.
    pub peak_ay: f64,
    pub t_peak_ay: f64,
}

impl Trajectory {
    pub fn initial(&self) -> &AtomState {
        &self.samples[0]
    }

    pub fn final_state(&self) -> &AtomState {
        self.samples.last().expect("trajectory has at least one sample")
    }
}

const C: [f64; 6] = [1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [&[f64]; 6] = [
    &[1.0 / 5.0],
    &[3.0 / 40.0, 9.0 / 40.0],
    &[44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0],
    &[19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0],
    &[9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0],
    &[35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

type Vec6 = [f64; 6];

struct Rhs<'a> {
    ctx: &'a ForceContext,
    stats: StepStats,
}

impl Rhs<'_> {
    fn eval(&mut self, t: f64, y: &Vec6) -> Result<Vec6> {
        let a = self.ctx.acceleration(&AtomState::from_vec(*y, t))?;
        self.stats.force_evals += 1;
        if a.sentinel {
            self.stats.sentinel_evals += 1;
        }
        let [ax, ay, az] = a.value;
        Ok([y[3], y[4], y[5], ax, ay, az])
    }
}

/// Hermite interpolation across one step `[t0, t0 + h]` at fraction `s`.
/// Position is quintic in (x, v, a), velocity cubic in (v, a).
fn hermite(y0: &Vec6, f0: &Vec6, y1: &Vec6, f1: &Vec6, h: f64, s: f64) -> Vec6 {
    let (s2, s3) = (s * s, s * s * s);
    let (s4, s5) = (s3 * s, s3 * s2);
    let q = [
        1.0 - 10.0 * s3 + 15.0 * s4 - 6.0 * s5,
        s - 6.0 * s3 + 8.0 * s4 - 3.0 * s5,
        0.5 * s2 - 1.5 * s3 + 1.5 * s4 - 0.5 * s5,
        10.0 * s3 - 15.0 * s4 + 6.0 * s5,
        -4.0 * s3 + 7.0 * s4 - 3.0 * s5,
        0.5 * s3 - s4 + 0.5 * s5,
    ];
    let c = [1.0 - 3.0 * s2 + 2.0 * s3, s - 2.0 * s2 + s3, 3.0 * s2 - 2.0 * s3, -s2 + s3];
    let mut out = [0.0; 6];
    for i in 0..3 {
        out[i] = q[0] * y0[i]
            + q[1] * h * y0[i + 3]
            + q[2] * h * h * f0[i + 3]
            + q[3] * y1[i]
            + q[4] * h * y1[i + 3]
            + q[5] * h * h * f1[i + 3];
        out[i + 3] = c[0] * y0[i + 3] + c[1] * h * f0[i + 3] + c[2] * y1[i + 3] + c[3] * h * f1[i + 3];
    }
    out
}

/// Integrates one atom from `initial` until `t_max` or the exit floor.
pub fn integrate(initial: AtomState, ctx: &ForceContext, cfg: &IntegratorConfig) -> Result<Trajectory> {
    cfg.validate()?;
    if !initial.is_finite() {
        return Err(Error::NonFinite { t: initial.time });
    }
    let mut rhs = Rhs { ctx, stats: StepStats::default() };
    let t_end = initial.time + cfg.t_max;
    let mut t = initial.time;
    let mut y = initial.to_vec();
    let mut f = rhs.eval(t, &y)?;
    let scale = [
        cfg.position_scale,
        cfg.position_scale,
        cfg.position_scale,
        cfg.velocity_scale,
        cfg.velocity_scale,
        cfg.velocity_scale,
    ];

    let mut samples = vec![initial];
    let mut next_out = initial.time + cfg.cadence;
    let mut peak_ay = f[4].abs();
    let mut t_peak_ay = t;

    // initial step from the velocity/acceleration ratio
    let vmag = (y[3] * y[3] + y[4] * y[4] + y[5] * y[5]).sqrt();
    let amag = (f[3] * f[3] + f[4] * f[4] + f[5] * f[5]).sqrt();
    let mut h = (cfg.tol.powf(0.2) * cfg.position_scale / vmag.max(1e-30))
        .min(cfg.tol.powf(0.2) * cfg.velocity_scale / amag.max(1e-30))
        .min(cfg.t_max)
        .max(cfg.h_min);
    let mut err_old = 1e-4f64;

    let mut k = [[0.0; 6]; 7];
    while t < t_end {
        if rhs.stats.accepted + rhs.stats.rejected >= cfg.max_steps {
            return Err(Error::StepUnderflow { t, position: [y[0], y[1], y[2]] });
        }
        let last = t + h >= t_end;
        if last {
            h = t_end - t;
        }
        k[0] = f;
        for st in 0..6 {
            let mut yt = y;
            for (j, a) in A[st].iter().enumerate() {
                for i in 0..6 {
                    yt[i] += h * a * k[j][i];
                }
            }
            if st == 5 {
                // fifth-order solution, FSAL
                if !yt.iter().all(|v| v.is_finite()) {
                    return Err(Error::NonFinite { t: t + h });
                }
                k[6] = rhs.eval(t + h, &yt)?;
                let mut err = 0.0f64;
                for i in 0..6 {
                    let e: f64 = (0..7).map(|j| E[j] * k[j][i]).sum::<f64>() * h;
                    let sc = cfg.tol * (scale[i] + y[i].abs().max(yt[i].abs()));
                    err = err.max((e / sc).abs());
                }
                if !err.is_finite() {
                    return Err(Error::NonFinite { t: t + h });
                }
                if err <= 1.0 {
                    rhs.stats.accepted += 1;
                    let y_new = yt;
                    let f_new = k[6];
                    // dense output at the cadence
                    while next_out < t + h && next_out < t_end {
                        let s = (next_out - t) / h;
                        samples.push(AtomState::from_vec(hermite(&y, &f, &y_new, &f_new, h, s), next_out));
                        next_out += cfg.cadence;
                    }
                    if let Some(x_exit) = cfg.x_exit {
                        if y_new[0] < x_exit {
                            let s = locate_exit(&y, &f, &y_new, &f_new, h, x_exit);
                            let te = t + s * h;
                            samples.retain(|p| p.time < te);
                            samples.push(AtomState::from_vec(hermite(&y, &f, &y_new, &f_new, h, s), te));
                            let stats = rhs.stats;
                            return Ok(Trajectory { samples, exit: ExitReason::XExit, stats, peak_ay, t_peak_ay });
                        }
                    }
                    t = if last { t_end } else { t + h };
                    y = y_new;
                    f = f_new;
                    if f[4].abs() > peak_ay {
                        peak_ay = f[4].abs();
                        t_peak_ay = t;
                    }
                    let fac = 0.9 * err.max(1e-10).powf(-0.17) * err_old.powf(0.04);
                    h *= fac.clamp(0.2, 5.0);
                    err_old = err.max(1e-4);
                } else {
                    rhs.stats.rejected += 1;
                    h *= (0.9 * err.powf(-0.2)).max(0.2);
                }
                if h < cfg.h_min && t < t_end {
                    return Err(Error::StepUnderflow { t, position: [y[0], y[1], y[2]] });
                }
                break;
            }
            k[st + 1] = rhs.eval(t + C[st] * h, &yt)?;
        }
    }
    samples.push(AtomState::from_vec(y, t_end));
    Ok(Trajectory { samples, exit: ExitReason::TMax, stats: rhs.stats, peak_ay, t_peak_ay })
}

/// Fraction of the step where the dense `x` crosses `x_exit`.
fn locate_exit(y0: &Vec6, f0: &Vec6, y1: &Vec6, f1: &Vec6, h: f64, x_exit: f64) -> f64 {
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if hermite(y0, f0, y1, f1, h, mid)[0] < x_exit {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}
