//! Self-checks run by the `validate` command.

use crate::config::RunConfig;
use crate::dynamics::{integrate, sample_cloud, AtomState, ForceContext, IntegratorConfig};
use crate::error::Result;
use crate::force::ForceModel;
use crate::scenario::Prepared;
use crate::weber::{
    find_um, scalar_psi_spectrum, BeamSpec, DirectField, ParabolicPoint, Parity, QuadratureConfig, TransverseField,
};
use num_complex::Complex64;
use serde::Serialize;
use std::sync::Arc;

/// Probe points (λ) for field comparisons, clear of the axis and of `y = 0`.
pub const PROBE_POINTS: [(f64, f64); 10] = [
    (3.1, 1.7),
    (-4.2, 2.9),
    (7.5, -6.3),
    (0.9, 0.4),
    (-1.3, -8.8),
    (12.0, 3.3),
    (-10.5, -2.2),
    (5.5, 9.1),
    (-6.6, 6.6),
    (2.2, -12.5),
];

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, detail: detail.into() }
    }
}

/// Relative residual of `b ≈ c·a` after fitting the single complex `c`.
pub fn fitted_residual(a: &[Complex64], b: &[Complex64]) -> f64 {
    let num: Complex64 = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
    let den: f64 = a.iter().map(|x| x.norm_sqr()).sum();
    let c = num / den;
    let r: f64 = a.iter().zip(b).map(|(x, y)| (y - c * x).norm_sqr()).sum();
    let nb: f64 = b.iter().map(|y| y.norm_sqr()).sum();
    (r / nb).sqrt()
}

/// Hypergeometric against angular-spectrum `ψ` on the probe set.
pub fn oracle_residual(spec: &BeamSpec) -> Result<f64> {
    let q = QuadratureConfig::default();
    let direct = DirectField::new(spec);
    let mut a = Vec::new();
    let mut b = Vec::new();
    for &(x, y) in &PROBE_POINTS {
        a.push(direct.parabolic(ParabolicPoint::from_cartesian(x, y))?.psi);
        b.push(scalar_psi_spectrum(spec, x, y, &q)?);
    }
    Ok(fitted_residual(&a, &b))
}

pub fn run_checks(cfg: &RunConfig) -> Result<Vec<Check>> {
    let mut out = Vec::new();

    for parity in [Parity::Even, Parity::Odd] {
        for a in [-5.0, -2.0, 0.0, 5.0] {
            let spec = BeamSpec { parity, order_a: a, ..cfg.beam.clone() };
            let r = oracle_residual(&spec)?;
            out.push(Check::new(format!("spectrum oracle {parity:?} a={a}"), r <= 1e-6, format!("residual {r:.3e}")));
        }
    }

    let ums = [0.0, 1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|&a| find_um(&BeamSpec { order_a: a, parity: Parity::Even, ..cfg.beam.clone() }))
        .collect::<Result<Vec<_>>>()?;
    let mono = ums.windows(2).all(|w| w[1] > w[0]);
    out.push(Check::new("u_M increasing in |a|", mono, format!("{ums:.4?}")));

    let run = Prepared::new(cfg)?;
    let model = run.ctx.model();
    let direct = DirectField::new(&run.spec);
    let mut worst_v0 = 0.0f64;
    let mut worst_pp = 0.0f64;
    let mut worst_table = 0.0f64;
    for &(x, y) in &PROBE_POINTS {
        let d = direct.cartesian(10.0 * x, 10.0 * y)?;
        let t = run.ctx.field().cartesian(10.0 * x, 10.0 * y)?;
        worst_table = worst_table.max((t.psi - d.psi).norm() / d.psi.norm().max(1e-300));
        if let Some(s) = model.sample(&d, 0.0, [0.0; 3]) {
            worst_pp = worst_pp.max((s.p_prime - s.p).abs() / s.p);
            let f = model.mean_force(&s, [0.0; 3]).value();
            let k = s.p / (1.0 - s.p);
            for i in 0..3 {
                let want = k * (0.5 * s.beta[i] - model.detuning() * s.alpha[i]);
                worst_v0 = worst_v0.max((f[i] - want).abs() / want.abs().max(1e-300));
            }
        }
    }
    out.push(Check::new("rest force reduction", worst_v0 <= 1e-12, format!("max rel {worst_v0:.2e}")));
    out.push(Check::new("p' = p at rest", worst_pp <= 1e-15, format!("max rel {worst_pp:.2e}")));
    out.push(Check::new("grid matches direct psi", worst_table <= 1e-8, format!("max rel {worst_table:.2e}")));

    let dark = ForceModel::new(&BeamSpec { amplitude_scale: 0.0, irradiance: 0.0, ..cfg.beam.clone() }, &cfg.setup, cfg.sim.force_params())?;
    let ctx = ForceContext::new(dark, Arc::new(DirectField::new(&cfg.beam)), &cfg.setup, None);
    let icfg = IntegratorConfig { t_max: 1e4, x_exit: None, ..cfg.sim.integrator(1e3) };
    let s0 = AtomState::new([150.0, 3.0, 0.0], [-0.6e-3, 0.0, 0.0]);
    let tr = integrate(s0, &ctx, &icfg)?;
    let g = ctx.gravity();
    let want = 150.0 - 0.6e-3 * 1e4 - 0.5 * g * 1e8;
    let err = (tr.final_state().position[0] - want).abs();
    out.push(Check::new("free fall closed form", err <= 1e-6, format!("|dx| {err:.2e} λ")));

    let c1 = sample_cloud(&cfg.cloud, run.a_scale)?;
    let c2 = sample_cloud(&cfg.cloud, run.a_scale)?;
    out.push(Check::new("cloud sampling deterministic", c1 == c2, format!("{} atoms", c1.len())));

    let mut worst_mirror = 0.0f64;
    for &(x, y) in &PROBE_POINTS {
        let p = direct.parabolic(ParabolicPoint::from_cartesian(x, y))?.psi.norm();
        let m = direct.parabolic(ParabolicPoint::from_cartesian(x, -y))?.psi.norm();
        worst_mirror = worst_mirror.max((p - m).abs() / p.max(1e-300));
    }
    out.push(Check::new("|psi| mirror symmetric in y", worst_mirror <= 1e-12, format!("max rel {worst_mirror:.2e}")));
    Ok(out)
}

pub fn report(checks: &[Check]) -> String {
    let mut s = String::new();
    for c in checks {
        s.push_str(&format!("{} {}: {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail));
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    s.push_str(&format!("{} checks, {} failed\n", checks.len(), failed));
    s
}
