//! Assembly of a runnable simulation from a [`RunConfig`].

use crate::config::{FieldMode, RunConfig};
use crate::dynamics::{
    a_atomic_scale, revalidate, sample_cloud, AtomState, Classifier, Ensemble, EnsembleResult, ForceContext,
    IntegratorConfig,
};
use crate::error::Result;
use crate::force::ForceModel;
use crate::weber::{calibrate_amplitude, dark_factor_maxima, BeamSpec, DirectField, TabulatedField, TransverseField};
use std::sync::Arc;

/// Calibrated beam, force context and classification geometry.
pub struct Prepared {
    pub config: RunConfig,
    /// Beam with `amplitude_scale` filled in.
    pub spec: BeamSpec,
    pub ctx: ForceContext,
    pub integrator: IntegratorConfig,
    pub classifier: Classifier,
    pub u_m: f64,
    pub a_scale: f64,
}

/// Radius (λ) the factor tables must cover for this run.
pub fn table_radius(cfg: &RunConfig) -> f64 {
    let x = cfg.cloud.x0.abs().max(cfg.sim.x_exit.map_or(0.0, f64::abs)).max(cfg.cloud.x0.abs() * 1.5);
    let y = cfg.cloud.y_band[0].abs().max(cfg.cloud.y_band[1].abs()) + 100.0;
    x.hypot(y).max(cfg.calibration.radius()) + 10.0
}

impl Prepared {
    pub fn new(config: &RunConfig) -> Result<Self> {
        config.validate()?;
        let mut spec = config.beam.clone();
        let field: Arc<dyn TransverseField> = match config.sim.field {
            FieldMode::Grid => Arc::new(TabulatedField::new(&spec, table_radius(config), config.sim.table_step)?),
            FieldMode::Direct => Arc::new(DirectField::new(&spec)),
        };
        if spec.amplitude_scale == 0.0 {
            spec.amplitude_scale = calibrate_amplitude(&spec, field.as_ref(), &config.calibration)?;
        }
        let model = ForceModel::new(&spec, &config.setup, config.sim.force_params())?;
        let ctx = ForceContext::new(model, field, &config.setup, config.sim.x_window);
        let maxima = dark_factor_maxima(&spec, config.classify.bright_count.max(1))?;
        let classifier = Classifier::new(config.classify, &spec, &maxima, config.cloud.x0);
        Ok(Prepared {
            integrator: config.sim.integrator(config.output.cadence),
            a_scale: a_atomic_scale(&config.setup, spec.k_perp()),
            u_m: maxima[0],
            config: config.clone(),
            spec,
            ctx,
            classifier,
        })
    }

    pub fn cloud(&self) -> Result<Vec<AtomState>> {
        sample_cloud(&self.config.cloud, self.a_scale)
    }

    pub fn ensemble(&self) -> Ensemble<'_> {
        Ensemble {
            ctx: &self.ctx,
            integrator: &self.integrator,
            classifier: &self.classifier,
            setup: &self.config.setup,
            a_scale: self.a_scale,
        }
    }

    pub fn run(&self) -> Result<EnsembleResult> {
        Ok(self.ensemble().run(&self.cloud()?))
    }

    /// Same forces with hypergeometric evaluation at every point.
    pub fn direct_context(&self) -> ForceContext {
        self.ctx.with_field(Arc::new(DirectField::new(&self.spec)))
    }

    /// Largest final-position change (λ) when every `stride`-th atom is rerun
    /// with direct evaluation, and the number rerun.
    pub fn revalidate(&self, result: &EnsembleResult, stride: usize) -> Result<(f64, usize)> {
        revalidate(result, &self.direct_context(), &self.integrator, stride)
    }
}
