use super::AtomState;
use crate::error::{Error, Result};
use crate::force::{ForceModel, ForceOutcome};
use crate::units::PhysicalSetup;
use crate::weber::TransverseField;
use std::sync::Arc;

/// Acceleration of one atom, with a flag for zero-force sentinel hits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Acceleration {
    pub value: [f64; 3],
    pub sentinel: bool,
}

/// Everything an atom feels: gravity along `−x` plus the mean optical force.
#[derive(Clone)]
pub struct ForceContext {
    model: ForceModel,
    field: Arc<dyn TransverseField>,
    gravity: f64,
    eta: f64,
    x_window: Option<[f64; 2]>,
}

impl ForceContext {
    /// `x_window`, when set, switches the optical force off outside
    /// `[x_min, x_max]`.
    pub fn new(model: ForceModel, field: Arc<dyn TransverseField>, setup: &PhysicalSetup, x_window: Option<[f64; 2]>) -> Self {
        ForceContext { model, field, gravity: setup.gravity_natural(), eta: setup.hbar_natural(), x_window }
    }

    pub fn model(&self) -> &ForceModel {
        &self.model
    }

    pub fn field(&self) -> &Arc<dyn TransverseField> {
        &self.field
    }

    /// Same forces, different field evaluator.
    pub fn with_field(&self, field: Arc<dyn TransverseField>) -> Self {
        ForceContext { field, ..self.clone() }
    }

    /// Gravity in `λΓ²`.
    pub fn gravity(&self) -> f64 {
        self.gravity
    }

    pub fn acceleration(&self, s: &AtomState) -> Result<Acceleration> {
        let mut a = [-self.gravity, 0.0, 0.0];
        let [x, y, z] = s.position;
        let inside = self.x_window.is_none_or(|[lo, hi]| x >= lo && x <= hi);
        if !inside || self.model.is_null() {
            return Ok(Acceleration { value: a, sentinel: false });
        }
        let d = match self.field.cartesian(x, y) {
            Ok(d) => d,
            Err(Error::Origin) => return Ok(Acceleration { value: a, sentinel: true }),
            Err(e) => return Err(e),
        };
        let out = self.model.force_at(&d, z, s.velocity);
        if let ForceOutcome::Force(f) = out {
            for i in 0..3 {
                a[i] += self.eta * f[i];
            }
        }
        Ok(Acceleration { value: a, sentinel: out.is_sentinel() })
    }
}
