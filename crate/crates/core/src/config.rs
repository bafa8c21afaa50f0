//! Run configuration: one TOML file, every key optional.
//!
//! ```toml
//! [beam]
//! order_a = -5
//! irradiance = 6.0
//!
//! [sim]
//! tol = 1e-8
//! ```
//!
//! Dotted keys (`beam.order_a = -5`) at the top level are equivalent.
//! Unknown keys are errors.

use crate::dynamics::{ClassifyConfig, CloudConfig, IntegratorConfig};
use crate::error::{Error, Result};
use crate::force::{DipoleSign, ForceDenominator, ForceParams};
use crate::units::PhysicalSetup;
use crate::weber::{BeamSpec, CalibrationWindow, DEFAULT_TABLE_STEP};
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldMode {
    /// Interpolated factor tables.
    #[default]
    Grid,
    /// Hypergeometric evaluation at every point.
    Direct,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SimConfig {
    /// 1/Γ
    pub t_max: f64,
    pub tol: f64,
    /// Exit floor on `x` (λ).
    pub x_exit: Option<f64>,
    pub field: FieldMode,
    /// Table spacing in `sqrt(λ)`.
    pub table_step: f64,
    pub force_denominator: ForceDenominator,
    pub dipole_sign: DipoleSign,
    pub p_floor: f64,
    /// Optical force only for `x_window[0] ≤ x ≤ x_window[1]` (λ).
    pub x_window: Option<[f64; 2]>,
    /// Every n-th atom is rerun with direct field evaluation; 0 disables.
    pub validation_stride: usize,
    pub position_scale: f64,
    pub velocity_scale: f64,
}

impl Default for SimConfig {
    fn default() -> Self {
        let i = IntegratorConfig::default();
        let f = ForceParams::default();
        SimConfig {
            t_max: i.t_max,
            tol: i.tol,
            x_exit: i.x_exit,
            field: FieldMode::Grid,
            table_step: DEFAULT_TABLE_STEP,
            force_denominator: f.denominator,
            dipole_sign: f.dipole_sign,
            p_floor: f.p_floor,
            x_window: None,
            validation_stride: 0,
            position_scale: i.position_scale,
            velocity_scale: i.velocity_scale,
        }
    }
}

impl SimConfig {
    pub fn integrator(&self, cadence: f64) -> IntegratorConfig {
        IntegratorConfig {
            tol: self.tol,
            t_max: self.t_max,
            x_exit: self.x_exit,
            cadence,
            position_scale: self.position_scale,
            velocity_scale: self.velocity_scale,
            ..Default::default()
        }
    }

    pub fn force_params(&self) -> ForceParams {
        ForceParams {
            dipole_sign: self.dipole_sign,
            denominator: self.force_denominator,
            p_floor: self.p_floor,
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputConfig {
    pub directory: PathBuf,
    /// Trajectory sample interval (1/Γ).
    pub cadence: f64,
    /// Write per-sample trajectories (large) in addition to the summary.
    pub trajectories: bool,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig { directory: PathBuf::from("out"), cadence: 1000.0, trajectories: true }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FieldMapConfig {
    pub x_range: [f64; 2],
    pub y_range: [f64; 2],
    pub nx: usize,
    pub ny: usize,
}

impl Default for FieldMapConfig {
    fn default() -> Self {
        FieldMapConfig { x_range: [-100.0, 100.0], y_range: [-100.0, 100.0], nx: 201, ny: 201 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct UmCurveConfig {
    pub a_min: f64,
    pub a_max: f64,
    pub a_step: f64,
}

impl Default for UmCurveConfig {
    fn default() -> Self {
        UmCurveConfig { a_min: -10.0, a_max: 10.0, a_step: 0.5 }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub setup: PhysicalSetup,
    pub beam: BeamSpec,
    pub cloud: CloudConfig,
    pub sim: SimConfig,
    pub classify: ClassifyConfig,
    pub calibration: CalibrationWindow,
    pub field_map: FieldMapConfig,
    pub um_curve: UmCurveConfig,
    pub output: OutputConfig,
}

impl RunConfig {
    /// Parses and validates; errors carry 1-based line and column.
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| {
            let (line, column) = e.span().map(|s| line_col(text, s.start)).unwrap_or((0, 0));
            Error::Config { line, column, message: e.message().to_string() }
        })?;
        cfg.validate().map_err(|e| match e {
            Error::InvalidParameter(message) => Error::Config { line: 0, column: 0, message },
            other => other,
        })?;
        Ok(cfg)
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Canonical TOML with every field spelled out.
    pub fn emit(&self) -> String {
        toml::to_string(self).expect("config is always representable")
    }

    pub fn validate(&self) -> Result<()> {
        self.setup.validate()?;
        self.beam.validate()?;
        self.cloud.validate()?;
        self.sim.integrator(self.output.cadence).validate()?;
        self.sim.force_params().validate()?;
        self.calibration.validate()?;
        if !(self.sim.table_step > 0.0 && self.sim.table_step < 0.1) {
            return Err(Error::InvalidParameter("sim.table_step must lie in (0, 0.1)".into()));
        }
        if let Some([lo, hi]) = self.sim.x_window {
            if !(hi > lo) {
                return Err(Error::InvalidParameter("sim.x_window must be increasing".into()));
            }
        }
        let fm = &self.field_map;
        if fm.nx < 1 || fm.ny < 1 || !(fm.x_range[1] >= fm.x_range[0]) || !(fm.y_range[1] >= fm.y_range[0]) {
            return Err(Error::InvalidParameter("field_map window is empty".into()));
        }
        let um = &self.um_curve;
        if !(um.a_step > 0.0 && um.a_max >= um.a_min) {
            return Err(Error::InvalidParameter("um_curve range is empty".into()));
        }
        Ok(())
    }
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rfind('\n').map_or(before.chars().count(), |i| before[i + 1..].chars().count()) + 1;
    (line, column)
}
