//! Irradiance calibration.
//!
//! The mode has no natural normalisation, so the field scale is fixed by
//! demanding that the brightest point of a sampled window has the requested
//! time-averaged irradiance. The grid is regular and deterministic.

use super::fields::shape_field;
use super::scalar::TransverseField;
use super::BeamSpec;
use crate::error::{Error, Result};
use crate::units::{EPSILON_0, SPEED_OF_LIGHT};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CalibrationWindow {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
}

impl Default for CalibrationWindow {
    fn default() -> Self {
        CalibrationWindow { x_min: -200.0, x_max: 200.0, y_min: -200.0, y_max: 200.0, nx: 512, ny: 512 }
    }
}

impl CalibrationWindow {
    pub fn validate(&self) -> Result<()> {
        if !(self.x_max > self.x_min && self.y_max > self.y_min) || self.nx < 2 || self.ny < 2 {
            return Err(Error::InvalidParameter("calibration window is empty".into()));
        }
        Ok(())
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_min + (self.x_max - self.x_min) * i as f64 / (self.nx - 1) as f64
    }

    pub fn y(&self, j: usize) -> f64 {
        self.y_min + (self.y_max - self.y_min) * j as f64 / (self.ny - 1) as f64
    }

    /// Largest distance from the beam axis inside the window.
    pub fn radius(&self) -> f64 {
        self.x_min.abs().max(self.x_max.abs()).hypot(self.y_min.abs().max(self.y_max.abs()))
    }
}

/// Largest `|E|²` of the dimensionless mode field over the window grid.
pub fn peak_shape_intensity(spec: &BeamSpec, field: &dyn TransverseField, window: &CalibrationWindow) -> Result<f64> {
    window.validate()?;
    let rows = (0..window.ny)
        .into_par_iter()
        .map(|j| {
            let y = window.y(j);
            let mut best = 0.0f64;
            for i in 0..window.nx {
                let x = window.x(i);
                if x == 0.0 && y == 0.0 {
                    continue;
                }
                let d = field.cartesian(x, y)?;
                let (e, _) = shape_field(spec, &d);
                let e2: f64 = e.iter().map(|c| c.norm_sqr()).sum();
                best = best.max(e2);
            }
            Ok(best)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(rows.into_iter().fold(0.0, f64::max))
}

/// Field scale (V/m) such that the window peak irradiance equals
/// `spec.irradiance`.
pub fn calibrate_amplitude(spec: &BeamSpec, field: &dyn TransverseField, window: &CalibrationWindow) -> Result<f64> {
    window.validate()?;
    if spec.irradiance == 0.0 {
        return Ok(0.0);
    }
    let peak = peak_shape_intensity(spec, field, window)?;
    if peak == 0.0 || !peak.is_finite() {
        return Err(Error::ZeroField);
    }
    let target = spec.irradiance * 1e4; // W/m²
    Ok((2.0 * target / (SPEED_OF_LIGHT * EPSILON_0 * peak)).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weber::{em_fields, ParabolicPoint, TabulatedField};
    use num_complex::Complex64;

    fn small_window() -> CalibrationWindow {
        CalibrationWindow { x_min: -20.0, x_max: 20.0, y_min: -20.0, y_max: 20.0, nx: 41, ny: 40 }
    }

    #[test]
    fn zero_target_gives_zero_scale() {
        let spec = BeamSpec { irradiance: 0.0, ..Default::default() };
        let f = TabulatedField::new(&spec, 30.0, 1e-2).unwrap();
        assert_eq!(calibrate_amplitude(&spec, &f, &small_window()).unwrap(), 0.0);
    }

    #[test]
    fn quadrupled_target_doubles_scale() {
        let spec = BeamSpec::default();
        let f = TabulatedField::new(&spec, 30.0, 1e-2).unwrap();
        let w = small_window();
        let s1 = calibrate_amplitude(&spec, &f, &w).unwrap();
        let s4 = calibrate_amplitude(&BeamSpec { irradiance: 4.0 * spec.irradiance, ..spec.clone() }, &f, &w).unwrap();
        assert!((s4 / s1 - 2.0).abs() < 1e-12);
    }

    #[test]
    fn calibrated_peak_matches_target() {
        let mut spec = BeamSpec::default();
        let f = TabulatedField::new(&spec, 30.0, 1e-2).unwrap();
        let w = small_window();
        spec.amplitude_scale = calibrate_amplitude(&spec, &f, &w).unwrap();
        let mut best = 0.0f64;
        for j in 0..w.ny {
            for i in 0..w.nx {
                let p = ParabolicPoint::from_cartesian(w.x(i), w.y(j));
                if p.h() > 0.0 {
                    best = best.max(em_fields(&spec, p, 0.0, 0.0).unwrap().intensity);
                }
            }
        }
        assert!((best / spec.irradiance - 1.0).abs() < 1e-6, "{best}");
    }

    #[test]
    fn zero_amplitude_field_is_an_error() {
        let spec = BeamSpec { amp_te: Complex64::new(0.0, 0.0), ..Default::default() };
        let f = TabulatedField::new(&spec, 30.0, 1e-2).unwrap();
        assert!(matches!(calibrate_amplitude(&spec, &f, &small_window()), Err(Error::ZeroField)));
    }
}
