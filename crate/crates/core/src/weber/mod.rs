//! Vector Weber (parabolic-cylindrical) beams.
//!
//! All lengths are in laser wavelengths. The traveling-wave convention is
//! `Ψ = ψ(x, y) e^{i(k_z z − ωt)}` with the transverse factor
//!
//! ```text
//! ψ(u, v) = Ũ(u) Ṽ(v) e^{−i k⊥ (u² + v²)/2}
//! Ũ(u) = (k⊥u²)^{(n−1)/4} ₁F₁(n/4 − ia/2; n/2; i k⊥ u²)
//! Ṽ(v) = (k⊥v²)^{(n−1)/4} ₁F₁(n/4 + ia/2; n/2; i k⊥ v²)
//! ```
//!
//! with `n = 1` (even) or `n = 3` (odd). For odd parity the prefactor is
//! continued as `sqrt(k⊥)·u`, odd in `u`, so that `ψ` is odd in `y`.
//! With this sign convention the low-intensity region of a beam with `a < 0`
//! lies on the `x > 0` side.

mod calibrate;
mod coords;
mod dark;
mod fields;
mod scalar;
mod spectrum;
mod table;

pub use calibrate::{calibrate_amplitude, peak_shape_intensity, CalibrationWindow};
pub use coords::ParabolicPoint;
pub use dark::{bright_parabola_y, dark_factor_maxima, dark_parabola, find_um, find_um_with, max_deflection_angle, UmSearch};
pub use fields::{em_fields, irradiance_w_cm2, shape_field, FieldSample};
pub use scalar::{
    CartesianDerivs, DirectField, ScalarDerivs, TransverseFactor, TransverseField, scalar_psi,
};
pub use spectrum::{scalar_psi_spectrum, QuadratureConfig};
pub use table::{FactorTable, TabulatedField, DEFAULT_TABLE_STEP};

use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Mathematical parity of the mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// `n_p`: 1 for even, 3 for odd.
    pub fn n(self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => 3.0,
        }
    }
}

/// Everything that determines a beam: mode labels, polarisation mix and
/// strength.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BeamSpec {
    pub parity: Parity,
    /// Continuous order `a`.
    pub order_a: f64,
    /// `k_z / k`, strictly inside (0, 1).
    pub kz_fraction: f64,
    /// TE amplitude `𝒜^(TE)`.
    pub amp_te: Complex64,
    /// TM amplitude `𝒜^(TM)`.
    pub amp_tm: Complex64,
    /// Target peak irradiance (W/cm²).
    pub irradiance: f64,
    /// Electric field scale (V/m) multiplying the dimensionless mode; set by
    /// [`calibrate_amplitude`].
    pub amplitude_scale: f64,
}

impl Default for BeamSpec {
    fn default() -> Self {
        BeamSpec {
            parity: Parity::Odd,
            order_a: -5.0,
            kz_fraction: 0.995,
            amp_te: Complex64::new(1.0, 0.0),
            amp_tm: Complex64::new(0.0, 0.0),
            irradiance: 1.725,
            amplitude_scale: 0.0,
        }
    }
}

impl BeamSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.kz_fraction > 0.0 && self.kz_fraction < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "beam.kz_fraction must lie in (0, 1), got {}",
                self.kz_fraction
            )));
        }
        if !self.order_a.is_finite() {
            return Err(Error::InvalidParameter("beam.order_a must be finite".into()));
        }
        if !(self.irradiance.is_finite() && self.irradiance >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "beam.irradiance must be non-negative, got {}",
                self.irradiance
            )));
        }
        if !(self.amplitude_scale.is_finite() && self.amplitude_scale >= 0.0) {
            return Err(Error::InvalidParameter("beam.amplitude_scale must be non-negative".into()));
        }
        let amps = [self.amp_te.re, self.amp_te.im, self.amp_tm.re, self.amp_tm.im];
        if amps.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("beam amplitudes must be finite".into()));
        }
        Ok(())
    }

    /// Wavenumber in units of 1/λ.
    pub fn k(&self) -> f64 {
        2.0 * PI
    }

    pub fn kz(&self) -> f64 {
        self.k() * self.kz_fraction
    }

    pub fn k_perp(&self) -> f64 {
        self.k() * (1.0 - self.kz_fraction * self.kz_fraction).sqrt()
    }

    /// Per-photon eigenvalue `ħ²k⊥a` of the parabolic-symmetry operator, in
    /// units of `ħ²/λ`.
    pub fn photon_constant(&self) -> f64 {
        self.k_perp() * self.order_a
    }

    pub fn is_pure_te(&self) -> bool {
        self.amp_tm == Complex64::new(0.0, 0.0)
    }
}
