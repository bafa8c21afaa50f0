//! Physical constants, atomic species data and the natural unit system.
//!
//! Lengths are measured in laser wavelengths `λ` and times in the inverse
//! Einstein coefficient `1/Γ`; velocities are then in `λΓ`, accelerations in
//! `λΓ²` and energies in `mλ²Γ²`.
//!
//! A note on the reference cloud: a vertical speed quoted as "0.6 mλΓ" is
//! read as `0.6 × 10⁻³ λΓ` (milli prefix). That is about 19 mm/s for Rb-85 at
//! 862 nm and Γ = 3.7 × 10⁷ s⁻¹, i.e. a kinetic temperature `mv²/2k_B` near
//! 1.9 μK, consistent with a ~1.5 μK cloud.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::str::FromStr;

/// Speed of light in vacuum (m/s).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Reduced Planck constant (J s).
pub const HBAR: f64 = 1.054_571_817e-34;
/// Boltzmann constant (J/K).
pub const BOLTZMANN: f64 = 1.380_649e-23;
/// Vacuum permittivity (F/m).
pub const EPSILON_0: f64 = 8.854_187_812_8e-12;

/// Mass of a Rb-85 atom (kg).
pub const RB85_MASS: f64 = 1.40999e-25;
/// Wavelength of the Rb 5²S₁/₂ – 5²P₁/₂ line (m).
pub const RB_D1_WAVELENGTH: f64 = 795e-9;
/// Einstein coefficient of Rb 5²P₁/₂ (1/s).
pub const RB_D1_GAMMA: f64 = 3.7e7;
/// Standard gravity (m/s²).
pub const STANDARD_GRAVITY: f64 = 9.80665;

/// Atom plus laser: everything needed to move between SI and natural units.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PhysicalSetup {
    /// Atomic transition wavelength (m).
    pub transition_wavelength: f64,
    /// Laser wavelength (m); the natural length unit.
    pub laser_wavelength: f64,
    /// Einstein coefficient Γ (1/s); its inverse is the natural time unit.
    pub gamma: f64,
    /// Atomic mass (kg).
    pub atom_mass: f64,
    /// Gravitational acceleration (m/s²), acting along −x.
    pub gravity: f64,
}

impl Default for PhysicalSetup {
    fn default() -> Self {
        PhysicalSetup {
            transition_wavelength: RB_D1_WAVELENGTH,
            laser_wavelength: RB_D1_WAVELENGTH + 67e-9,
            gamma: RB_D1_GAMMA,
            atom_mass: RB85_MASS,
            gravity: STANDARD_GRAVITY,
        }
    }
}

/// Detuning `δω = ω − ω₀` in two unit systems.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Detuning {
    /// rad/s
    pub si: f64,
    /// units of Γ
    pub natural: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuantityKind {
    Length,
    Time,
    Velocity,
    Acceleration,
    Energy,
}

impl FromStr for QuantityKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "length" => Ok(QuantityKind::Length),
            "time" => Ok(QuantityKind::Time),
            "velocity" => Ok(QuantityKind::Velocity),
            "acceleration" => Ok(QuantityKind::Acceleration),
            "energy" => Ok(QuantityKind::Energy),
            other => Err(Error::UnknownKind(other.to_string())),
        }
    }
}

impl PhysicalSetup {
    /// Checks positivity. Returns human-readable warnings for legal but
    /// unusual setups (blue detuning).
    pub fn validate(&self) -> Result<Vec<String>> {
        let fields = [
            ("transition_wavelength", self.transition_wavelength),
            ("laser_wavelength", self.laser_wavelength),
            ("gamma", self.gamma),
            ("atom_mass", self.atom_mass),
            ("gravity", self.gravity),
        ];
        for (name, v) in fields {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParameter(format!("setup.{name} must be positive, got {v}")));
            }
        }
        let mut warnings = Vec::new();
        if self.laser_wavelength <= self.transition_wavelength {
            warnings.push(format!(
                "laser wavelength {:.1} nm is not red of the {:.1} nm transition; \
                 the dipole force will repel atoms from bright regions",
                self.laser_wavelength * 1e9,
                self.transition_wavelength * 1e9
            ));
        }
        Ok(warnings)
    }

    /// Laser wavenumber `2π/λ` (1/m).
    pub fn k(&self) -> f64 {
        2.0 * PI / self.laser_wavelength
    }

    /// Transition wavenumber `2π/λ₀` (1/m).
    pub fn k_transition(&self) -> f64 {
        2.0 * PI / self.transition_wavelength
    }

    pub fn detuning(&self) -> Detuning {
        let si = 2.0 * PI * SPEED_OF_LIGHT * (1.0 / self.laser_wavelength - 1.0 / self.transition_wavelength);
        Detuning { si, natural: si / self.gamma }
    }

    /// Transition dipole moment `|μ₁₂|` (C m) from the spontaneous decay rate.
    ///
    /// In Gaussian units `Γ = 4k³|μ|²/3ħ`; the SI form used here is
    /// `Γ = k³|μ|²/(3πε₀ħ)`. Both give the same Rabi frequency for a given
    /// irradiance. `k` is the transition wavenumber.
    pub fn dipole_moment(&self) -> f64 {
        dipole_moment_for(self.gamma, self.k_transition())
    }

    /// Natural length unit in metres.
    pub fn length_unit(&self) -> f64 {
        self.laser_wavelength
    }

    /// Natural time unit in seconds.
    pub fn time_unit(&self) -> f64 {
        1.0 / self.gamma
    }

    /// Natural velocity unit `λΓ` (m/s).
    pub fn velocity_unit(&self) -> f64 {
        self.laser_wavelength * self.gamma
    }

    /// Natural acceleration unit `λΓ²` (m/s²).
    pub fn acceleration_unit(&self) -> f64 {
        self.velocity_unit() / self.time_unit()
    }

    /// Natural energy unit `mλ²Γ²` (J).
    pub fn energy_unit(&self) -> f64 {
        self.atom_mass * self.velocity_unit().powi(2)
    }

    fn unit(&self, kind: QuantityKind) -> f64 {
        match kind {
            QuantityKind::Length => self.length_unit(),
            QuantityKind::Time => self.time_unit(),
            QuantityKind::Velocity => self.velocity_unit(),
            QuantityKind::Acceleration => self.acceleration_unit(),
            QuantityKind::Energy => self.energy_unit(),
        }
    }

    pub fn to_natural(&self, value: f64, kind: QuantityKind) -> f64 {
        value / self.unit(kind)
    }

    pub fn from_natural(&self, value: f64, kind: QuantityKind) -> f64 {
        value * self.unit(kind)
    }

    /// Gravitational acceleration in `λΓ²`.
    pub fn gravity_natural(&self) -> f64 {
        self.to_natural(self.gravity, QuantityKind::Acceleration)
    }

    /// `ħ` expressed in natural energy × time units, `ħ/(mλ²Γ)`. This is the
    /// factor turning `ħ × (rate/length)` into an acceleration in `λΓ²`.
    pub fn hbar_natural(&self) -> f64 {
        HBAR / (self.energy_unit() * self.time_unit())
    }

    /// `½mv²/k_B` in kelvin for a natural-unit speed.
    pub fn kinetic_temperature(&self, speed_natural: f64) -> f64 {
        let v = self.from_natural(speed_natural, QuantityKind::Velocity);
        0.5 * self.atom_mass * v * v / BOLTZMANN
    }

    /// Natural-unit speed whose kinetic temperature is `temperature` kelvin.
    pub fn speed_for_temperature(&self, temperature: f64) -> f64 {
        let v = (2.0 * BOLTZMANN * temperature / self.atom_mass).sqrt();
        self.to_natural(v, QuantityKind::Velocity)
    }
}

/// `|μ| = sqrt(3πε₀ħΓ/k³)`.
pub fn dipole_moment_for(gamma: f64, k: f64) -> f64 {
    (3.0 * PI * EPSILON_0 * HBAR * gamma / k.powi(3)).sqrt()
}

/// Inverse of [`dipole_moment_for`].
pub fn gamma_for_dipole(mu: f64, k: f64) -> f64 {
    k.powi(3) * mu * mu / (3.0 * PI * EPSILON_0 * HBAR)
}
