//! Derived quantities along a trajectory.
//!
//! The deflection angle is measured from the fall line through the release
//! point: `θ_d = atan2(y − y₀, −(x − x₀))`, zero for an atom that drops
//! straight down and positive when it drifts towards `+y`. It is zero at the
//! release point itself (two-argument arctangent of `(0, 0)`).
//! [`polar_angle`] gives the angle `atan2(y, x)` about the beam centre.

use super::AtomState;
use crate::units::PhysicalSetup;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Observables {
    pub theta_d: f64,
    /// ħ²k⊥
    pub a_atomic: f64,
    /// μK
    pub kx_uk: f64,
    /// μK
    pub kyz_uk: f64,
}

/// `1/(η² k⊥)` with `η = ħ/(mλ²Γ)`: turns `(x v_y − y v_x) v_y` in natural
/// units into `L_z P_y` in units of `ħ²k⊥`.
pub fn a_atomic_scale(setup: &PhysicalSetup, k_perp: f64) -> f64 {
    let eta = setup.hbar_natural();
    1.0 / (eta * eta * k_perp)
}

/// `L_z P_y` in units of `ħ²k⊥`.
pub fn a_atomic(position: [f64; 3], velocity: [f64; 3], scale: f64) -> f64 {
    let lz = position[0] * velocity[1] - position[1] * velocity[0];
    lz * velocity[1] * scale
}

/// Angle of the displacement from `origin`, measured from the `−x` (fall)
/// direction and positive toward `+y`; zero at `origin` itself.
pub fn deflection_angle(origin: &AtomState, s: &AtomState) -> f64 {
    let fall = origin.position[0] - s.position[0];
    let dy = s.position[1] - origin.position[1];
    dy.atan2(fall)
}

pub fn polar_angle(s: &AtomState) -> f64 {
    s.position[1].atan2(s.position[0])
}

pub fn observables(origin: &AtomState, s: &AtomState, setup: &PhysicalSetup, a_scale: f64) -> Observables {
    let [vx, vy, vz] = s.velocity;
    Observables {
        theta_d: deflection_angle(origin, s),
        a_atomic: a_atomic(s.position, s.velocity, a_scale),
        kx_uk: setup.kinetic_temperature(vx.abs()) * 1e6,
        kyz_uk: setup.kinetic_temperature(vy.hypot(vz)) * 1e6,
    }
}

/// Observables at every sample of a trajectory.
pub fn series(samples: &[AtomState], setup: &PhysicalSetup, a_scale: f64) -> Vec<Observables> {
    match samples.first() {
        Some(o) => samples.iter().map(|s| observables(o, s, setup, a_scale)).collect(),
        None => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn release_point_has_zero_angle() {
        let o = AtomState::new([150.0, 3.0, 0.0], [-6e-4, 0.0, 0.0]);
        assert_eq!(deflection_angle(&o, &o), 0.0);
        let down = AtomState::new([100.0, 3.0, 0.0], [-6e-4, 0.0, 0.0]);
        assert_eq!(deflection_angle(&o, &down), 0.0);
        let right = AtomState::new([100.0, 53.0, 0.0], [-6e-4, 0.0, 0.0]);
        assert!((deflection_angle(&o, &right) - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
    }

    #[test]
    fn no_transverse_motion_means_no_a_atomic() {
        assert_eq!(a_atomic([150.0, 20.0, 1.0], [-6e-4, 0.0, 3e-5], 1e9), 0.0);
    }
}
