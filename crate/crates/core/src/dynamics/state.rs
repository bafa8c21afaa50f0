use serde::{Deserialize, Serialize};

/// Centre-of-mass state of one atom (natural units).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AtomState {
    /// λ
    pub position: [f64; 3],
    /// λΓ
    pub velocity: [f64; 3],
    /// 1/Γ
    pub time: f64,
}

impl AtomState {
    pub fn new(position: [f64; 3], velocity: [f64; 3]) -> Self {
        AtomState { position, velocity, time: 0.0 }
    }

    pub fn is_finite(&self) -> bool {
        self.position.iter().chain(&self.velocity).all(|c| c.is_finite()) && self.time.is_finite()
    }

    /// Mirror image under `y → −y`.
    pub fn mirrored(&self) -> Self {
        let [x, y, z] = self.position;
        let [vx, vy, vz] = self.velocity;
        AtomState { position: [x, -y, z], velocity: [vx, -vy, vz], time: self.time }
    }

    pub(crate) fn to_vec(self) -> [f64; 6] {
        let [x, y, z] = self.position;
        let [vx, vy, vz] = self.velocity;
        [x, y, z, vx, vy, vz]
    }

    pub(crate) fn from_vec(y: [f64; 6], time: f64) -> Self {
        AtomState { position: [y[0], y[1], y[2]], velocity: [y[3], y[4], y[5]], time }
    }
}
