use serde::{Deserialize, Serialize};

/// Parabolic-cylindrical transverse coordinates, `x = (u² − v²)/2`,
/// `y = uv`, with `v ≥ 0`. Units are sqrt(λ).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParabolicPoint {
    pub u: f64,
    pub v: f64,
}

impl ParabolicPoint {
    pub fn new(u: f64, v: f64) -> Self {
        debug_assert!(v >= 0.0);
        ParabolicPoint { u, v }
    }

    /// Branch with `v ≥ 0` and `sign(u) = sign(y)`; on the positive x-axis
    /// (`v = 0`) `u ≥ 0`.
    pub fn from_cartesian(x: f64, y: f64) -> Self {
        let r = x.hypot(y);
        // u² = r + x and v² = r − x; take the larger directly and recover the
        // smaller from y = uv to avoid cancellation
        let (mut u, v) = if x >= 0.0 {
            let u = (r + x).sqrt();
            let v = if u > 0.0 { y.abs() / u } else { 0.0 };
            (u, v)
        } else {
            let v = (r - x).sqrt();
            let u = if v > 0.0 { y.abs() / v } else { 0.0 };
            (u, v)
        };
        if y < 0.0 {
            u = -u;
        }
        ParabolicPoint { u, v }
    }

    pub fn to_cartesian(self) -> (f64, f64) {
        (0.5 * (self.u * self.u - self.v * self.v), self.u * self.v)
    }

    /// Metric scale factor `h = sqrt(u² + v²)`.
    pub fn h(self) -> f64 {
        self.u.hypot(self.v)
    }
}
