use super::observables::a_atomic;
use super::AtomState;
use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CloudConfig {
    pub n_atoms: usize,
    /// Release abscissa (λ).
    pub x0: f64,
    /// λ
    pub y_band: [f64; 2],
    /// λ
    pub z_band: [f64; 2],
    /// Initial `v_x` (λΓ), negative.
    pub speed_x: f64,
    /// Largest `v⊥/|v_x|`.
    pub perp_ratio_cap: f64,
    /// Nominal cloud temperature (K), reporting only.
    pub temperature_equiv: f64,
    pub seed: u64,
    /// Largest initial `|A_atomic|` (ħ²k⊥). Atoms over the cap are redrawn.
    pub initial_a_cap: Option<f64>,
}

impl Default for CloudConfig {
    fn default() -> Self {
        CloudConfig {
            n_atoms: 1000,
            x0: 150.0,
            y_band: [-150.0, 150.0],
            z_band: [-10.0, 10.0],
            speed_x: -0.6e-3,
            perp_ratio_cap: 0.1,
            temperature_equiv: 1.5e-6,
            seed: 0x5eed,
            initial_a_cap: Some(150.0),
        }
    }
}

/// Redraws before the perpendicular speed is scaled down to meet the cap.
const MAX_REDRAWS: usize = 256;

impl CloudConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_atoms == 0 {
            return Err(Error::EmptyBand("cloud.n_atoms is zero"));
        }
        if !(self.y_band[1] >= self.y_band[0]) {
            return Err(Error::EmptyBand("cloud.y_band"));
        }
        if !(self.z_band[1] >= self.z_band[0]) {
            return Err(Error::EmptyBand("cloud.z_band"));
        }
        if !(self.speed_x < 0.0 && self.speed_x.is_finite()) {
            return Err(Error::InvalidParameter("cloud.speed_x must be negative".into()));
        }
        if !(self.perp_ratio_cap >= 0.0 && self.perp_ratio_cap.is_finite()) {
            return Err(Error::InvalidParameter("cloud.perp_ratio_cap must be non-negative".into()));
        }
        if let Some(c) = self.initial_a_cap {
            if !(c >= 0.0) {
                return Err(Error::InvalidParameter("cloud.initial_a_cap must be non-negative".into()));
            }
        }
        Ok(())
    }
}

/// Random stream for atom `index`: independent of how atoms are scheduled.
pub fn atom_rng(seed: u64, index: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn uniform(rng: &mut ChaCha20Rng, band: [f64; 2]) -> f64 {
    if band[0] == band[1] {
        band[0]
    } else {
        rng.random_range(band[0]..band[1])
    }
}

/// Draws atom `index` of the cloud. `a_scale` converts `(x v_y − y v_x) v_y`
/// to `ħ²k⊥` units.
pub fn sample_atom(cfg: &CloudConfig, index: u64, a_scale: f64) -> AtomState {
    let mut rng = atom_rng(cfg.seed, index);
    let y = uniform(&mut rng, cfg.y_band);
    let z = uniform(&mut rng, cfg.z_band);
    let vx = cfg.speed_x;
    let vmax = vx.abs() * cfg.perp_ratio_cap;
    let draw = |rng: &mut ChaCha20Rng| {
        let r = if vmax > 0.0 { rng.random_range(0.0..=vmax) } else { 0.0 };
        let phi = rng.random_range(0.0..2.0 * PI);
        (r * phi.cos(), r * phi.sin())
    };
    let (mut vy, mut vz) = draw(&mut rng);
    if let Some(cap) = cfg.initial_a_cap {
        let over = |vy: f64| a_atomic([cfg.x0, y, z], [vx, vy, 0.0], a_scale).abs() > cap;
        let mut tries = 0;
        while over(vy) && tries < MAX_REDRAWS {
            (vy, vz) = draw(&mut rng);
            tries += 1;
        }
        if over(vy) {
            vy = vy_under_cap(cfg.x0, y, vx, cap / a_scale, vy.signum());
        }
    }
    AtomState::new([cfg.x0, y, z], [vx, vy, vz])
}

/// A `v_y` of sign `s` with `|(x v_y − y v_x) v_y| ≤ c`, found by bisection
/// from zero.
fn vy_under_cap(x: f64, y: f64, vx: f64, c: f64, s: f64) -> f64 {
    let q = |w: f64| (x * s * w - y * vx) * s * w;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while q(hi).abs() <= c && hi < 1e3 {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if q(mid).abs() <= c {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    s * lo
}

/// Whole cloud, atom `i` drawn from stream `i`.
pub fn sample_cloud(cfg: &CloudConfig, a_scale: f64) -> Result<Vec<AtomState>> {
    cfg.validate()?;
    Ok((0..cfg.n_atoms as u64).map(|i| sample_atom(cfg, i, a_scale)).collect())
}
