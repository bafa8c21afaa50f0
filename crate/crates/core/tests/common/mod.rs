//! Oracles shared by the integration tests.
#![allow(dead_code)]

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use weber_splitter::units::{PhysicalSetup, HBAR};
use weber_splitter::weber::{BeamSpec, CartesianDerivs};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `g` and `∇g` written out from the mode derivatives.
pub fn coupling(spec: &BeamSpec, setup: &PhysicalSetup, d: &CartesianDerivs, z: f64) -> (Complex64, [Complex64; 3]) {
    let (k, kz) = (2.0 * std::f64::consts::PI, 2.0 * std::f64::consts::PI * spec.kz_fraction);
    let omega = setup.dipole_moment() * spec.amplitude_scale / (HBAR * setup.gamma);
    let c = omega * k * (k * spec.amp_te + I * kz * spec.amp_tm) * (I * kz * z).exp();
    let g = c * (d.dy - I * d.dx);
    (g, [c * (d.dxy - I * d.dxx), c * (d.dyy - I * d.dxy), I * kz * g])
}

/// Mean force at rest: `p (β/2 − δα) / (1 − p)`.
pub fn rest_force(spec: &BeamSpec, setup: &PhysicalSetup, d: &CartesianDerivs, z: f64) -> [f64; 3] {
    let delta = setup.detuning().natural;
    let (g, grad) = coupling(spec, setup, d, z);
    let p = 2.0 * g.norm_sqr() / (0.25 + delta * delta);
    let mut f = [0.0; 3];
    for i in 0..3 {
        let r = grad[i] / g;
        f[i] = p * (0.5 * r.im - delta * r.re) / (1.0 - p);
    }
    f
}

pub fn random_points(n: usize, seed: u64) -> Vec<(f64, f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| (rng.random_range(-80.0..80.0), rng.random_range(-80.0..80.0), rng.random_range(-10.0..10.0))).collect()
}

