//! Angular-spectrum representation of the transverse mode, used as an
//! independent check of the hypergeometric evaluation.
//!
//! ```text
//! ψ(x, y) ∝ ∫_{−π}^{π} A_p(a; φ) e^{i k⊥ (x cos φ + y sin φ)} dφ
//! A_e(a; φ) = e^{i a ln|tan(φ/2)|} / (2 sqrt(π |sin φ|))
//! A_o(a; φ) = +i A_e on (−π, 0),  −i A_e on (0, π)
//! ```
//!
//! The plane-wave sign `e^{+i k⊥ ...}` is the one under which the spectrum
//! of order `a` reproduces the hypergeometric mode of the same order; with
//! the opposite sign the two differ by `a → −a`. Only agreement up to one
//! complex constant is meaningful since the normalisation is not fixed.
//!
//! Substituting `t = ln tan(φ/2)` on each half-range gives `sin φ = sech t`,
//! `cos φ = −tanh t`, `dφ = sech t dt`, which removes the endpoint
//! singularities and turns the log-phase into `e^{iat}`. The integrand is
//! analytic in a strip around the real axis and decays like `e^{−|t|/2}`, so
//! the trapezoid rule on `[−T, T]` converges geometrically.

use super::{BeamSpec, Parity};
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug)]
pub struct QuadratureConfig {
    /// Half-width of the truncated `t` interval. `e^{−T/2}` bounds the
    /// neglected tail.
    pub truncation: f64,
    /// Starting trapezoid step; `None` picks one from the oscillation rate.
    pub initial_step: Option<f64>,
    /// Stop when two successive halvings differ by less than this (relative).
    pub rel_tol: f64,
    pub max_halvings: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig { truncation: 80.0, initial_step: None, rel_tol: 1e-12, max_halvings: 14 }
    }
}

/// `ψ(x, y)` up to normalisation from the angular spectrum.
pub fn scalar_psi_spectrum(spec: &BeamSpec, x: f64, y: f64, quad: &QuadratureConfig) -> Result<Complex64> {
    if !(x.is_finite() && y.is_finite()) {
        return Err(Error::InvalidParameter("non-finite point".into()));
    }
    let kp = spec.k_perp();
    let a = spec.order_a;
    let norm = 1.0 / (2.0 * PI.sqrt());
    let odd = spec.parity == Parity::Odd;
    let integrand = |t: f64| -> (Complex64, f64) {
        let sech = 1.0 / t.cosh();
        let cos_phi = -t.tanh();
        let amp = norm * sech.sqrt();
        let phase = Complex64::from_polar(amp, a * t + kp * x * cos_phi);
        let arg = kp * y * sech;
        let w = if odd { 2.0 * arg.sin() } else { 2.0 * arg.cos() };
        (phase * w, amp * w.abs())
    };

    let big_t = quad.truncation;
    let rate = kp * (x.abs() + y.abs()) + a.abs() + 1.0;
    let mut h = quad.initial_step.unwrap_or((0.5 / rate).min(0.25));
    let mut n = (2.0 * big_t / h).ceil() as usize;
    h = 2.0 * big_t / n as f64;

    let mut sum = Complex64::new(0.0, 0.0);
    let mut l1 = 0.0;
    for j in 0..=n {
        let (f, m) = integrand(-big_t + j as f64 * h);
        let w = if j == 0 || j == n { 0.5 } else { 1.0 };
        sum += w * f;
        l1 += w * m;
    }
    let mut estimate = sum * h;
    let mut last_err = f64::INFINITY;
    for _ in 0..quad.max_halvings {
        let mut mid = Complex64::new(0.0, 0.0);
        let mut mid_l1 = 0.0;
        for j in 0..n {
            let (f, m) = integrand(-big_t + (j as f64 + 0.5) * h);
            mid += f;
            mid_l1 += m;
        }
        sum += mid;
        l1 += mid_l1;
        n *= 2;
        h *= 0.5;
        let refined = sum * h;
        let scale = refined.norm().max(1e-3 * l1 * h);
        let diff = (refined - estimate).norm();
        last_err = if diff == 0.0 { 0.0 } else { diff / scale };
        estimate = refined;
        if last_err <= quad.rel_tol {
            return Ok(estimate);
        }
    }
    Err(Error::Quadrature { estimate: last_err })
}
