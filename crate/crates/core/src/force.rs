//! Atom-light coupling and the mean velocity-dependent dipole force.
//!
//! Everything here is in natural units: rates in `Γ`, lengths in `λ`,
//! velocities in `λΓ`. The force comes out in `ħΓ/λ`; multiplying by
//! [`PhysicalSetup::hbar_natural`] gives an acceleration in `λΓ²`.
//!
//! With `μ± = μ(e_x ± i e_y)` the coupling is `g± = μ·E/ħ`, which for the
//! TE/TM mode reduces to
//!
//! ```text
//! g± = (μ/ħ) E₀ k (k A_TE ± i k_z A_TM)(∂_y ∓ i∂_x)ψ · e^{i k_z z}
//! ```
//!
//! The parabolic form `(u ± iv)(∂_v ∓ i∂_u)/h²` equals `(∂_y ∓ i∂_x)`
//! identically, so the Cartesian form is used to avoid the `1/h²` factor.

use crate::error::{Error, Result};
use crate::units::{PhysicalSetup, HBAR};
use crate::weber::{BeamSpec, CartesianDerivs, DirectField, ParabolicPoint, TransverseField};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Which circular dipole component couples to the field.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DipoleSign {
    #[default]
    Plus,
    Minus,
}

impl DipoleSign {
    fn s(self) -> f64 {
        match self {
            DipoleSign::Plus => 1.0,
            DipoleSign::Minus => -1.0,
        }
    }
}

/// Denominator of the mean force: `(1 − p′)/p′` or `(1 + p′)/p′`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ForceDenominator {
    #[default]
    AsPrinted,
    Standard,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ForceParams {
    pub dipole_sign: DipoleSign,
    pub denominator: ForceDenominator,
    /// Saturation below which the force is replaced by zero.
    pub p_floor: f64,
    /// Smallest admissible `|denominator|`.
    pub denominator_floor: f64,
}

impl Default for ForceParams {
    fn default() -> Self {
        ForceParams {
            dipole_sign: DipoleSign::Plus,
            denominator: ForceDenominator::AsPrinted,
            p_floor: 1e-40,
            denominator_floor: 1e-300,
        }
    }
}

impl ForceParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.p_floor >= 0.0 && self.p_floor.is_finite()) {
            return Err(Error::InvalidParameter("force.p_floor must be non-negative".into()));
        }
        if !(self.denominator_floor >= 0.0 && self.denominator_floor.is_finite()) {
            return Err(Error::InvalidParameter("force.denominator_floor must be non-negative".into()));
        }
        Ok(())
    }
}

/// Coupling and saturation quantities at one point for one velocity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CouplingSample {
    /// `g` in units of `Γ`.
    pub g: Complex64,
    /// `∇g` in `Γ/λ`.
    pub grad_g: [Complex64; 3],
    pub alpha: [f64; 3],
    pub beta: [f64; 3],
    pub p: f64,
    pub d_pop: f64,
    pub p_prime: f64,
    pub gamma_prime: Complex64,
}

/// Mean force, or the zero-force sentinel when the point is nodal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ForceOutcome {
    Force([f64; 3]),
    Sentinel,
}

impl ForceOutcome {
    pub fn value(self) -> [f64; 3] {
        match self {
            ForceOutcome::Force(f) => f,
            ForceOutcome::Sentinel => [0.0; 3],
        }
    }

    pub fn is_sentinel(self) -> bool {
        matches!(self, ForceOutcome::Sentinel)
    }
}

/// Beam plus atom, reduced to the constants the force needs.
#[derive(Clone, Debug)]
pub struct ForceModel {
    spec: BeamSpec,
    params: ForceParams,
    /// `(μ/ħΓ) E₀ k (k A_TE ± i k_z A_TM)`.
    prefactor: Complex64,
    /// `δω/Γ`.
    detuning: f64,
    /// `(Γ/2)² + δω²` in `Γ²`.
    p_denominator: f64,
}

impl ForceModel {
    pub fn new(spec: &BeamSpec, setup: &PhysicalSetup, params: ForceParams) -> Result<Self> {
        spec.validate()?;
        setup.validate()?;
        params.validate()?;
        let s = params.dipole_sign.s();
        let (k, kz) = (spec.k(), spec.kz());
        let rabi = setup.dipole_moment() * spec.amplitude_scale / (HBAR * setup.gamma);
        let prefactor = rabi * k * (k * spec.amp_te + s * I * kz * spec.amp_tm);
        let detuning = setup.detuning().natural;
        Ok(ForceModel { spec: spec.clone(), params, prefactor, detuning, p_denominator: 0.25 + detuning * detuning })
    }

    pub fn spec(&self) -> &BeamSpec {
        &self.spec
    }

    pub fn params(&self) -> &ForceParams {
        &self.params
    }

    /// True when the coupling vanishes identically.
    pub fn is_null(&self) -> bool {
        self.prefactor == Complex64::new(0.0, 0.0)
    }

    /// `δω/Γ`.
    pub fn detuning(&self) -> f64 {
        self.detuning
    }

    /// `g` and `∇g` from the transverse partials at height `z`.
    pub fn coupling(&self, d: &CartesianDerivs, z: f64) -> (Complex64, [Complex64; 3]) {
        let s = self.params.dipole_sign.s();
        let phase = Complex64::from_polar(1.0, self.spec.kz() * z);
        let c = self.prefactor * phase;
        let g = c * (d.dy - s * I * d.dx);
        let gx = c * (d.dxy - s * I * d.dxx);
        let gy = c * (d.dyy - s * I * d.dxy);
        (g, [gx, gy, I * self.spec.kz() * g])
    }

    /// `p = 2|g|²/((Γ/2)² + δω²)`.
    pub fn saturation(&self, g: Complex64) -> f64 {
        2.0 * g.norm_sqr() / self.p_denominator
    }

    /// Full sample for velocity `v`; `None` below the saturation floor.
    pub fn sample(&self, d: &CartesianDerivs, z: f64, v: [f64; 3]) -> Option<CouplingSample> {
        let (g, grad_g) = self.coupling(d, z);
        let p = self.saturation(g);
        if !(p > self.params.p_floor) {
            return None;
        }
        let (mut alpha, mut beta) = log_gradient(g, &grad_g)?;
        // traveling phase only: ∂_z ln g = i k_z
        alpha[2] = 0.0;
        beta[2] = self.spec.kz();
        let va = dot(v, alpha);
        let vb = dot(v, beta);
        let d_pop = 1.0 / (1.0 + p);
        let gamma_prime = Complex64::new(va * (1.0 - p) * d_pop + 0.5, -self.detuning + vb);
        let p_prime = 2.0 * g.norm_sqr() / gamma_prime.norm_sqr();
        Some(CouplingSample { g, grad_g, alpha, beta, p, d_pop, p_prime, gamma_prime })
    }

    /// Mean force in `ħΓ/λ`.
    pub fn mean_force(&self, s: &CouplingSample, v: [f64; 3]) -> ForceOutcome {
        let va = dot(v, s.alpha);
        let vb = dot(v, s.beta);
        let cb = s.d_pop * (1.0 - s.p) * va + 0.5;
        let ca = vb - self.detuning;
        let sat = match self.params.denominator {
            ForceDenominator::AsPrinted => (1.0 - s.p_prime) / s.p_prime,
            ForceDenominator::Standard => (1.0 + s.p_prime) / s.p_prime,
        };
        let den = sat + 2.0 * s.d_pop * va * (1.0 - s.p / s.p_prime - s.p);
        if !(den.abs() > self.params.denominator_floor) || !den.is_finite() {
            return ForceOutcome::Sentinel;
        }
        let f = [0, 1, 2].map(|i| (cb * s.beta[i] + ca * s.alpha[i]) / den);
        if f.iter().all(|c| c.is_finite()) {
            ForceOutcome::Force(f)
        } else {
            ForceOutcome::Sentinel
        }
    }

    /// Force at a transverse sample for velocity `v`.
    pub fn force_at(&self, d: &CartesianDerivs, z: f64, v: [f64; 3]) -> ForceOutcome {
        match self.sample(d, z, v) {
            Some(s) => self.mean_force(&s, v),
            None => ForceOutcome::Sentinel,
        }
    }
}

/// `(α, β) = (Re, Im)(∇g/g)`; `None` where `g = 0`.
pub fn log_gradient(g: Complex64, grad_g: &[Complex64; 3]) -> Option<([f64; 3], [f64; 3])> {
    if g.norm_sqr() == 0.0 {
        return None;
    }
    let r = grad_g.map(|c| c / g);
    Some((r.map(|c| c.re), r.map(|c| c.im)))
}

/// `g±` at a parabolic point, evaluated directly from the hypergeometric
/// factors.
pub fn coupling_g(spec: &BeamSpec, setup: &PhysicalSetup, p: ParabolicPoint, sign: DipoleSign) -> Result<Complex64> {
    if p.h() == 0.0 {
        return Err(Error::Origin);
    }
    let model = ForceModel::new(spec, setup, ForceParams { dipole_sign: sign, ..Default::default() })?;
    let d = DirectField::new(spec).parabolic(p)?.to_cartesian(p)?;
    Ok(model.coupling(&d, 0.0).0)
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model() -> (ForceModel, DirectField) {
        let spec = BeamSpec { amplitude_scale: 2.0e3, ..Default::default() };
        let m = ForceModel::new(&spec, &PhysicalSetup::default(), ForceParams::default()).unwrap();
        (m, DirectField::new(&spec))
    }

    #[test]
    fn zero_amplitudes_give_zero_coupling() {
        let spec = BeamSpec {
            amp_te: Complex64::new(0.0, 0.0),
            amplitude_scale: 1e3,
            ..Default::default()
        };
        let g = coupling_g(&spec, &PhysicalSetup::default(), ParabolicPoint::new(1.0, 2.0), DipoleSign::Plus).unwrap();
        assert_eq!(g, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn odd_mode_couples_on_its_node() {
        let spec = BeamSpec { amplitude_scale: 1e3, ..Default::default() };
        let p = ParabolicPoint::new(0.0, 3.0);
        let psi = crate::weber::scalar_psi(&spec, p).unwrap().psi;
        assert_eq!(psi.norm(), 0.0);
        let g = coupling_g(&spec, &PhysicalSetup::default(), p, DipoleSign::Plus).unwrap();
        assert!(g.norm() > 0.0);
    }

    #[test]
    fn origin_is_rejected() {
        let r = coupling_g(&BeamSpec::default(), &PhysicalSetup::default(), ParabolicPoint::new(0.0, 0.0), DipoleSign::Plus);
        assert!(matches!(r, Err(Error::Origin)));
    }

    #[test]
    fn axial_log_gradient_is_exact() {
        let (m, f) = model();
        let d = f.cartesian(30.0, 12.0).unwrap();
        let s = m.sample(&d, 4.2, [0.0; 3]).unwrap();
        assert_eq!(s.alpha[2], 0.0);
        assert_eq!(s.beta[2], m.spec().kz());
    }

    #[test]
    fn rest_saturation_matches() {
        let (m, f) = model();
        let d = f.cartesian(-7.0, 3.0).unwrap();
        let s = m.sample(&d, 0.0, [0.0; 3]).unwrap();
        assert!((s.p_prime / s.p - 1.0).abs() < 1e-15);
    }

    #[test]
    fn nodal_points_give_sentinel() {
        let (m, _) = model();
        assert!(m.force_at(&CartesianDerivs::default(), 0.0, [0.0; 3]).is_sentinel());
    }

    #[test]
    fn denominator_variants_agree_when_unsaturated() {
        let spec = BeamSpec { amplitude_scale: 2.0e3, ..Default::default() };
        let setup = PhysicalSetup::default();
        let a = ForceModel::new(&spec, &setup, ForceParams::default()).unwrap();
        let b = ForceModel::new(&spec, &setup, ForceParams { denominator: ForceDenominator::Standard, ..Default::default() })
            .unwrap();
        let d = DirectField::new(&spec).cartesian(20.0, -5.0).unwrap();
        let v = [-6e-4, 1e-5, 0.0];
        let fa = a.force_at(&d, 0.0, v).value();
        let fb = b.force_at(&d, 0.0, v).value();
        for i in 0..2 {
            assert!((fa[i] - fb[i]).abs() < 1e-6 * fa[i].abs());
        }
    }
}
