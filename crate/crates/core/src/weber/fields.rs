use super::scalar::{CartesianDerivs, DirectField, TransverseField};
use super::{BeamSpec, ParabolicPoint};
use crate::error::{Error, Result};
use crate::units::{EPSILON_0, SPEED_OF_LIGHT};
use num_complex::Complex64;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Field quantities at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FieldSample {
    pub psi: Complex64,
    pub dpsi_du: Complex64,
    pub dpsi_dv: Complex64,
    /// Dimensionless mode field (Cartesian), traveling phase included.
    pub e_shape: [Complex64; 3],
    /// Electric field (V/m), Cartesian `x, y, z`.
    pub e_cartesian: [Complex64; 3],
    /// Electric field (V/m) on the `e_u, e_v, e_z` basis.
    pub e_parabolic: [Complex64; 3],
    /// `c·B` (V/m), Cartesian.
    pub cb_cartesian: [Complex64; 3],
    /// Time-averaged irradiance `(cε₀/2)|E|²` in W/cm².
    pub intensity: f64,
}

/// Transverse-plane mode fields `(E, cB)` in dimensionless units, without
/// the traveling phase. With `∂_ct → −ik` and `∂_z → ik_z`:
///
/// ```text
/// E  = k² A_TE (ψ_y, −ψ_x, 0) + k k_z A_TM (ψ_x, ψ_y, 0) − i k k⊥² A_TM ψ ẑ
/// cB = k k_z A_TE (ψ_x, ψ_y, 0) − i k k⊥² A_TE ψ ẑ + k² A_TM (ψ_y, −ψ_x, 0)
/// ```
pub fn shape_field(spec: &BeamSpec, d: &CartesianDerivs) -> ([Complex64; 3], [Complex64; 3]) {
    let (k, kz, kp) = (spec.k(), spec.kz(), spec.k_perp());
    let te = spec.amp_te;
    let tm = spec.amp_tm;
    let e = [
        k * k * te * d.dy + k * kz * tm * d.dx,
        -k * k * te * d.dx + k * kz * tm * d.dy,
        -I * (k * kp * kp) * tm * d.psi,
    ];
    let cb = [
        k * kz * te * d.dx + k * k * tm * d.dy,
        k * kz * te * d.dy - k * k * tm * d.dx,
        -I * (k * kp * kp) * te * d.psi,
    ];
    (e, cb)
}

/// `(cε₀/2)|E|²` in W/cm² for a field in V/m.
pub fn irradiance_w_cm2(e: &[Complex64; 3]) -> f64 {
    let e2: f64 = e.iter().map(|c| c.norm_sqr()).sum();
    0.5 * SPEED_OF_LIGHT * EPSILON_0 * e2 * 1e-4
}

/// Full vector field of the beam at `(u, v, z)` and temporal phase `ωt`.
pub fn em_fields(spec: &BeamSpec, p: ParabolicPoint, z: f64, omega_t: f64) -> Result<FieldSample> {
    let h = p.h();
    if h == 0.0 {
        return Err(Error::Origin);
    }
    let field = DirectField::new(spec);
    let sd = field.parabolic(p)?;
    let d = sd.to_cartesian(p)?;
    let (e, cb) = shape_field(spec, &d);
    let phase = Complex64::from_polar(1.0, spec.kz() * z - omega_t);
    let e_shape = e.map(|c| c * phase);
    let e_cartesian = e_shape.map(|c| c * spec.amplitude_scale);
    let cb_cartesian = cb.map(|c| c * phase * spec.amplitude_scale);
    let (cu, cv) = (p.u / h, p.v / h);
    let e_parabolic = [
        cu * e_cartesian[0] + cv * e_cartesian[1],
        -cv * e_cartesian[0] + cu * e_cartesian[1],
        e_cartesian[2],
    ];
    Ok(FieldSample {
        psi: sd.psi,
        dpsi_du: sd.du,
        dpsi_dv: sd.dv,
        e_shape,
        e_cartesian,
        e_parabolic,
        cb_cartesian,
        intensity: irradiance_w_cm2(&e_cartesian),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weber::Parity;

    fn beam(te: f64, tm: f64) -> BeamSpec {
        BeamSpec {
            parity: Parity::Even,
            order_a: -2.0,
            amp_te: Complex64::new(te, 0.0),
            amp_tm: Complex64::new(tm, 0.0),
            amplitude_scale: 1.0e3,
            ..Default::default()
        }
    }

    #[test]
    fn pure_te_has_no_longitudinal_field() {
        let spec = beam(1.0, 0.0);
        for &(x, y) in &[(1.0, 2.0), (-4.0, 0.5), (20.0, -3.0)] {
            let s = em_fields(&spec, ParabolicPoint::from_cartesian(x, y), 0.3, 0.0).unwrap();
            assert_eq!(s.e_cartesian[2].norm(), 0.0);
        }
    }

    #[test]
    fn intensity_is_independent_of_z_and_t() {
        let spec = beam(1.0, 0.4);
        let p = ParabolicPoint::from_cartesian(3.3, -1.2);
        let a = em_fields(&spec, p, 0.0, 0.0).unwrap().intensity;
        let b = em_fields(&spec, p, 17.25, 2.1).unwrap().intensity;
        assert!((a - b).abs() <= 1e-14 * a);
    }

    #[test]
    fn parabolic_components_preserve_norm() {
        let spec = beam(0.7, 0.3);
        let s = em_fields(&spec, ParabolicPoint::new(1.3, 2.2), 0.0, 0.0).unwrap();
        let n1: f64 = s.e_cartesian.iter().map(|c| c.norm_sqr()).sum();
        let n2: f64 = s.e_parabolic.iter().map(|c| c.norm_sqr()).sum();
        assert!((n1 - n2).abs() < 1e-12 * n1);
    }

    #[test]
    fn origin_is_flagged() {
        assert!(matches!(em_fields(&beam(1.0, 0.0), ParabolicPoint::new(0.0, 0.0), 0.0, 0.0), Err(Error::Origin)));
    }
}
