use super::{BeamSpec, ParabolicPoint, Parity};
use crate::error::{Error, Result};
use crate::special::kummer_1f1_with_derivatives;
use num_complex::Complex64;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// One separated factor of the transverse mode including its share of the
/// quadratic phase: `f(s) = P(s) ₁F₁(α; n/2; i k⊥ s²) e^{−i k⊥ s²/2}` with
/// `P = 1` (even) or `P = sqrt(k⊥)·s` (odd).
#[derive(Clone, Copy, Debug)]
pub struct TransverseFactor {
    alpha: Complex64,
    b: Complex64,
    k_perp: f64,
    odd: bool,
}

impl TransverseFactor {
    /// The `Ũ(u)` factor of `spec`.
    pub fn u_factor(spec: &BeamSpec) -> Self {
        Self::with_order(spec.parity, spec.order_a, spec.k_perp())
    }

    /// The `Ṽ(v)` factor of `spec`: same function with `a → −a`.
    pub fn v_factor(spec: &BeamSpec) -> Self {
        Self::with_order(spec.parity, -spec.order_a, spec.k_perp())
    }

    /// Factor with hypergeometric parameter `n/4 − i·order/2`.
    pub fn with_order(parity: Parity, order: f64, k_perp: f64) -> Self {
        let n = parity.n();
        TransverseFactor {
            alpha: Complex64::new(n / 4.0, -order / 2.0),
            b: Complex64::new(n / 2.0, 0.0),
            k_perp,
            odd: parity == Parity::Odd,
        }
    }

    pub fn is_odd(&self) -> bool {
        self.odd
    }

    /// `[f, f', f'']` at `s`.
    pub fn eval(&self, s: f64) -> Result<[Complex64; 3]> {
        let kp = self.k_perp;
        let w = I * (kp * s * s);
        let [m0, m1, m2] = kummer_1f1_with_derivatives(self.alpha, self.b, w)?;
        let phase = (-0.5 * w).exp();
        let ws = I * (2.0 * kp * s);
        let wss = I * (2.0 * kp);
        let q = m0 * phase;
        let dq_dw = (m1 - 0.5 * m0) * phase;
        let d2q_dw2 = (m2 - m1 + 0.25 * m0) * phase;
        let q1 = dq_dw * ws;
        let q2 = d2q_dw2 * ws * ws + dq_dw * wss;
        if self.odd {
            let r = kp.sqrt();
            Ok([r * s * q, r * (q + s * q1), r * (2.0 * q1 + s * q2)])
        } else {
            Ok([q, q1, q2])
        }
    }

    /// `|Ũ|` without the (unit-modulus) quadratic phase, as used when
    /// locating maxima.
    pub fn magnitude(&self, s: f64) -> Result<f64> {
        Ok(self.eval_value(s)?.norm())
    }

    fn eval_value(&self, s: f64) -> Result<Complex64> {
        let w = I * (self.k_perp * s * s);
        let m = crate::special::kummer_1f1(self.alpha, self.b, w)?;
        Ok(if self.odd { self.k_perp.sqrt() * s * m } else { m })
    }
}

/// `ψ` and its first and second partials with respect to `u` and `v`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ScalarDerivs {
    pub psi: Complex64,
    pub du: Complex64,
    pub dv: Complex64,
    pub duu: Complex64,
    pub duv: Complex64,
    pub dvv: Complex64,
}

impl ScalarDerivs {
    pub fn from_factors(f: [Complex64; 3], g: [Complex64; 3]) -> Self {
        ScalarDerivs {
            psi: f[0] * g[0],
            du: f[1] * g[0],
            dv: f[0] * g[1],
            duu: f[2] * g[0],
            duv: f[1] * g[1],
            dvv: f[0] * g[2],
        }
    }

    /// Chain rule to Cartesian partials. Undefined at the origin.
    pub fn to_cartesian(&self, p: ParabolicPoint) -> Result<CartesianDerivs> {
        let (u, v) = (p.u, p.v);
        let h2 = u * u + v * v;
        if h2 == 0.0 {
            return Err(Error::Origin);
        }
        let ih2 = 1.0 / h2;
        let ih4 = ih2 * ih2;
        let ih6 = ih4 * ih2;
        let a = u * self.du - v * self.dv;
        let b = v * self.du + u * self.dv;
        let a_u = self.du + u * self.duu - v * self.duv;
        let a_v = u * self.duv - self.dv - v * self.dvv;
        let b_u = v * self.duu + self.dv + u * self.duv;
        let b_v = self.du + v * self.duv + u * self.dvv;
        Ok(CartesianDerivs {
            psi: self.psi,
            dx: a * ih2,
            dy: b * ih2,
            dxx: (u * a_u - v * a_v) * ih4 - 2.0 * (u * u - v * v) * a * ih6,
            dxy: (v * a_u + u * a_v) * ih4 - 4.0 * u * v * a * ih6,
            dyy: (v * b_u + u * b_v) * ih4 - 4.0 * u * v * b * ih6,
        })
    }
}

/// `ψ` and its Cartesian partials up to second order.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CartesianDerivs {
    pub psi: Complex64,
    pub dx: Complex64,
    pub dy: Complex64,
    pub dxx: Complex64,
    pub dxy: Complex64,
    pub dyy: Complex64,
}

/// Source of the transverse scalar mode and its partials.
pub trait TransverseField: Send + Sync {
    fn parabolic(&self, p: ParabolicPoint) -> Result<ScalarDerivs>;

    fn cartesian(&self, x: f64, y: f64) -> Result<CartesianDerivs> {
        let p = ParabolicPoint::from_cartesian(x, y);
        self.parabolic(p)?.to_cartesian(p)
    }
}

/// Evaluates every point from the hypergeometric functions.
#[derive(Clone, Copy, Debug)]
pub struct DirectField {
    u: TransverseFactor,
    v: TransverseFactor,
}

impl DirectField {
    pub fn new(spec: &BeamSpec) -> Self {
        DirectField { u: TransverseFactor::u_factor(spec), v: TransverseFactor::v_factor(spec) }
    }
}

impl TransverseField for DirectField {
    fn parabolic(&self, p: ParabolicPoint) -> Result<ScalarDerivs> {
        Ok(ScalarDerivs::from_factors(self.u.eval(p.u)?, self.v.eval(p.v)?))
    }
}

/// Transverse factor `ψ(u, v)` with analytic first and second partials.
pub fn scalar_psi(spec: &BeamSpec, p: ParabolicPoint) -> Result<ScalarDerivs> {
    DirectField::new(spec).parabolic(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(parity: Parity, a: f64) -> BeamSpec {
        BeamSpec { parity, order_a: a, ..Default::default() }
    }

    #[test]
    fn odd_parity_vanishes_at_u_zero() {
        let d = scalar_psi(&spec(Parity::Odd, -5.0), ParabolicPoint::new(0.0, 2.3)).unwrap();
        assert_eq!(d.psi.norm(), 0.0);
        // but its u-derivative does not
        assert!(d.du.norm() > 1e-3);
    }

    #[test]
    fn modulus_is_mirror_symmetric() {
        for parity in [Parity::Even, Parity::Odd] {
            for a in [-5.0, 0.0, 2.0] {
                let f = DirectField::new(&spec(parity, a));
                let (x, y) = (13.7, 8.2);
                let p = f.cartesian(x, y).unwrap().psi.norm();
                let m = f.cartesian(x, -y).unwrap().psi.norm();
                assert!((p - m).abs() <= 1e-12 * p, "{parity:?} {a}: {p} {m}");
            }
        }
    }

    #[test]
    fn factor_derivatives_match_finite_differences() {
        for parity in [Parity::Even, Parity::Odd] {
            let f = TransverseFactor::with_order(parity, -2.0, 0.63);
            let s = 3.1;
            let h = 1e-5;
            let [_, d1, d2] = f.eval(s).unwrap();
            let p = f.eval(s + h).unwrap();
            let m = f.eval(s - h).unwrap();
            let fd1 = (p[0] - m[0]) / (2.0 * h);
            let fd2 = (p[1] - m[1]) / (2.0 * h);
            assert!((d1 - fd1).norm() < 1e-8 * d1.norm());
            assert!((d2 - fd2).norm() < 1e-8 * d2.norm());
        }
    }

    #[test]
    fn cartesian_laplacian_is_helmholtz() {
        let s = spec(Parity::Even, -2.0);
        let kp = s.k_perp();
        let f = DirectField::new(&s);
        for &(x, y) in &[(3.0, 1.0), (-7.5, 4.25), (0.3, -0.2), (40.0, -12.0)] {
            let d = f.cartesian(x, y).unwrap();
            let lap = d.dxx + d.dyy;
            let r = (lap + kp * kp * d.psi).norm() / (kp * kp * d.psi.norm() + lap.norm());
            assert!(r < 1e-10, "({x}, {y}): {r}");
        }
    }

    #[test]
    fn origin_is_flagged() {
        let f = DirectField::new(&spec(Parity::Even, 1.0));
        assert!(matches!(f.cartesian(0.0, 0.0), Err(Error::Origin)));
    }
}
