use num_complex::Complex64;
use std::f64::consts::PI;

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural log of the complex gamma function, principal value up to a
/// multiple of `2πi` (only `exp` of the result is meaningful).
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // reflection: Γ(z)Γ(1-z) = π / sin(πz)
        let s = (z * PI).sin();
        return Complex64::new(PI.ln(), 0.0) - s.ln() - ln_gamma(1.0 - z);
    }
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS_COEF[0], 0.0);
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

/// `1/Γ(z)`, exactly zero at the poles.
pub fn recip_gamma(z: Complex64) -> Complex64 {
    if is_nonpositive_integer(z) {
        return Complex64::new(0.0, 0.0);
    }
    (-ln_gamma(z)).exp()
}

pub fn gamma(z: Complex64) -> Complex64 {
    ln_gamma(z).exp()
}

pub(crate) fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn factorials() {
        let mut f = 1.0;
        for n in 1..15 {
            let g = gamma(Complex64::new(n as f64, 0.0));
            assert!(rel(g, Complex64::new(f, 0.0)) < 1e-13, "n = {n}");
            f *= n as f64;
        }
    }

    #[test]
    fn half_integer() {
        let g = gamma(Complex64::new(0.5, 0.0));
        assert!(rel(g, Complex64::new(PI.sqrt(), 0.0)) < 1e-14);
    }

    #[test]
    fn modulus_on_imaginary_axis() {
        // |Γ(iy)|² = π / (y sinh πy)
        for &y in &[0.5, 2.5, 5.0] {
            let g = gamma(Complex64::new(0.0, y));
            let want = (PI / (y * (PI * y).sinh())).sqrt();
            assert!((g.norm() - want).abs() / want < 1e-13);
        }
    }

    #[test]
    fn recurrence_with_complex_argument() {
        let z = Complex64::new(0.25, -2.5);
        let lhs = gamma(z + 1.0);
        let rhs = z * gamma(z);
        assert!(rel(lhs, rhs) < 1e-13);
    }

    #[test]
    fn poles() {
        assert_eq!(recip_gamma(Complex64::new(-3.0, 0.0)).norm(), 0.0);
        assert_eq!(recip_gamma(Complex64::new(0.0, 0.0)).norm(), 0.0);
    }
}
