//! Double-double arithmetic, just enough to sum power series whose terms
//! cancel by many orders of magnitude.
//!
//! A value is the unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`, giving
//! roughly 106 bits of significand.

use num_complex::Complex64;
use std::ops::{Add, Mul};

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    #[inline]
    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn neg(self) -> Self {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        Dd { hi, lo }
    }

    pub fn div(self, b: Dd) -> Self {
        let q1 = self.hi / b.hi;
        let r = self + b.mul_f64(q1).neg();
        let q2 = r.hi / b.hi;
        let r = r + b.mul_f64(q2).neg();
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::from_f64(q3)
    }

    #[inline]
    pub fn div_f64(self, b: f64) -> Self {
        let q1 = self.hi / b;
        let (p, e) = two_prod(q1, b);
        let (s, f) = two_sum(self.hi, -p);
        let q2 = (s + (f - e + self.lo)) / b;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

/// Complex number with double-double parts.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CDd {
    pub re: Dd,
    pub im: Dd,
}

impl CDd {
    pub const ONE: CDd = CDd { re: Dd { hi: 1.0, lo: 0.0 }, im: Dd::ZERO };

    #[inline]
    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    #[inline]
    pub fn norm_approx(self) -> f64 {
        self.re.hi.hypot(self.im.hi)
    }

    /// `self * w` with `w` an ordinary complex number taken as exact.
    #[inline]
    pub fn mul_c64(self, w: Complex64) -> CDd {
        CDd {
            re: self.re.mul_f64(w.re) + self.im.mul_f64(w.im).neg(),
            im: self.re.mul_f64(w.im) + self.im.mul_f64(w.re),
        }
    }

    /// `self / w` with `w` an ordinary complex number taken as exact.
    #[inline]
    pub fn div_c64(self, w: Complex64) -> CDd {
        if w.im == 0.0 {
            return CDd { re: self.re.div_f64(w.re), im: self.im.div_f64(w.re) };
        }
        let conj = Complex64::new(w.re, -w.im);
        let wr = Dd::from_f64(w.re);
        let wi = Dd::from_f64(w.im);
        let den = wr * wr + wi * wi;
        let num = self.mul_c64(conj);
        CDd { re: num.re.div(den), im: num.im.div(den) }
    }
}

impl Add for CDd {
    type Output = CDd;
    #[inline]
    fn add(self, b: CDd) -> CDd {
        CDd { re: self.re + b.re, im: self.im + b.im }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_bits_lost_in_plain_f64() {
        let big = Dd::from_f64(1.0e17);
        let one = Dd::from_f64(1.0);
        let s = big + one + big.neg();
        assert_eq!(s.to_f64(), 1.0);
    }

    #[test]
    fn division_by_three_is_accurate() {
        let third = Dd::from_f64(1.0).div_f64(3.0);
        let back = third.mul_f64(3.0) + Dd::from_f64(-1.0);
        assert!(back.to_f64().abs() < 1e-31);
    }

    #[test]
    fn complex_division_round_trip() {
        let x = CDd { re: Dd::from_f64(0.3), im: Dd::from_f64(-1.7) };
        let w = Complex64::new(2.5, 0.75);
        let y = x.div_c64(w).mul_c64(w);
        assert!((y.re + x.re.neg()).to_f64().abs() < 1e-30);
        assert!((y.im + x.im.neg()).to_f64().abs() < 1e-30);
    }
}
