//! Geometry of the low-intensity region.
//!
//! For `a ≠ 0` one of the two separated factors has hypergeometric
//! parameter `n/4 − i|a|/2` and stays small near the origin before reaching
//! its first maximum at `u_M`: `Ũ` when `a > 0` (dark side `x < 0`), `Ṽ`
//! when `a < 0` (dark side `x > 0`). Both cases are the same function of
//! `s`, so `u_M` depends on `|a|` only.

use super::scalar::TransverseFactor;
use super::BeamSpec;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug)]
pub struct UmSearch {
    /// Scan step in `s` (sqrt(λ)).
    pub step: f64,
    /// Initial scan range; doubled until a maximum appears.
    pub initial_range: f64,
    pub max_range: f64,
    /// Absolute tolerance of the refined location.
    pub tol: f64,
}

impl Default for UmSearch {
    fn default() -> Self {
        UmSearch { step: 0.01, initial_range: 16.0, max_range: 256.0, tol: 1e-7 }
    }
}

fn dark_factor(spec: &BeamSpec) -> TransverseFactor {
    TransverseFactor::with_order(spec.parity, spec.order_a.abs(), spec.k_perp())
}

/// `u_M`: location of the first maximum of the dark-side factor.
pub fn find_um(spec: &BeamSpec) -> Result<f64> {
    find_um_with(spec, &UmSearch::default())
}

pub fn find_um_with(spec: &BeamSpec, search: &UmSearch) -> Result<f64> {
    Ok(dark_factor_maxima_with(spec, 1, search)?[0])
}

/// First `count` local maxima of the dark-side factor; the curves
/// `s = s_j` are the bright parabolas of the beam.
pub fn dark_factor_maxima(spec: &BeamSpec, count: usize) -> Result<Vec<f64>> {
    dark_factor_maxima_with(spec, count, &UmSearch::default())
}

fn dark_factor_maxima_with(spec: &BeamSpec, count: usize, search: &UmSearch) -> Result<Vec<f64>> {
    let factor = dark_factor(spec);
    let mag = |s: f64| factor.magnitude(s);
    let mut out = Vec::with_capacity(count);
    let mut range = search.initial_range;
    let ds = search.step;
    let mut prev = mag(0.0)?;
    let mut cur = mag(ds)?;
    if prev >= cur {
        out.push(0.0);
    }
    let mut i = 1usize;
    while out.len() < count {
        let s = i as f64 * ds;
        if s > range {
            if range * 2.0 > search.max_range {
                return Err(Error::NoMaximum(range));
            }
            range *= 2.0;
        }
        let next = mag(s + ds)?;
        if cur > prev && cur >= next {
            out.push(golden_max(&mag, s - ds, s + ds, search.tol)?);
        }
        prev = cur;
        cur = next;
        i += 1;
    }
    Ok(out)
}

fn golden_max(f: &dyn Fn(f64) -> Result<f64>, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64> {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = hi - r * (hi - lo);
    let mut d = lo + r * (hi - lo);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    while hi - lo > tol {
        if fc > fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - r * (hi - lo);
            fc = f(c)?;
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + r * (hi - lo);
            fd = f(d)?;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Delimiting parabola `y = sqrt(2u_M²(|x| − u_M²/2))`; `None` inside the
/// vertex (`|x| < u_M²/2`).
pub fn dark_parabola(u_m: f64, x: f64) -> Option<f64> {
    let u2 = u_m * u_m;
    let arg = 2.0 * u2 * (x.abs() - 0.5 * u2);
    (arg >= 0.0).then(|| arg.sqrt())
}

/// Largest expected deflection for atoms entering the dark region at `x0`,
/// `arctan(sqrt((u_M²/|x0|)(1 − u_M²/(2|x0|))))`. `None` unless
/// `|x0| > u_M²/2`.
pub fn max_deflection_angle(u_m: f64, x0: f64) -> Option<f64> {
    let u2 = u_m * u_m;
    let ax = x0.abs();
    (ax > 0.5 * u2).then(|| ((u2 / ax) * (1.0 - u2 / (2.0 * ax))).sqrt().atan())
}

/// Ordinate of the bright parabola `s = s_j` of the dark-side factor at
/// abscissa `x` (positive branch). For `a ≤ 0` the factor is `Ṽ` and the
/// curve is `v = s_j`; for `a > 0` it is `u = s_j`.
pub fn bright_parabola_y(spec: &BeamSpec, s_j: f64, x: f64) -> Option<f64> {
    let x_eff = if spec.order_a > 0.0 { -x } else { x };
    let arg = 2.0 * x_eff + s_j * s_j;
    (arg >= 0.0).then(|| s_j * arg.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weber::Parity;

    #[test]
    fn parabola_vertex_and_domain() {
        assert_eq!(dark_parabola(5.0, 12.5), Some(0.0));
        assert_eq!(dark_parabola(5.0, -12.5), Some(0.0));
        assert_eq!(dark_parabola(5.0, 10.0), None);
        let y = dark_parabola(5.0, 150.0).unwrap();
        assert!((y - (50.0f64 * 137.5).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn deflection_bound_values() {
        let th = max_deflection_angle(5.0, 150.0).unwrap();
        let want = ((25.0f64 / 150.0) * (1.0 - 25.0 / 300.0)).sqrt().atan();
        assert!((th - want).abs() < 1e-15);
        assert!((th - 0.373).abs() < 1e-3);
        assert!(max_deflection_angle(1e-6, 150.0).unwrap() < 1e-7);
        assert_eq!(max_deflection_angle(20.0, 150.0), None);
    }

    #[test]
    fn um_depends_on_modulus_of_order_only() {
        let a = find_um(&BeamSpec { order_a: -5.0, ..Default::default() }).unwrap();
        let b = find_um(&BeamSpec { order_a: 5.0, ..Default::default() }).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn even_zero_order_peaks_on_axis() {
        let spec = BeamSpec { parity: Parity::Even, order_a: 0.0, ..Default::default() };
        assert_eq!(find_um(&spec).unwrap(), 0.0);
    }

    #[test]
    fn scan_resolution_does_not_move_um() {
        let spec = BeamSpec::default();
        let coarse = find_um_with(&spec, &UmSearch { step: 0.02, ..Default::default() }).unwrap();
        let fine = find_um_with(&spec, &UmSearch { step: 0.01, ..Default::default() }).unwrap();
        assert!((coarse - fine).abs() < 1e-3);
    }

    #[test]
    fn maxima_are_ordered() {
        let m = dark_factor_maxima(&BeamSpec::default(), 4).unwrap();
        assert!(m.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn unreachable_maximum_is_reported() {
        let s = UmSearch { initial_range: 0.5, max_range: 1.0, ..Default::default() };
        let spec = BeamSpec { order_a: -5.0, ..Default::default() };
        assert!(matches!(find_um_with(&spec, &s), Err(Error::NoMaximum(_))));
    }
}
