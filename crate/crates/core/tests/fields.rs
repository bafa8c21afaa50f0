use num_complex::Complex64;
use proptest::prelude::*;
use weber_splitter::weber::{
    em_fields, shape_field, BeamSpec, DirectField, ParabolicPoint, Parity, TabulatedField, TransverseField,
};

const POINTS: [(f64, f64); 8] =
    [(3.1, 1.7), (-4.2, 2.9), (7.5, -6.3), (0.9, 0.4), (-1.3, -8.8), (12.0, 3.3), (-25.0, -9.0), (40.0, 17.0)];

fn specs() -> Vec<BeamSpec> {
    let mut v = Vec::new();
    for parity in [Parity::Even, Parity::Odd] {
        for a in [-5.0, -2.0, 0.0, 5.0] {
            v.push(BeamSpec { parity, order_a: a, ..Default::default() });
        }
    }
    v
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(a.norm())
}

#[test]
fn transverse_helmholtz_holds() {
    for spec in specs() {
        let f = DirectField::new(&spec);
        let kp2 = spec.k_perp().powi(2);
        for (x, y) in POINTS {
            let d = f.cartesian(x, y).unwrap();
            let r = d.dxx + d.dyy + kp2 * d.psi;
            let scale = d.dxx.norm() + d.dyy.norm() + kp2 * d.psi.norm();
            assert!(r.norm() <= 1e-9 * scale, "{spec:?} at ({x}, {y}): {:.2e}", r.norm() / scale);
        }
    }
}

#[test]
fn modulus_is_mirror_symmetric() {
    for spec in specs() {
        let f = DirectField::new(&spec);
        for (x, y) in POINTS {
            let a = f.cartesian(x, y).unwrap().psi.norm();
            let b = f.cartesian(x, -y).unwrap().psi.norm();
            assert!((a - b).abs() <= 1e-13 * a, "{spec:?} ({x}, {y})");
        }
    }
}

#[test]
fn order_reflection_swaps_half_planes() {
    // ψ_{−a}(x, y) = ψ_a(−x, y)
    for spec in specs() {
        let neg = BeamSpec { order_a: -spec.order_a, ..spec.clone() };
        let (f, g) = (DirectField::new(&spec), DirectField::new(&neg));
        for (x, y) in POINTS {
            let a = f.cartesian(-x, y).unwrap().psi;
            let b = g.cartesian(x, y).unwrap().psi;
            assert!(rel(a, b) <= 1e-12, "{spec:?} ({x}, {y}): {a} vs {b}");
        }
    }
}

/// Central differences of a complex function of one variable, orders 2 and 4.
fn fd2(f: &dyn Fn(f64) -> Complex64, t: f64, h: f64) -> Complex64 {
    (f(t + h) - f(t - h)) / (2.0 * h)
}

fn fd4(f: &dyn Fn(f64) -> Complex64, t: f64, h: f64) -> Complex64 {
    (f(t - 2.0 * h) - 8.0 * f(t - h) + 8.0 * f(t + h) - f(t + 2.0 * h)) / (12.0 * h)
}

#[test]
fn analytic_gradients_converge_at_second_order() {
    for spec in specs() {
        let field = DirectField::new(&spec);
        for (x, y) in POINTS {
            let d = field.cartesian(x, y).unwrap();
            type Pick = fn(&weber_splitter::weber::CartesianDerivs) -> Complex64;
            let cases: [(Pick, Complex64, bool); 4] = [
                (|d| d.psi, d.dx, true),
                (|d| d.psi, d.dy, false),
                (|d| d.dx, d.dxx, true),
                (|d| d.dy, d.dxy, true),
            ];
            for (pick, want, along_x) in cases {
                let f = |t: f64| {
                    let d = if along_x { field.cartesian(t, y) } else { field.cartesian(x, t) };
                    pick(&d.unwrap())
                };
                let t = if along_x { x } else { y };
                let h = 0.02;
                let e1 = (fd2(&f, t, h) - want).norm();
                let e2 = (fd2(&f, t, h / 2.0) - want).norm();
                let ratio = e1 / e2;
                assert!((3.6..=4.4).contains(&ratio), "{spec:?} ({x}, {y}): ratio {ratio}");
            }
        }
    }
}

#[test]
fn electric_field_is_divergence_free() {
    let spec = BeamSpec {
        amp_tm: Complex64::new(0.4, -0.3),
        amplitude_scale: 1.0,
        ..Default::default()
    };
    let kz = spec.kz();
    for parity in [Parity::Even, Parity::Odd] {
        let spec = BeamSpec { parity, ..spec.clone() };
        for (x, y) in POINTS {
            let e = |x: f64, y: f64| em_fields(&spec, ParabolicPoint::from_cartesian(x, y), 0.0, 0.0).unwrap().e_shape;
            let h = 1e-3;
            let dex = fd4(&|t| e(t, y)[0], x, h);
            let dey = fd4(&|t| e(x, t)[1], y, h);
            let e0 = e(x, y);
            let div = dex + dey + Complex64::new(0.0, kz) * e0[2];
            let scale = spec.k() * e0.iter().map(|c| c.norm()).fold(0.0, f64::max);
            assert!(div.norm() <= 1e-6 * scale, "({x}, {y}): {:.2e}", div.norm() / scale);
        }
    }
}

#[test]
fn shape_field_transverse_part_is_tangent_to_gradient() {
    // pure TE: E⊥ = k²(ψ_y, −ψ_x) is orthogonal to ∇ψ in the bilinear sense
    let spec = BeamSpec::default();
    let d = DirectField::new(&spec).cartesian(6.0, 2.0).unwrap();
    let (e, _) = shape_field(&spec, &d);
    let dot = e[0] * d.dx + e[1] * d.dy;
    assert!(dot.norm() <= 1e-12 * e[0].norm() * d.dx.norm().max(d.dy.norm()));
    assert_eq!(e[2], Complex64::new(0.0, 0.0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn grid_tracks_direct_evaluation(x in -120.0f64..120.0, y in -120.0f64..120.0, odd in any::<bool>()) {
        prop_assume!(x.hypot(y) > 0.5);
        let spec = BeamSpec { parity: if odd { Parity::Odd } else { Parity::Even }, ..Default::default() };
        let table = TabulatedField::new(&spec, 200.0, 0.02).unwrap();
        let a = table.cartesian(x, y).unwrap();
        let b = DirectField::new(&spec).cartesian(x, y).unwrap();
        let scale = b.psi.norm() + b.dx.norm() / spec.k_perp();
        prop_assert!((a.psi - b.psi).norm() <= 1e-8 * scale.max(1e-6));
    }

    #[test]
    fn mirror_symmetry_random(x in -80.0f64..80.0, y in 0.01f64..80.0, a in -8.0f64..8.0) {
        let spec = BeamSpec { order_a: a, ..Default::default() };
        let f = DirectField::new(&spec);
        let p = f.cartesian(x, y).unwrap().psi.norm();
        let m = f.cartesian(x, -y).unwrap().psi.norm();
        prop_assert!((p - m).abs() <= 1e-12 * p.max(1e-300));
    }
}
