mod common;

use common::{coupling, random_points, rest_force};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use weber_splitter::config::RunConfig;
use weber_splitter::force::{coupling_g, DipoleSign, ForceDenominator, ForceModel, ForceParams};
use weber_splitter::scenario::Prepared;
use weber_splitter::units::PhysicalSetup;
use weber_splitter::weber::{BeamSpec, DirectField, ParabolicPoint, Parity, TransverseField};

fn spec(parity: Parity, scale: f64) -> BeamSpec {
    BeamSpec { parity, amplitude_scale: scale, amp_tm: Complex64::new(0.3, 0.1), ..Default::default() }
}

#[test]
fn rest_force_reduces_to_closed_form() {
    let setup = PhysicalSetup::default();
    for parity in [Parity::Even, Parity::Odd] {
        let spec = spec(parity, 0.5448);
        let model = ForceModel::new(&spec, &setup, ForceParams::default()).unwrap();
        let field = DirectField::new(&spec);
        let mut checked = 0;
        for (x, y, z) in random_points(100, 7) {
            let d = field.cartesian(x, y).unwrap();
            let want = rest_force(&spec, &setup, &d, z);
            let got = model.force_at(&d, z, [0.0; 3]).value();
            let scale = want.iter().map(|c| c.abs()).fold(0.0, f64::max);
            for i in 0..3 {
                assert!((got[i] - want[i]).abs() <= 1e-12 * scale, "({x}, {y}, {z}) {got:?} vs {want:?}");
            }
            checked += 1;
        }
        assert_eq!(checked, 100);
    }
}

#[test]
fn red_detuning_pulls_toward_stronger_coupling() {
    let setup = PhysicalSetup::default();
    assert!(setup.detuning().natural < 0.0);
    let spec = spec(Parity::Odd, 0.5448);
    let model = ForceModel::new(&spec, &setup, ForceParams::default()).unwrap();
    let field = DirectField::new(&spec);
    let g2 = |x: f64, y: f64| coupling(&spec, &setup, &field.cartesian(x, y).unwrap(), 0.0).0.norm_sqr();
    let peak = random_points(400, 3).iter().map(|&(x, y, _)| g2(x, y)).fold(0.0, f64::max);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 100 {
        let (x, y) = (rng.random_range(-80.0..80.0), rng.random_range(-80.0..80.0));
        if g2(x, y) < 1e-3 * peak {
            continue;
        }
        let h = 1e-4;
        let grad = [(g2(x + h, y) - g2(x - h, y)) / (2.0 * h), (g2(x, y + h) - g2(x, y - h)) / (2.0 * h)];
        let f = model.force_at(&field.cartesian(x, y).unwrap(), 0.0, [0.0; 3]).value();
        let along = f[0] * grad[0] + f[1] * grad[1];
        assert!(along > 0.0, "({x}, {y}): f = {f:?}, ∇|g|² = {grad:?}");
        checked += 1;
    }
}

#[test]
fn weak_field_force_scales_with_intensity() {
    let setup = PhysicalSetup::default();
    let weak = spec(Parity::Even, 0.5);
    let strong = BeamSpec { amplitude_scale: 1.0, ..weak.clone() };
    let a = ForceModel::new(&weak, &setup, ForceParams::default()).unwrap();
    let b = ForceModel::new(&strong, &setup, ForceParams::default()).unwrap();
    let field = DirectField::new(&weak);
    for (x, y, z) in random_points(20, 5) {
        let d = field.cartesian(x, y).unwrap();
        let v = [-6e-4, 2e-5, -1e-5];
        let fa = a.force_at(&d, z, v).value();
        let fb = b.force_at(&d, z, v).value();
        for i in 0..2 {
            assert!((fb[i] - 4.0 * fa[i]).abs() <= 1e-8 * fb[i].abs(), "{fa:?} {fb:?}");
        }
    }
}

#[test]
fn log_gradient_matches_finite_differences() {
    let setup = PhysicalSetup::default();
    let spec = spec(Parity::Even, 1.0);
    let model = ForceModel::new(&spec, &setup, ForceParams::default()).unwrap();
    let field = DirectField::new(&spec);
    let g = |x: f64, y: f64| model.coupling(&field.cartesian(x, y).unwrap(), 0.0).0;
    for (x, y, _) in random_points(20, 9) {
        let s = model.sample(&field.cartesian(x, y).unwrap(), 0.0, [0.0; 3]).unwrap();
        let h = 1e-4;
        let lx = ((g(x + h, y) / g(x - h, y)).ln()) / (2.0 * h);
        let ly = ((g(x, y + h) / g(x, y - h)).ln()) / (2.0 * h);
        let scale = s.alpha[0].hypot(s.alpha[1]).max(s.beta[0].hypot(s.beta[1]));
        assert!((lx.re - s.alpha[0]).abs() <= 1e-6 * scale);
        assert!((ly.re - s.alpha[1]).abs() <= 1e-6 * scale);
        assert!((lx.im - s.beta[0]).abs() <= 1e-6 * scale);
        assert!((ly.im - s.beta[1]).abs() <= 1e-6 * scale);
    }
}

#[test]
fn denominators_share_rest_limit_to_first_order() {
    let setup = PhysicalSetup::default();
    let spec = spec(Parity::Odd, 1.0);
    let field = DirectField::new(&spec);
    let a = ForceModel::new(&spec, &setup, ForceParams::default()).unwrap();
    let b = ForceModel::new(&spec, &setup, ForceParams { denominator: ForceDenominator::Standard, ..Default::default() })
        .unwrap();
    let d = field.cartesian(9.0, 4.0).unwrap();
    let s = a.sample(&d, 0.0, [0.0; 3]).unwrap();
    let fa = a.force_at(&d, 0.0, [0.0; 3]).value();
    let fb = b.force_at(&d, 0.0, [0.0; 3]).value();
    // (1 + p) / (1 − p)
    let want = (1.0 + s.p) / (1.0 - s.p);
    assert!((fa[0] / fb[0] - want).abs() <= 1e-12);
}

#[test]
fn calibrated_coupling_fixture() {
    let run = Prepared::new(&RunConfig::default()).unwrap();
    let g = coupling_g(&run.spec, &PhysicalSetup::default(), ParabolicPoint::new(3.0, 2.0), DipoleSign::Plus).unwrap();
    // pinned after the first validated run
    let want = Complex64::new(0.27309077896956446, 0.45366362798524845);
    assert!((run.spec.amplitude_scale - 0.5448336359150744).abs() <= 1e-9 * 0.5448);
    assert!((g - want).norm() <= 1e-9 * want.norm(), "{g}");
}
