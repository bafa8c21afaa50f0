//! Mean force, saturation and dipole potential depth along a line of
//! constant x across the dark region.

use weber_splitter::config::RunConfig;
use weber_splitter::scenario::Prepared;
use weber_splitter::units::{BOLTZMANN, HBAR};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let x: f64 = std::env::args().nth(1).map_or(Ok(20.0), |s| s.parse())?;
    let cfg = RunConfig::default();
    let run = Prepared::new(&cfg)?;
    let model = run.ctx.model();
    let delta = model.detuning();
    // ħΩ²/4|δ| with Ω² = 2|g|² Γ², in kelvin
    let depth = |p: f64| HBAR * cfg.setup.gamma * p * (0.25 + delta * delta) / (4.0 * delta.abs()) / BOLTZMANN;
    println!("x = {x} λ, δ = {delta:.4e} Γ, field scale {:.4} V/m", run.spec.amplitude_scale);
    println!("{:>8} {:>12} {:>13} {:>13} {:>11}", "y", "p", "f_x", "f_y", "U (nK)");
    for i in 0..=40 {
        let y = -60.0 + 3.0 * i as f64;
        let d = run.ctx.field().cartesian(x, y)?;
        match model.sample(&d, 0.0, [0.0; 3]) {
            Some(s) => {
                let f = model.mean_force(&s, [0.0; 3]).value();
                println!("{y:>8.1} {:>12.4e} {:>13.4e} {:>13.4e} {:>11.4}", s.p, f[0], f[1], 1e9 * depth(s.p));
            }
            None => println!("{y:>8.1} node"),
        }
    }
    Ok(())
}
