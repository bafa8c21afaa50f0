//! One atom released at (150, y0) λ; prints the trajectory at the output
//! cadence. `cargo run --release --example single_atom -- 10 6.0`

use weber_splitter::config::RunConfig;
use weber_splitter::dynamics::{integrate, observables, AtomState};
use weber_splitter::scenario::Prepared;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let y0: f64 = args.first().map_or(Ok(10.0), |s| s.parse())?;
    let mut cfg = RunConfig::default();
    if let Some(i) = args.get(1) {
        cfg.beam.irradiance = i.parse()?;
    }
    cfg.output.cadence = 5e3;
    let run = Prepared::new(&cfg)?;
    let s0 = AtomState::new([cfg.cloud.x0, y0, 0.0], [cfg.cloud.speed_x, 0.0, 0.0]);
    let tr = integrate(s0, &run.ctx, &run.integrator)?;
    println!("{:>9} {:>10} {:>10} {:>11} {:>10} {:>9}", "t", "x", "y", "θ_d", "A", "K_yz μK");
    for s in &tr.samples {
        let o = observables(&s0, s, &cfg.setup, run.a_scale);
        println!(
            "{:>9.0} {:>10.3} {:>10.4} {:>11.3e} {:>10.2} {:>9.2e}",
            s.time, s.position[0], s.position[1], o.theta_d, o.a_atomic, o.kyz_uk
        );
    }
    println!("exit {:?}, class {:?}, {:?}", tr.exit, run.classifier.classify(&tr), tr.stats);
    Ok(())
}
