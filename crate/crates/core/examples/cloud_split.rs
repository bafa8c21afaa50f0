//! Splits a cold cloud on the dark region of an `a = −5` beam and prints
//! per-class statistics. Pass an irradiance (W/cm²) and atom count to vary
//! the scenario: `cargo run --release --example cloud_split -- 6.0 200`.

use weber_splitter::config::RunConfig;
use weber_splitter::dynamics::Outcome;
use weber_splitter::scenario::Prepared;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let mut cfg = RunConfig::default();
    if let Some(i) = args.first() {
        cfg.beam.irradiance = i.parse()?;
    }
    if let Some(n) = args.get(1) {
        cfg.cloud.n_atoms = n.parse()?;
    }
    let t0 = std::time::Instant::now();
    let run = Prepared::new(&cfg)?;
    println!(
        "u_M = {:.4}, 2u_M^2 = {:.2}, field scale = {:.4e} V/m, setup {:.1?}",
        run.u_m,
        2.0 * run.u_m * run.u_m,
        run.spec.amplitude_scale,
        t0.elapsed()
    );
    let result = run.run()?;
    println!("{} atoms in {:.1?}, {} failures", cfg.cloud.n_atoms, t0.elapsed(), result.failures());
    for class in Outcome::ALL {
        let th: Vec<f64> = result
            .successes()
            .filter(|(_, s)| s.class == class)
            .map(|(_, s)| s.final_obs.theta_d.abs())
            .collect();
        if th.is_empty() {
            continue;
        }
        println!(
            "{:>16}: {:4} atoms, max |theta_d| {:.3}, mean {:.3}",
            class.name(),
            th.len(),
            th.iter().cloned().fold(0.0, f64::max),
            th.iter().sum::<f64>() / th.len() as f64
        );
    }
    let mut bands = [(1.0, 50.0, 0.0f64, 0usize), (80.0, 150.0, 0.0, 0)];
    for (a, s) in result.successes() {
        let y0 = a.initial.position[1].abs();
        for b in bands.iter_mut() {
            if y0 > b.0 && y0 < b.1 {
                b.2 = b.2.max(s.final_obs.theta_d.abs());
                b.3 += 1;
            }
        }
    }
    for (lo, hi, th, n) in bands {
        println!("arrivals {lo:>3} < |y| < {hi:<3}: {n:4} atoms, max |theta_d| {th:.3}");
    }
    let stats = result.total_stats();
    println!(
        "steps {} accepted / {} rejected, sentinel fraction {:.2e}",
        stats.accepted,
        stats.rejected,
        stats.sentinel_evals as f64 / stats.force_evals.max(1) as f64
    );
    Ok(())
}
