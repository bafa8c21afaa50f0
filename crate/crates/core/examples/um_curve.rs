//! Dark-region scale u_M and width 2u_M² against the order a.

use weber_splitter::weber::{find_um, max_deflection_angle, BeamSpec, Parity};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:>6} {:>10} {:>10} {:>10}", "a", "u_M", "2u_M^2", "θmax(150)");
    for i in 0..=20 {
        let a = -10.0 + i as f64;
        let um = find_um(&BeamSpec { order_a: a, parity: Parity::Odd, ..Default::default() })?;
        let theta = max_deflection_angle(um, 150.0).unwrap_or(f64::NAN);
        println!("{a:>6.1} {um:>10.4} {:>10.3} {theta:>10.4}", 2.0 * um * um);
    }
    Ok(())
}
