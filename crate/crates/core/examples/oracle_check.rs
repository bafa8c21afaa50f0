//! Hypergeometric ψ against angular-spectrum quadrature on the probe set.

use weber_splitter::validate::oracle_residual;
use weber_splitter::weber::{BeamSpec, Parity};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for parity in [Parity::Even, Parity::Odd] {
        for a in [-5.0, -2.0, 0.0, 2.0, 5.0] {
            let t = std::time::Instant::now();
            let r = oracle_residual(&BeamSpec { parity, order_a: a, ..Default::default() })?;
            println!("{parity:?} a = {a:>4}: residual {r:.3e} ({:.0?})", t.elapsed());
        }
    }
    Ok(())
}
