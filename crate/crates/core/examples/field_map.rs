//! ASCII rendering of the transverse irradiance for a given order and parity.
//! `cargo run --release --example field_map -- -5 odd`

use weber_splitter::weber::{BeamSpec, DirectField, Parity, TransverseField};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let a: f64 = args.first().map_or(Ok(-5.0), |s| s.parse())?;
    let parity = match args.get(1).map(String::as_str) {
        Some("even") => Parity::Even,
        _ => Parity::Odd,
    };
    let spec = BeamSpec { order_a: a, parity, ..Default::default() };
    let field = DirectField::new(&spec);
    let (nx, ny, half) = (96, 40, 60.0);
    let mut grid = vec![vec![0.0; nx]; ny];
    let mut peak: f64 = 0.0;
    for (j, row) in grid.iter_mut().enumerate() {
        let y = half - 2.0 * half * j as f64 / (ny - 1) as f64;
        for (i, cell) in row.iter_mut().enumerate() {
            let x = -half + 2.0 * half * (i as f64 + 0.5) / nx as f64;
            let d = field.cartesian(x, y)?;
            *cell = d.dx.norm_sqr() + d.dy.norm_sqr();
            peak = peak.max(*cell);
        }
    }
    let shades = [' ', '.', ':', '-', '=', '+', '*', '#', '%', '@'];
    println!("|∇ψ|² for a = {a}, {parity:?}; x → right, y ↑, ±{half} λ");
    for row in grid {
        let line: String = row.iter().map(|v| shades[((v / peak).sqrt() * 9.0).round() as usize]).collect();
        println!("{line}");
    }
    Ok(())
}
