//! Evaluates ₁F₁(a; b; z) and shows which route produced each value.
//! `cargo run --release --example kummer -- 0.25 -2.5 0.5 0 30`
//! evaluates along z = i·t for t up to the last argument.

use num_complex::Complex64;
use weber_splitter::special::kummer_1f1_traced;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let v: Vec<f64> = std::env::args().skip(1).map(|s| s.parse()).collect::<Result<_, _>>()?;
    let (a, b, t_max) = match v.as_slice() {
        [ar, ai, br, bi, t] => (Complex64::new(*ar, *ai), Complex64::new(*br, *bi), *t),
        [] => (Complex64::new(0.25, 2.5), Complex64::new(0.5, 0.0), 40.0),
        _ => return Err("expected: a_re a_im b_re b_im t_max".into()),
    };
    println!("1F1({a}; {b}; i t)");
    for i in 0..=16 {
        let t = t_max * i as f64 / 16.0;
        let (f, method) = kummer_1f1_traced(a, b, Complex64::new(0.0, t))?;
        println!("t = {t:8.3}  F = {:>24.16e} {:+.16e}i  |F| = {:.6e}  ({method:?})", f.re, f.im, f.norm());
    }
    Ok(())
}
