//! Tabulates the range cost, the proposed convex majorizer and the
//! quadratic majorizer along a line, for a few expansion points.
//!
//! cargo run --example majorizer_shapes -- [d]

use dcoolnet::majorizer::DEFAULT_DEGENERACY_EPS;
use dcoolnet::{phi, EdgeMajorizer, Vector};

fn main() -> dcoolnet::Result<()> {
    let d: f64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(1.0);
    for v in [0.5 * d, d, 2.0 * d] {
        let m = EdgeMajorizer::new(d, &Vector::scalar(v), DEFAULT_DEGENERACY_EPS);
        println!("d = {d}, expansion point v = {v}");
        println!("{:>7} {:>11} {:>11} {:>11}", "u", "phi", "proposed", "quadratic");
        for k in -8..=12 {
            let u = Vector::scalar(0.25 * k as f64 * d);
            println!(
                "{:7.3} {:11.5} {:11.5} {:11.5}",
                u[0],
                phi(d, &u),
                m.value(&u),
                m.quadratic(&u)?
            );
        }
        println!();
    }

    // A horizontal slice through a 2-D majorizer.
    let m = EdgeMajorizer::new(1.0, &Vector::xy(1.0, 0.0), DEFAULT_DEGENERACY_EPS);
    println!("2-D slice at y = 0.5, d = 1, v = (1, 0)");
    for k in -4..=4 {
        let u = Vector::xy(0.5 * k as f64, 0.5);
        println!("u = ({:5.2}, 0.50): phi {:8.4}  proposed {:8.4}", u[0], phi(1.0, &u), m.value(&u));
    }
    Ok(())
}
