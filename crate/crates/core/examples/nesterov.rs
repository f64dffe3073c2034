//! The accelerated gradient solver on an ill-conditioned quadratic, with
//! and without a warm start.
//!
//! cargo run --example nesterov -- [condition_number]

use dcoolnet::accel::{minimize, SmoothStronglyConvexOracle};
use dcoolnet::Vector;

fn main() -> dcoolnet::Result<()> {
    let kappa: f64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(100.0);
    let target = Vector::xy(1.0, -2.0);
    let curvature = [1.0, kappa];
    let gradient = |y: &Vector| Ok(Vector::xy(curvature[0] * (y[0] - target[0]), curvature[1] * (y[1] - target[1])));

    for (label, start) in [("cold", Vector::xy(10.0, 10.0)), ("warm", Vector::xy(1.01, -1.99))] {
        let mut oracle = SmoothStronglyConvexOracle::new(gradient, 1.0, kappa)?;
        let momentum = oracle.momentum();
        let result = minimize(&mut oracle, start, 1e-10, 10_000)?;
        println!(
            "{label}: momentum {momentum:.4}, {} iterations, |grad| {:.2e}, converged {}, error {:.2e}",
            result.iterations,
            result.gradient_norm,
            result.converged,
            (result.point - target).norm()
        );
    }
    Ok(())
}
