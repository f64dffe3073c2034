//! Evaluates the proximal operator of one edge majorizer by dual bisection
//! and shows every probe, then the smoothed edge term used by the master
//! problem.
//!
//! cargo run --example moreau_prox -- [rho]

use dcoolnet::majorizer::DEFAULT_DEGENERACY_EPS;
use dcoolnet::prox::{h_ij_eval, moreau_prox_observed};
use dcoolnet::{EdgeMajorizer, ProxInstance, SolverSettings, Vector};

fn main() -> dcoolnet::Result<()> {
    let rho: f64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(10.0);
    let settings = SolverSettings::default();
    let majorizer = EdgeMajorizer::new(0.8, &Vector::xy(1.0, 0.5), DEFAULT_DEGENERACY_EPS);

    for w in [Vector::xy(1.5, -0.7), Vector::xy(0.2, 0.1), Vector::xy(-0.9, 0.4)] {
        let inst = ProxInstance::new(majorizer, w, rho)?;
        println!("w = ({:.2}, {:.2}), rho = {rho}", w[0], w[1]);
        let sol = moreau_prox_observed(&inst, &settings, |s| {
            println!(
                "  omega {:.10}  slope {:+.3e}  u = ({:+.6}, {:+.6})",
                s.omega, s.slope, s.u_star[0], s.u_star[1]
            );
        })?;
        println!(
            "  -> {} probes, omega* = {:?}, u* = ({:.8}, {:.8}), Theta = {:.10}, objective at u* = {:.10}",
            sol.probes,
            sol.omega_star,
            sol.u_star[0],
            sol.u_star[1],
            sol.theta,
            inst.objective(&sol.u_star)
        );
        println!("  |u*| = {:.6} <= |w| + 4d/rho = {:.6}", sol.u_star.norm(), w.norm() + 4.0 * 0.8 / rho);
    }

    let gamma = Vector::xy(0.3, 0.0);
    println!("\nedge envelope H_ij(y) with gamma = (0.3, 0)");
    for k in 0..5 {
        let y = Vector::xy(0.5 * k as f64, 0.2);
        let env = h_ij_eval(&majorizer, &y, &gamma, rho, &settings)?;
        println!(
            "  y = ({:.1}, 0.2): value {:.6}, gradient ({:+.6}, {:+.6}), y_j* = ({:.6}, {:.6})",
            y[0], env.value, env.gradient[0], env.gradient[1], env.y_j_star[0], env.y_j_star[1]
        );
    }
    Ok(())
}
