//! RMSE of the distributed solver on the standard 50-sensor network for a
//! range of penalty parameters.
//!
//! cargo run --release --example rho_sensitivity -- [mc_trials]

use std::time::Instant;

use dcoolnet::experiment::{run_sweep, Algorithm, ScenarioConfig, SweepGrid};
use dcoolnet::AlgorithmConfig;

fn main() -> dcoolnet::Result<()> {
    let mc_trials = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(10);
    let scenario = ScenarioConfig {
        sigma: 0.05,
        sigma_init: 0.1,
        mc_trials,
        seed: 11,
        ..ScenarioConfig::default()
    };
    let algo = AlgorithmConfig {
        enforce_descent: false,
        ..AlgorithmConfig::default()
    };
    let grid = SweepGrid {
        rho: vec![10.0, 30.0, 50.0, 100.0, 200.0],
        ..SweepGrid::default()
    };
    let start = Instant::now();
    let table = run_sweep(&scenario, &algo, Algorithm::Dcoolnet, &grid)?;
    println!("   rho  RMSE          SE dispersion");
    for row in table.rows() {
        println!("{:6.0}  {:.6e}  {:.6e}", row.rho, row.rmse, row.se_dispersion);
    }
    println!("elapsed: {:.2?}", start.elapsed());
    Ok(())
}
