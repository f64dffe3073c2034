//! Single-source localization with four corner anchors: MM with the
//! quadratic majorizer against MM with the proposed majorizer, across
//! initialization noise levels.
//!
//! cargo run --release --example majorizer_comparison -- [mc_trials]

use dcoolnet::experiment::{run_monte_carlo, Algorithm, ScenarioConfig};
use dcoolnet::AlgorithmConfig;

fn main() -> dcoolnet::Result<()> {
    let mc_trials = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(300);
    let algo = AlgorithmConfig {
        outer_iters: 30,
        ..AlgorithmConfig::default()
    };
    println!("sigma_init  quadratic RMSE  proposed RMSE");
    for sigma_init in [0.05, 0.1, 0.2, 0.3, 0.5] {
        let scenario = ScenarioConfig {
            sigma_init,
            mc_trials,
            seed: 2024,
            ..ScenarioConfig::single_source()
        };
        let quad = run_monte_carlo(&scenario, &algo, Algorithm::QuadMmSingle)?;
        let prop = run_monte_carlo(&scenario, &algo, Algorithm::ProposedMmSingle)?;
        println!(
            "{sigma_init:10.2}  {:14.6e}  {:13.6e}",
            quad.metrics.rmse, prop.metrics.rmse
        );
    }
    Ok(())
}
