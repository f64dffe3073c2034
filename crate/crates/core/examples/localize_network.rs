//! Localize a random network with the distributed solver and report the
//! cost per MM iteration.
//!
//! cargo run --release --example localize_network -- [n_sensors] [seed]

use std::time::Instant;

use dcoolnet::experiment::{squared_error, trial_setup, ScenarioConfig};
use dcoolnet::{run_dcoolnet, AlgorithmConfig};

fn main() -> dcoolnet::Result<()> {
    let mut args = std::env::args().skip(1);
    let n_sensors = args.next().and_then(|a| a.parse().ok()).unwrap_or(10);
    let seed = args.next().and_then(|a| a.parse().ok()).unwrap_or(1);
    let scenario = ScenarioConfig {
        n_sensors,
        comm_range: if n_sensors <= 10 { 0.5 } else { 0.24 },
        sigma: 0.0,
        sigma_init: 0.1,
        seed,
        ..ScenarioConfig::default()
    };
    let config = AlgorithmConfig::default();
    let setup = trial_setup(&scenario, 0)?;
    println!(
        "{} sensors, {} edges, {} anchor links",
        setup.problem.n_sensors,
        setup.problem.edges.len(),
        setup.problem.anchor_links.len()
    );

    let start = Instant::now();
    let run = run_dcoolnet(&setup.problem, &setup.x0, &config)?;
    let elapsed = start.elapsed();

    for (l, f) in run.trace.costs().iter().enumerate().step_by(5) {
        println!("l = {l:3}  f = {f:.6e}");
    }
    let n = setup.problem.n_sensors as f64;
    println!(
        "initial error per sensor {:.4e}, final {:.4e}",
        (squared_error(&setup.x0, &setup.scenario.truth) / n).sqrt(),
        (squared_error(&run.positions, &setup.scenario.truth) / n).sqrt()
    );
    println!("messages sent: {}", run.ledger.total());
    println!("elapsed: {elapsed:.2?}");
    Ok(())
}
