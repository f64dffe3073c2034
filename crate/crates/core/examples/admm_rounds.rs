//! Steps the synchronous message-passing simulator one ADMM round at a
//! time and prints the consensus residual, the surrogate value and the
//! messages sent.
//!
//! cargo run --release --example admm_rounds -- [rounds] [rho]

use dcoolnet::experiment::{trial_setup, ScenarioConfig};
use dcoolnet::sim::Network;
use dcoolnet::{AlgorithmConfig, Surrogate};

fn main() -> dcoolnet::Result<()> {
    let mut args = std::env::args().skip(1);
    let rounds: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(200);
    let rho: f64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(50.0);
    let scenario = ScenarioConfig {
        n_sensors: 8,
        comm_range: 0.5,
        sigma_init: 0.1,
        seed: 3,
        ..ScenarioConfig::default()
    };
    let setup = trial_setup(&scenario, 0)?;
    let config = AlgorithmConfig {
        rho,
        inner_iters: rounds,
        ..AlgorithmConfig::default()
    };
    let surrogate = Surrogate::freeze(&setup.problem, &setup.x0, config.degeneracy_eps)?;
    println!("F(x0 | x0) = {:.8}", surrogate.value(&setup.x0));

    let mut net = Network::new(&setup.problem, &setup.x0, &config)?;
    println!("{:>5} {:>12} {:>14} {:>9}", "t", "residual", "F(x(t) | x0)", "messages");
    net.run_admm_inner(|t, net, stats| {
        if t <= 5 || t % 25 == 0 {
            println!(
                "{t:5} {:12.3e} {:14.8} {:9}",
                stats.max_residual,
                surrogate.value(&net.positions()),
                net.ledger().total()
            );
        }
    })?;
    let hoods = setup.problem.neighbor_sets();
    for (i, sent) in net.ledger().sent.iter().enumerate() {
        println!("node {i}: |V_i| = {}, sent {sent} = 2 * {rounds} * {}", hoods[i].open.len(), hoods[i].open.len());
    }
    Ok(())
}
