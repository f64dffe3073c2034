//! Builds a problem by hand, shows what validation reports for a broken
//! one, round-trips it through JSON and writes a solver trace as CSV.
//!
//! cargo run --example problem_files -- [out_dir]

use std::fs::{self, File};
use std::path::PathBuf;

use dcoolnet::{run_dcoolnet, AlgorithmConfig, NetworkProblem, ProblemBuilder, Vector};

fn main() -> dcoolnet::Result<()> {
    let out_dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "target/problem_files".into()));
    fs::create_dir_all(&out_dir)?;

    // Sensor 3 is isolated and sensor 2 measures itself.
    let mut broken = ProblemBuilder::new(2, 3);
    broken.add_edge(0, 1, 0.4).add_edge(1, 1, 0.0);
    match broken.build() {
        Ok(_) => println!("unexpectedly valid"),
        Err(report) => println!("rejected:\n{report}"),
    }

    let truth = [Vector::xy(0.2, 0.2), Vector::xy(0.6, 0.3), Vector::xy(0.4, 0.7)];
    let mut b = ProblemBuilder::new(2, 3);
    let a0 = b.add_anchor(Vector::xy(0.0, 0.0));
    let a1 = b.add_anchor(Vector::xy(1.0, 1.0));
    let a2 = b.add_anchor(Vector::xy(1.0, 0.0));
    b.add_edge(0, 1, truth[0].distance(&truth[1]))
        .add_edge(1, 2, truth[1].distance(&truth[2]))
        .add_directed_reading(0, 2, 0.99 * truth[0].distance(&truth[2]))
        .add_directed_reading(2, 0, 1.01 * truth[0].distance(&truth[2]))
        .add_anchor_link(0, a0, truth[0].norm())
        .add_anchor_link(1, a2, truth[1].distance(&Vector::xy(1.0, 0.0)))
        .add_anchor_link(2, a1, truth[2].distance(&Vector::xy(1.0, 1.0)));
    let problem = b.build()?;

    let path = out_dir.join("problem.json");
    fs::write(&path, problem.to_json_string()? + "\n")?;
    let reloaded = NetworkProblem::from_json_file(&path)?;
    println!("wrote {} ({} bytes), reload identical: {}", path.display(), fs::metadata(&path)?.len(), reloaded == problem);

    let x0 = vec![Vector::xy(0.3, 0.1), Vector::xy(0.5, 0.4), Vector::xy(0.3, 0.6)];
    let config = AlgorithmConfig {
        outer_iters: 20,
        ..AlgorithmConfig::default()
    };
    let run = run_dcoolnet(&reloaded, &x0, &config)?;
    let trace = out_dir.join("trace.csv");
    run.trace.write_csv(File::create(&trace)?)?;
    println!("wrote {} with {} rows", trace.display(), run.trace.inner.len());
    for (i, (x, t)) in run.positions.iter().zip(&truth).enumerate() {
        println!("sensor {i}: estimate ({:.4}, {:.4}), truth ({:.4}, {:.4})", x[0], x[1], t[0], t[1]);
    }
    Ok(())
}
