use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use dcoolnet::experiment::{
    apply_measurement_noise, generate_scenario, run_setup, run_sweep, squared_error, substream, trial_setup,
    write_metrics_csv, Algorithm, AnchorMode, ExperimentConfig, MetricsRow, MetricsTable, MonteCarloResult,
    Scenario, ScenarioConfig, Substream, TrialResult, TrialSetup,
};
use dcoolnet::sim::{fmt_f64, run_dcoolnet};
use dcoolnet::{Error, NetworkProblem, Position, ProblemFile, Vector};

const EXIT_VALIDATION: u8 = 2;
const EXIT_SOLVER: u8 = 3;

#[derive(Parser)]
#[command(name = "dcoolnet", version, about = "Distributed sensor network localization")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one trial and write trace.csv, metrics.csv and positions.csv.
    Run(RunArgs),
    /// Monte Carlo over a grid of sigma, sigma_init and rho.
    Sweep(SweepArgs),
    /// Generate a random problem file.
    Gen(GenArgs),
    /// Check a problem file.
    Validate { problem: PathBuf },
}

#[derive(Args, Default)]
struct Common {
    /// JSON file with any of `scenario`, `algorithm`, `method`, `grid`.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    n_sensors: Option<usize>,
    #[arg(long)]
    n_anchors: Option<usize>,
    #[arg(long)]
    square_side: Option<f64>,
    #[arg(long)]
    comm_range: Option<f64>,
    #[arg(long, value_enum)]
    anchor_mode: Option<AnchorMode>,
    #[arg(long)]
    sigma: Option<f64>,
    #[arg(long)]
    sigma_init: Option<f64>,
    #[arg(long)]
    mc_trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    rho: Option<f64>,
    #[arg(long)]
    outer_iters: Option<usize>,
    #[arg(long)]
    inner_iters: Option<usize>,
    #[arg(long)]
    nesterov_tol: Option<f64>,
    #[arg(long)]
    nesterov_max_iters: Option<usize>,
    #[arg(long)]
    bisection_tol: Option<f64>,
    #[arg(long)]
    degeneracy_eps: Option<f64>,
    #[arg(long)]
    descent_slack: Option<f64>,
    /// Report cost increases instead of failing.
    #[arg(long)]
    no_enforce_descent: bool,
    #[arg(long)]
    residual_early_exit: Option<f64>,
    #[arg(long)]
    parallel: bool,
    #[arg(long, value_enum)]
    method: Option<Algorithm>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    common: Common,
    /// Trial index used to derive the random streams.
    #[arg(long, default_value_t = 0)]
    trial: usize,
    /// Solve this problem file instead of a generated scenario.
    #[arg(long, requires = "init")]
    problem: Option<PathBuf>,
    /// Initial positions for `--problem`: a JSON array of coordinate arrays.
    #[arg(long)]
    init: Option<PathBuf>,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_delimiter = ',')]
    grid_sigma: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    grid_sigma_init: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    grid_rho: Vec<f64>,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 0)]
    trial: usize,
    /// Write the problem here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the true sensor positions as a JSON array.
    #[arg(long)]
    truth_out: Option<PathBuf>,
}

/// An error tagged with the exit code it maps to.
struct Failure {
    code: u8,
    error: Error,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        let code = if error.is_validation() {
            EXIT_VALIDATION
        } else {
            EXIT_SOLVER
        };
        Self { code, error }
    }
}

/// Errors while reading inputs are always validation errors.
fn input<T>(r: Result<T, Error>) -> Result<T, Failure> {
    r.map_err(|error| Failure {
        code: EXIT_VALIDATION,
        error,
    })
}

impl Common {
    fn resolve(&self) -> Result<ExperimentConfig, Failure> {
        let mut cfg = match &self.config {
            Some(path) => input(
                fs::read_to_string(path)
                    .map_err(Error::from)
                    .and_then(|s| serde_json::from_str(&s).map_err(Error::from)),
            )?,
            None => ExperimentConfig::default(),
        };
        let s = &mut cfg.scenario;
        macro_rules! set {
            ($target:expr, $value:expr) => {
                if let Some(v) = $value {
                    $target = v;
                }
            };
        }
        set!(s.n_sensors, self.n_sensors);
        set!(s.n_anchors, self.n_anchors);
        set!(s.square_side, self.square_side);
        set!(s.comm_range, self.comm_range);
        set!(s.anchor_mode, self.anchor_mode);
        set!(s.sigma, self.sigma);
        set!(s.sigma_init, self.sigma_init);
        set!(s.mc_trials, self.mc_trials);
        set!(s.seed, self.seed);
        set!(s.p, self.p);
        let a = &mut cfg.algorithm;
        set!(a.rho, self.rho);
        set!(a.outer_iters, self.outer_iters);
        set!(a.inner_iters, self.inner_iters);
        set!(a.nesterov_tol, self.nesterov_tol);
        set!(a.nesterov_max_iters, self.nesterov_max_iters);
        set!(a.bisection_tol, self.bisection_tol);
        set!(a.degeneracy_eps, self.degeneracy_eps);
        set!(a.descent_slack, self.descent_slack);
        if self.residual_early_exit.is_some() {
            a.residual_early_exit = self.residual_early_exit;
        }
        if self.no_enforce_descent {
            a.enforce_descent = false;
        }
        if self.parallel {
            a.parallel = true;
        }
        set!(cfg.method, self.method);
        input(cfg.scenario.validate())?;
        input(cfg.algorithm.validate())?;
        Ok(cfg)
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    input(File::create(path).map(BufWriter::new).map_err(Error::from))
}

fn write_positions(path: &Path, x: &[Position]) -> Result<(), Failure> {
    let mut w = csv::Writer::from_writer(create(path)?);
    let coords = ["x", "y", "z"];
    let dim = x.first().map_or(0, Vector::dim);
    let mut header = vec!["sensor"];
    header.extend(&coords[..dim]);
    input(w.write_record(&header).map_err(Error::from))?;
    for (i, p) in x.iter().enumerate() {
        let mut rec = vec![(i + 1).to_string()];
        rec.extend(p.as_slice().iter().map(|&c| fmt_f64(c)));
        input(w.write_record(&rec).map_err(Error::from))?;
    }
    input(w.flush().map_err(Error::from))
}

fn load_problem(path: &Path) -> Result<NetworkProblem, Failure> {
    input(NetworkProblem::from_json_file(path))
}

fn run(args: RunArgs) -> Result<(), Failure> {
    let cfg = args.common.resolve()?;
    input(fs::create_dir_all(&args.out_dir).map_err(Error::from))?;

    let (setup, truth_known) = match (&args.problem, &args.init) {
        (Some(problem), Some(init)) => {
            let problem = load_problem(problem)?;
            let coords: Vec<Vec<f64>> = input(
                fs::read_to_string(init)
                    .map_err(Error::from)
                    .and_then(|s| serde_json::from_str(&s).map_err(Error::from)),
            )?;
            let x0 = input(
                coords
                    .iter()
                    .map(|c| match c.len() {
                        1..=3 => Ok(Vector::from_slice(c)),
                        n => Err(Error::DimensionMismatch {
                            expected: problem.dim,
                            found: n,
                        }),
                    })
                    .collect::<Result<Vec<_>, _>>(),
            )?;
            input(problem.check_positions(&x0))?;
            let scenario = Scenario {
                problem: problem.clone(),
                truth: x0.clone(),
            };
            (TrialSetup { scenario, problem, x0 }, false)
        }
        _ => {
            let setup = input(trial_setup(&cfg.scenario, args.trial))?;
            write_positions(&args.out_dir.join("truth.csv"), &setup.scenario.truth)?;
            (setup, true)
        }
    };

    let result = if cfg.method == Algorithm::Dcoolnet {
        let run = run_dcoolnet(&setup.problem, &setup.x0, &cfg.algorithm)?;
        run.trace.write_csv(create(&args.out_dir.join("trace.csv"))?)?;
        TrialResult {
            trial_index: args.trial,
            se: squared_error(&run.positions, &setup.scenario.truth),
            cost_trace: run.trace.costs(),
            message_total: run.ledger.total(),
            x_hat: run.positions,
        }
    } else {
        let result = run_setup(&setup, &cfg.algorithm, cfg.method, args.trial)?;
        let mut w = csv::Writer::from_writer(create(&args.out_dir.join("trace.csv"))?);
        w.write_record(["l", "f"]).map_err(Error::from)?;
        for (l, f) in result.cost_trace.iter().enumerate() {
            w.write_record([l.to_string(), fmt_f64(*f)]).map_err(Error::from)?;
        }
        w.flush().map_err(Error::from)?;
        result
    };
    write_positions(&args.out_dir.join("positions.csv"), &result.x_hat)?;
    let f = &result.cost_trace;
    println!(
        "f(x[0]) = {:.6e}, f(x[L]) = {:.6e}, messages = {}",
        f[0],
        f[f.len() - 1],
        result.message_total
    );
    if truth_known {
        let scenario = ScenarioConfig {
            mc_trials: 1,
            ..cfg.scenario.clone()
        };
        let row = MetricsRow::from_trials(&scenario, &cfg.algorithm, cfg.method, std::slice::from_ref(&result))?;
        write_metrics_csv([&row], create(&args.out_dir.join("metrics.csv"))?)?;
        println!("RMSE = {:.6e}", row.rmse);
    }
    Ok(())
}

fn sweep(args: SweepArgs) -> Result<(), Failure> {
    let mut cfg = args.common.resolve()?;
    if !args.grid_sigma.is_empty() {
        cfg.grid.sigma = args.grid_sigma;
    }
    if !args.grid_sigma_init.is_empty() {
        cfg.grid.sigma_init = args.grid_sigma_init;
    }
    if !args.grid_rho.is_empty() {
        cfg.grid.rho = args.grid_rho;
    }
    input(fs::create_dir_all(&args.out_dir).map_err(Error::from))?;
    let table: MetricsTable = run_sweep(&cfg.scenario, &cfg.algorithm, cfg.method, &cfg.grid)?;
    table.write_metrics_csv(create(&args.out_dir.join("metrics.csv"))?)?;
    table.write_trials_csv(create(&args.out_dir.join("trials.csv"))?)?;
    let mut w = csv::Writer::from_writer(create(&args.out_dir.join("trace.csv"))?);
    w.write_record(["grid_index", "l", "mean_f"]).map_err(Error::from)?;
    for (g, MonteCarloResult { mean_cost_trace, .. }) in table.results.iter().enumerate() {
        for (l, f) in mean_cost_trace.iter().enumerate() {
            w.write_record([g.to_string(), l.to_string(), fmt_f64(*f)])
                .map_err(Error::from)?;
        }
    }
    w.flush().map_err(Error::from)?;
    for MetricsRow {
        sigma,
        sigma_init,
        rho,
        rmse,
        ..
    } in table.rows()
    {
        println!("sigma = {sigma}, sigma_init = {sigma_init}, rho = {rho}: RMSE = {rmse:.6e}");
    }
    Ok(())
}

fn gen(args: GenArgs) -> Result<(), Failure> {
    let cfg = args.common.resolve()?;
    let mut rng = substream(cfg.scenario.seed, Substream::Placement, args.trial as u64);
    let scenario = input(generate_scenario(&cfg.scenario, &mut rng))?;
    let problem = input(apply_measurement_noise(
        &scenario.truth,
        &scenario.problem,
        cfg.scenario.sigma,
        &mut substream(cfg.scenario.seed, Substream::MeasurementNoise, args.trial as u64),
    ))?;
    let json = input(problem.to_json_string())?;
    match &args.out {
        Some(path) => input(fs::write(path, json + "\n").map_err(Error::from))?,
        None => println!("{json}"),
    }
    if let Some(path) = &args.truth_out {
        let coords: Vec<Vec<f64>> = scenario.truth.iter().map(|p| p.as_slice().to_vec()).collect();
        let json = input(serde_json::to_string_pretty(&coords).map_err(Error::from))?;
        input(fs::write(path, json + "\n").map_err(Error::from))?;
    }
    Ok(())
}

fn validate(path: &Path) -> Result<(), Failure> {
    let text = input(fs::read_to_string(path).map_err(Error::from))?;
    let file: ProblemFile = input(serde_json::from_str(&text).map_err(Error::from))?;
    let problem = input(file.into_problem())?;
    println!(
        "ok: {} sensors, {} anchors, {} edges, {} anchor links",
        problem.n_sensors,
        problem.anchors.len(),
        problem.edges.len(),
        problem.anchor_links.len()
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run(args) => run(args),
        Command::Sweep(args) => sweep(args),
        Command::Gen(args) => gen(args),
        Command::Validate { problem } => validate(&problem),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure { code, error }) => {
            eprintln!("error: {error}");
            ExitCode::from(code)
        }
    }
}
