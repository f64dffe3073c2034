//! Random scenarios, noise models and Monte Carlo metrics.
//!
//! Every trial draws from three independent ChaCha streams keyed by
//! `(seed, substream, trial)`: sensor placement, measurement noise and
//! initialization noise. Changing `sigma_init` therefore never changes the
//! network, and trials can run in any order or in parallel.

use std::io::{Read, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::majorizer::global_cost;
use crate::model::{AlgorithmConfig, NetworkProblem, ProblemBuilder};
use crate::sim::{
    fmt_f64, run_dcoolnet, run_proposed_mm_single_source, run_quadratic_mm_single_source, AnchorRange,
};
use crate::vector::{Position, Vector};

/// Fresh placements tried before giving up on connectivity.
pub const MAX_PLACEMENT_ATTEMPTS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum AnchorMode {
    /// Corners of the square (or cube), in lexicographic order.
    Corners,
    /// Uniform on the square.
    Random,
}

impl AnchorMode {
    pub fn as_str(self) -> &'static str {
        match self {
            AnchorMode::Corners => "corners",
            AnchorMode::Random => "random",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub n_sensors: usize,
    pub n_anchors: usize,
    pub square_side: f64,
    pub comm_range: f64,
    pub anchor_mode: AnchorMode,
    /// Standard deviation of the multiplicative range noise.
    pub sigma: f64,
    /// Standard deviation of the initialization perturbation.
    pub sigma_init: f64,
    pub mc_trials: usize,
    pub seed: u64,
    pub p: usize,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            n_sensors: 50,
            n_anchors: 4,
            square_side: 1.0,
            comm_range: 0.24,
            anchor_mode: AnchorMode::Corners,
            sigma: 0.0,
            sigma_init: 0.1,
            mc_trials: 1,
            seed: 0,
            p: 2,
        }
    }
}

impl ScenarioConfig {
    /// One source and four corner anchors that all hear it.
    pub fn single_source() -> Self {
        Self {
            n_sensors: 1,
            comm_range: 1.5,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidConfig(msg));
        if self.n_sensors == 0 {
            return fail("n_sensors must be at least 1".into());
        }
        if self.mc_trials == 0 {
            return fail("mc_trials must be at least 1".into());
        }
        if !(2..=3).contains(&self.p) {
            return fail(format!("p must be 2 or 3, got {}", self.p));
        }
        if !(self.comm_range.is_finite() && self.comm_range > 0.0) {
            return fail(format!("comm_range must be positive, got {}", self.comm_range));
        }
        if !(self.square_side.is_finite() && self.square_side > 0.0) {
            return fail(format!("square_side must be positive, got {}", self.square_side));
        }
        for (name, v) in [("sigma", self.sigma), ("sigma_init", self.sigma_init)] {
            if !(v.is_finite() && v >= 0.0) {
                return fail(format!("{name} must be nonnegative, got {v}"));
            }
        }
        if self.anchor_mode == AnchorMode::Corners && self.n_anchors > 1 << self.p {
            return fail(format!(
                "corner mode supports at most {} anchors in dimension {}",
                1 << self.p,
                self.p
            ));
        }
        Ok(())
    }
}

/// Independent random streams of one trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Substream {
    Placement = 1,
    MeasurementNoise = 2,
    InitNoise = 3,
}

/// The generator for `(seed, substream, trial)`.
pub fn substream(seed: u64, which: Substream, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((which as u64) << 40) | trial);
    rng
}

/// A generated network with exact measurements and its ground truth.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub problem: NetworkProblem,
    pub truth: Vec<Position>,
}

fn uniform_point<R: Rng>(rng: &mut R, p: usize, side: f64) -> Position {
    let mut v = Vector::zeros(p);
    for c in v.as_mut_slice() {
        *c = rng.random::<f64>() * side;
    }
    v
}

fn corner(k: usize, p: usize, side: f64) -> Position {
    let mut v = Vector::zeros(p);
    for (axis, c) in v.as_mut_slice().iter_mut().enumerate() {
        if k >> (p - 1 - axis) & 1 == 1 {
            *c = side;
        }
    }
    v
}

/// Places sensors uniformly, links every pair within `comm_range` and
/// redraws from scratch until the sensor graph is connected.
pub fn generate_scenario<R: Rng>(cfg: &ScenarioConfig, rng: &mut R) -> Result<Scenario> {
    cfg.validate()?;
    let (p, side, range) = (cfg.p, cfg.square_side, cfg.comm_range);
    for _ in 0..MAX_PLACEMENT_ATTEMPTS {
        let anchors: Vec<Position> = match cfg.anchor_mode {
            AnchorMode::Corners => (0..cfg.n_anchors).map(|k| corner(k, p, side)).collect(),
            AnchorMode::Random => (0..cfg.n_anchors).map(|_| uniform_point(rng, p, side)).collect(),
        };
        let truth: Vec<Position> = (0..cfg.n_sensors).map(|_| uniform_point(rng, p, side)).collect();

        let mut b = ProblemBuilder::new(p, cfg.n_sensors);
        for a in &anchors {
            b.add_anchor(*a);
        }
        for i in 0..cfg.n_sensors {
            for j in i + 1..cfg.n_sensors {
                let d = truth[i].distance(&truth[j]);
                if d <= range {
                    b.add_edge(i, j, d);
                }
            }
            for (k, a) in anchors.iter().enumerate() {
                let r = truth[i].distance(a);
                if r <= range {
                    b.add_anchor_link(i, k, r);
                }
            }
        }
        if let Ok(problem) = b.build() {
            return Ok(Scenario { problem, truth });
        }
    }
    Err(Error::ConnectivityExhausted {
        attempts: MAX_PLACEMENT_ATTEMPTS,
    })
}

/// Replaces every measurement by `true distance · |n|` with
/// `n ~ N(1, sigma²)`, one draw per edge and then one per anchor link.
pub fn apply_measurement_noise<R: Rng>(
    truth: &[Position],
    topology: &NetworkProblem,
    sigma: f64,
    rng: &mut R,
) -> Result<NetworkProblem> {
    topology.check_positions(truth)?;
    if !(sigma.is_finite() && sigma >= 0.0) {
        return Err(Error::InvalidConfig(format!("sigma must be nonnegative, got {sigma}")));
    }
    let normal = Normal::new(1.0, sigma).map_err(|e| Error::InvalidConfig(e.to_string()))?;
    let factor = |rng: &mut R| if sigma == 0.0 { 1.0 } else { normal.sample(rng).abs() };
    let mut noisy = topology.clone();
    for e in &mut noisy.edges {
        e.d = truth[e.i].distance(&truth[e.j]) * factor(rng);
    }
    for l in &mut noisy.anchor_links {
        l.r = truth[l.sensor].distance(&topology.anchors[l.anchor]) * factor(rng);
    }
    Ok(noisy)
}

/// `x_i[0] = x_i* + η_i` with `η_i ~ N(0, sigma_init² I)`.
pub fn apply_init_noise<R: Rng>(truth: &[Position], sigma_init: f64, rng: &mut R) -> Vec<Position> {
    truth
        .iter()
        .map(|x| {
            let mut out = *x;
            for c in out.as_mut_slice() {
                let z: f64 = StandardNormal.sample(rng);
                *c += sigma_init * z;
            }
            out
        })
        .collect()
}

/// Network-wide squared error `‖x̂ - x*‖²`.
pub fn squared_error(estimate: &[Position], truth: &[Position]) -> f64 {
    estimate
        .iter()
        .zip(truth)
        .map(|(a, b)| (*a - *b).norm_squared())
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    /// The distributed solver on a full network.
    Dcoolnet,
    /// Single-source MM with the quadratic majorizer.
    QuadMmSingle,
    /// Single-source MM with the proposed majorizer.
    ProposedMmSingle,
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Dcoolnet => "dcoolnet",
            Algorithm::QuadMmSingle => "quad_mm_single",
            Algorithm::ProposedMmSingle => "proposed_mm_single",
        }
    }
}

/// Outcome of one Monte Carlo trial.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialResult {
    pub trial_index: usize,
    pub x_hat: Vec<Position>,
    /// Network-wide squared error.
    pub se: f64,
    /// `f(x[0]), …, f(x[L])`.
    pub cost_trace: Vec<f64>,
    pub message_total: u64,
}

/// Inputs of one trial, all derived from the scenario seed.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialSetup {
    pub scenario: Scenario,
    /// The problem with noisy measurements.
    pub problem: NetworkProblem,
    pub x0: Vec<Position>,
}

pub fn trial_setup(cfg: &ScenarioConfig, trial: usize) -> Result<TrialSetup> {
    let t = trial as u64;
    let scenario = generate_scenario(cfg, &mut substream(cfg.seed, Substream::Placement, t))?;
    let problem = apply_measurement_noise(
        &scenario.truth,
        &scenario.problem,
        cfg.sigma,
        &mut substream(cfg.seed, Substream::MeasurementNoise, t),
    )?;
    let x0 = apply_init_noise(
        &scenario.truth,
        cfg.sigma_init,
        &mut substream(cfg.seed, Substream::InitNoise, t),
    );
    Ok(TrialSetup { scenario, problem, x0 })
}

fn single_source_ranges(problem: &NetworkProblem) -> Result<Vec<AnchorRange>> {
    if problem.n_sensors != 1 {
        return Err(Error::InvalidConfig(format!(
            "single-source algorithms need exactly one sensor, got {}",
            problem.n_sensors
        )));
    }
    Ok(problem
        .anchor_links
        .iter()
        .map(|l| AnchorRange {
            anchor: problem.anchors[l.anchor],
            range: l.r,
        })
        .collect())
}

/// Runs `which` on a prepared trial.
pub fn run_setup(setup: &TrialSetup, algo: &AlgorithmConfig, which: Algorithm, trial: usize) -> Result<TrialResult> {
    let problem = &setup.problem;
    let (x_hat, cost_trace, message_total) = match which {
        Algorithm::Dcoolnet => {
            let run = run_dcoolnet(problem, &setup.x0, algo)?;
            (run.positions, run.trace.costs(), run.ledger.total())
        }
        Algorithm::QuadMmSingle | Algorithm::ProposedMmSingle => {
            let ranges = single_source_ranges(problem)?;
            let trajectory = if which == Algorithm::QuadMmSingle {
                run_quadratic_mm_single_source(&ranges, setup.x0[0], algo.outer_iters, algo.degeneracy_eps)?
            } else {
                run_proposed_mm_single_source(&ranges, setup.x0[0], algo.outer_iters, algo)?
            };
            let costs = trajectory
                .iter()
                .map(|x| global_cost(problem, std::slice::from_ref(x)))
                .collect::<Result<Vec<_>>>()?;
            (vec![*trajectory.last().expect("trajectory holds x0")], costs, 0)
        }
    };
    Ok(TrialResult {
        trial_index: trial,
        se: squared_error(&x_hat, &setup.scenario.truth),
        x_hat,
        cost_trace,
        message_total,
    })
}

pub fn run_trial(scenario: &ScenarioConfig, algo: &AlgorithmConfig, which: Algorithm, trial: usize) -> Result<TrialResult> {
    run_setup(&trial_setup(scenario, trial)?, algo, which, trial)
}

/// `RMSE = sqrt(Σ_m SE_m / (n · MC))`.
pub fn rmse(trials: &[TrialResult], n_sensors: usize) -> Result<f64> {
    rmse_of(&trials.iter().map(|t| t.se).collect::<Vec<_>>(), n_sensors)
}

pub fn rmse_of(se: &[f64], n_sensors: usize) -> Result<f64> {
    if se.is_empty() {
        return Err(Error::EmptyTrialSet);
    }
    let total: f64 = se.iter().sum();
    Ok((total / (n_sensors as f64 * se.len() as f64)).sqrt())
}

/// Population standard deviation of the per-trial squared errors.
pub fn se_dispersion(se: &[f64]) -> Result<f64> {
    if se.is_empty() {
        return Err(Error::EmptyTrialSet);
    }
    let n = se.len() as f64;
    let mean = se.iter().sum::<f64>() / n;
    Ok((se.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / n).sqrt())
}

/// One `metrics.csv` row: a grid point and its aggregates.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsRow {
    pub algorithm: Algorithm,
    pub n_sensors: usize,
    pub n_anchors: usize,
    pub p: usize,
    pub comm_range: f64,
    pub anchor_mode: AnchorMode,
    pub sigma: f64,
    pub sigma_init: f64,
    pub rho: f64,
    pub outer_iters: usize,
    pub inner_iters: usize,
    pub mc_trials: usize,
    pub seed: u64,
    pub rmse: f64,
    pub se_dispersion: f64,
    pub mean_messages: f64,
    pub mean_final_cost: f64,
}

pub const METRICS_HEADER: [&str; 17] = [
    "algorithm",
    "n_sensors",
    "n_anchors",
    "p",
    "comm_range",
    "anchor_mode",
    "sigma",
    "sigma_init",
    "rho",
    "outer_iters",
    "inner_iters",
    "mc_trials",
    "seed",
    "rmse",
    "se_dispersion",
    "mean_messages",
    "mean_final_cost",
];

impl MetricsRow {
    /// Aggregates in trial-index order.
    pub fn from_trials(
        scenario: &ScenarioConfig,
        algo: &AlgorithmConfig,
        which: Algorithm,
        trials: &[TrialResult],
    ) -> Result<Self> {
        let se: Vec<f64> = trials.iter().map(|t| t.se).collect();
        let n = trials.len() as f64;
        Ok(Self {
            algorithm: which,
            n_sensors: scenario.n_sensors,
            n_anchors: scenario.n_anchors,
            p: scenario.p,
            comm_range: scenario.comm_range,
            anchor_mode: scenario.anchor_mode,
            sigma: scenario.sigma,
            sigma_init: scenario.sigma_init,
            rho: algo.rho,
            outer_iters: algo.outer_iters,
            inner_iters: algo.inner_iters,
            mc_trials: trials.len(),
            seed: scenario.seed,
            rmse: rmse_of(&se, scenario.n_sensors)?,
            se_dispersion: se_dispersion(&se)?,
            mean_messages: trials.iter().map(|t| t.message_total as f64).sum::<f64>() / n,
            mean_final_cost: trials
                .iter()
                .map(|t| t.cost_trace.last().copied().unwrap_or(f64::NAN))
                .sum::<f64>()
                / n,
        })
    }

    fn record(&self) -> Vec<String> {
        vec![
            self.algorithm.as_str().into(),
            self.n_sensors.to_string(),
            self.n_anchors.to_string(),
            self.p.to_string(),
            fmt_f64(self.comm_range),
            self.anchor_mode.as_str().into(),
            fmt_f64(self.sigma),
            fmt_f64(self.sigma_init),
            fmt_f64(self.rho),
            self.outer_iters.to_string(),
            self.inner_iters.to_string(),
            self.mc_trials.to_string(),
            self.seed.to_string(),
            fmt_f64(self.rmse),
            fmt_f64(self.se_dispersion),
            fmt_f64(self.mean_messages),
            fmt_f64(self.mean_final_cost),
        ]
    }

    fn parse(rec: &csv::StringRecord) -> Result<Self> {
        let bad = |col: &str| Error::InvalidConfig(format!("metrics.csv: bad value in column {col}"));
        let field = |i: usize| rec.get(i).ok_or_else(|| bad(METRICS_HEADER[i]));
        let float = |i: usize| field(i)?.parse::<f64>().map_err(|_| bad(METRICS_HEADER[i]));
        let int = |i: usize| field(i)?.parse::<usize>().map_err(|_| bad(METRICS_HEADER[i]));
        let algorithm = match field(0)? {
            "dcoolnet" => Algorithm::Dcoolnet,
            "quad_mm_single" => Algorithm::QuadMmSingle,
            "proposed_mm_single" => Algorithm::ProposedMmSingle,
            _ => return Err(bad("algorithm")),
        };
        let anchor_mode = match field(5)? {
            "corners" => AnchorMode::Corners,
            "random" => AnchorMode::Random,
            _ => return Err(bad("anchor_mode")),
        };
        Ok(Self {
            algorithm,
            n_sensors: int(1)?,
            n_anchors: int(2)?,
            p: int(3)?,
            comm_range: float(4)?,
            anchor_mode,
            sigma: float(6)?,
            sigma_init: float(7)?,
            rho: float(8)?,
            outer_iters: int(9)?,
            inner_iters: int(10)?,
            mc_trials: int(11)?,
            seed: field(12)?.parse().map_err(|_| bad("seed"))?,
            rmse: float(13)?,
            se_dispersion: float(14)?,
            mean_messages: float(15)?,
            mean_final_cost: float(16)?,
        })
    }
}

/// Aggregates and raw trials of one grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloResult {
    pub metrics: MetricsRow,
    /// Mean of `f(x[l])` over trials, for each `l`.
    pub mean_cost_trace: Vec<f64>,
    pub trials: Vec<TrialResult>,
}

/// Runs `scenario.mc_trials` independent trials. Trials run on the rayon
/// pool when `algo.parallel` is set; results are identical either way.
pub fn run_monte_carlo(scenario: &ScenarioConfig, algo: &AlgorithmConfig, which: Algorithm) -> Result<MonteCarloResult> {
    scenario.validate()?;
    algo.validate()?;
    let run = |m: usize| run_trial(scenario, algo, which, m);
    let trials: Vec<TrialResult> = if algo.parallel {
        (0..scenario.mc_trials).into_par_iter().map(run).collect::<Result<_>>()?
    } else {
        (0..scenario.mc_trials).map(run).collect::<Result<_>>()?
    };
    let metrics = MetricsRow::from_trials(scenario, algo, which, &trials)?;
    let len = trials.iter().map(|t| t.cost_trace.len()).max().unwrap_or(0);
    let mean_cost_trace = (0..len)
        .map(|l| {
            let vals: Vec<f64> = trials.iter().filter_map(|t| t.cost_trace.get(l).copied()).collect();
            vals.iter().sum::<f64>() / vals.len() as f64
        })
        .collect();
    Ok(MonteCarloResult {
        metrics,
        mean_cost_trace,
        trials,
    })
}

/// Values swept by `sweep`. An empty list keeps the base configuration.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepGrid {
    pub sigma: Vec<f64>,
    pub sigma_init: Vec<f64>,
    pub rho: Vec<f64>,
}

impl SweepGrid {
    /// Grid points in row-major order over `(sigma, sigma_init, rho)`.
    pub fn points(&self, scenario: &ScenarioConfig, algo: &AlgorithmConfig) -> Vec<(ScenarioConfig, AlgorithmConfig)> {
        let or_base = |v: &[f64], base: f64| if v.is_empty() { vec![base] } else { v.to_vec() };
        let mut out = Vec::new();
        for sigma in or_base(&self.sigma, scenario.sigma) {
            for sigma_init in or_base(&self.sigma_init, scenario.sigma_init) {
                for rho in or_base(&self.rho, algo.rho) {
                    out.push((
                        ScenarioConfig {
                            sigma,
                            sigma_init,
                            ..scenario.clone()
                        },
                        AlgorithmConfig { rho, ..algo.clone() },
                    ));
                }
            }
        }
        out
    }
}

/// All grid points of a sweep, in grid order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MetricsTable {
    pub results: Vec<MonteCarloResult>,
}

impl MetricsTable {
    pub fn rows(&self) -> impl Iterator<Item = &MetricsRow> {
        self.results.iter().map(|r| &r.metrics)
    }

    pub fn write_metrics_csv<W: Write>(&self, writer: W) -> Result<()> {
        write_metrics_csv(self.rows(), writer)
    }

    /// Per-trial CSV with columns `grid_index,trial,se,message_total,final_cost`.
    pub fn write_trials_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["grid_index", "trial", "se", "message_total", "final_cost"])?;
        for (g, result) in self.results.iter().enumerate() {
            for t in &result.trials {
                w.write_record([
                    g.to_string(),
                    t.trial_index.to_string(),
                    fmt_f64(t.se),
                    t.message_total.to_string(),
                    fmt_f64(t.cost_trace.last().copied().unwrap_or(f64::NAN)),
                ])?;
            }
        }
        w.flush()?;
        Ok(())
    }
}

pub fn write_metrics_csv<'a, W: Write>(rows: impl IntoIterator<Item = &'a MetricsRow>, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(METRICS_HEADER)?;
    for row in rows {
        w.write_record(row.record())?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_metrics_csv<R: Read>(reader: R) -> Result<Vec<MetricsRow>> {
    let mut r = csv::Reader::from_reader(reader);
    if r.headers()?.iter().ne(METRICS_HEADER) {
        return Err(Error::InvalidConfig("metrics.csv: unexpected header".into()));
    }
    r.records().map(|rec| MetricsRow::parse(&rec?)).collect()
}

/// Per-trial rows read back from `trials.csv`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialRow {
    pub grid_index: usize,
    pub trial: usize,
    pub se: f64,
    pub message_total: u64,
    pub final_cost: f64,
}

pub fn read_trials_csv<R: Read>(reader: R) -> Result<Vec<TrialRow>> {
    let mut r = csv::Reader::from_reader(reader);
    let bad = || Error::InvalidConfig("trials.csv: malformed row".into());
    r.records()
        .map(|rec| {
            let rec = rec?;
            let get = |i: usize| rec.get(i).ok_or_else(bad);
            Ok(TrialRow {
                grid_index: get(0)?.parse().map_err(|_| bad())?,
                trial: get(1)?.parse().map_err(|_| bad())?,
                se: get(2)?.parse().map_err(|_| bad())?,
                message_total: get(3)?.parse().map_err(|_| bad())?,
                final_cost: get(4)?.parse().map_err(|_| bad())?,
            })
        })
        .collect()
}

/// Runs every grid point in order.
pub fn run_sweep(
    scenario: &ScenarioConfig,
    algo: &AlgorithmConfig,
    which: Algorithm,
    grid: &SweepGrid,
) -> Result<MetricsTable> {
    let results = grid
        .points(scenario, algo)
        .iter()
        .map(|(s, a)| run_monte_carlo(s, a, which))
        .collect::<Result<_>>()?;
    Ok(MetricsTable { results })
}

/// Everything `--config` may set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub scenario: ScenarioConfig,
    pub algorithm: AlgorithmConfig,
    pub method: Algorithm,
    pub grid: SweepGrid,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            scenario: ScenarioConfig::default(),
            algorithm: AlgorithmConfig::default(),
            method: Algorithm::Dcoolnet,
            grid: SweepGrid::default(),
        }
    }
}
