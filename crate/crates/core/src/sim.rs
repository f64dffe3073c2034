//! Synchronous round engine for the distributed solver.
//!
//! The outer loop is majorization-minimization: at every iterate `x[l]` the
//! convex surrogate `F(· | x[l])` is frozen and minimized by `T` rounds of
//! consensus ADMM. Each round has two barriers, one after the `y` exchange
//! and one after the `x` broadcast; nodes never read each other's state
//! except through delivered messages, so sequential and parallel execution
//! give bitwise identical results.

use std::io::Write;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::majorizer::{global_cost, EdgeMajorizer, Surrogate};
use crate::model::{AlgorithmConfig, NetworkProblem, ProblemBuilder};
use crate::node::{Message, NodeState};
use crate::prox::SolverSettings;
use crate::vector::{Position, Vector};

/// Consensus residual above which an MM iteration is flagged as not having
/// solved its surrogate.
pub const UNCONVERGED_RESIDUAL: f64 = 1e-4;

/// Messages sent by each node so far.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CommLedger {
    pub sent: Vec<u64>,
}

impl CommLedger {
    pub fn total(&self) -> u64 {
        self.sent.iter().sum()
    }
}

/// One ADMM round.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InnerRecord {
    pub l: usize,
    /// Round number, starting at 1.
    pub t: usize,
    /// `f(x(t))`.
    pub cost: f64,
    /// `F(x(t) | x[l])`.
    pub surrogate: f64,
    pub max_residual: f64,
    pub messages_cumulative: u64,
}

/// One MM iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OuterRecord {
    pub l: usize,
    /// `f(x[l])`.
    pub cost: f64,
    /// `f(x[l+1])`.
    pub next_cost: f64,
    /// `F(x[l+1] | x[l])`.
    pub surrogate: f64,
    /// Consensus residual after the last round.
    pub max_residual: f64,
    /// The residual exceeded [`UNCONVERGED_RESIDUAL`], so the surrogate
    /// sandwich is not expected to hold.
    pub unconverged: bool,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Trace {
    pub outer: Vec<OuterRecord>,
    pub inner: Vec<InnerRecord>,
}

impl Trace {
    /// `f(x[0]), …, f(x[L])`.
    pub fn costs(&self) -> Vec<f64> {
        let mut costs: Vec<f64> = self.outer.iter().map(|r| r.cost).collect();
        if let Some(last) = self.outer.last() {
            costs.push(last.next_cost);
        }
        costs
    }

    /// Writes the per-round trace as CSV with columns
    /// `l,t,f,F_surrogate,max_residual,messages_cumulative`.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["l", "t", "f", "F_surrogate", "max_residual", "messages_cumulative"])?;
        for r in &self.inner {
            w.write_record([
                r.l.to_string(),
                r.t.to_string(),
                fmt_f64(r.cost),
                fmt_f64(r.surrogate),
                fmt_f64(r.max_residual),
                r.messages_cumulative.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Seventeen significant digits: enough for an exact `f64` round trip.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Summary of one ADMM round.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoundStats {
    pub max_residual: f64,
    pub messages: u64,
}

/// All node states of one problem plus the message ledger.
#[derive(Debug, Clone)]
pub struct Network<'a> {
    problem: &'a NetworkProblem,
    config: &'a AlgorithmConfig,
    settings: SolverSettings,
    states: Vec<NodeState>,
    ledger: CommLedger,
}

impl<'a> Network<'a> {
    /// Nodes start at `x0` with majorizers frozen there.
    pub fn new(problem: &'a NetworkProblem, x0: &[Position], config: &'a AlgorithmConfig) -> Result<Self> {
        problem.check_positions(x0)?;
        Ok(Self {
            problem,
            config,
            settings: SolverSettings::from(config),
            states: NodeState::from_problem(problem, x0, config.degeneracy_eps),
            ledger: CommLedger {
                sent: vec![0; problem.n_sensors],
            },
        })
    }

    pub fn problem(&self) -> &NetworkProblem {
        self.problem
    }

    pub fn states(&self) -> &[NodeState] {
        &self.states
    }

    pub fn states_mut(&mut self) -> &mut [NodeState] {
        &mut self.states
    }

    pub fn ledger(&self) -> &CommLedger {
        &self.ledger
    }

    pub fn positions(&self) -> Vec<Position> {
        self.states.iter().map(|s| s.x).collect()
    }

    /// Freezes every node's majorizers at its current view of the network
    /// and resets the multipliers.
    pub fn begin_mm_iteration(&mut self) {
        let eps = self.config.degeneracy_eps;
        for s in &mut self.states {
            s.begin_mm_iteration(eps);
        }
    }

    fn for_each_node<F>(&mut self, inboxes: Option<&[Vec<Message>]>, f: F) -> Result<Vec<Vec<Message>>>
    where
        F: Fn(&mut NodeState, &[Message]) -> Result<Vec<Message>> + Sync + Send,
    {
        let empty: Vec<Message> = Vec::new();
        let inbox = |i: usize| inboxes.map_or(empty.as_slice(), |b| b[i].as_slice());
        let outputs: Vec<Result<Vec<Message>>> = if self.config.parallel {
            self.states
                .par_iter_mut()
                .enumerate()
                .map(|(i, s)| f(s, inbox(i)))
                .collect()
        } else {
            self.states
                .iter_mut()
                .enumerate()
                .map(|(i, s)| f(s, inbox(i)))
                .collect()
        };
        outputs.into_iter().collect()
    }

    /// Routes outgoing messages to per-recipient inboxes, in sender order.
    fn deliver(&mut self, outgoing: Vec<Vec<Message>>) -> Vec<Vec<Message>> {
        let mut inboxes = vec![Vec::new(); self.states.len()];
        for (sender, msgs) in outgoing.into_iter().enumerate() {
            self.ledger.sent[sender] += msgs.len() as u64;
            for m in msgs {
                inboxes[m.to].push(m);
            }
        }
        inboxes
    }

    /// One synchronous ADMM round.
    pub fn round(&mut self) -> Result<RoundStats> {
        let rho = self.config.rho;
        let settings = self.settings;
        let before = self.ledger.total();

        let y_out = self.for_each_node(None, |s, _| {
            s.solve_local_master(rho, &settings)?;
            s.solve_anchor_vars(rho, &settings)?;
            Ok(s.emit_y_messages())
        })?;
        let y_in = self.deliver(y_out);

        let x_out = self.for_each_node(Some(&y_in), |s, inbox| {
            s.primal_update(inbox, rho)?;
            Ok(s.emit_x_broadcast())
        })?;
        let max_residual = self
            .states
            .iter()
            .map(NodeState::consensus_residual)
            .fold(0.0, f64::max);
        let x_in = self.deliver(x_out);

        self.for_each_node(Some(&x_in), |s, inbox| {
            s.dual_update(inbox, rho)?;
            Ok(Vec::new())
        })?;

        Ok(RoundStats {
            max_residual,
            messages: self.ledger.total() - before,
        })
    }

    /// Runs up to `T` rounds, calling `observer(t, stats)` after each, and
    /// returns `x(T)`.
    pub fn run_admm_inner(&mut self, mut observer: impl FnMut(usize, &Self, &RoundStats)) -> Result<Vec<Position>> {
        for t in 1..=self.config.inner_iters {
            let stats = self.round()?;
            observer(t, self, &stats);
            if let Some(tol) = self.config.residual_early_exit {
                if stats.max_residual <= tol {
                    break;
                }
            }
        }
        Ok(self.positions())
    }
}

/// Result of [`run_dcoolnet`].
#[derive(Debug, Clone)]
pub struct SimulationRun {
    /// `x[L]`.
    pub positions: Vec<Position>,
    /// `x[0], …, x[L]`.
    pub iterates: Vec<Vec<Position>>,
    pub trace: Trace,
    pub ledger: CommLedger,
    /// Final state of every node.
    pub node_states: Vec<NodeState>,
}

/// Distributed MM: `L` iterations, each minimizing the frozen surrogate with
/// `T` ADMM rounds.
///
/// Fails with [`Error::DescentViolation`] if `enforce_descent` is set and
/// the cost grows by more than `descent_slack` between iterations.
pub fn run_dcoolnet(problem: &NetworkProblem, x0: &[Position], config: &AlgorithmConfig) -> Result<SimulationRun> {
    problem.validate()?;
    config.validate()?;
    let mut net = Network::new(problem, x0, config)?;
    let mut trace = Trace::default();
    let mut iterates = vec![x0.to_vec()];
    let mut x_l = x0.to_vec();
    let mut cost_l = global_cost(problem, &x_l)?;

    for l in 0..config.outer_iters {
        let surrogate = Surrogate::freeze(problem, &x_l, config.degeneracy_eps)?;
        if l > 0 {
            net.begin_mm_iteration();
        }
        let mut last_residual = 0.0;
        let x_next = net.run_admm_inner(|t, net, stats| {
            let x = net.positions();
            last_residual = stats.max_residual;
            trace.inner.push(InnerRecord {
                l,
                t,
                cost: global_cost(problem, &x).unwrap_or(f64::NAN),
                surrogate: surrogate.value(&x),
                max_residual: stats.max_residual,
                messages_cumulative: net.ledger().total(),
            });
        })?;
        let next_cost = global_cost(problem, &x_next)?;
        trace.outer.push(OuterRecord {
            l,
            cost: cost_l,
            next_cost,
            surrogate: surrogate.value(&x_next),
            max_residual: last_residual,
            unconverged: last_residual > UNCONVERGED_RESIDUAL,
        });
        if config.enforce_descent && next_cost > cost_l + config.descent_slack {
            return Err(Error::DescentViolation {
                iteration: l,
                delta: next_cost - cost_l,
            });
        }
        iterates.push(x_next.clone());
        x_l = x_next;
        cost_l = next_cost;
    }

    Ok(SimulationRun {
        positions: x_l,
        iterates,
        ledger: net.ledger().clone(),
        node_states: net.states().to_vec(),
        trace,
    })
}

/// A range measurement from the single source to a known anchor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnchorRange {
    pub anchor: Position,
    pub range: f64,
}

fn check_single_source(anchors: &[AnchorRange], x0: &Position, eps: f64) -> Result<()> {
    if anchors.is_empty() {
        return Err(Error::InvalidConfig("single-source localization needs an anchor".into()));
    }
    for (k, a) in anchors.iter().enumerate() {
        if a.anchor.dim() != x0.dim() {
            return Err(Error::DimensionMismatch {
                expected: x0.dim(),
                found: a.anchor.dim(),
            });
        }
        if (*x0 - a.anchor).norm() <= eps {
            return Err(Error::DegenerateAnchor { anchor: k });
        }
    }
    Ok(())
}

/// MM with the quadratic majorizer for one source. Each step has the closed
/// form `x[l+1] = mean_k (a_k + r_k (x[l] - a_k) / ‖x[l] - a_k‖)`.
///
/// Returns `x[0], …, x[iters]`.
pub fn run_quadratic_mm_single_source(
    anchors: &[AnchorRange],
    x0: Position,
    iters: usize,
    degeneracy_eps: f64,
) -> Result<Vec<Position>> {
    let mut trajectory = Vec::with_capacity(iters + 1);
    trajectory.push(x0);
    let mut x = x0;
    for _ in 0..iters {
        check_single_source(anchors, &x, degeneracy_eps)?;
        let mut sum = Vector::zeros(x.dim());
        for a in anchors {
            let m = EdgeMajorizer::new(a.range, &(x - a.anchor), degeneracy_eps);
            let vhat = m.unit().expect("checked above");
            sum += a.anchor + *vhat * a.range;
        }
        x = sum / anchors.len() as f64;
        trajectory.push(x);
    }
    Ok(trajectory)
}

/// Single-sensor problem with one anchor link per range.
pub fn single_source_problem(anchors: &[AnchorRange]) -> Result<NetworkProblem> {
    let dim = anchors.first().map_or(2, |a| a.anchor.dim());
    let mut b = ProblemBuilder::new(dim, 1);
    for a in anchors {
        let k = b.add_anchor(a.anchor);
        b.add_anchor_link(0, k, a.range);
    }
    Ok(b.build()?)
}

/// MM with the proposed majorizer for one source. The source is a lone node
/// with only anchor links, so each surrogate is minimized by the same
/// node-level ADMM used for networks.
///
/// Returns `x[0], …, x[iters]`.
pub fn run_proposed_mm_single_source(
    anchors: &[AnchorRange],
    x0: Position,
    iters: usize,
    config: &AlgorithmConfig,
) -> Result<Vec<Position>> {
    check_single_source(anchors, &x0, config.degeneracy_eps)?;
    let problem = single_source_problem(anchors)?;
    let config = AlgorithmConfig {
        outer_iters: iters,
        ..config.clone()
    };
    if iters == 0 {
        return Ok(vec![x0]);
    }
    let run = run_dcoolnet(&problem, &[x0], &config)?;
    Ok(run.iterates.into_iter().map(|x| x[0]).collect())
}
