//! Distributed sensor-network localization by majorization-minimization.
//!
//! Every sensor holds a position estimate and talks only to sensors within
//! radio range. The nonconvex range-fitting cost is replaced at each outer
//! iteration by a tight convex surrogate built from per-edge majorizers, and
//! the surrogate is minimized with consensus ADMM in which each node solves
//! a small strongly convex problem by Nesterov's method.
//!
//! Entry points:
//!
//! * [`NetworkProblem`] / [`ProblemBuilder`] describe a problem.
//! * [`run_dcoolnet`] runs the distributed solver.
//! * [`experiment`] generates random scenarios and Monte Carlo metrics.

pub mod accel;
pub mod error;
pub mod experiment;
pub mod majorizer;
pub mod model;
pub mod node;
pub mod prox;
pub mod sim;
pub mod vector;

pub use error::{Error, Result};
pub use majorizer::{global_cost, phi, surrogate_cost, EdgeMajorizer, Surrogate};
pub use model::{
    validate_problem, AlgorithmConfig, AnchorLink, Edge, NetworkProblem, ProblemBuilder, ProblemFile,
    ValidationReport, Violation,
};
pub use prox::{moreau_prox, ProxInstance, ProxSolution, SolverSettings};
pub use sim::{
    run_dcoolnet, run_proposed_mm_single_source, run_quadratic_mm_single_source, AnchorRange, Network,
    SimulationRun, Trace,
};
pub use vector::{Position, Vector};
