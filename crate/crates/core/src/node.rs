//! Per-sensor ADMM state and updates.
//!
//! Node `i` owns its estimate `x_i`, its copies `y_ij` of every closed
//! neighbor's position, the anchor copies `z_ik`, and the multipliers
//! `λ_ij`, `λ_ji` (each pair multiplier is kept by both endpoints) and
//! `μ_ik`. One ADMM round is
//!
//! 1. [`NodeState::solve_local_master`] and [`NodeState::solve_anchor_vars`]
//! 2. send `y_ij` to each neighbor ([`NodeState::emit_y_messages`])
//! 3. [`NodeState::primal_update`] from the received `y_ji`
//! 4. broadcast `x_i` ([`NodeState::emit_x_broadcast`])
//! 5. [`NodeState::dual_update`] from the received `x_j`

use crate::accel::{minimize, SmoothStronglyConvexOracle};
use crate::error::{Error, Result};
use crate::majorizer::EdgeMajorizer;
use crate::model::{NetworkProblem, Neighborhood};
use crate::prox::{anchor_subproblem, h_ij_eval, SolverSettings};
use crate::vector::{Position, Vector};

/// State node `i` keeps about one neighbor `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct NeighborLink {
    pub id: usize,
    pub d: f64,
    pub majorizer: EdgeMajorizer,
    /// `y_ij`: this node's copy of `x_j`.
    pub y: Vector,
    /// `y_ji`: the neighbor's copy of `x_i`, as last received.
    pub y_in: Vector,
    /// `λ_ij`, multiplier of `y_ij = x_j`.
    pub lambda_out: Vector,
    /// `λ_ji`, multiplier of `y_ji = x_i`.
    pub lambda_in: Vector,
    /// Last received `x_j`.
    pub x: Vector,
}

/// State node `i` keeps about one anchor link.
#[derive(Debug, Clone, PartialEq)]
pub struct AnchorTerm {
    pub id: usize,
    pub position: Position,
    pub r: f64,
    pub majorizer: EdgeMajorizer,
    pub z: Vector,
    pub mu: Vector,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MessageKind {
    YExchange,
    XBroadcast,
}

/// One vector sent between neighbors at a round barrier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Message {
    pub kind: MessageKind,
    pub from: usize,
    pub to: usize,
    pub payload: Vector,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NodeState {
    pub id: usize,
    pub x: Position,
    /// `y_ii`.
    pub y_self: Vector,
    /// `λ_ii`; its two copies coincide.
    pub lambda_self: Vector,
    /// Sorted by neighbor id.
    pub neighbors: Vec<NeighborLink>,
    /// Sorted by anchor id.
    pub anchors: Vec<AnchorTerm>,
}

impl NodeState {
    /// Builds every node of `problem` at positions `x0`. Majorizers are
    /// frozen at `x0` and all multipliers start at zero.
    pub fn from_problem(problem: &NetworkProblem, x0: &[Position], degeneracy_eps: f64) -> Vec<Self> {
        let neighborhoods = problem.neighbor_sets();
        let anchor_sets = problem.anchor_sets();
        neighborhoods
            .iter()
            .zip(anchor_sets)
            .enumerate()
            .map(|(i, (Neighborhood { open, .. }, links))| {
                let zero = Vector::zeros(problem.dim);
                let neighbors = open
                    .iter()
                    .map(|&j| NeighborLink {
                        id: j,
                        d: problem.measurement(i, j).expect("neighbor has an edge"),
                        majorizer: EdgeMajorizer::degenerate(0.0),
                        y: x0[j],
                        y_in: x0[i],
                        lambda_out: zero,
                        lambda_in: zero,
                        x: x0[j],
                    })
                    .collect();
                let anchors = links
                    .iter()
                    .map(|l| AnchorTerm {
                        id: l.anchor,
                        position: problem.anchors[l.anchor],
                        r: l.r,
                        majorizer: EdgeMajorizer::degenerate(0.0),
                        z: x0[i],
                        mu: zero,
                    })
                    .collect();
                let mut node = NodeState {
                    id: i,
                    x: x0[i],
                    y_self: x0[i],
                    lambda_self: zero,
                    neighbors,
                    anchors,
                };
                node.begin_mm_iteration(degeneracy_eps);
                node
            })
            .collect()
    }

    /// Starts a new MM iteration at the current `x_i` and cached `x_j`:
    /// freezes the majorizers there, resets all multipliers to zero and
    /// re-seeds the local copies (`y_ij = x_j`, `z_ik = x_i`).
    pub fn begin_mm_iteration(&mut self, degeneracy_eps: f64) {
        let zero = Vector::zeros(self.x.dim());
        self.y_self = self.x;
        self.lambda_self = zero;
        for n in &mut self.neighbors {
            n.majorizer = EdgeMajorizer::new(n.d, &(self.x - n.x), degeneracy_eps);
            n.y = n.x;
            n.y_in = self.x;
            n.lambda_out = zero;
            n.lambda_in = zero;
        }
        for a in &mut self.anchors {
            a.majorizer = EdgeMajorizer::new(a.r, &(self.x - a.position), degeneracy_eps);
            a.z = self.x;
            a.mu = zero;
        }
    }

    /// `gamma_ij = x_j - λ_ij / rho` for each neighbor.
    fn gammas(&self, rho: f64) -> Vec<Vector> {
        self.neighbors.iter().map(|n| n.x - n.lambda_out / rho).collect()
    }

    /// Gradient of the master objective
    /// `H(y) = Σ_j H_ij(y) + (rho/2) ‖y - gamma_ii‖²`.
    pub fn master_gradient(&self, y: &Vector, rho: f64, settings: &SolverSettings) -> Result<Vector> {
        let gammas = self.gammas(rho);
        let gamma_self = self.x - self.lambda_self / rho;
        master_gradient(&self.neighbors, &gammas, &gamma_self, y, rho, settings)
    }

    /// Master objective value `H(y)`.
    pub fn master_value(&self, y: &Vector, rho: f64, settings: &SolverSettings) -> Result<f64> {
        let gamma_self = self.x - self.lambda_self / rho;
        let mut total = 0.0;
        for (n, gamma) in self.neighbors.iter().zip(self.gammas(rho)) {
            total += h_ij_eval(&n.majorizer, y, &gamma, rho, settings)?.value;
        }
        Ok(total + 0.5 * rho * (*y - gamma_self).norm_squared())
    }

    /// Updates `y_ij` for `j` in the closed neighborhood by minimizing the
    /// master objective, warm-started at the previous `y_ii`.
    pub fn solve_local_master(&mut self, rho: f64, settings: &SolverSettings) -> Result<()> {
        let gammas = self.gammas(rho);
        let gamma_self = self.x - self.lambda_self / rho;
        let lipschitz = rho * (self.neighbors.len() as f64 + 1.0);
        let neighbors = &self.neighbors;
        let mut oracle = SmoothStronglyConvexOracle::new(
            |y: &Vector| master_gradient(neighbors, &gammas, &gamma_self, y, rho, settings),
            rho,
            lipschitz,
        )?;
        let y_star = minimize(
            &mut oracle,
            self.y_self,
            settings.nesterov_tol,
            settings.nesterov_max_iters,
        )?
        .point;
        self.y_self = y_star;
        for (n, gamma) in self.neighbors.iter_mut().zip(&gammas) {
            n.y = h_ij_eval(&n.majorizer, &y_star, gamma, rho, settings)?.y_j_star;
        }
        Ok(())
    }

    /// Updates every `z_ik` independently.
    pub fn solve_anchor_vars(&mut self, rho: f64, settings: &SolverSettings) -> Result<()> {
        for a in &mut self.anchors {
            a.z = anchor_subproblem(&a.majorizer, &self.x, &a.mu, &a.position, rho, settings)?;
        }
        Ok(())
    }

    /// One `YExchange` message per neighbor carrying `y_ij`.
    pub fn emit_y_messages(&self) -> Vec<Message> {
        self.neighbors
            .iter()
            .map(|n| Message {
                kind: MessageKind::YExchange,
                from: self.id,
                to: n.id,
                payload: n.y,
            })
            .collect()
    }

    /// One `XBroadcast` message per neighbor carrying `x_i`.
    pub fn emit_x_broadcast(&self) -> Vec<Message> {
        self.neighbors
            .iter()
            .map(|n| Message {
                kind: MessageKind::XBroadcast,
                from: self.id,
                to: n.id,
                payload: self.x,
            })
            .collect()
    }

    /// Records received values of `kind` into the neighbor links.
    fn receive(
        &mut self,
        received: &[Message],
        kind: MessageKind,
        mut store: impl FnMut(&mut NeighborLink, Vector),
    ) -> Result<()> {
        for n in &mut self.neighbors {
            let msg = received
                .iter()
                .find(|m| m.kind == kind && m.from == n.id && m.to == self.id)
                .ok_or(Error::MissingNeighborMessage {
                    node: self.id,
                    neighbor: n.id,
                })?;
            store(n, msg.payload);
        }
        Ok(())
    }

    /// Closed-form `x_i` update: the average over the closed neighborhood
    /// and anchors of `λ_ji/rho + y_ji` and `μ_ik/rho + z_ik`.
    pub fn primal_update(&mut self, received: &[Message], rho: f64) -> Result<()> {
        self.receive(received, MessageKind::YExchange, |n, y| n.y_in = y)?;
        let mut sum = Vector::zeros(self.x.dim());
        let mut self_added = false;
        for n in &self.neighbors {
            if !self_added && n.id > self.id {
                sum += self.lambda_self / rho + self.y_self;
                self_added = true;
            }
            sum += n.lambda_in / rho + n.y_in;
        }
        if !self_added {
            sum += self.lambda_self / rho + self.y_self;
        }
        for a in &self.anchors {
            sum += a.mu / rho + a.z;
        }
        let count = (self.neighbors.len() + 1 + self.anchors.len()) as f64;
        self.x = sum / count;
        Ok(())
    }

    /// Multiplier updates after `x_i(t+1)` and every `x_j(t+1)` are known.
    /// Also refreshes the cached neighbor positions.
    pub fn dual_update(&mut self, received: &[Message], rho: f64) -> Result<()> {
        self.receive(received, MessageKind::XBroadcast, |n, x| n.x = x)?;
        let x = self.x;
        self.lambda_self += (self.y_self - x) * rho;
        for n in &mut self.neighbors {
            n.lambda_in += (n.y_in - x) * rho;
            n.lambda_out += (n.y - n.x) * rho;
        }
        for a in &mut self.anchors {
            a.mu += (a.z - x) * rho;
        }
        Ok(())
    }

    /// `max(‖y_ji - x_i‖, ‖z_ik - x_i‖)` over the closed neighborhood and
    /// anchors, using the most recently received `y_ji`.
    pub fn consensus_residual(&self) -> f64 {
        let mut r = (self.y_self - self.x).norm();
        for n in &self.neighbors {
            r = r.max((n.y_in - self.x).norm());
        }
        for a in &self.anchors {
            r = r.max((a.z - self.x).norm());
        }
        r
    }

    /// This node's share of the rescaled consensus objective:
    /// `Σ_j Phi(y_ii - y_ij) + 2 Σ_k Phi(z_ik - a_k)`.
    pub fn local_objective(&self) -> f64 {
        let mut total = 0.0;
        for n in &self.neighbors {
            total += n.majorizer.value(&(self.y_self - n.y));
        }
        for a in &self.anchors {
            total += 2.0 * a.majorizer.value(&(a.z - a.position));
        }
        total
    }

    /// This node's terms of the decomposed augmented Lagrangian,
    /// `Σ_{j ∈ V̄_i} L_ij(y_ii, y_ij, x_j, λ_ij) + Σ_k L_ik(z_ik, x_i, μ_ik)`,
    /// with `x_j` taken from the neighbor cache.
    pub fn local_lagrangian(&self, rho: f64) -> f64 {
        let penalty = |lambda: &Vector, copy: &Vector, owner: &Vector| {
            let r = *copy - *owner;
            lambda.dot(&r) + 0.5 * rho * r.norm_squared()
        };
        let mut total = penalty(&self.lambda_self, &self.y_self, &self.x);
        for n in &self.neighbors {
            total += n.majorizer.value(&(self.y_self - n.y)) + penalty(&n.lambda_out, &n.y, &n.x);
        }
        for a in &self.anchors {
            total += 2.0 * a.majorizer.value(&(a.z - a.position)) + penalty(&a.mu, &a.z, &self.x);
        }
        total
    }
}

fn master_gradient(
    neighbors: &[NeighborLink],
    gammas: &[Vector],
    gamma_self: &Vector,
    y: &Vector,
    rho: f64,
    settings: &SolverSettings,
) -> Result<Vector> {
    let mut grad = Vector::zeros(y.dim());
    for (n, gamma) in neighbors.iter().zip(gammas) {
        grad += h_ij_eval(&n.majorizer, y, gamma, rho, settings)?.gradient;
    }
    Ok(grad + (*y - *gamma_self) * rho)
}
