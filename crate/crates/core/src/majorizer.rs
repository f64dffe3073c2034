//! The localization cost and its convex majorizer.
//!
//! Every term of the cost has the form `phi_d(u) = (‖u‖ - d)²`. The convex
//! majorizer of one term, anchored at a direction `v`, is
//!
//! ```text
//! Phi_d(u | v) = max{ (‖u‖ - d)₊²,  huber_d(v̂ᵀu - d) },   v̂ = v / ‖v‖
//! ```
//!
//! which is tight at `u = v`. The classic quadratic majorizer
//! `‖u‖² + d² - 2d v̂ᵀu` is provided for comparison.

use crate::error::{Error, Result};
use crate::model::NetworkProblem;
use crate::vector::{Position, Vector};

/// Default threshold on `‖v‖` below which a direction counts as degenerate.
pub const DEFAULT_DEGENERACY_EPS: f64 = 1e-12;

/// `(‖u‖ - d)²`.
#[inline]
pub fn phi(d: f64, u: &Vector) -> f64 {
    let r = u.norm() - d;
    r * r
}

/// Projection onto the closed ball of radius `d` centred at the origin.
#[inline]
pub fn ball_project(d: f64, u: &Vector) -> Vector {
    let n = u.norm();
    if n <= d {
        *u
    } else {
        *u * (d / n)
    }
}

/// `(‖u‖ - d)₊²` and its gradient `2(u - π(u))`.
#[inline]
pub fn g_plus(d: f64, u: &Vector) -> (f64, Vector) {
    let n = u.norm();
    let excess = (n - d).max(0.0);
    let grad = if n <= d {
        Vector::zeros(u.dim())
    } else {
        (*u - *u * (d / n)) * 2.0
    };
    (excess * excess, grad)
}

/// Huber function of parameter `radius` and its derivative.
///
/// Quadratic `r²` for `|r| < radius`, linear `2R|r| - R²` outside.
#[inline]
pub fn huber(radius: f64, r: f64) -> (f64, f64) {
    debug_assert!(radius > 0.0);
    let a = r.abs();
    if a < radius {
        (r * r, 2.0 * r)
    } else {
        (2.0 * radius * a - radius * radius, 2.0 * radius * r.signum())
    }
}

/// Anchoring direction of a frozen majorizer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Direction {
    Unit(Vector),
    /// `‖v‖` fell below the degeneracy threshold.
    Degenerate,
}

/// `Phi_d(· | v)` for one edge, frozen at one MM iteration.
///
/// Two shapes bypass the max structure: a degenerate direction uses
/// `‖u‖² + d²`, and `d = 0` uses `‖u‖²` (which equals `phi_0`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeMajorizer {
    pub d: f64,
    pub direction: Direction,
}

impl EdgeMajorizer {
    /// Freezes the majorizer of `phi_d` at `v`.
    pub fn new(d: f64, v: &Vector, degeneracy_eps: f64) -> Self {
        let n = v.norm();
        let direction = if n <= degeneracy_eps {
            Direction::Degenerate
        } else {
            Direction::Unit(*v / n)
        };
        Self { d, direction }
    }

    pub fn degenerate(d: f64) -> Self {
        Self {
            d,
            direction: Direction::Degenerate,
        }
    }

    /// The unit direction, unless the majorizer is degenerate.
    pub fn unit(&self) -> Option<&Vector> {
        match &self.direction {
            Direction::Unit(v) => Some(v),
            Direction::Degenerate => None,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self.direction, Direction::Degenerate)
    }

    /// True when the majorizer is a plain quadratic with a closed-form prox.
    pub fn is_quadratic(&self) -> bool {
        self.d == 0.0 || self.is_degenerate()
    }

    /// `Phi_d(u | v)`.
    pub fn value(&self, u: &Vector) -> f64 {
        if self.d == 0.0 {
            return u.norm_squared();
        }
        match &self.direction {
            Direction::Degenerate => u.norm_squared() + self.d * self.d,
            Direction::Unit(vhat) => {
                let (g, _) = g_plus(self.d, u);
                let (h, _) = huber(self.d, vhat.dot(u) - self.d);
                g.max(h)
            }
        }
    }

    /// Quadratic majorizer `‖u‖² + d² - 2d v̂ᵀu`.
    pub fn quadratic(&self, u: &Vector) -> Result<f64> {
        let vhat = self.unit().ok_or(Error::DegenerateDirection)?;
        Ok(u.norm_squared() + self.d * self.d - 2.0 * self.d * vhat.dot(u))
    }
}

/// The localization cost `f(x)`: squared range residuals over every edge and
/// anchor link.
pub fn global_cost(problem: &NetworkProblem, x: &[Position]) -> Result<f64> {
    problem.check_positions(x)?;
    let mut total = 0.0;
    for e in &problem.edges {
        total += phi(e.d, &(x[e.i] - x[e.j]));
    }
    for link in &problem.anchor_links {
        total += phi(link.r, &(x[link.sensor] - problem.anchors[link.anchor]));
    }
    Ok(total)
}

/// All edge and anchor majorizers of the cost, frozen at one iterate.
#[derive(Debug, Clone)]
pub struct Surrogate {
    edges: Vec<(usize, usize, EdgeMajorizer)>,
    links: Vec<(usize, Position, EdgeMajorizer)>,
}

impl Surrogate {
    /// Freezes `F(· | at)`.
    pub fn freeze(problem: &NetworkProblem, at: &[Position], degeneracy_eps: f64) -> Result<Self> {
        problem.check_positions(at)?;
        let edges = problem
            .edges
            .iter()
            .map(|e| {
                let m = EdgeMajorizer::new(e.d, &(at[e.i] - at[e.j]), degeneracy_eps);
                (e.i, e.j, m)
            })
            .collect();
        let links = problem
            .anchor_links
            .iter()
            .map(|l| {
                let a = problem.anchors[l.anchor];
                let m = EdgeMajorizer::new(l.r, &(at[l.sensor] - a), degeneracy_eps);
                (l.sensor, a, m)
            })
            .collect();
        Ok(Self { edges, links })
    }

    /// Evaluates `F(x | at)`. Positions are assumed to match the problem
    /// the surrogate was frozen from.
    pub fn value(&self, x: &[Position]) -> f64 {
        let mut total = 0.0;
        for (i, j, m) in &self.edges {
            total += m.value(&(x[*i] - x[*j]));
        }
        for (s, a, m) in &self.links {
            total += m.value(&(x[*s] - *a));
        }
        total
    }
}

/// `F(x | anchor_point)` with the default degeneracy threshold.
pub fn surrogate_cost(
    problem: &NetworkProblem,
    x: &[Position],
    anchor_point: &[Position],
) -> Result<f64> {
    problem.check_positions(x)?;
    Ok(Surrogate::freeze(problem, anchor_point, DEFAULT_DEGENERACY_EPS)?.value(x))
}
