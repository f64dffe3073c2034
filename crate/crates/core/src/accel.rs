//! Nesterov's constant-step accelerated gradient method for smooth, strongly
//! convex functions.
//!
//! With strong convexity `mu` and gradient Lipschitz constant `L` the scheme
//! is
//!
//! ```text
//! y(s+1) = ŷ(s) - ∇f(ŷ(s)) / L
//! ŷ(s+1) = y(s+1) + β (y(s+1) - y(s)),   β = (√L - √mu) / (√L + √mu)
//! ```
//!
//! started from `ŷ(0) = y(0)`. There is no line search and no restart.

use crate::error::{Error, Result};
use crate::vector::Vector;

/// A gradient oracle together with its curvature bounds.
pub struct SmoothStronglyConvexOracle<G> {
    gradient: G,
    mu: f64,
    lipschitz: f64,
    momentum: f64,
}

impl<G> SmoothStronglyConvexOracle<G>
where
    G: FnMut(&Vector) -> Result<Vector>,
{
    pub fn new(gradient: G, mu: f64, lipschitz: f64) -> Result<Self> {
        if !(mu > 0.0 && mu.is_finite() && lipschitz >= mu && lipschitz.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "need 0 < mu <= L, got mu = {mu}, L = {lipschitz}"
            )));
        }
        let (sl, sm) = (lipschitz.sqrt(), mu.sqrt());
        Ok(Self {
            gradient,
            mu,
            lipschitz,
            momentum: (sl - sm) / (sl + sm),
        })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn lipschitz(&self) -> f64 {
        self.lipschitz
    }

    /// The fixed extrapolation coefficient `β`.
    pub fn momentum(&self) -> f64 {
        self.momentum
    }

    pub fn gradient(&mut self, at: &Vector) -> Result<Vector> {
        (self.gradient)(at)
    }
}

/// Result of [`minimize`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub point: Vector,
    /// Gradient steps taken.
    pub iterations: usize,
    pub gradient_norm: f64,
    /// False when `max_iters` ran out before the gradient norm reached `tol`.
    pub converged: bool,
}

/// Runs the accelerated scheme from `init` until `‖∇f‖ ≤ tol` at the
/// current extrapolated point, or until `max_iters` steps have been taken.
pub fn minimize<G>(
    oracle: &mut SmoothStronglyConvexOracle<G>,
    init: Vector,
    tol: f64,
    max_iters: usize,
) -> Result<Minimum>
where
    G: FnMut(&Vector) -> Result<Vector>,
{
    if !init.is_finite() {
        return Err(Error::NonFiniteIterate { iterations: 0 });
    }
    let step = 1.0 / oracle.lipschitz;
    let beta = oracle.momentum;
    let mut y = init;
    let mut y_hat = init;
    let mut s = 0;
    loop {
        let g = oracle.gradient(&y_hat)?;
        if !g.is_finite() {
            return Err(Error::NonFiniteIterate { iterations: s });
        }
        let gradient_norm = g.norm();
        if gradient_norm <= tol || s == max_iters {
            return Ok(Minimum {
                point: y_hat,
                iterations: s,
                gradient_norm,
                converged: gradient_norm <= tol,
            });
        }
        let y_next = y_hat - g * step;
        y_hat = y_next + (y_next - y) * beta;
        y = y_next;
        s += 1;
        if !y_hat.is_finite() {
            return Err(Error::NonFiniteIterate { iterations: s });
        }
    }
}
