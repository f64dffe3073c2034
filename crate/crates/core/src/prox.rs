//! Proximal machinery for one majorizer term.
//!
//! The per-edge subproblem is the Moreau envelope
//!
//! ```text
//! Theta(w) = min_u Phi_d(u | v) + (rho/2) ‖u - w‖²
//! ```
//!
//! Writing the max in epigraph form and dualizing leaves a concave dual in a
//! single weight `omega ∈ [0, 1]`:
//!
//! ```text
//! Psi(omega, u) = (rho/2) ‖u - w‖² + omega g_d(u) + (1 - omega) h_d(v̂ᵀu - d)
//! psi(omega)    = min_u Psi(omega, u),    psi'(omega) = g_d(u*) - h_d(v̂ᵀu* - d)
//! ```
//!
//! Each `Psi(omega, ·)` is rho-strongly convex with a (rho + 2)-Lipschitz
//! gradient and is minimized with the accelerated gradient method. The dual
//! is maximized by bisection on the sign of `psi'`.

use crate::accel::{minimize, SmoothStronglyConvexOracle};
use crate::error::{Error, Result};
use crate::majorizer::{g_plus, huber, EdgeMajorizer};
use crate::model::AlgorithmConfig;
use crate::vector::Vector;

/// Early-exit threshold on `|psi'|` during bisection.
const SLOPE_EXIT: f64 = 1e-12;

/// Tolerances shared by every subproblem solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverSettings {
    pub nesterov_tol: f64,
    pub nesterov_max_iters: usize,
    pub bisection_tol: f64,
}

impl Default for SolverSettings {
    fn default() -> Self {
        Self::from(&AlgorithmConfig::default())
    }
}

impl From<&AlgorithmConfig> for SolverSettings {
    fn from(c: &AlgorithmConfig) -> Self {
        Self {
            nesterov_tol: c.nesterov_tol,
            nesterov_max_iters: c.nesterov_max_iters,
            bisection_tol: c.bisection_tol,
        }
    }
}

/// `min_u Phi(u) + (rho/2) ‖u - w‖²` for one frozen majorizer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProxInstance {
    pub majorizer: EdgeMajorizer,
    pub w: Vector,
    pub rho: f64,
}

/// One probe of the dual bisection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualState {
    pub omega: f64,
    pub u_star: Vector,
    /// `psi'(omega)`.
    pub slope: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProxSolution {
    pub u_star: Vector,
    /// The Moreau envelope `Theta(w)`: the dual value `psi(omega*)` after
    /// bisection, or the exact objective for closed-form cases.
    pub theta: f64,
    /// Dual weight at the returned point; `None` for quadratic majorizers,
    /// whose prox is closed form.
    pub omega_star: Option<f64>,
    /// Number of `Psi` minimizations performed.
    pub probes: usize,
}

impl ProxInstance {
    pub fn new(majorizer: EdgeMajorizer, w: Vector, rho: f64) -> Result<Self> {
        if !(rho > 0.0 && rho.is_finite()) {
            return Err(Error::InvalidConfig(format!("prox weight must be positive, got {rho}")));
        }
        if !w.is_finite() {
            return Err(Error::InvalidConfig("prox centre is not finite".into()));
        }
        Ok(Self { majorizer, w, rho })
    }

    /// `Phi(u) + (rho/2) ‖u - w‖²`.
    pub fn objective(&self, u: &Vector) -> f64 {
        self.majorizer.value(u) + 0.5 * self.rho * (*u - self.w).norm_squared()
    }

    fn branches(&self) -> Result<(f64, Vector)> {
        if self.majorizer.d == 0.0 {
            return Err(Error::DegenerateDirection);
        }
        let vhat = *self.majorizer.unit().ok_or(Error::DegenerateDirection)?;
        Ok((self.majorizer.d, vhat))
    }

    /// `Psi(omega, u)`.
    pub fn psi(&self, omega: f64, u: &Vector) -> Result<f64> {
        let (d, vhat) = self.branches()?;
        let (g, _) = g_plus(d, u);
        let (h, _) = huber(d, vhat.dot(u) - d);
        Ok(0.5 * self.rho * (*u - self.w).norm_squared() + omega * g + (1.0 - omega) * h)
    }

    /// `∇_u Psi(omega, u) = rho (u - w) + 2 omega (u - π(u)) + (1 - omega) h'(v̂ᵀu - d) v̂`.
    pub fn psi_gradient(&self, omega: f64, u: &Vector) -> Result<Vector> {
        let (d, vhat) = self.branches()?;
        Ok(psi_gradient_raw(d, &vhat, &self.w, self.rho, omega, u))
    }
}

#[inline]
fn psi_gradient_raw(d: f64, vhat: &Vector, w: &Vector, rho: f64, omega: f64, u: &Vector) -> Vector {
    let (_, dg) = g_plus(d, u);
    let (_, dh) = huber(d, vhat.dot(u) - d);
    (*u - *w) * rho + dg * omega + *vhat * ((1.0 - omega) * dh)
}

/// Minimizer of `Psi(omega, ·)`, started from `warm_start`.
pub fn psi_omega_minimize(
    inst: &ProxInstance,
    omega: f64,
    warm_start: Vector,
    settings: &SolverSettings,
) -> Result<Vector> {
    let (d, vhat) = inst.branches()?;
    let (w, rho) = (inst.w, inst.rho);
    let mut oracle = SmoothStronglyConvexOracle::new(
        |u: &Vector| Ok(psi_gradient_raw(d, &vhat, &w, rho, omega, u)),
        rho,
        rho + 2.0,
    )?;
    let m = minimize(
        &mut oracle,
        warm_start,
        settings.nesterov_tol,
        settings.nesterov_max_iters,
    )?;
    Ok(m.point)
}

/// `psi'(omega) = g_d(u*) - h_d(v̂ᵀu* - d)`, given the minimizer `u*` of
/// `Psi(omega, ·)`.
pub fn psi_derivative(inst: &ProxInstance, u_star: &Vector) -> Result<f64> {
    let (d, vhat) = inst.branches()?;
    let (g, _) = g_plus(d, u_star);
    let (h, _) = huber(d, vhat.dot(u_star) - d);
    Ok(g - h)
}

/// Prox of the majorizer by dual bisection.
pub fn moreau_prox(inst: &ProxInstance, settings: &SolverSettings) -> Result<ProxSolution> {
    moreau_prox_observed(inst, settings, |_| {})
}

/// [`moreau_prox`], reporting every dual probe to `observer`.
///
/// The endpoints are probed first: `psi'(0) ≤ 0` or `psi'(1) ≥ 0` certify a
/// boundary maximizer of the concave dual. Otherwise `[0, 1]` is halved on
/// the sign of `psi'` at the midpoint until its width is at most
/// `bisection_tol` or `|psi'|` drops below `1e-12`.
pub fn moreau_prox_observed(
    inst: &ProxInstance,
    settings: &SolverSettings,
    mut observer: impl FnMut(&DualState),
) -> Result<ProxSolution> {
    if inst.majorizer.is_quadratic() {
        // Phi = ‖u‖² + const, so the stationarity condition is linear.
        let u_star = inst.w * (inst.rho / (inst.rho + 2.0));
        return Ok(ProxSolution {
            u_star,
            theta: inst.objective(&u_star),
            omega_star: None,
            probes: 0,
        });
    }

    let mut probes = 0;
    let mut probe = |omega: f64, warm: Vector| -> Result<DualState> {
        let u_star = psi_omega_minimize(inst, omega, warm, settings)?;
        let state = DualState {
            omega,
            u_star,
            slope: psi_derivative(inst, &u_star)?,
        };
        probes += 1;
        observer(&state);
        Ok(state)
    };

    let lower = probe(0.0, inst.w)?;
    let best = if lower.slope <= 0.0 {
        lower
    } else {
        let upper = probe(1.0, lower.u_star)?;
        if upper.slope >= 0.0 {
            upper
        } else {
            let (mut a, mut b) = (0.0_f64, 1.0_f64);
            let mut last = upper;
            while b - a > settings.bisection_tol {
                let c = 0.5 * (a + b);
                last = probe(c, last.u_star)?;
                if last.slope.abs() <= SLOPE_EXIT {
                    break;
                }
                if last.slope > 0.0 {
                    a = c;
                } else {
                    b = c;
                }
            }
            last
        }
    };

    // Strong duality: Theta(w) = psi(omega*). The dual value is second-order
    // accurate in the errors of both omega and u*, whereas the primal
    // objective at an inexact u* is only first-order accurate at the kink.
    Ok(ProxSolution {
        u_star: best.u_star,
        theta: inst.psi(best.omega, &best.u_star)?,
        omega_star: Some(best.omega),
        probes,
    })
}

/// Value, gradient and inner minimizer of
/// `H_ij(y_i) = min_{y_j} Phi(y_i - y_j) + (rho/2) ‖y_j - gamma_ij‖²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeEnvelope {
    pub value: f64,
    pub gradient: Vector,
    pub y_j_star: Vector,
}

/// Evaluates the edge envelope through the change of variable
/// `u = y_i - y_j`, `w = y_i - gamma_ij`.
pub fn h_ij_eval(
    majorizer: &EdgeMajorizer,
    y_i: &Vector,
    gamma_ij: &Vector,
    rho: f64,
    settings: &SolverSettings,
) -> Result<EdgeEnvelope> {
    let inst = ProxInstance::new(*majorizer, *y_i - *gamma_ij, rho)?;
    let sol = moreau_prox(&inst, settings)?;
    let y_j_star = *y_i - sol.u_star;
    Ok(EdgeEnvelope {
        value: sol.theta,
        gradient: (y_j_star - *gamma_ij) * rho,
        y_j_star,
    })
}

/// Minimizer of `2 Phi(z - a_k) + mu_ikᵀ(z - x_i) + (rho/2) ‖z - x_i‖²`.
///
/// Completing the square gives the prox of `Phi` with centre
/// `x_i - mu_ik/rho - a_k` and weight `rho/2`.
pub fn anchor_subproblem(
    majorizer: &EdgeMajorizer,
    x_i: &Vector,
    mu_ik: &Vector,
    a_k: &Vector,
    rho: f64,
    settings: &SolverSettings,
) -> Result<Vector> {
    let w = *x_i - *mu_ik / rho - *a_k;
    let inst = ProxInstance::new(*majorizer, w, 0.5 * rho)?;
    Ok(*a_k + moreau_prox(&inst, settings)?.u_star)
}
