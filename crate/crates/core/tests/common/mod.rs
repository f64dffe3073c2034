//! Reference implementations used only by tests. Nothing here calls the
//! solver code paths it checks: costs, majorizers and minimizers are
//! re-derived from their definitions on plain `f64` slices.

#![allow(dead_code)]

use dcoolnet::{NetworkProblem, Position, Vector};

pub fn norm(u: &[f64]) -> f64 {
    u.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `(‖u‖ - d)²`.
pub fn phi_ref(d: f64, u: &[f64]) -> f64 {
    (norm(u) - d).powi(2)
}

/// Huber function with the quadratic piece on `|r| < radius`.
pub fn huber_ref(radius: f64, r: f64) -> f64 {
    if r.abs() < radius {
        r * r
    } else {
        2.0 * radius * r.abs() - radius * radius
    }
}

/// The proposed majorizer of `phi_d` anchored at direction `v`. A zero
/// `v` gives `‖u‖² + d²`; `d = 0` gives `‖u‖²`.
pub fn big_phi_ref(d: f64, v: &[f64], u: &[f64]) -> f64 {
    let nv = norm(v);
    if d == 0.0 {
        return dot(u, u);
    }
    if nv <= 1e-12 {
        return dot(u, u) + d * d;
    }
    let g = (norm(u) - d).max(0.0).powi(2);
    let h = huber_ref(d, dot(v, u) / nv - d);
    g.max(h)
}

/// `‖u‖² + d² - 2 d v̂ᵀu`.
pub fn quad_ref(d: f64, v: &[f64], u: &[f64]) -> f64 {
    dot(u, u) + d * d - 2.0 * d * dot(v, u) / norm(v)
}

pub fn cost_ref(problem: &NetworkProblem, x: &[Vec<f64>]) -> f64 {
    let mut f = 0.0;
    for e in &problem.edges {
        f += phi_ref(e.d, &sub(&x[e.i], &x[e.j]));
    }
    for l in &problem.anchor_links {
        f += phi_ref(l.r, &sub(&x[l.sensor], problem.anchors[l.anchor].as_slice()));
    }
    f
}

/// `F(x | at)`, the sum of proposed majorizers frozen at `at`.
pub fn surrogate_ref(problem: &NetworkProblem, at: &[Vec<f64>], x: &[Vec<f64>]) -> f64 {
    let mut f = 0.0;
    for e in &problem.edges {
        f += big_phi_ref(e.d, &sub(&at[e.i], &at[e.j]), &sub(&x[e.i], &x[e.j]));
    }
    for l in &problem.anchor_links {
        let a = problem.anchors[l.anchor].as_slice();
        f += big_phi_ref(l.r, &sub(&at[l.sensor], a), &sub(&x[l.sensor], a));
    }
    f
}

pub fn to_rows(x: &[Position]) -> Vec<Vec<f64>> {
    x.iter().map(|p| p.as_slice().to_vec()).collect()
}

pub fn to_positions(rows: &[Vec<f64>]) -> Vec<Position> {
    rows.iter().map(|r| Vector::from_slice(r)).collect()
}

pub fn flatten(rows: &[Vec<f64>]) -> Vec<f64> {
    rows.iter().flatten().copied().collect()
}

pub fn unflatten(flat: &[f64], p: usize) -> Vec<Vec<f64>> {
    flat.chunks(p).map(|c| c.to_vec()).collect()
}

/// Golden-section search for a unimodal function on `[lo, hi]`.
pub fn golden_min(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - r * (hi - lo);
    let mut d = lo + r * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    while hi - lo > tol {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - r * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + r * (hi - lo);
            fd = f(d);
        }
    }
    let x = 0.5 * (lo + hi);
    (x, f(x))
}

/// Minimizes a convex function of two variables on a box by nested
/// golden-section search. The inner minimum is convex in the outer
/// variable, so both levels are unimodal.
pub fn nested_golden_2d(f: impl Fn(f64, f64) -> f64, lo: [f64; 2], hi: [f64; 2], tol: f64) -> ([f64; 2], f64) {
    let inner = |x: f64| golden_min(|y| f(x, y), lo[1], hi[1], tol);
    let (x, _) = golden_min(|x| inner(x).1, lo[0], hi[0], tol);
    let (y, v) = inner(x);
    ([x, y], v)
}

/// Nelder–Mead simplex search, restarted from the best point until a
/// restart no longer improves the value by more than `ftol`.
pub fn nelder_mead(f: &dyn Fn(&[f64]) -> f64, x0: &[f64], step: f64, ftol: f64, max_evals: usize) -> (Vec<f64>, f64) {
    let mut best = x0.to_vec();
    let mut best_f = f(&best);
    let mut step = step;
    let mut evals = 0;
    loop {
        let (x, fx, used) = nelder_mead_once(f, &best, step, ftol * 1e-3, max_evals.saturating_sub(evals));
        evals += used;
        let improved = best_f - fx;
        if fx < best_f {
            best = x;
            best_f = fx;
        }
        if improved <= ftol || evals >= max_evals {
            return (best, best_f);
        }
        step = (step * 0.5).max(1e-6);
    }
}

fn nelder_mead_once(f: &dyn Fn(&[f64]) -> f64, x0: &[f64], step: f64, ftol: f64, max_evals: usize) -> (Vec<f64>, f64, usize) {
    let n = x0.len();
    let mut simplex: Vec<Vec<f64>> = vec![x0.to_vec()];
    for k in 0..n {
        let mut x = x0.to_vec();
        x[k] += step;
        simplex.push(x);
    }
    let mut values: Vec<f64> = simplex.iter().map(|x| f(x)).collect();
    let mut evals = n + 1;
    while evals < max_evals {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();
        if values[n] - values[0] <= ftol {
            break;
        }
        let centroid: Vec<f64> = (0..n)
            .map(|k| simplex[..n].iter().map(|x| x[k]).sum::<f64>() / n as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> { (0..n).map(|k| centroid[k] + t * (simplex[n][k] - centroid[k])).collect() };
        let xr = along(-1.0);
        let fr = f(&xr);
        evals += 1;
        if fr < values[0] {
            let xe = along(-2.0);
            let fe = f(&xe);
            evals += 1;
            if fe < fr {
                simplex[n] = xe;
                values[n] = fe;
            } else {
                simplex[n] = xr;
                values[n] = fr;
            }
        } else if fr < values[n - 1] {
            simplex[n] = xr;
            values[n] = fr;
        } else {
            let (xc, fc) = if fr < values[n] {
                let xc = along(-0.5);
                let fc = f(&xc);
                (xc, fc)
            } else {
                let xc = along(0.5);
                let fc = f(&xc);
                (xc, fc)
            };
            evals += 1;
            if fc < values[n].min(fr) {
                simplex[n] = xc;
                values[n] = fc;
            } else {
                for i in 1..=n {
                    simplex[i] = (0..n).map(|k| simplex[0][k] + 0.5 * (simplex[i][k] - simplex[0][k])).collect();
                    values[i] = f(&simplex[i]);
                }
                evals += n;
            }
        }
    }
    let i = (0..=n).min_by(|&a, &b| values[a].total_cmp(&values[b])).unwrap();
    (simplex[i].clone(), values[i], evals)
}

/// BFGS with Armijo backtracking for a smooth function.
pub fn bfgs(
    f: &dyn Fn(&[f64]) -> (f64, Vec<f64>),
    x0: &[f64],
    gtol: f64,
    max_iters: usize,
) -> (Vec<f64>, f64) {
    let n = x0.len();
    let mut x = x0.to_vec();
    let (mut fx, mut g) = f(&x);
    let mut h = vec![vec![0.0; n]; n];
    for (i, row) in h.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for _ in 0..max_iters {
        if norm(&g) <= gtol {
            break;
        }
        let mut dir: Vec<f64> = (0..n).map(|i| -dot(&h[i], &g)).collect();
        if dot(&dir, &g) >= 0.0 {
            for row in h.iter_mut().enumerate() {
                row.1.iter_mut().for_each(|v| *v = 0.0);
                row.1[row.0] = 1.0;
            }
            dir = g.iter().map(|v| -v).collect();
        }
        let slope = dot(&dir, &g);
        let mut t = 1.0;
        let (mut xn, mut fxn, mut gn);
        loop {
            xn = (0..n).map(|i| x[i] + t * dir[i]).collect::<Vec<_>>();
            let (a, b) = f(&xn);
            fxn = a;
            gn = b;
            if fxn <= fx + 1e-4 * t * slope || t < 1e-20 {
                break;
            }
            t *= 0.5;
        }
        if t < 1e-20 {
            break;
        }
        let s: Vec<f64> = (0..n).map(|i| xn[i] - x[i]).collect();
        let y: Vec<f64> = (0..n).map(|i| gn[i] - g[i]).collect();
        let sy = dot(&s, &y);
        if sy > 1e-300 {
            let hy: Vec<f64> = (0..n).map(|i| dot(&h[i], &y)).collect();
            let yhy = dot(&y, &hy);
            for i in 0..n {
                for j in 0..n {
                    h[i][j] += ((sy + yhy) * s[i] * s[j]) / (sy * sy) - (hy[i] * s[j] + s[i] * hy[j]) / sy;
                }
            }
        }
        x = xn;
        fx = fxn;
        g = gn;
    }
    (x, fx)
}

/// Log-sum-exp smoothing of `max(a, b)` together with the weight on `a`.
fn soft_max(beta: f64, a: f64, b: f64) -> (f64, f64) {
    let m = a.max(b);
    let (ea, eb) = ((beta * (a - m)).exp(), (beta * (b - m)).exp());
    (m + (ea + eb).ln() / beta, ea / (ea + eb))
}

/// Smoothed majorizer value and gradient in `u`.
fn smooth_phi(beta: f64, d: f64, v: &[f64], u: &[f64]) -> (f64, Vec<f64>) {
    let nv = norm(v);
    if d == 0.0 || nv <= 1e-12 {
        let c = if d == 0.0 { 0.0 } else { d * d };
        return (dot(u, u) + c, u.iter().map(|x| 2.0 * x).collect());
    }
    let nu = norm(u);
    let (g, dg): (f64, Vec<f64>) = if nu > d {
        ((nu - d).powi(2), u.iter().map(|x| 2.0 * (nu - d) * x / nu).collect())
    } else {
        (0.0, vec![0.0; u.len()])
    };
    let r = dot(v, u) / nv - d;
    let (h, dh) = if r.abs() < d { (r * r, 2.0 * r) } else { (2.0 * d * r.abs() - d * d, 2.0 * d * r.signum()) };
    let (val, wa) = soft_max(beta, g, h);
    let grad = (0..u.len()).map(|k| wa * dg[k] + (1.0 - wa) * dh * v[k] / nv).collect();
    (val, grad)
}

/// Centralized minimizer of `F(· | at)` by smoothing continuation and BFGS,
/// polished with Nelder–Mead on the exact objective.
pub fn minimize_surrogate_ref(problem: &NetworkProblem, at: &[Vec<f64>], start: &[Vec<f64>]) -> (Vec<Vec<f64>>, f64) {
    let p = problem.dim;
    let smoothed = |beta: f64| {
        move |flat: &[f64]| -> (f64, Vec<f64>) {
            let x = unflatten(flat, p);
            let mut val = 0.0;
            let mut grad = vec![0.0; flat.len()];
            for e in &problem.edges {
                let (fv, gu) = smooth_phi(beta, e.d, &sub(&at[e.i], &at[e.j]), &sub(&x[e.i], &x[e.j]));
                val += fv;
                for k in 0..p {
                    grad[e.i * p + k] += gu[k];
                    grad[e.j * p + k] -= gu[k];
                }
            }
            for l in &problem.anchor_links {
                let a = problem.anchors[l.anchor].as_slice();
                let (fv, gu) = smooth_phi(beta, l.r, &sub(&at[l.sensor], a), &sub(&x[l.sensor], a));
                val += fv;
                for k in 0..p {
                    grad[l.sensor * p + k] += gu[k];
                }
            }
            (val, grad)
        }
    };
    let mut flat = flatten(start);
    let mut beta = 10.0;
    while beta <= 1e9 {
        let f = smoothed(beta);
        flat = bfgs(&f, &flat, 1e-12, 2000).0;
        beta *= 10.0;
    }
    let exact = |flat: &[f64]| surrogate_ref(problem, at, &unflatten(flat, p));
    let (flat, value) = nelder_mead(&exact, &flat, 1e-4, 1e-14, 200_000);
    (unflatten(&flat, p), value)
}

/// Central finite-difference gradient.
pub fn fd_gradient(f: &dyn Fn(&[f64]) -> f64, x: &[f64], h: f64) -> Vec<f64> {
    (0..x.len())
        .map(|k| {
            let (mut a, mut b) = (x.to_vec(), x.to_vec());
            a[k] += h;
            b[k] -= h;
            (f(&a) - f(&b)) / (2.0 * h)
        })
        .collect()
}

/// Relative error with a floor of 1 on the reference magnitude.
pub fn rel_err(analytic: &[f64], reference: &[f64]) -> f64 {
    norm(&sub(analytic, reference)) / norm(reference).max(1.0)
}

/// A connected network of `n` sensors in the unit square with corner
/// anchors: a ring plus random chords, noisy ranges, and a start point near
/// the truth. Returns `(problem, truth, x0)`.
pub fn random_network(seed: u64, n: usize) -> (NetworkProblem, Vec<Position>, Vec<Position>) {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let truth: Vec<Position> = (0..n).map(|_| Vector::xy(rng.random(), rng.random())).collect();
    let mut b = dcoolnet::ProblemBuilder::new(2, n);
    let anchors: Vec<usize> = [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)]
        .iter()
        .map(|&(x, y)| b.add_anchor(Vector::xy(x, y)))
        .collect();
    let noisy = |rng: &mut rand_chacha::ChaCha8Rng, d: f64| d * (1.0 + 0.05 * (rng.random::<f64>() - 0.5));
    for i in 0..n {
        for j in i + 1..n {
            if j == i + 1 || rng.random::<f64>() < 0.3 {
                let d = noisy(&mut rng, truth[i].distance(&truth[j]));
                b.add_edge(i, j, d);
            }
        }
        for &k in &anchors {
            if i == 0 || rng.random::<f64>() < 0.25 {
                let a = [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)][k];
                let d = noisy(&mut rng, truth[i].distance(&Vector::xy(a.0, a.1)));
                b.add_anchor_link(i, k, d);
            }
        }
    }
    let x0 = truth
        .iter()
        .map(|t| *t + Vector::xy(0.2 * rng.random::<f64>() - 0.1, 0.2 * rng.random::<f64>() - 0.1))
        .collect();
    (b.build().unwrap(), truth, x0)
}

/// Reference prox value by golden-section search. The minimizer lies within
/// `sqrt(2 Phi(w) / rho)` of `w` because the objective at `w` is `Phi(w)`.
pub fn prox_reference(d: f64, v: &[f64], w: &[f64], rho: f64) -> f64 {
    let obj = |u: &[f64]| big_phi_ref(d, v, u) + 0.5 * rho * u.iter().zip(w).map(|(a, b)| (a - b).powi(2)).sum::<f64>();
    let radius = (2.0 * big_phi_ref(d, v, w) / rho).sqrt() + 1e-9;
    match w.len() {
        1 => golden_min(|u| obj(&[u]), w[0] - radius, w[0] + radius, 1e-12).1,
        2 => {
            nested_golden_2d(
                |a, b| obj(&[a, b]),
                [w[0] - radius, w[1] - radius],
                [w[0] + radius, w[1] + radius],
                1e-11,
            )
            .1
        }
        _ => unreachable!(),
    }
}
