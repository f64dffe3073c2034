mod common;

use common::{big_phi_ref, cost_ref, fd_gradient, norm, phi_ref, quad_ref, rel_err, surrogate_ref, to_rows};
use dcoolnet::majorizer::{g_plus, DEFAULT_DEGENERACY_EPS};
use dcoolnet::{global_cost, phi, surrogate_cost, EdgeMajorizer, NetworkProblem, ProblemBuilder, Vector};
use proptest::prelude::*;

fn vec_of(p: usize, range: f64) -> impl Strategy<Value = Vector> {
    prop::collection::vec(-range..range, p).prop_map(|c| Vector::from_slice(&c))
}

/// `(d, v, u)` with `‖v‖` placed in one of the three regimes relative to `d`.
fn sample() -> impl Strategy<Value = (f64, Vector, Vector)> {
    (1usize..=3, 1e-3f64..2.0, 0usize..3).prop_flat_map(|(p, d, regime)| {
        let (lo, hi) = [(0.01, 1.0), (1.0, 2.0), (2.0, 4.0)][regime];
        (
            Just(d),
            (vec_of(p, 1.0), lo..hi).prop_filter_map("nonzero direction", move |(dir, s)| {
                let n = dir.norm();
                (n > 1e-3).then(|| dir * (s * d / n))
            }),
            vec_of(p, 4.0),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn majorizes_and_is_tight((d, v, u) in sample()) {
        let m = EdgeMajorizer::new(d, &v, DEFAULT_DEGENERACY_EPS);
        prop_assert!(m.value(&u) >= phi(d, &u) - 1e-12);
        prop_assert!((m.value(&v) - phi(d, &v)).abs() <= 1e-12);
        let reference = big_phi_ref(d, v.as_slice(), u.as_slice());
        prop_assert!((m.value(&u) - reference).abs() <= 1e-12 * reference.max(1.0));
    }

    #[test]
    fn midpoint_convexity((d, v, u1) in sample(), shift in vec_of(3, 4.0)) {
        let m = EdgeMajorizer::new(d, &v, DEFAULT_DEGENERACY_EPS);
        let u2 = Vector::from_slice(&shift.as_slice()[..u1.dim()]);
        let mid = (u1 + u2) * 0.5;
        prop_assert!(m.value(&mid) <= 0.5 * (m.value(&u1) + m.value(&u2)) + 1e-12);
    }

    #[test]
    fn power_of_two_rescaling_is_bitwise((d, v, u) in sample(), k in -20i32..20) {
        let a = EdgeMajorizer::new(d, &v, DEFAULT_DEGENERACY_EPS);
        let b = EdgeMajorizer::new(d, &(v * 2f64.powi(k)), DEFAULT_DEGENERACY_EPS);
        prop_assert_eq!(a.value(&u).to_bits(), b.value(&u).to_bits());
    }

    #[test]
    fn positive_rescaling_is_invariant((d, v, u) in sample(), c in 1e-3f64..1e3) {
        let a = EdgeMajorizer::new(d, &v, DEFAULT_DEGENERACY_EPS);
        let b = EdgeMajorizer::new(d, &(v * c), DEFAULT_DEGENERACY_EPS);
        prop_assert!((a.value(&u) - b.value(&u)).abs() <= 1e-12 * a.value(&u).max(1.0));
    }

    #[test]
    fn quadratic_majorizes_phi((d, v, u) in sample()) {
        let m = EdgeMajorizer::new(d, &v, DEFAULT_DEGENERACY_EPS);
        let q = m.quadratic(&u).unwrap();
        prop_assert!(q >= phi(d, &u) - 1e-12);
        prop_assert!((m.quadratic(&v).unwrap() - phi(d, &v)).abs() <= 1e-12);
        prop_assert!((q - quad_ref(d, v.as_slice(), u.as_slice())).abs() <= 1e-12 * q.abs().max(1.0));
    }

    #[test]
    fn degenerate_majorizer_is_valid(d in 0.0f64..2.0, u in vec_of(2, 3.0)) {
        let m = EdgeMajorizer::new(d, &Vector::zeros(2), DEFAULT_DEGENERACY_EPS);
        prop_assert!(m.is_degenerate());
        prop_assert!(m.value(&u) >= phi(d, &u) - 1e-12);
        prop_assert!((m.value(&Vector::zeros(2)) - phi(d, &Vector::zeros(2))).abs() <= 1e-12);
    }

    #[test]
    fn g_plus_gradient_matches_differences(d in 0.05f64..2.0, u in vec_of(3, 3.0)) {
        prop_assume!((u.norm() - d).abs() > 1e-3);
        let (value, grad) = g_plus(d, &u);
        prop_assert!((value - (u.norm() - d).max(0.0).powi(2)).abs() <= 1e-12);
        let f = |x: &[f64]| (norm(x) - d).max(0.0).powi(2);
        let fd = fd_gradient(&f, u.as_slice(), 1e-6);
        prop_assert!(rel_err(grad.as_slice(), &fd) <= 1e-5);
    }
}

fn random_problem(seed: u64) -> (NetworkProblem, Vec<Vector>, Vec<Vector>) {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let n = 6;
    let mut b = ProblemBuilder::new(2, n);
    let k = b.add_anchor(Vector::xy(0.0, 0.0));
    for i in 0..n - 1 {
        b.add_edge(i, i + 1, rng.random::<f64>());
    }
    b.add_edge(0, n - 1, rng.random::<f64>());
    b.add_anchor_link(2, k, rng.random::<f64>());
    let mut pts = || (0..n).map(|_| Vector::xy(rng.random(), rng.random())).collect::<Vec<_>>();
    let x = pts();
    let at = pts();
    (b.build().unwrap(), x, at)
}

#[test]
fn surrogate_majorizes_cost_on_random_networks() {
    for seed in 0..200 {
        let (p, x, at) = random_problem(seed);
        let f = global_cost(&p, &x).unwrap();
        let big_f = surrogate_cost(&p, &x, &at).unwrap();
        assert!(big_f >= f - 1e-12);
        assert!((surrogate_cost(&p, &at, &at).unwrap() - global_cost(&p, &at).unwrap()).abs() <= 1e-12);
        assert!((f - cost_ref(&p, &to_rows(&x))).abs() <= 1e-12);
        assert!((big_f - surrogate_ref(&p, &to_rows(&at), &to_rows(&x))).abs() <= 1e-12);
    }
}

#[test]
fn phi_reference_agrees() {
    for (d, u) in [(0.5, 0.1), (1.0, 0.0), (0.5, 1.0), (0.3, -2.0)] {
        assert_eq!(phi(d, &Vector::scalar(u)), phi_ref(d, &[u]));
    }
}
