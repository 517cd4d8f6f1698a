//! Floating-point closed forms against exact values.

use markov_core::entropy::{
    empirical_entropy, fib_entropy, hessian_checks, max_scaled_log_coefficient, scaled_log_markov_number,
};
use markov_core::farey::fractions_up_to;
use markov_core::special::{binet_eval, eval_squares_f64, pell_numerators};
use markov_core::Engine;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn binet_matches_exact_evaluation() {
    let mut e = Engine::new();
    let seq = pell_numerators(&mut e, 12).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10 {
        let (x, y, z) = (rng.random_range(0.5..3.0), rng.random_range(0.5..3.0), rng.random_range(0.5..3.0));
        for k in 0..=12u32 {
            let exact = eval_squares_f64(seq.odd(k as usize), x, y, z);
            let rel = (binet_eval(k, x, y, z) - exact).abs() / exact;
            assert!(rel <= 1e-9, "k = {k} at ({x}, {y}, {z}): rel {rel}");
        }
    }
    assert!((binet_eval(2, 1.0, 1.0, 1.0) - 29.0).abs() < 1e-9);
}

#[test]
fn entropy_gap_shrinks() {
    let sizes = [50u64, 100, 200, 400, 800];
    for (xi, eta) in [(0.2, 0.2), (0.3, 0.4)] {
        let f = fib_entropy(xi, eta).unwrap();
        let gaps: Vec<f64> =
            sizes.iter().map(|&n| (empirical_entropy(n, xi, eta).unwrap().value - f).abs()).collect();
        assert!(gaps.windows(2).all(|w| w[1] < w[0]), "({xi}, {eta}): {gaps:?}");
        assert!(gaps[gaps.len() - 1] < 0.05, "({xi}, {eta}): {gaps:?}");
    }
}

#[test]
fn hessian_and_maximum() {
    let v = hessian_checks(20).unwrap();
    assert_eq!(v.points, 210);
    assert!(v.pass, "{v:?}");
}

#[test]
fn coefficient_growth_is_bounded() {
    let mut e = Engine::new();
    for f in fractions_up_to(40) {
        let m = e.markov_polynomial(f).unwrap();
        let (c, mk) = (max_scaled_log_coefficient(&m), scaled_log_markov_number(&m));
        let cap = 3f64.ln() * f.height() as f64 / f.den() as f64;
        assert!(c <= mk + 1e-12 && mk <= cap + 1e-12, "{f}: {c} {mk} {cap}");
    }
}
