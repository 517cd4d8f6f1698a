//! Randomised invariants.

use markov_core::analysis::log_concavity_violation;
use markov_core::binomial::binom;
use markov_core::entropy::fib_entropy;
use markov_core::farey::{continued_fraction, descent_path, fractions_up_to};
use markov_core::HomogPoly;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use proptest::prelude::*;

fn homog(max_degree: u32) -> impl Strategy<Value = HomogPoly> {
    (0..=max_degree).prop_flat_map(|d| {
        prop::collection::vec((0..=d, 0..=d, 0u32..=100), 0..12).prop_map(move |ts| {
            let terms = ts.into_iter().map(|(i, j, c)| (i.min(d), j.min(d - i.min(d)), BigUint::from(c)));
            HomogPoly::from_terms(d, terms).unwrap()
        })
    })
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-50i64..=50, 1i64..=20).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

proptest! {
    #[test]
    fn multiplication_commutes(p in homog(8), q in homog(8)) {
        prop_assert_eq!(p.mul(&q), q.mul(&p));
    }

    #[test]
    fn multiplication_associates(p in homog(5), q in homog(5), r in homog(5)) {
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
    }

    #[test]
    fn evaluation_is_a_ring_morphism(p in homog(6), q in homog(6), u in rational(), v in rational(), w in rational()) {
        prop_assert_eq!(
            p.mul(&q).eval_rational(&u, &v, &w),
            p.eval_rational(&u, &v, &w) * q.eval_rational(&u, &v, &w)
        );
        if p.degree() == q.degree() {
            prop_assert_eq!(
                p.add(&q).unwrap().eval_rational(&u, &v, &w),
                p.eval_rational(&u, &v, &w) + q.eval_rational(&u, &v, &w)
            );
        }
    }

    #[test]
    fn shifted_binomial_sums_are_log_concave(a in 1u64..1000, b in 1u64..1000, c in 0i64..40) {
        let xs: Vec<BigUint> =
            (0..=c + 1).map(|k| a * binom(c, k) + b * binom(c, k - 1)).collect();
        prop_assert_eq!(log_concavity_violation(&xs, false), None);
    }

    #[test]
    fn entropy_is_symmetric(xi in 0.001f64..0.999, t in 0.001f64..0.999) {
        let eta = (1.0 - xi) * t;
        let (lhs, rhs) = (fib_entropy(xi, eta).unwrap(), fib_entropy(xi, 1.0 - xi - eta).unwrap());
        prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(1.0), "{lhs} vs {rhs}");
    }
}

#[test]
fn descent_depth_is_quotient_sum() {
    for f in fractions_up_to(40) {
        let path = descent_path(f).unwrap();
        let cf = continued_fraction(f.reciprocal()).unwrap();
        assert_eq!(path.len() as u64, cf.quotients().iter().sum::<u64>(), "{f}");
        assert_eq!(cf.value(), f.reciprocal(), "{f}");
        for step in &path {
            assert!(step.left.is_neighbour(step.right), "{f}");
        }
    }
}
