//! Proven statements about the coefficients, checked over desk-scale ranges.
//! A failure here is a defect in the engine, not mathematical news.

use markov_core::analysis::{
    boundary_coefficient, boundary_indices, boundary_point, compare_predicted_line, log_concavity_check,
    log_concavity_on_line, predicted_polygon, saturation_check, support_hull_check, BoundaryLine, Direction,
    PredictedSlice,
};
use markov_core::farey::fractions_up_to;
use markov_core::special::{
    fib_coeff, fib_numerator, fibonacci_vieta_check, mar_pell2_check, pell_coeff_recurrence_check,
    pell_numerators, pell_sail_values,
};
use markov_core::{Engine, Error, Fraction};
use num_bigint::{BigInt, BigUint};

fn fractions(max_sum: u64) -> impl Iterator<Item = Fraction> {
    fractions_up_to(max_sum).into_iter()
}

#[test]
fn numerator_structure() {
    let mut e = Engine::new();
    for f in fractions(40) {
        let m = e.markov_polynomial(f).unwrap();
        assert_eq!(m.numerator.degree() as u64, f.height() - 1, "{f}");
        assert!(!m.numerator.has_monomial_factor(), "{f}");
        m.numerator.audit().unwrap();
    }
}

#[test]
fn newton_polygon_is_support_hull() {
    let mut e = Engine::new();
    for f in fractions(30) {
        assert!(support_hull_check(&e.markov_polynomial(f).unwrap()), "{f}");
    }
}

#[test]
fn closed_form_slices() {
    let mut e = Engine::new();
    let mut compared = [0usize; 6];
    for f in fractions(30) {
        let m = e.markov_polynomial(f).unwrap();
        for (slot, which) in PredictedSlice::ALL_GENERAL.into_iter().enumerate() {
            match compare_predicted_line(&m, which) {
                Ok(None) => compared[slot] += 1,
                Ok(Some(bad)) => panic!("{f} {which:?}: {bad:?}"),
                Err(Error::Undefined { .. }) => {}
                Err(other) => panic!("{f} {which:?}: {other}"),
            }
        }
    }
    // every slice formula must be exercised, not just skipped as undefined
    assert!(compared.iter().all(|&c| c > 20), "{compared:?}");
}

#[test]
fn boundary_formulas() {
    let mut e = Engine::new();
    for f in fractions(30) {
        let m = e.markov_polynomial(f).unwrap();
        for which in BoundaryLine::ALL {
            for t in boundary_indices(f, which) {
                let (i, j) = boundary_point(f, which, t);
                match boundary_coefficient(f, which, t) {
                    Ok(c) => assert_eq!(c, BigInt::from(m.numerator.coeff(i, j).clone()), "{f} {which:?} ({i},{j})"),
                    Err(Error::Undefined { .. }) => {}
                    Err(other) => panic!("{f} {which:?}: {other}"),
                }
            }
        }
    }
}

#[test]
fn second_column_of_special_families() {
    let mut e = Engine::new();
    for n in 1..=15u64 {
        for f in [Fraction::new(1, n).unwrap(), Fraction::new(2, 2 * n + 1).unwrap()] {
            let m = e.markov_polynomial(f).unwrap();
            assert_eq!(compare_predicted_line(&m, PredictedSlice::S1Special).unwrap(), None, "{f}");
        }
    }
}

#[test]
fn fibonacci_grids() {
    let mut e = Engine::new();
    for n in 0..=20u64 {
        let f = Fraction::new(1, n + 1).unwrap();
        assert_eq!(*e.numerator(f).unwrap(), fib_numerator(n), "1/{}", n + 1);
    }
}

#[test]
fn fibonacci_saturation() {
    for n in 0..=40u64 {
        let f = Fraction::new(1, n + 1).unwrap();
        for (i, j) in predicted_polygon(f).lattice_points {
            assert!(fib_coeff(n, i, j) > BigUint::ZERO, "1/{} at ({i},{j})", n + 1);
        }
    }
}

#[test]
fn fibonacci_polynomials_are_log_concave_and_saturated() {
    let mut e = Engine::new();
    for n in 1..=40u64 {
        let m = e.markov_polynomial(Fraction::new(1, n).unwrap()).unwrap();
        assert!(log_concavity_check(&m).pass, "1/{n}");
        assert!(saturation_check(&m).pass, "1/{n}");
    }
}

#[test]
fn strict_log_concavity_near_the_boundary() {
    let mut e = Engine::new();
    for f in fractions(40) {
        let m = e.markov_polynomial(f).unwrap();
        let d = f.height() as i64 - 1;
        assert_eq!(log_concavity_on_line(&m, Direction::Row, 1, true), None, "{f} row 1");
        assert_eq!(log_concavity_on_line(&m, Direction::Diagonal, d - 1, true), None, "{f} diagonal");
    }
}

#[test]
fn third_diagonal_log_concave_up_to_three_fifths() {
    let mut e = Engine::new();
    for f in fractions(40).filter(|f| 5 * f.num() <= 3 * f.den()) {
        let m = e.markov_polynomial(f).unwrap();
        let d = f.height() as i64 - 1;
        assert_eq!(log_concavity_on_line(&m, Direction::Diagonal, d - 2, false), None, "{f}");
    }
}

#[test]
fn pell_family() {
    let mut e = Engine::new();
    pell_numerators(&mut e, 15).unwrap();
    assert_eq!(mar_pell2_check(&mut e, 10).unwrap(), None);
    let v = pell_coeff_recurrence_check(&mut e, 10).unwrap();
    assert!(v.pass, "{v:?}");
}

#[test]
fn pell_sail_lists() {
    let mut e = Engine::new();
    for n in 2..=15 {
        let v = pell_sail_values(&mut e, n).unwrap();
        assert!(v.pass, "{v:?}");
    }
}

#[test]
fn fibonacci_vieta_relation() {
    assert_eq!(fibonacci_vieta_check(&mut Engine::new(), 15).unwrap(), None);
}
