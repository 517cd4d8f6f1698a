//! Golden-value reproduction table: published worked examples recomputed
//! from scratch, grouped by module so a group can be skipped.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analysis::{
    boundary_coefficient, boundary_coefficient_with, factor4_check, log_concavity_violation,
    predicted_polygon, predicted_slice, saturation_check, slice_values, BoundaryLine, CriticalTriangle,
    PredictedSlice, Row1Variant, SliceFamily,
};
use crate::binomial::ln_binom;
use crate::entropy::{fib_entropy, fib_entropy_peak, maximize_fib_entropy, shannon_h};
use crate::farey::{continued_fraction, mediant, Fraction};
use crate::geometry::{integer_length, Point};
use crate::laurent::LaurentPoly3;
use crate::polynomial::{poly, HomogPoly};
use crate::sails::{build_sail, duality_check};
use crate::special::{fib_coeff, fibonacci_markov_specialised, cz_fibonacci, pell_numerators, pell_sail_values};
use crate::topograph::{markov_polynomial, oracle_numerator, Engine, MarkovPolynomial};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Group {
    Farey,
    Polynomial,
    Topograph,
    Analysis,
    Special,
    Sails,
    Entropy,
}

impl Group {
    pub const ALL: [Group; 7] = [
        Group::Farey,
        Group::Polynomial,
        Group::Topograph,
        Group::Analysis,
        Group::Special,
        Group::Sails,
        Group::Entropy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Group::Farey => "farey",
            Group::Polynomial => "polynomial",
            Group::Topograph => "topograph",
            Group::Analysis => "analysis",
            Group::Special => "special",
            Group::Sails => "sails",
            Group::Entropy => "entropy",
        }
    }
}

impl FromStr for Group {
    type Err = Error;
    fn from_str(s: &str) -> crate::Result<Group> {
        Group::ALL
            .into_iter()
            .find(|g| g.name() == s.trim())
            .ok_or_else(|| Error::InvalidArgument(format!("unknown group '{s}'")))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SelftestOptions {
    /// Use the `(b - 2)` form of the `j = 1` row formula.
    pub row1_as_printed: bool,
    pub skip: Vec<Group>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelftestEntry {
    pub group: Group,
    pub name: &'static str,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

type Outcome = std::result::Result<(), String>;
type Case = fn(&SelftestOptions) -> Outcome;

fn fr(s: &str) -> Fraction {
    s.parse().expect("literal fraction")
}

fn mp(s: &str) -> std::result::Result<MarkovPolynomial, String> {
    markov_polynomial(fr(s)).map_err(|e| e.to_string())
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(got: T, want: T) -> Outcome {
    if got == want {
        Ok(())
    } else {
        Err(format!("got {got:?}, expected {want:?}"))
    }
}

fn big(xs: &[u64]) -> Vec<BigUint> {
    xs.iter().map(|&x| BigUint::from(x)).collect()
}

fn weights(m: &MarkovPolynomial) -> Vec<(i64, i64, u64)> {
    m.numerator
        .terms()
        .map(|(i, j, c)| (i as i64, j as i64, u64::try_from(c).unwrap_or(u64::MAX)))
        .collect()
}

fn sorted(mut v: Vec<(i64, i64, u64)>) -> Vec<(i64, i64, u64)> {
    v.sort();
    v
}

const FIG2: [(&str, u64); 17] = [
    ("0/1", 1),
    ("1/1", 2),
    ("1/2", 5),
    ("1/3", 13),
    ("2/3", 29),
    ("1/4", 34),
    ("1/5", 89),
    ("3/4", 169),
    ("2/5", 194),
    ("3/5", 433),
    ("4/5", 985),
    ("2/7", 1325),
    ("3/7", 2897),
    ("4/7", 6466),
    ("3/8", 7561),
    ("5/7", 14701),
    ("5/8", 37666),
];

fn cases() -> Vec<(Group, &'static str, Case)> {
    vec![
        (Group::Farey, "mediants of neighbours", |_| {
            let m1 = mediant(fr("1/2"), fr("1/1")).map_err(|e| e.to_string())?;
            let m2 = mediant(fr("1/2"), fr("1/3")).map_err(|e| e.to_string())?;
            expect_eq((m1, m2), (fr("2/3"), fr("2/5")))
        }),
        (Group::Farey, "continued fraction of 5/3", |_| {
            let cf = continued_fraction(fr("5/3")).map_err(|e| e.to_string())?;
            expect_eq(cf.quotients().to_vec(), vec![1, 1, 2])?;
            expect_eq(cf.convergent_fractions(), vec![fr("1/1"), fr("2/1"), fr("5/3")])
        }),
        (Group::Farey, "continued fraction of 18/13", |_| {
            let cf = continued_fraction(fr("18/13")).map_err(|e| e.to_string())?;
            expect_eq(cf.quotients().to_vec(), vec![1, 2, 1, 1, 2])?;
            expect_eq(
                cf.convergent_fractions(),
                ["1/1", "3/2", "4/3", "7/5", "18/13"].map(fr).to_vec(),
            )
        }),
        (Group::Polynomial, "numerator of 2/3 expanded", |_| {
            let want = poly(
                4,
                &[
                    (4, 0, 1),
                    (3, 1, 4),
                    (2, 2, 6),
                    (1, 3, 4),
                    (0, 4, 1),
                    (3, 0, 2),
                    (2, 1, 5),
                    (1, 2, 4),
                    (0, 3, 1),
                    (2, 0, 1),
                ],
            );
            let m = mp("2/3")?;
            expect_eq(&m.numerator, &want)?;
            expect_eq(m.numerator.eval_ones(), BigUint::from(29u32))
        }),
        (Group::Polynomial, "numerator of 1/2 is (u+v)^2 + uw", |_| {
            let upv = HomogPoly::u().add(&HomogPoly::v()).map_err(|e| e.to_string())?;
            let want = upv.mul(&upv).add(&HomogPoly::u().mul(&HomogPoly::w())).map_err(|e| e.to_string())?;
            let m = mp("1/2")?;
            expect_eq(&m.numerator, &want)?;
            expect_eq(m.numerator.eval_ones(), BigUint::from(5u32))
        }),
        (Group::Polynomial, "numerator of 1/5 sums to 89", |_| {
            expect_eq(mp("1/5")?.numerator.eval_ones(), BigUint::from(89u32))
        }),
        (Group::Topograph, "M_{1/1} and one Vieta move to M_{1/2}", |_| {
            let (x, y, z) = (LaurentPoly3::variable(0), LaurentPoly3::variable(1), LaurentPoly3::variable(2));
            let m11 = (&x.pow(2) + &y.pow(2)).exact_div(&z).map_err(|e| e.to_string())?;
            expect_eq(&mp("1/1")?.to_laurent(), &m11)?;
            let m12 = (&x.pow(2) + &m11.pow(2)).exact_div(&y).map_err(|e| e.to_string())?;
            expect_eq(&mp("1/2")?.to_laurent(), &m12)
        }),
        (Group::Topograph, "denominator exponents", |_| {
            expect_eq(
                [mp("1/1")?.denom_exponents, mp("0/1")?.denom_exponents, mp("2/3")?.denom_exponents],
                [[0, 0, 1], [-1, 0, 0], [1, 2, 4]],
            )
        }),
        (Group::Topograph, "Markov numbers on the topograph", |_| {
            let mut e = Engine::new();
            for (f, want) in FIG2 {
                let got = e.markov_number(fr(f)).map_err(|e| e.to_string())?;
                if got != BigUint::from(want) {
                    return Err(format!("{f}: got {got}, expected {want}"));
                }
            }
            Ok(())
        }),
        (Group::Topograph, "oracle agrees on 2/3 and 3/5", |_| {
            for f in ["2/3", "3/5"] {
                let o = oracle_numerator(fr(f)).map_err(|e| e.to_string())?;
                expect_eq(&o, &mp(f)?.numerator)?;
            }
            Ok(())
        }),
        (Group::Analysis, "Newton polygon of 2/3", |_| {
            let mut pts = predicted_polygon(fr("2/3")).lattice_points;
            pts.sort();
            let mut want: Vec<Point> =
                vec![(2, 0), (3, 0), (4, 0), (2, 1), (3, 1), (1, 2), (2, 2), (0, 3), (1, 3), (0, 4)];
            want.sort();
            expect_eq(pts, want)
        }),
        (Group::Analysis, "Newton polygon of 1/5 has 16 points", |_| {
            expect_eq(predicted_polygon(fr("1/5")).len(), 16)
        }),
        (Group::Analysis, "weighted polygon of 2/3", |_| {
            let want = vec![
                (4, 0, 1),
                (3, 1, 4),
                (2, 2, 6),
                (1, 3, 4),
                (0, 4, 1),
                (3, 0, 2),
                (2, 1, 5),
                (1, 2, 4),
                (0, 3, 1),
                (2, 0, 1),
            ];
            let m = mp("2/3")?;
            expect_eq(sorted(weights(&m)), sorted(want))?;
            expect_eq(saturation_check(&m).pass, true)
        }),
        (Group::Analysis, "weighted polygon of 1/5", |_| {
            let want = vec![
                (5, 0, 1),
                (4, 1, 5),
                (3, 2, 10),
                (2, 3, 10),
                (1, 4, 5),
                (0, 5, 1),
                (4, 0, 4),
                (3, 1, 12),
                (2, 2, 12),
                (1, 3, 4),
                (3, 0, 6),
                (2, 1, 9),
                (1, 2, 3),
                (2, 0, 4),
                (1, 1, 2),
                (1, 0, 1),
            ];
            expect_eq(sorted(weights(&mp("1/5")?)), sorted(want))
        }),
        (Group::Analysis, "slices of 2/3 and 1/5", |_| {
            let m = mp("2/3")?;
            expect_eq(slice_values(&m, SliceFamily::T, 0), big(&[1, 4, 6, 4, 1]))?;
            let r1: Vec<BigUint> = slice_values(&m, SliceFamily::R, 1).into_iter().filter(|c| c.bits() > 0).collect();
            expect_eq(r1, big(&[5, 4]))?;
            let s1: Vec<BigUint> =
                slice_values(&mp("1/5")?, SliceFamily::S, 1).into_iter().filter(|c| c.bits() > 0).collect();
            expect_eq(s1, big(&[1, 2, 3, 4, 5]))
        }),
        (Group::Analysis, "closed-form slices", |_| {
            let t0 = predicted_slice(fr("2/3"), PredictedSlice::T0).map_err(|e| e.to_string())?;
            let want: Vec<BigInt> = [1, 4, 6, 4, 1].map(BigInt::from).to_vec();
            expect_eq(t0, want)?;
            let s1 = predicted_slice(fr("1/5"), PredictedSlice::S1Special).map_err(|e| e.to_string())?;
            let s1: Vec<BigInt> = s1.into_iter().filter(|c| *c != BigInt::from(0)).collect();
            expect_eq(s1, [1, 2, 3, 4, 5].map(BigInt::from).to_vec())
        }),
        (Group::Analysis, "row j = 1 at (3, 1) for 2/3", |o| {
            let variant = if o.row1_as_printed { Row1Variant::AsPrinted } else { Row1Variant::Corrected };
            let got = boundary_coefficient_with(fr("2/3"), BoundaryLine::Row1, 3, variant).map_err(|e| e.to_string())?;
            expect_eq(got, BigInt::from(4))
        }),
        (Group::Analysis, "second diagonal at i = 2 for 2/3", |_| {
            let got = boundary_coefficient(fr("2/3"), BoundaryLine::Diag2, 2).map_err(|e| e.to_string())?;
            expect_eq(got, BigInt::from(5))
        }),
        (Group::Analysis, "bottom row at i = 3 for 1/5", |_| {
            let got = boundary_coefficient(fr("1/5"), BoundaryLine::Row0, 3).map_err(|e| e.to_string())?;
            expect_eq(got, BigInt::from(6))
        }),
        (Group::Analysis, "row j = 1 of 1/5 is log-concave", |_| {
            let row = big(&[2, 9, 12, 5]);
            expect_eq(log_concavity_violation(&row, false), None)?;
            let actual: Vec<BigUint> =
                slice_values(&mp("1/5")?, SliceFamily::R, 1).into_iter().filter(|c| c.bits() > 0).collect();
            expect_eq(actual, row)
        }),
        (Group::Analysis, "critical triangle of 2/3 holds a 4", |_| {
            expect_eq(CriticalTriangle::new(fr("2/3")).lattice_points, vec![(1, 2)])?;
            let v = factor4_check(&mp("2/3")?);
            expect_eq((v.pass, v.points_checked), (true, 1))?;
            expect_eq(mp("2/3")?.numerator.coeff(1, 2).clone(), BigUint::from(4u32))
        }),
        (Group::Analysis, "critical triangle of 1/n is empty", |_| {
            for n in 2..10 {
                expect_eq(factor4_check(&markov_polynomial(Fraction::new(1, n).expect("reduced")).map_err(|e| e.to_string())?).points_checked, 0)?;
            }
            Ok(())
        }),
        (Group::Special, "Fibonacci coefficients", |_| {
            expect_eq(
                [fib_coeff(4, 2, 1), fib_coeff(4, 1, 1), fib_coeff(1, 0, 2)],
                [9u32, 2, 1].map(BigUint::from),
            )
        }),
        (Group::Special, "cluster variables from Fibonacci polynomials", |_| {
            let mut e = Engine::new();
            for m in 0..=10 {
                let f = cz_fibonacci(m + 2).map_err(|e| e.to_string())?;
                let g = fibonacci_markov_specialised(&mut e, m).map_err(|e| e.to_string())?;
                if f != g {
                    return Err(format!("index {m}"));
                }
            }
            Ok(())
        }),
        (Group::Special, "Pell numerators", |_| {
            let mut e = Engine::new();
            let seq = pell_numerators(&mut e, 2).map_err(|e| e.to_string())?;
            expect_eq(seq.odd(1), &poly(2, &[(2, 0, 1), (1, 1, 2), (0, 2, 1), (1, 0, 1)]))?;
            expect_eq(seq.odd(2).eval_ones(), BigUint::from(29u32))
        }),
        (Group::Special, "sail values of 2/3", |_| {
            let v = pell_sail_values(&mut Engine::new(), 2).map_err(|e| e.to_string())?;
            expect_eq(v.values, vec!["4".to_string(), "4".into(), "5".into()])
        }),
        (Group::Sails, "sail vertices of 13/18", |_| {
            let s = build_sail(fr("13/18")).map_err(|e| e.to_string())?;
            let a: Vec<Point> = s.a_vertices.iter().map(|v| v.point).collect();
            let b: Vec<Point> = s.b_vertices.iter().map(|v| v.point).collect();
            expect_eq((a, b), (vec![(1, 18), (1, 17), (3, 14)], vec![(13, 1), (11, 3), (8, 7)]))
        }),
        (Group::Sails, "sail vertices of 3/5", |_| {
            let s = build_sail(fr("3/5")).map_err(|e| e.to_string())?;
            let a: Vec<Point> = s.a_vertices.iter().map(|v| v.point).collect();
            let b: Vec<Point> = s.b_vertices.iter().map(|v| v.point).collect();
            expect_eq((a, b), (vec![(1, 5), (1, 4)], vec![(3, 1), (2, 2)]))
        }),
        (Group::Sails, "sail of 1/n is empty", |_| {
            expect_eq(build_sail(fr("1/7")).map_err(|e| e.to_string())?.is_empty(), true)
        }),
        (Group::Sails, "integer lengths on the sail of 13/18", |_| {
            expect_eq([integer_length((13, 1), (11, 3)), integer_length((11, 3), (8, 7))], [2, 1])
        }),
        (Group::Sails, "M-values on the sail of 13/18", |_| {
            let r = duality_check(&mp("13/18")?).map_err(|e| e.to_string())?;
            let val = |name: &str| r.vertex_values.iter().find(|v| v.0 == name).and_then(|v| v.2.clone());
            let mid = r.segments.iter().find(|s| s.name == "B_0B_1").and_then(|s| s.m_values[1].clone());
            expect_eq(
                [val("B_2"), val("A_2"), val("B_1"), val("A_1"), mid],
                ["4", "8", "12", "20", "32"].map(|s| Some(s.to_string())),
            )?;
            expect_eq((r.duality_verdict(), r.location_verdict()), (true, true))
        }),
        (Group::Sails, "location of 4 for 2/3", |_| {
            let r = duality_check(&mp("2/3")?).map_err(|e| e.to_string())?;
            let l = r.location_of_four.ok_or("no location entry")?;
            expect_eq((l.point, l.value), ((1, 2), Some("4".to_string())))
        }),
        (Group::Sails, "sails of n/(n+1) step by 4", |_| {
            let mut e = Engine::new();
            for n in 2..8 {
                let m = e.markov_polynomial(Fraction::new(n, n + 1).expect("reduced")).map_err(|e| e.to_string())?;
                let r = duality_check(&m).map_err(|e| e.to_string())?;
                if r.segments.iter().filter_map(|s| s.difference.as_deref()).any(|d| d != "-4") {
                    return Err(format!("{n}/{}", n + 1));
                }
            }
            Ok(())
        }),
        (Group::Entropy, "maximum of the Fibonacci entropy", |_| {
            let p = fib_entropy_peak();
            let m = maximize_fib_entropy();
            let err = (m.xi - p.xi).abs().max((m.eta - p.eta).abs());
            if err > 1e-6 || (m.value - 2.0 * ((1.0 + 5f64.sqrt()) / 2.0).ln()).abs() > 1e-9 {
                return Err(format!("{m:?}"));
            }
            Ok(())
        }),
        (Group::Entropy, "entropy symmetry", |_| {
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            for _ in 0..100 {
                let xi: f64 = rng.random_range(0.01..0.98);
                let eta: f64 = rng.random_range(0.005..(1.0 - xi - 0.005));
                let a = fib_entropy(xi, eta).map_err(|e| e.to_string())?;
                let b = fib_entropy(xi, 1.0 - xi - eta).map_err(|e| e.to_string())?;
                if (a - b).abs() > 1e-12 {
                    return Err(format!("({xi}, {eta}): {a} vs {b}"));
                }
            }
            Ok(())
        }),
        (Group::Entropy, "binomial entropy limit", |_| {
            let v = ln_binom(500.0, 150.0) / 500.0;
            let h = shannon_h(0.3).map_err(|e| e.to_string())?;
            if (v - h).abs() < 0.05 {
                Ok(())
            } else {
                Err(format!("{v} vs {h}"))
            }
        }),
    ]
}

pub fn run_selftest(options: &SelftestOptions) -> Vec<SelftestEntry> {
    cases()
        .into_iter()
        .map(|(group, name, case)| {
            if options.skip.contains(&group) {
                return SelftestEntry { group, name, status: Status::Skipped, detail: None };
            }
            match case(options) {
                Ok(()) => SelftestEntry { group, name, status: Status::Pass, detail: None },
                Err(d) => SelftestEntry { group, name, status: Status::Fail, detail: Some(d) },
            }
        })
        .collect()
}

/// Plain-text table, one line per entry, with a closing count line.
pub fn render_table(entries: &[SelftestEntry]) -> String {
    let mut s = String::new();
    for e in entries {
        let status = match e.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        write!(s, "{status:<5} {:<11} {}", e.group.name(), e.name).expect("write to string");
        if let Some(d) = &e.detail {
            write!(s, "  ({d})").expect("write to string");
        }
        s.push('\n');
    }
    let count = |st: Status| entries.iter().filter(|e| e.status == st).count();
    writeln!(
        s,
        "{} passed, {} failed, {} skipped",
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Skipped)
    )
    .expect("write to string");
    s
}
