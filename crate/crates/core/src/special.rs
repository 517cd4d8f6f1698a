//! The Fibonacci family `M_{1/n}` and the Pell family `M_{n/(n+1)}`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::binomial::binom;
use crate::farey::Fraction;
use crate::geometry::Point;
use crate::laurent::{LaurentPoly2, LaurentPoly3};
use crate::polynomial::{rational_to_f64, HomogPoly};
use crate::topograph::{Engine, MarkovPolynomial};
use crate::{Error, Result};

/// `F_0 .. F_n` with `F_0 = 0, F_1 = 1`.
pub fn fibonacci(n: usize) -> Vec<BigUint> {
    linear_sequence(n, 1u32)
}

/// `P_0 .. P_n` with `P_0 = 0, P_1 = 1, P_{k+1} = 2 P_k + P_{k-1}`.
pub fn pell(n: usize) -> Vec<BigUint> {
    linear_sequence(n, 2u32)
}

fn linear_sequence(n: usize, factor: u32) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(), BigUint::one()];
    while out.len() <= n {
        let k = out.len();
        let next = &out[k - 1] * factor + &out[k - 2];
        out.push(next);
    }
    out.truncate(n + 1);
    out
}

/// `C(n - j, n + 1 - i - j) C(i + j, j)`: the coefficient of
/// `u^i v^j w^(n+1-i-j)` in the numerator of `M_{1/(n+1)}`.
pub fn fib_coeff(n: u64, i: i64, j: i64) -> BigUint {
    let n = n as i64;
    binom(n - j, n + 1 - i - j) * binom(i + j, j)
}

/// The whole numerator of `M_{1/(n+1)}` from [`fib_coeff`].
pub fn fib_numerator(n: u64) -> HomogPoly {
    let d = n as u32 + 1;
    let terms = (0..=d).flat_map(|i| (0..=d - i).map(move |j| (i, j))).filter_map(|(i, j)| {
        let c = fib_coeff(n, i as i64, j as i64);
        (!c.is_zero()).then_some((i, j, c))
    });
    HomogPoly::from_terms(d, terms).expect("exponents within degree")
}

/// Cluster variable `f_m` of the `A_1^(1)` recurrence
/// `f_{m+1} f_{m-1} = f_m^2 + 1` with `f_1 = x_1`, `f_2 = x_2`.
///
/// For `m >= 3` this is the double-sum closed form with `n = m - 3`:
///
/// ```text
/// f_{n+3} = (x_2^(2n+2) + sum_{q+r<=n} C(n-r, q) C(n+1-q, r) x_1^(2q) x_2^(2r)) / (x_1^(n+1) x_2^n)
/// ```
pub fn cz_fibonacci(m: u64) -> Result<LaurentPoly2> {
    match m {
        0 => Err(Error::InvalidArgument("cluster variables are indexed from 1".into())),
        1 => Ok(LaurentPoly2::variable(0)),
        2 => Ok(LaurentPoly2::variable(1)),
        _ => {
            let n = (m - 3) as i64;
            let mut f = LaurentPoly2::monomial([0, 2 * n as i32 + 2], 1);
            for q in 0..=n {
                for r in 0..=(n - q) {
                    let c = binom(n - r, q) * binom(n + 1 - q, r);
                    f = &f + &LaurentPoly2::monomial([2 * q as i32, 2 * r as i32], BigInt::from(c));
                }
            }
            Ok(f.mul_monomial([-(n as i32) - 1, -(n as i32)]))
        }
    }
}

/// `f_1 .. f_{m_max}` by the recurrence itself, as an independent reference.
pub fn cz_recurrence(m_max: u64) -> Result<Vec<LaurentPoly2>> {
    let mut fs = vec![LaurentPoly2::variable(0), LaurentPoly2::variable(1)];
    while (fs.len() as u64) < m_max {
        let k = fs.len();
        let num = &(&fs[k - 1] * &fs[k - 1]) + &LaurentPoly2::one();
        fs.push(num.exact_div(&fs[k - 2])?);
    }
    fs.truncate(m_max as usize);
    Ok(fs)
}

/// `M_{1/m}(1, x_2, x_1)`: the Fibonacci Markov polynomial with `x = 1`,
/// `y = x_2`, `z = x_1`.
pub fn fibonacci_markov_specialised(engine: &mut Engine, m: u64) -> Result<LaurentPoly2> {
    let f = if m == 0 { Fraction::INFINITY } else { Fraction::new(1, m)? };
    let p = engine.numerator(f)?;
    let mp = MarkovPolynomial {
        rho: f,
        numerator: (*p).clone(),
        denom_exponents: [0, m as i64 - 1, m as i64],
    };
    Ok(mp.to_laurent().project([None, Some(1), Some(0)]))
}

/// Checks `M_{1/(k+1)} M_{1/(k-1)} = M_{1/k}^2 + x^2` for `1 <= k <= k_max`,
/// with `M_{1/0} = y`.
pub fn fibonacci_vieta_check(engine: &mut Engine, k_max: u64) -> Result<Option<u64>> {
    let laurent = |engine: &mut Engine, k: u64| -> Result<LaurentPoly3> {
        if k == 0 {
            return Ok(LaurentPoly3::variable(1));
        }
        Ok(engine.markov_polynomial(Fraction::new(1, k)?)?.to_laurent())
    };
    let x2 = LaurentPoly3::monomial([2, 0, 0], 1);
    for k in 1..=k_max {
        let prev = laurent(engine, k - 1)?;
        let cur = laurent(engine, k)?;
        let next = laurent(engine, k + 1)?;
        if &next * &prev != &(&cur * &cur) + &x2 {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// `R_0 .. R_{2 k_max + 1}` in `u = x^2, v = y^2, w = z^2`.
///
/// `R_0 = 0` has no degree; it is stored as the degree-0 zero polynomial and
/// only `R_2 = u + v` would use it, so `R_2` is seeded directly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PellPolySequence {
    pub r: Vec<HomogPoly>,
}

impl PellPolySequence {
    pub fn odd(&self, k: usize) -> &HomogPoly {
        &self.r[2 * k + 1]
    }
}

/// Builds the Pell sequence and asserts `R_{2k+1} = P_{k/(k+1)}` for `k <= k_max`.
pub fn pell_numerators(engine: &mut Engine, k_max: usize) -> Result<PellPolySequence> {
    if k_max == 0 {
        return Err(Error::InvalidArgument("k_max must be at least 1".into()));
    }
    let u_plus_v = HomogPoly::u().add(&HomogPoly::v())?;
    let mut r = vec![HomogPoly::zero(0), HomogPoly::one(), u_plus_v.clone()];
    for m in 3..=(2 * k_max + 1) {
        let shift = if m % 2 == 1 { (1, 0) } else { (0, 1) };
        let next = u_plus_v.mul(&r[m - 1]).add(&r[m - 2].mul_monomial(shift.0, shift.1, 1))?;
        r.push(next);
    }
    let seq = PellPolySequence { r };
    for k in 0..=k_max {
        let f = Fraction::new(k as u64, k as u64 + 1)?;
        if *engine.numerator(f)? != *seq.odd(k) {
            return Err(Error::Mismatch(format!("R_{} differs from the numerator of {f}", 2 * k + 1)));
        }
    }
    Ok(seq)
}

/// `R_{2k+1} = (u+v)(u+v+w) R_{2k-1} - u v w^2 R_{2k-3}` for `2 <= k <= k_max`,
/// on engine numerators. Returns the first failing `k`.
pub fn mar_pell2_check(engine: &mut Engine, k_max: u64) -> Result<Option<u64>> {
    let u_plus_v = HomogPoly::u().add(&HomogPoly::v())?;
    let factor = u_plus_v.mul_uvw();
    for k in 2..=k_max {
        let p = |engine: &mut Engine, k: u64| engine.numerator(Fraction::new(k, k + 1).expect("reduced"));
        let r = p(engine, k)?;
        let r1 = p(engine, k - 1)?;
        let r2 = p(engine, k - 2)?;
        let rhs = factor.mul(&r1).sub_in(&r2.mul_monomial(1, 1, 2), "Pell recurrence");
        if rhs.as_ref() != Ok(&*r) {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Coefficientwise form of the two-step Pell recurrence on three consecutive
/// odd grids. Returns the first `(i, j)` where it fails.
pub fn pell_coeff_recurrence(next: &HomogPoly, prev: &HomogPoly, prev2: &HomogPoly) -> Option<Point> {
    let d = next.degree() as i64;
    for i in 0..=d + 1 {
        for j in 0..=d + 1 - i {
            let a = |i: i64, j: i64| BigInt::from(prev.coeff(i, j).clone());
            let rhs = a(i - 2, j) + a(i - 1, j - 1) * 2 + a(i, j - 2) + a(i - 1, j) + a(i, j - 1)
                - BigInt::from(prev2.coeff(i - 1, j - 1).clone());
            if BigInt::from(next.coeff(i, j).clone()) != rhs {
                return Some((i, j));
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoeffRecurrenceVerdict {
    pub pass: bool,
    pub k_checked: u64,
    /// `(k, i, j)` of the first failure.
    pub first_failure: Option<(u64, i64, i64)>,
}

pub fn pell_coeff_recurrence_check(engine: &mut Engine, k_max: u64) -> Result<CoeffRecurrenceVerdict> {
    if k_max < 2 {
        return Err(Error::InvalidArgument("k_max must be at least 2".into()));
    }
    for k in 2..=k_max {
        let p = |engine: &mut Engine, k: u64| engine.numerator(Fraction::new(k, k + 1).expect("reduced"));
        let (r, r1, r2) = (p(engine, k)?, p(engine, k - 1)?, p(engine, k - 2)?);
        if let Some((i, j)) = pell_coeff_recurrence(&r, &r1, &r2) {
            return Ok(CoeffRecurrenceVerdict { pass: false, k_checked: k - 1, first_failure: Some((k, i, j)) });
        }
    }
    Ok(CoeffRecurrenceVerdict { pass: true, k_checked: k_max - 1, first_failure: None })
}

/// Binet-type closed form for `R_{2k+1}(x, y, z)` through the eigenvalues of
/// the two-step transfer matrix.
pub fn binet_eval(k: u32, x: f64, y: f64, z: f64) -> f64 {
    let (u, v, w) = (x * x, y * y, z * z);
    let s = u + v;
    let trace = s * (s + w);
    let det = u * v * w * w;
    let disc = s.powi(4) + 2.0 * w * s.powi(3) + w * w * (u - v).powi(2);
    let root = disc.sqrt();
    let l1 = 0.5 * (trace + root);
    // product of the roots is det; avoids cancellation in the small root
    let l2 = det / l1;
    (l1 - v * w) / root * (l1.powi(k as i32) - l2.powi(k as i32)) + l2.powi(k as i32)
}

/// `P(x^2, y^2, z^2)` evaluated exactly at the binary values of the inputs,
/// rounded once.
pub fn eval_squares_f64(p: &HomogPoly, x: f64, y: f64, z: f64) -> f64 {
    let sq = |t: f64| {
        let r = BigRational::from_float(t).expect("finite input");
        &r * &r
    };
    rational_to_f64(&p.eval_rational(&sq(x), &sq(y), &sq(z)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PellSailValues {
    pub n: u64,
    pub points: Vec<Point>,
    pub values: Vec<String>,
    pub expected: Vec<u64>,
    pub pass: bool,
}

/// Reads `A_{1,n+1}`, `A_{m,n+1-m}` (`m = 1..n-1`) and `A_{n,1}` from the
/// numerator of `n/(n+1)` and compares with `7n - 10, 4m, 3n - 1`.
pub fn pell_sail_values(engine: &mut Engine, n: u64) -> Result<PellSailValues> {
    if n < 2 {
        return Err(Error::InvalidArgument("n must be at least 2".into()));
    }
    let p = engine.numerator(Fraction::new(n, n + 1)?)?;
    let ni = n as i64;
    let mut points = vec![(1, ni + 1)];
    let mut expected = vec![7 * n - 10];
    for m in 1..ni {
        points.push((m, ni + 1 - m));
        expected.push(4 * m as u64);
    }
    points.push((ni, 1));
    expected.push(3 * n - 1);
    let values: Vec<BigUint> = points.iter().map(|&(i, j)| p.coeff(i, j).clone()).collect();
    let pass = values.iter().zip(&expected).all(|(v, &e)| *v == BigUint::from(e));
    Ok(PellSailValues { n, points, values: values.iter().map(|v| v.to_string()).collect(), expected, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::poly;

    #[test]
    fn integer_sequences() {
        let f: Vec<u64> = fibonacci(10).iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(f, [0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55]);
        let p: Vec<u64> = pell(7).iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(p, [0, 1, 2, 5, 12, 29, 70, 169]);
    }

    #[test]
    fn fib_coeff_examples() {
        assert_eq!(fib_coeff(4, 2, 1), BigUint::from(9u32));
        assert_eq!(fib_coeff(4, 1, 1), BigUint::from(2u32));
        assert_eq!(fib_coeff(1, 0, 2), BigUint::from(1u32));
        // indexing pinned by M_{1/2}
        assert_eq!(fib_numerator(1), poly(2, &[(2, 0, 1), (1, 1, 2), (0, 2, 1), (1, 0, 1)]));
    }

    #[test]
    fn cluster_variables() {
        let f3 = cz_fibonacci(3).unwrap();
        let expected = (&LaurentPoly2::monomial([0, 2], 1) + &LaurentPoly2::one()).mul_monomial([-1, 0]);
        assert_eq!(f3, expected);
        let one = [BigRational::one(), BigRational::one()];
        assert_eq!(cz_fibonacci(4).unwrap().eval(&one), BigRational::from_integer(5.into()));
        let rec = cz_recurrence(12).unwrap();
        for m in 1..=12 {
            assert_eq!(cz_fibonacci(m).unwrap(), rec[m as usize - 1], "f_{m}");
        }
    }

    #[test]
    fn cluster_variables_are_specialised_fibonacci_markov() {
        let mut e = Engine::new();
        let rec = cz_recurrence(12).unwrap();
        for m in 0..=10u64 {
            let spec = fibonacci_markov_specialised(&mut e, m).unwrap();
            assert_eq!(spec, rec[m as usize + 1], "m = {m}");
        }
    }

    #[test]
    fn squared_vieta_form() {
        let mut e = Engine::new();
        assert_eq!(fibonacci_vieta_check(&mut e, 8).unwrap(), None);
    }

    #[test]
    fn pell_sequence() {
        let mut e = Engine::new();
        let s = pell_numerators(&mut e, 6).unwrap();
        assert_eq!(*s.odd(1), poly(2, &[(2, 0, 1), (1, 1, 2), (0, 2, 1), (1, 0, 1)]));
        assert_eq!(s.odd(2).eval_ones(), BigUint::from(29u32));
        assert_eq!(mar_pell2_check(&mut e, 8).unwrap(), None);
        assert!(pell_coeff_recurrence_check(&mut e, 8).unwrap().pass);
    }

    #[test]
    fn perturbed_grid_breaks_coefficient_recurrence() {
        let mut e = Engine::new();
        let p = |e: &mut Engine, k: u64| (*e.numerator(Fraction::new(k, k + 1).unwrap()).unwrap()).clone();
        let (mut r, r1, r2) = (p(&mut e, 3), p(&mut e, 2), p(&mut e, 1));
        assert_eq!(pell_coeff_recurrence(&r, &r1, &r2), None);
        let c = r.coeff(2, 2) + 1u32;
        r.set_coeff(2, 2, c).unwrap();
        assert_eq!(pell_coeff_recurrence(&r, &r1, &r2), Some((2, 2)));
    }

    #[test]
    fn binet_small_cases() {
        assert!((binet_eval(1, 1.0, 1.0, 1.0) - 5.0).abs() < 1e-12);
        assert!((binet_eval(2, 1.0, 1.0, 1.0) - 29.0).abs() < 29.0 * 1e-12);
        let mut e = Engine::new();
        let s = pell_numerators(&mut e, 5).unwrap();
        let exact = eval_squares_f64(s.odd(5), 1.5, 2.0, 0.7);
        assert!((binet_eval(5, 1.5, 2.0, 0.7) - exact).abs() / exact < 1e-9);
    }

    #[test]
    fn pell_sail_examples() {
        let mut e = Engine::new();
        let v = pell_sail_values(&mut e, 2).unwrap();
        assert_eq!(v.values, ["4", "4", "5"]);
        assert!(v.pass);
        let v = pell_sail_values(&mut e, 3).unwrap();
        assert_eq!(v.values, ["11", "4", "8", "8"]);
        let v = pell_sail_values(&mut e, 5).unwrap();
        assert_eq!(v.values, ["25", "4", "8", "12", "16", "14"]);
    }
}
