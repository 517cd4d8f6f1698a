//! The Markov polynomial engine.
//!
//! Numerators are built along the Stern–Brocot descent with
//!
//! ```text
//! P_t = (u + v + w) P_S P_B - u^c v^d w^(c+d) P_g,   S = c/d,
//! ```
//!
//! where `B` is the newest endpoint of the interval whose mediant is `t`,
//! `S` the older one and `g = B - S` the value `B` displaced. The oracle
//! recomputes the same objects by Vieta moves on Laurent polynomials.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigUint;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::farey::{descent_any, mediant, Fraction};
use crate::laurent::{rational_pow, LaurentPoly3};
use crate::polynomial::HomogPoly;
use crate::{Error, Result};

/// Default `a + b` bound for [`oracle_numerator`].
pub const ORACLE_BOUND: u64 = 20;

/// `M_{a/b} = P(x^2, y^2, z^2) / (x^(a-1) y^(b-1) z^(a+b-1))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkovPolynomial {
    pub rho: Fraction,
    #[serde(flatten)]
    pub numerator: HomogPoly,
    #[serde(rename = "denom")]
    pub denom_exponents: [i64; 3],
}

fn denominator_of(rho: Fraction) -> [i64; 3] {
    let (a, b) = (rho.num() as i64, rho.den() as i64);
    [a - 1, b - 1, a + b - 1]
}

impl MarkovPolynomial {
    /// Wraps a numerator, checking degree and the absence of a monomial factor.
    pub fn new(rho: Fraction, numerator: HomogPoly) -> Result<Self> {
        let expected = (rho.height() - 1) as u32;
        if numerator.degree() != expected {
            return Err(Error::DegreeMismatch(numerator.degree(), expected));
        }
        if numerator.is_zero() || numerator.has_monomial_factor() {
            return Err(Error::Mismatch(format!("numerator of {rho} has a monomial factor")));
        }
        Ok(MarkovPolynomial { rho, numerator, denom_exponents: denominator_of(rho) })
    }

    pub fn a(&self) -> u64 {
        self.rho.num()
    }

    pub fn b(&self) -> u64 {
        self.rho.den()
    }

    pub fn markov_number(&self) -> BigUint {
        self.numerator.eval_ones()
    }

    /// The full Laurent polynomial in `x, y, z`.
    pub fn to_laurent(&self) -> LaurentPoly3 {
        let d = self.numerator.degree() as i64;
        let [ea, eb, ec] = self.denom_exponents;
        let mut out = LaurentPoly3::zero();
        for (i, j, c) in self.numerator.terms() {
            let (i, j) = (i as i64, j as i64);
            let e = [2 * i - ea, 2 * j - eb, 2 * (d - i - j) - ec].map(|t| t as i32);
            out = &out + &LaurentPoly3::monomial(e, num_bigint::BigInt::from(c.clone()));
        }
        out
    }

    /// Exact value at a rational point `(x, y, z)`.
    pub fn eval(&self, x: &BigRational, y: &BigRational, z: &BigRational) -> BigRational {
        let p = self.numerator.eval_rational(&(x * x), &(y * y), &(z * z));
        let [ea, eb, ec] = self.denom_exponents.map(|e| e as i32);
        p / (rational_pow(x, ea) * rational_pow(y, eb) * rational_pow(z, ec))
    }
}

/// Memoising numerator builder. One engine per worker; results do not depend
/// on what the cache already holds.
#[derive(Default, Clone)]
pub struct Engine {
    cache: HashMap<Fraction, Arc<HomogPoly>>,
}

fn base_case(f: Fraction) -> Option<HomogPoly> {
    if f == Fraction::ZERO || f == Fraction::INFINITY {
        Some(HomogPoly::one())
    } else if f == Fraction::ONE {
        Some(HomogPoly::u().add(&HomogPoly::v()).expect("same degree"))
    } else {
        None
    }
}

impl Engine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cache_len(&self) -> usize {
        self.cache.len()
    }

    pub fn clear(&mut self) {
        self.cache.clear();
    }

    /// Numerator `P_f` for `f` in `[0, 1]` or `f = 1/0`.
    pub fn numerator(&mut self, f: Fraction) -> Result<Arc<HomogPoly>> {
        if !(f.in_unit_interval() || f.is_infinite()) {
            return Err(Error::OutOfRange { value: f, expected: "[0, 1] or 1/0" });
        }
        self.numerator_unrestricted(f)
    }

    /// Numerator for any reduced `f >= 0`, including `f > 1`, by the same
    /// recursion. Used to cross-check the `u <-> v` symmetry.
    pub fn numerator_unrestricted(&mut self, f: Fraction) -> Result<Arc<HomogPoly>> {
        if let Some(p) = self.cache.get(&f) {
            return Ok(p.clone());
        }
        if let Some(p) = base_case(f) {
            let p = Arc::new(p);
            self.cache.insert(f, p.clone());
            return Ok(p);
        }
        let path = descent_any(f)?;
        for step in path {
            let t = step.mediant();
            if self.cache.contains_key(&t) {
                continue;
            }
            let Some(newest) = step.newest else {
                let p = base_case(t).expect("root mediant is 1/1");
                self.cache.insert(t, Arc::new(p));
                continue;
            };
            let big = step.newest_endpoint().expect("non-root step");
            let small = step.older_endpoint().expect("non-root step");
            let ps = self.lookup(small)?;
            let pb = self.lookup(big)?;
            let pg = self.lookup(newest.replaced)?;
            let (c, d) = (small.num() as u32, small.den() as u32);
            let context = format!("{t} from ({small}, {big}; {})", newest.replaced);
            let p = ps.mul(&pb).mul_uvw().sub_in(&pg.mul_monomial(c, d, c + d), &context)?;
            if cfg!(debug_assertions) {
                p.audit()?;
            }
            self.cache.insert(t, Arc::new(p));
        }
        Ok(self.cache[&f].clone())
    }

    fn lookup(&mut self, f: Fraction) -> Result<Arc<HomogPoly>> {
        match self.cache.get(&f) {
            Some(p) => Ok(p.clone()),
            None => {
                let p = base_case(f).ok_or_else(|| {
                    Error::InvalidArgument(format!("{f} requested before it was built"))
                })?;
                let p = Arc::new(p);
                self.cache.insert(f, p.clone());
                Ok(p)
            }
        }
    }

    /// `M_f` for `f` in `[0, 1]`.
    pub fn markov_polynomial(&mut self, f: Fraction) -> Result<MarkovPolynomial> {
        if !f.in_unit_interval() {
            return Err(Error::OutOfRange { value: f, expected: "[0, 1]" });
        }
        let p = self.numerator(f)?;
        MarkovPolynomial::new(f, (*p).clone())
    }

    pub fn markov_number(&mut self, f: Fraction) -> Result<BigUint> {
        Ok(self.numerator(f)?.eval_ones())
    }
}

/// `P_f` with a throwaway cache.
pub fn numerator(f: Fraction) -> Result<HomogPoly> {
    Ok((*Engine::new().numerator(f)?).clone())
}

pub fn markov_polynomial(f: Fraction) -> Result<MarkovPolynomial> {
    Engine::new().markov_polynomial(f)
}

pub fn markov_number(f: Fraction) -> Result<BigUint> {
    Engine::new().markov_number(f)
}

/// Three regions around one vertex of the topograph: two neighbours and
/// their mediant. The root vertex `(0/1, 1/0, 1/1)` carries
/// `(x, y, (x^2 + y^2)/z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkovTriple {
    pub rho: [Fraction; 3],
    pub polys: [MarkovPolynomial; 3],
}

impl MarkovTriple {
    /// The vertex between neighbours `p` and `q`, with regions `(p, q, p + q)`.
    pub fn at_vertex(engine: &mut Engine, p: Fraction, q: Fraction) -> Result<Self> {
        let m = mediant(p, q)?;
        let mut build = |f: Fraction| -> Result<MarkovPolynomial> {
            let num = (*engine.numerator(f)?).clone();
            Ok(MarkovPolynomial { rho: f, numerator: num, denom_exponents: denominator_of(f) })
        };
        Ok(MarkovTriple { rho: [p, q, m], polys: [build(p)?, build(q)?, build(m)?] })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EquationMode {
    Exact,
    RandomPoints { count: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquationVerdict {
    pub pass: bool,
    /// First failing point `(x, y, z)` in random mode.
    pub failing_point: Option<[String; 3]>,
}

/// Checks `xyz (X^2 + Y^2 + Z^2) = (x^2 + y^2 + z^2) XYZ`.
pub fn verify_equation(t: &MarkovTriple, mode: EquationMode) -> EquationVerdict {
    match mode {
        EquationMode::Exact => {
            let [x, y, z] = t.polys.each_ref().map(|m| m.to_laurent());
            let sq = |p: &LaurentPoly3| p * p;
            let lhs = (&(&sq(&x) + &sq(&y)) + &sq(&z)).mul_monomial([1, 1, 1]);
            let k = &(&LaurentPoly3::monomial([2, 0, 0], 1) + &LaurentPoly3::monomial([0, 2, 0], 1))
                + &LaurentPoly3::monomial([0, 0, 2], 1);
            let rhs = &(&k * &x) * &(&y * &z);
            EquationVerdict { pass: lhs == rhs, failing_point: None }
        }
        EquationMode::RandomPoints { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut draw = || {
                let n: i64 = rng.random_range(1..=1_000_000);
                let d: i64 = rng.random_range(1..=1_000_000);
                BigRational::new(n.into(), d.into())
            };
            for _ in 0..count {
                let (x, y, z) = (draw(), draw(), draw());
                let [mx, my, mz] = t.polys.each_ref().map(|m| m.eval(&x, &y, &z));
                let lhs = &mx * &mx + &my * &my + &mz * &mz;
                let k = (&x * &x + &y * &y + &z * &z) / (&x * &y * &z);
                if lhs != k * mx * my * mz {
                    return EquationVerdict {
                        pass: false,
                        failing_point: Some([x.to_string(), y.to_string(), z.to_string()]),
                    };
                }
            }
            EquationVerdict { pass: true, failing_point: None }
        }
    }
}

/// Seed for the random equation check of one vertex, independent of the
/// order in which vertices are visited.
pub fn vertex_seed(base: u64, p: Fraction, q: Fraction) -> u64 {
    // splitmix64 over the four coordinates
    let mut h = base ^ 0x9e37_79b9_7f4a_7c15;
    for v in [p.num(), p.den(), q.num(), q.den()] {
        h ^= v;
        h = h.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = h;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        h = z ^ (z >> 31);
    }
    h
}

/// Recomputes `P_f` with nothing but Laurent arithmetic: Vieta moves
/// `Z' = (X^2 + Y^2) / Z` from `(x, y, z)` down the Stern–Brocot tree, each
/// move cross-checked against `Z' = k X Y - Z`.
pub fn oracle_numerator(f: Fraction) -> Result<HomogPoly> {
    oracle_numerator_bounded(f, ORACLE_BOUND)
}

pub fn oracle_numerator_bounded(f: Fraction, bound: u64) -> Result<HomogPoly> {
    if !f.in_unit_interval() {
        return Err(Error::OutOfRange { value: f, expected: "[0, 1]" });
    }
    if f.height() > bound {
        return Err(Error::OutOfRange { value: f, expected: "a + b within the oracle bound" });
    }
    let x = LaurentPoly3::variable(0);
    let y = LaurentPoly3::variable(1);
    let z = LaurentPoly3::variable(2);
    let m = if f == Fraction::ZERO {
        x
    } else {
        let k = (&(&(&x * &x) + &(&y * &y)) + &(&z * &z)).mul_monomial([-1, -1, -1]);
        // (left, right, opposite) regions around the current edge
        let (mut left, mut right) = (Fraction::ZERO, Fraction::INFINITY);
        let (mut ml, mut mr, mut mo) = (x, y, z);
        loop {
            let mid = mediant(left, right)?;
            let sum = &(&ml * &ml) + &(&mr * &mr);
            let mm = sum.exact_div(&mo).map_err(|e| Error::OracleMismatch {
                rho: f,
                detail: format!("Vieta move to {mid}: {e}"),
            })?;
            if mm != &(&(&k * &ml) * &mr) - &mo {
                return Err(Error::OracleMismatch {
                    rho: f,
                    detail: format!("two Vieta forms disagree at {mid}"),
                });
            }
            match f.cmp(&mid) {
                std::cmp::Ordering::Equal => break mm,
                std::cmp::Ordering::Less => {
                    (right, mo, mr) = (mid, mr, mm);
                }
                std::cmp::Ordering::Greater => {
                    (left, mo, ml) = (mid, ml, mm);
                }
            }
        }
    };
    read_numerator(f, &m)
}

/// Multiplies the denominator back in and reads `P(u, v, w)` off the
/// even exponents.
fn read_numerator(f: Fraction, m: &LaurentPoly3) -> Result<HomogPoly> {
    let [ea, eb, ec] = denominator_of(f).map(|e| e as i32);
    let cleared = m.mul_monomial([ea, eb, ec]);
    let d = (f.height() - 1) as i64;
    let mut terms = Vec::with_capacity(cleared.len());
    for (e, c) in cleared.terms() {
        let bad = |why: &str| Error::OracleMismatch { rho: f, detail: format!("term {e:?}: {why}") };
        if e.iter().any(|&t| t < 0 || t % 2 != 0) {
            return Err(bad("odd or negative exponent"));
        }
        let (i, j, k) = ((e[0] / 2) as i64, (e[1] / 2) as i64, (e[2] / 2) as i64);
        if i + j + k != d {
            return Err(bad("not homogeneous of the expected degree"));
        }
        let c = c.to_biguint().ok_or_else(|| bad("negative coefficient"))?;
        terms.push((i as u32, j as u32, c));
    }
    HomogPoly::from_terms(d as u32, terms)
}

/// `P_{a/b}(u, v, w)` with `u`, `v` swapped must equal `P_{b/a}` built by the
/// same recursion on the other side of `1/1`.
pub fn swap_symmetry_check(engine: &mut Engine, f: Fraction) -> Result<bool> {
    if f.num() == 0 || !f.in_unit_interval() {
        return Err(Error::OutOfRange { value: f, expected: "(0, 1]" });
    }
    let p = engine.numerator(f)?;
    let q = engine.numerator_unrestricted(f.reciprocal())?;
    let denom_ok = {
        let [a, b, c] = denominator_of(f);
        denominator_of(f.reciprocal()) == [b, a, c]
    };
    Ok(denom_ok && p.swap_uv() == *q)
}
