//! Homogeneous trivariate polynomials with nonnegative big-integer
//! coefficients.
//!
//! A polynomial of degree `d` is `sum A_ij u^i v^j w^(d-i-j)`. Storage is a
//! dense triangle of coefficients indexed by `(i, j)`; zero entries are the
//! absent terms of the sparse view returned by [`HomogPoly::terms`].

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

static ZERO: BigUint = BigUint::ZERO;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HomogPoly {
    degree: u32,
    coeffs: Vec<BigUint>,
}

#[inline]
fn tri_len(d: u32) -> usize {
    let d = d as usize;
    (d + 1) * (d + 2) / 2
}

impl HomogPoly {
    #[inline]
    fn index(&self, i: u32, j: u32) -> usize {
        let (d, i, j) = (self.degree as usize, i as usize, j as usize);
        i * (d + 1) - i * i.saturating_sub(1) / 2 + j
    }

    pub fn zero(degree: u32) -> Self {
        HomogPoly { degree, coeffs: vec![BigUint::zero(); tri_len(degree)] }
    }

    /// The constant polynomial `1` (degree 0).
    pub fn one() -> Self {
        Self::monomial(0, 0, 0, BigUint::one())
    }

    /// `c * u^i v^j w^k`.
    pub fn monomial(i: u32, j: u32, k: u32, c: BigUint) -> Self {
        let mut p = Self::zero(i + j + k);
        let idx = p.index(i, j);
        p.coeffs[idx] = c;
        p
    }

    /// `u`, `v` or `w` as degree-1 polynomials.
    pub fn u() -> Self {
        Self::monomial(1, 0, 0, BigUint::one())
    }

    pub fn v() -> Self {
        Self::monomial(0, 1, 0, BigUint::one())
    }

    pub fn w() -> Self {
        Self::monomial(0, 0, 1, BigUint::one())
    }

    /// Builds a polynomial from `(i, j, c)` terms; repeated exponents add up.
    pub fn from_terms<I>(degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, u32, BigUint)>,
    {
        let mut p = Self::zero(degree);
        for (i, j, c) in terms {
            if i + j > degree {
                return Err(Error::InvalidArgument(format!(
                    "exponent ({i}, {j}) exceeds degree {degree}"
                )));
            }
            let idx = p.index(i, j);
            p.coeffs[idx] += c;
        }
        Ok(p)
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Coefficient of `u^i v^j w^(d-i-j)`; zero outside the triangle.
    pub fn coeff(&self, i: i64, j: i64) -> &BigUint {
        if i < 0 || j < 0 || i + j > self.degree as i64 {
            return &ZERO;
        }
        &self.coeffs[self.index(i as u32, j as u32)]
    }

    pub fn set_coeff(&mut self, i: u32, j: u32, c: BigUint) -> Result<()> {
        if i + j > self.degree {
            return Err(Error::InvalidArgument(format!(
                "exponent ({i}, {j}) exceeds degree {}",
                self.degree
            )));
        }
        let idx = self.index(i, j);
        self.coeffs[idx] = c;
        Ok(())
    }

    /// Nonzero terms `(i, j, c)` sorted by `(i, j)` ascending.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &BigUint)> + '_ {
        let d = self.degree;
        (0..=d)
            .flat_map(move |i| (0..=d - i).map(move |j| (i, j)))
            .zip(self.coeffs.iter())
            .filter(|(_, c)| !c.is_zero())
            .map(|((i, j), c)| (i, j, c))
    }

    /// Exponent pairs carrying a nonzero coefficient.
    pub fn support(&self) -> Vec<(u32, u32)> {
        self.terms().map(|(i, j, _)| (i, j)).collect()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(HomogPoly { degree: self.degree, coeffs })
    }

    /// `self - other`, failing if any coefficient would go negative.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.sub_in(other, "subtraction")
    }

    /// As [`HomogPoly::sub`], with `context` naming the caller in the error.
    pub fn sub_in(&self, other: &Self, context: &str) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        let mut out = self.clone();
        let d = self.degree;
        for i in 0..=d {
            for j in 0..=d - i {
                let idx = self.index(i, j);
                let b = &other.coeffs[idx];
                if b.is_zero() {
                    continue;
                }
                if &out.coeffs[idx] < b {
                    return Err(Error::NegativeCoefficient { i, j, context: context.to_string() });
                }
                out.coeffs[idx] -= b;
            }
        }
        Ok(out)
    }

    /// Schoolbook product over the exponent triangle.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.degree + other.degree);
        let rhs: Vec<(u32, u32, &BigUint)> = other.terms().collect();
        for (i1, j1, c1) in self.terms() {
            for &(i2, j2, c2) in &rhs {
                let idx = out.index(i1 + i2, j1 + j2);
                out.coeffs[idx] += c1 * c2;
            }
        }
        out
    }

    /// `u^c v^d w^e * self`.
    pub fn mul_monomial(&self, c: u32, d: u32, e: u32) -> Self {
        let mut out = Self::zero(self.degree + c + d + e);
        for (i, j, coeff) in self.terms() {
            let idx = out.index(i + c, j + d);
            out.coeffs[idx] = coeff.clone();
        }
        out
    }

    /// `(u + v + w) * self`.
    pub fn mul_uvw(&self) -> Self {
        let mut out = Self::zero(self.degree + 1);
        for (i, j, c) in self.terms() {
            for (di, dj) in [(1, 0), (0, 1), (0, 0)] {
                let idx = out.index(i + di, j + dj);
                out.coeffs[idx] += c;
            }
        }
        out
    }

    pub fn scale(&self, k: &BigUint) -> Self {
        HomogPoly { degree: self.degree, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// The polynomial with `u` and `v` exchanged.
    pub fn swap_uv(&self) -> Self {
        let mut out = Self::zero(self.degree);
        for (i, j, c) in self.terms() {
            let idx = out.index(j, i);
            out.coeffs[idx] = c.clone();
        }
        out
    }

    /// Value at `u = v = w = 1`, i.e. the coefficient sum.
    pub fn eval_ones(&self) -> BigUint {
        self.coeffs.iter().sum()
    }

    /// Exact value at a rational point.
    ///
    /// Denominators are cleared termwise and divided out once at the end.
    pub fn eval_rational(&self, u: &BigRational, v: &BigRational, w: &BigRational) -> BigRational {
        let d = self.degree as usize;
        let powers = |x: &BigInt| {
            let mut p = Vec::with_capacity(d + 1);
            p.push(BigInt::one());
            for k in 1..=d {
                p.push(&p[k - 1] * x);
            }
            p
        };
        let (nu, du) = (powers(u.numer()), powers(u.denom()));
        let (nv, dv) = (powers(v.numer()), powers(v.denom()));
        let (nw, dw) = (powers(w.numer()), powers(w.denom()));
        let mut acc = BigInt::zero();
        for (i, j, c) in self.terms() {
            let (i, j) = (i as usize, j as usize);
            let k = d - i - j;
            let term = &nu[i] * &du[d - i] * (&nv[j] * &dv[d - j]) * (&nw[k] * &dw[d - k]);
            acc += term * BigInt::from(c.clone());
        }
        BigRational::new(acc, &du[d] * &dv[d] * &dw[d])
    }

    /// Floating-point value, with each term accumulated exactly and the sum
    /// rounded once (inputs are converted to their exact binary values).
    pub fn eval_f64(&self, u: f64, v: f64, w: f64) -> f64 {
        let exact = |x: f64| BigRational::from_float(x).expect("finite input");
        let value = self.eval_rational(&exact(u), &exact(v), &exact(w));
        rational_to_f64(&value)
    }

    /// True if `u` divides every term.
    pub fn divisible_by_u(&self) -> bool {
        !self.is_zero() && self.terms().all(|(i, _, _)| i >= 1)
    }

    pub fn divisible_by_v(&self) -> bool {
        !self.is_zero() && self.terms().all(|(_, j, _)| j >= 1)
    }

    pub fn divisible_by_w(&self) -> bool {
        !self.is_zero() && self.terms().all(|(i, j, _)| i + j < self.degree)
    }

    /// True if some variable divides every term.
    pub fn has_monomial_factor(&self) -> bool {
        self.divisible_by_u() || self.divisible_by_v() || self.divisible_by_w()
    }

    /// Checks the storage invariant. Called from debug builds after every
    /// recursion step.
    pub fn audit(&self) -> Result<()> {
        if self.coeffs.len() != tri_len(self.degree) {
            return Err(Error::InvalidArgument(format!(
                "storage of length {} for degree {}",
                self.coeffs.len(),
                self.degree
            )));
        }
        Ok(())
    }

    /// CSV with header `i,j,coeff`, rows sorted by `(j, i)`.
    pub fn to_csv(&self) -> String {
        let mut rows: Vec<(u32, u32, &BigUint)> = self.terms().collect();
        rows.sort_by_key(|&(i, j, _)| (j, i));
        let mut s = String::from("i,j,coeff\n");
        for (i, j, c) in rows {
            s.push_str(&format!("{i},{j},{c}\n"));
        }
        s
    }

    /// Coefficients laid out with `j` descending down the rows and `i`
    /// across; positions with a zero coefficient print as `.`.
    pub fn to_grid(&self) -> String {
        let d = self.degree as i64;
        let width = self.terms().map(|(_, _, c)| c.to_string().len()).max().unwrap_or(1).max(d.to_string().len());
        let label = d.to_string().len();
        let mut s = String::new();
        for j in (0..=d).rev() {
            s.push_str(&format!("{j:>label$} |"));
            for i in 0..=d - j {
                let c = self.coeff(i, j);
                let cell = if c.is_zero() { ".".to_string() } else { c.to_string() };
                s.push_str(&format!(" {cell:>width$}"));
            }
            s.push('\n');
        }
        s.push_str(&format!("{:>label$} +{}\n", "", "-".repeat(((width + 1) * (d as usize + 1)).max(1))));
        s.push_str(&format!("{:>label$}  ", ""));
        for i in 0..=d {
            s.push_str(&format!(" {i:>width$}"));
        }
        s.push('\n');
        s
    }
}

pub(crate) fn rational_to_f64(x: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    // scale so the integer quotient carries ~64 significant bits
    let (n, d) = (x.numer(), x.denom());
    if n.is_zero() {
        return 0.0;
    }
    let shift = d.bits() as i64 - n.bits() as i64 + 64;
    let q: BigInt = if shift >= 0 { (n << shift as usize) / d } else { n / (d << (-shift) as usize) };
    q.to_f64().unwrap_or(f64::NAN) * 2f64.powi(-shift as i32)
}

impl fmt::Debug for HomogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HomogPoly(deg {}: {})", self.degree, self)
    }
}

impl fmt::Display for HomogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, j, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let k = self.degree - i - j;
            let mut parts = Vec::new();
            for (name, e) in [("u", i), ("v", j), ("w", k)] {
                match e {
                    0 => {}
                    1 => parts.push(name.to_string()),
                    _ => parts.push(format!("{name}^{e}")),
                }
            }
            if parts.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", parts.join("*"))?;
            } else {
                write!(f, "{c}*{}", parts.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    i: u32,
    j: u32,
    c: String,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    degree: u32,
    coeffs: Vec<TermRepr>,
}

impl From<&HomogPoly> for PolyRepr {
    fn from(p: &HomogPoly) -> Self {
        PolyRepr {
            degree: p.degree,
            coeffs: p.terms().map(|(i, j, c)| TermRepr { i, j, c: c.to_string() }).collect(),
        }
    }
}

impl Serialize for HomogPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRepr::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for HomogPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = PolyRepr::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(repr.coeffs.len());
        for t in repr.coeffs {
            let c: BigUint = t.c.parse().map_err(D::Error::custom)?;
            if c.is_zero() {
                return Err(D::Error::custom(format!("zero coefficient stored at ({}, {})", t.i, t.j)));
            }
            terms.push((t.i, t.j, c));
        }
        HomogPoly::from_terms(repr.degree, terms).map_err(D::Error::custom)
    }
}

/// Shorthand used by tests and the golden tables: builds a polynomial from
/// small `(i, j, c)` triples.
pub fn poly(degree: u32, terms: &[(u32, u32, u64)]) -> HomogPoly {
    HomogPoly::from_terms(degree, terms.iter().map(|&(i, j, c)| (i, j, BigUint::from(c))))
        .expect("terms within degree")
}
