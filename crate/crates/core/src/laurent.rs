//! Sparse Laurent polynomials over the integers.
//!
//! Only the verification oracle and the cluster-variable closed forms use
//! these; the main engine works with [`crate::HomogPoly`] numerators.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// `sum c_e x^e` with `e` in `Z^N`; stored coefficients are nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly<const N: usize> {
    terms: BTreeMap<[i32; N], BigInt>,
}

/// Laurent polynomials in `x, y, z`.
pub type LaurentPoly3 = LaurentPoly<3>;
/// Laurent polynomials in two cluster variables.
pub type LaurentPoly2 = LaurentPoly<2>;

impl<const N: usize> LaurentPoly<N> {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial([0; N], c)
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn monomial(exponents: [i32; N], c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponents, c);
        }
        LaurentPoly { terms }
    }

    /// The `k`-th variable.
    pub fn variable(k: usize) -> Self {
        let mut e = [0; N];
        e[k] = 1;
        Self::monomial(e, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[i32; N]) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    /// Terms in ascending lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&[i32; N], &BigInt)> {
        self.terms.iter()
    }

    fn add_term(&mut self, e: [i32; N], c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn mul_monomial(&self, e: [i32; N]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| {
                let mut s = *k;
                for t in 0..N {
                    s[t] += e[t];
                }
                (s, c.clone())
            })
            .collect();
        LaurentPoly { terms }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Componentwise minimum and maximum exponents.
    fn exponent_box(&self) -> ([i32; N], [i32; N]) {
        let mut lo = [i32::MAX; N];
        let mut hi = [i32::MIN; N];
        for e in self.terms.keys() {
            for t in 0..N {
                lo[t] = lo[t].min(e[t]);
                hi[t] = hi[t].max(e[t]);
            }
        }
        (lo, hi)
    }

    /// Exact quotient `self / divisor`, failing on any remainder.
    ///
    /// Long division by lexicographic leading terms. If the division is exact
    /// every quotient exponent lies in the box
    /// `[min(self) - min(divisor), max(self) - max(divisor)]`, so leaving that
    /// box proves a nonzero remainder and bounds the loop.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::NotDivisible("division by zero".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let (flo, fhi) = self.exponent_box();
        let (glo, ghi) = divisor.exponent_box();
        let mut qlo = [0; N];
        let mut qhi = [0; N];
        for t in 0..N {
            qlo[t] = flo[t] - glo[t];
            qhi[t] = fhi[t] - ghi[t];
        }
        let (glead, gc) = divisor.terms.iter().next_back().expect("nonzero divisor");
        let mut rem = self.clone();
        let mut quotient = Self::zero();
        while let Some((rlead, rc)) = rem.terms.iter().next_back().map(|(e, c)| (*e, c.clone())) {
            let mut e = [0; N];
            for t in 0..N {
                e[t] = rlead[t] - glead[t];
            }
            if (0..N).any(|t| e[t] < qlo[t] || e[t] > qhi[t]) {
                return Err(Error::NotDivisible(format!("remainder term at {rlead:?}")));
            }
            let (c, r) = rc.div_rem(gc);
            if !r.is_zero() {
                return Err(Error::NotDivisible(format!("coefficient {rc} by {gc}")));
            }
            for (ge, gcoef) in &divisor.terms {
                let mut s = e;
                for t in 0..N {
                    s[t] += ge[t];
                }
                rem.add_term(s, -(&c * gcoef));
            }
            quotient.add_term(e, c);
        }
        Ok(quotient)
    }

    /// Sends variable `t` to variable `map[t]` of the target ring, or to `1`
    /// when `map[t]` is `None`.
    pub fn project<const M: usize>(&self, map: [Option<usize>; N]) -> LaurentPoly<M> {
        let mut out = LaurentPoly::<M>::zero();
        for (e, c) in &self.terms {
            let mut f = [0; M];
            for t in 0..N {
                if let Some(s) = map[t] {
                    f[s] += e[t];
                }
            }
            out.add_term(f, c.clone());
        }
        out
    }

    pub fn eval(&self, point: &[BigRational; N]) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut term = BigRational::from_integer(c.clone());
            for t in 0..N {
                term *= rational_pow(&point[t], e[t]);
            }
            acc += term;
        }
        acc
    }

    pub fn eval_f64(&self, point: &[f64; N]) -> f64 {
        use num_traits::ToPrimitive;
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut term = c.to_f64().unwrap_or(f64::NAN);
                for t in 0..N {
                    term *= point[t].powi(e[t]);
                }
                term
            })
            .sum()
    }
}

/// `x^k` for any integer `k`.
pub(crate) fn rational_pow(x: &BigRational, k: i32) -> BigRational {
    let base = if k < 0 { x.recip() } else { x.clone() };
    let mut acc = BigRational::one();
    for _ in 0..k.unsigned_abs() {
        acc *= &base;
    }
    acc
}

impl<const N: usize> Add for &LaurentPoly<N> {
    type Output = LaurentPoly<N>;
    fn add(self, rhs: Self) -> LaurentPoly<N> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<const N: usize> Sub for &LaurentPoly<N> {
    type Output = LaurentPoly<N>;
    fn sub(self, rhs: Self) -> LaurentPoly<N> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<const N: usize> Neg for &LaurentPoly<N> {
    type Output = LaurentPoly<N>;
    fn neg(self) -> LaurentPoly<N> {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }
}

impl<const N: usize> Mul for &LaurentPoly<N> {
    type Output = LaurentPoly<N>;
    fn mul(self, rhs: Self) -> LaurentPoly<N> {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let mut e = *e1;
                for t in 0..N {
                    e[t] += e2[t];
                }
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl<const N: usize> fmt::Debug for LaurentPoly<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<const N: usize> fmt::Display for LaurentPoly<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names: &[&str] = match N {
            2 => &["x1", "x2"],
            3 => &["x", "y", "z"],
            _ => &[],
        };
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if n > 0 || c.is_negative() {
                write!(f, "{}{sign} ", if n > 0 { " " } else { "" })?;
            }
            write!(f, "{}", c.abs())?;
            for (t, &k) in e.iter().enumerate().filter(|(_, &k)| k != 0) {
                let name = names.get(t).map(|s| s.to_string()).unwrap_or(format!("t{t}"));
                write!(f, "*{name}^{k}")?;
            }
        }
        Ok(())
    }
}
