//! Reduced fractions, Farey mediants, continued fractions and the
//! Stern–Brocot descent that drives the numerator recursion.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// A reduced nonnegative fraction `num/den`. `1/0` is a legal value (the
/// formal infinity bounding the topograph); `0/0` is not.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fraction {
    num: u64,
    den: u64,
}

impl Fraction {
    pub const ZERO: Fraction = Fraction { num: 0, den: 1 };
    pub const ONE: Fraction = Fraction { num: 1, den: 1 };
    pub const INFINITY: Fraction = Fraction { num: 1, den: 0 };

    /// Builds `num/den`, rejecting unreduced input.
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 && den == 0 {
            return Err(Error::ZeroOverZero);
        }
        if num.gcd(&den) != 1 {
            return Err(Error::NotReduced { num, den });
        }
        Ok(Fraction { num, den })
    }

    /// Builds `num/den` after dividing out the common factor.
    pub fn reduced(num: u64, den: u64) -> Result<Self> {
        if num == 0 && den == 0 {
            return Err(Error::ZeroOverZero);
        }
        let g = num.gcd(&den);
        Ok(Fraction { num: num / g, den: den / g })
    }

    #[inline]
    pub fn num(self) -> u64 {
        self.num
    }

    #[inline]
    pub fn den(self) -> u64 {
        self.den
    }

    /// `num + den`, the level of the fraction in the Stern–Brocot tree plus one.
    #[inline]
    pub fn height(self) -> u64 {
        self.num + self.den
    }

    #[inline]
    pub fn is_infinite(self) -> bool {
        self.den == 0
    }

    /// True for the closed unit interval `[0, 1]`.
    #[inline]
    pub fn in_unit_interval(self) -> bool {
        self.den != 0 && self.num <= self.den
    }

    /// `|num * other.den - other.num * den| == 1`.
    pub fn is_neighbour(self, other: Fraction) -> bool {
        let lhs = self.num as u128 * other.den as u128;
        let rhs = other.num as u128 * self.den as u128;
        lhs.abs_diff(rhs) == 1
    }

    pub fn reciprocal(self) -> Fraction {
        Fraction { num: self.den, den: self.num }
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Fraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseFraction(s.to_string());
        let (n, d) = s.split_once('/').ok_or_else(bad)?;
        let digits = |t: &str| !t.is_empty() && t.bytes().all(|c| c.is_ascii_digit());
        if !digits(n) || !digits(d) {
            return Err(bad());
        }
        let num = n.parse().map_err(|_| bad())?;
        let den = d.parse().map_err(|_| bad())?;
        Fraction::new(num, den)
    }
}

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Fraction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Farey mediant of two neighbours.
pub fn mediant(p: Fraction, q: Fraction) -> Result<Fraction> {
    if !p.is_neighbour(q) {
        return Err(Error::NotNeighbours(p, q));
    }
    // neighbours always produce a reduced sum
    Ok(Fraction { num: p.num + q.num, den: p.den + q.den })
}

/// Simple continued fraction `[a_1, ..., a_n]` of a fraction `>= 1`, together
/// with its convergent table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContinuedFraction {
    quotients: Vec<u64>,
    /// `(p_k, q_k)` for `k = -1, 0, 1, ..., n`.
    convergents: Vec<(u64, u64)>,
}

impl ContinuedFraction {
    pub fn quotients(&self) -> &[u64] {
        &self.quotients
    }

    /// Number of partial quotients `n`.
    pub fn len(&self) -> usize {
        self.quotients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quotients.is_empty()
    }

    /// Partial quotient `a_k`, 1-based.
    pub fn quotient(&self, k: usize) -> Option<u64> {
        k.checked_sub(1).and_then(|i| self.quotients.get(i).copied())
    }

    /// Convergent `(p_k, q_k)` for `-1 <= k <= n`; seeds are `(0, 1)` and `(1, 0)`.
    pub fn convergent(&self, k: i64) -> Option<(u64, u64)> {
        usize::try_from(k + 1).ok().and_then(|i| self.convergents.get(i).copied())
    }

    /// Convergents `p_k/q_k` for `k = 1..=n`.
    pub fn convergent_fractions(&self) -> Vec<Fraction> {
        self.convergents[2..]
            .iter()
            .map(|&(p, q)| Fraction { num: p, den: q })
            .collect()
    }

    /// Rebuilds the value from the quotients alone.
    pub fn value(&self) -> Fraction {
        let (p, q) = self.quotients.iter().fold(((1u64, 0u64), (0u64, 1u64)), |(c, prev), &a| {
            ((a * c.0 + prev.0, a * c.1 + prev.1), c)
        }).0;
        Fraction { num: p, den: q }
    }
}

/// Continued fraction of `f = b/a` with `b >= a >= 1`.
///
/// The Euclidean algorithm already ends with a quotient `>= 2` whenever
/// `n > 1`, which is the canonical form the sail constructions index by.
pub fn continued_fraction(f: Fraction) -> Result<ContinuedFraction> {
    if f.den == 0 || f.num < f.den {
        return Err(Error::OutOfRange { value: f, expected: "num >= den >= 1" });
    }
    let mut quotients = Vec::new();
    let (mut n, mut d) = (f.num, f.den);
    while d != 0 {
        quotients.push(n / d);
        (n, d) = (d, n % d);
    }
    let mut convergents = vec![(0u64, 1u64), (1u64, 0u64)];
    for &a in &quotients {
        let k = convergents.len();
        let (p1, q1) = convergents[k - 1];
        let (p2, q2) = convergents[k - 2];
        convergents.push((a * p1 + p2, a * q1 + q2));
    }
    Ok(ContinuedFraction { quotients, convergents })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// The endpoint created most recently, with the value it displaced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Newest {
    pub side: Side,
    pub replaced: Fraction,
}

/// One mediant step of a Stern–Brocot descent: the interval
/// `(left, right)` whose mediant is formed at this step.
///
/// `newest` is `None` only for the root interval `(0/1, 1/0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DescentStep {
    pub left: Fraction,
    pub right: Fraction,
    pub newest: Option<Newest>,
}

impl DescentStep {
    pub fn mediant(&self) -> Fraction {
        Fraction {
            num: self.left.num + self.right.num,
            den: self.left.den + self.right.den,
        }
    }

    pub fn newest_endpoint(&self) -> Option<Fraction> {
        self.newest.map(|n| match n.side {
            Side::Left => self.left,
            Side::Right => self.right,
        })
    }

    /// The endpoint that is not the most recent mediant.
    pub fn older_endpoint(&self) -> Option<Fraction> {
        self.newest.map(|n| match n.side {
            Side::Left => self.right,
            Side::Right => self.left,
        })
    }
}

/// Stern–Brocot descent to any positive reduced fraction other than the
/// tree's boundary `0/1`, `1/0`. Shared by [`descent_path`] and the
/// reciprocal-side construction used for the swap symmetry.
pub(crate) fn descent_any(target: Fraction) -> Result<Vec<DescentStep>> {
    if target.num == 0 || target.den == 0 {
        return Err(Error::OutOfRange { value: target, expected: "0 < target < 1/0" });
    }
    let mut steps = Vec::with_capacity(target.height() as usize);
    let mut step = DescentStep { left: Fraction::ZERO, right: Fraction::INFINITY, newest: None };
    loop {
        steps.push(step);
        let m = step.mediant();
        match target.cmp(&m) {
            Ordering::Equal => return Ok(steps),
            Ordering::Less => {
                step = DescentStep {
                    left: step.left,
                    right: m,
                    newest: Some(Newest { side: Side::Right, replaced: step.right }),
                };
            }
            Ordering::Greater => {
                step = DescentStep {
                    left: m,
                    right: step.right,
                    newest: Some(Newest { side: Side::Left, replaced: step.left }),
                };
            }
        }
    }
}

/// Mediant steps from `(0/1, 1/0)` down to `target`, which must lie strictly
/// inside `(0, 1)`. The last step's mediant is `target`.
pub fn descent_path(target: Fraction) -> Result<Vec<DescentStep>> {
    if target.num == 0 || target.den == 0 || target.num >= target.den {
        return Err(Error::OutOfRange { value: target, expected: "0 < target < 1" });
    }
    descent_any(target)
}

/// All reduced fractions in `(0, 1)` with `num + den <= max_sum`, sorted by
/// `(num + den, num)`.
pub fn fractions_up_to(max_sum: u64) -> Vec<Fraction> {
    let mut out = Vec::new();
    for s in 3..=max_sum {
        for a in 1..s {
            let b = s - a;
            if a < b && a.gcd(&b) == 1 {
                out.push(Fraction { num: a, den: b });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fr(s: &str) -> Fraction {
        s.parse().unwrap()
    }

    #[test]
    fn mediant_examples() {
        assert_eq!(mediant(fr("0/1"), fr("1/0")).unwrap(), fr("1/1"));
        assert_eq!(mediant(fr("1/2"), fr("1/1")).unwrap(), fr("2/3"));
        assert_eq!(mediant(fr("1/2"), fr("1/3")).unwrap(), fr("2/5"));
        assert!(matches!(mediant(fr("1/3"), fr("2/3")), Err(Error::NotNeighbours(..))));
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(fr("13/18").to_string(), "13/18");
        assert_eq!(fr("1/0"), Fraction::INFINITY);
        for bad in ["", "1", "1/", "/2", " 1/2", "1 /2", "-1/2", "2/4", "0/0", "a/b"] {
            assert!(bad.parse::<Fraction>().is_err(), "{bad}");
        }
    }

    #[test]
    fn ordering_treats_one_over_zero_as_infinity() {
        assert!(fr("0/1") < fr("1/3"));
        assert!(fr("2/3") < fr("1/1"));
        assert!(fr("1000/1") < Fraction::INFINITY);
    }

    #[test]
    fn continued_fraction_examples() {
        let cf = continued_fraction(fr("5/3")).unwrap();
        assert_eq!(cf.quotients(), &[1, 1, 2]);
        assert_eq!(cf.convergent_fractions(), vec![fr("1/1"), fr("2/1"), fr("5/3")]);
        assert_eq!(cf.convergent(-1), Some((0, 1)));
        assert_eq!(cf.convergent(0), Some((1, 0)));

        let cf = continued_fraction(fr("18/13")).unwrap();
        assert_eq!(cf.quotients(), &[1, 2, 1, 1, 2]);
        assert_eq!(
            cf.convergent_fractions(),
            vec![fr("1/1"), fr("3/2"), fr("4/3"), fr("7/5"), fr("18/13")]
        );

        assert_eq!(continued_fraction(fr("1/1")).unwrap().quotients(), &[1]);
        assert!(continued_fraction(fr("1/0")).is_err());
        assert!(continued_fraction(fr("2/3")).is_err());
    }

    fn mediants(target: &str) -> Vec<String> {
        descent_path(fr(target)).unwrap().iter().map(|s| s.mediant().to_string()).collect()
    }

    #[test]
    fn descent_examples() {
        assert_eq!(mediants("2/3"), ["1/1", "1/2", "2/3"]);
        assert_eq!(mediants("1/3"), ["1/1", "1/2", "1/3"]);
        assert_eq!(mediants("1/2"), ["1/1", "1/2"]);
        for bad in ["0/1", "1/1", "1/0", "3/2"] {
            assert!(descent_path(fr(bad)).is_err(), "{bad}");
        }
    }

    #[test]
    fn descent_depth_is_quotient_sum() {
        for f in fractions_up_to(40) {
            let path = descent_path(f).unwrap();
            let cf = continued_fraction(f.reciprocal()).unwrap();
            assert_eq!(path.len() as u64, cf.quotients().iter().sum::<u64>(), "{f}");
        }
    }

    #[test]
    fn descent_steps_satisfy_difference_invariant() {
        for f in fractions_up_to(40) {
            for step in descent_path(f).unwrap() {
                assert!(step.left.is_neighbour(step.right));
                assert!(step.left < step.right);
                if let Some(n) = step.newest {
                    let newest = step.newest_endpoint().unwrap();
                    let older = step.older_endpoint().unwrap();
                    assert!(newest.num >= older.num && newest.den >= older.den, "{f}");
                    assert_eq!(
                        (newest.num - older.num, newest.den - older.den),
                        (n.replaced.num, n.replaced.den)
                    );
                }
            }
        }
    }

    #[test]
    fn continued_fraction_round_trips() {
        for f in fractions_up_to(60) {
            let r = f.reciprocal();
            let cf = continued_fraction(r).unwrap();
            assert_eq!(cf.value(), r);
            assert_eq!(*cf.convergent_fractions().last().unwrap(), r);
            if cf.len() > 1 {
                assert!(*cf.quotients().last().unwrap() >= 2);
            }
            for k in 1..=cf.len() as i64 {
                let (p, q) = cf.convergent(k).unwrap();
                let (p1, q1) = cf.convergent(k - 1).unwrap();
                let det = p as i128 * q1 as i128 - p1 as i128 * q as i128;
                // (-1)^k under the seeds p_{-1}/q_{-1} = 0/1, p_0/q_0 = 1/0
                assert_eq!(det, if k % 2 == 1 { -1 } else { 1 });
            }
        }
    }

    #[test]
    fn fraction_count_up_to_twenty() {
        assert_eq!(fractions_up_to(20).len(), 63);
    }
}
