//! The coefficient array `A_ij` as a function on the Newton polygon.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::Serialize;

use crate::binomial::binom_int;
use crate::farey::Fraction;
use crate::geometry::{convex_hull, Point};
use crate::topograph::MarkovPolynomial;
use crate::{Error, Result};

/// Lattice points `i, j >= 0` with `b i + a j >= a b` and `i + j <= a + b - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonPolygon {
    pub a: u64,
    pub b: u64,
    /// Sorted by `(i, j)`.
    pub lattice_points: Vec<Point>,
}

impl NewtonPolygon {
    pub fn degree(&self) -> i64 {
        (self.a + self.b) as i64 - 1
    }

    pub fn contains(&self, (i, j): Point) -> bool {
        let (a, b) = (self.a as i64, self.b as i64);
        i >= 0 && j >= 0 && b * i + a * j >= a * b && i + j < a + b
    }

    pub fn len(&self) -> usize {
        self.lattice_points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice_points.is_empty()
    }

    /// Hull vertices, counter-clockwise.
    pub fn vertices(&self) -> Vec<Point> {
        convex_hull(&self.lattice_points)
    }

    /// The corner points the hull may use: `(a,0), (a+b-1,0), (0,b), (0,a+b-1)`.
    pub fn corners(&self) -> [Point; 4] {
        let (a, b) = (self.a as i64, self.b as i64);
        [(a, 0), (a + b - 1, 0), (0, b), (0, a + b - 1)]
    }
}

pub fn predicted_polygon(rho: Fraction) -> NewtonPolygon {
    let (a, b) = (rho.num(), rho.den());
    let (ai, bi) = (a as i64, b as i64);
    let d = ai + bi - 1;
    let mut pts = Vec::new();
    for i in 0..=d.max(0) {
        for j in 0..=(d - i) {
            if bi * i + ai * j >= ai * bi {
                pts.push((i, j));
            }
        }
    }
    NewtonPolygon { a, b, lattice_points: pts }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SaturationVerdict {
    pub pass: bool,
    pub predicted: usize,
    pub support: usize,
    /// Polygon points with a zero coefficient.
    pub missing: Vec<Point>,
    /// Support points outside the polygon.
    pub extra: Vec<Point>,
}

pub fn saturation_check(m: &MarkovPolynomial) -> SaturationVerdict {
    let poly = predicted_polygon(m.rho);
    let missing: Vec<Point> = poly
        .lattice_points
        .iter()
        .copied()
        .filter(|&(i, j)| m.numerator.coeff(i, j).is_zero())
        .collect();
    let extra: Vec<Point> = m
        .numerator
        .support()
        .into_iter()
        .map(|(i, j)| (i as i64, j as i64))
        .filter(|&p| !poly.contains(p))
        .collect();
    SaturationVerdict {
        pass: missing.is_empty() && extra.is_empty(),
        predicted: poly.len(),
        support: m.numerator.num_terms(),
        missing,
        extra,
    }
}

/// Newton polygon of the numerator equals the predicted polygon, and its
/// vertices are among the four predicted corners.
pub fn support_hull_check(m: &MarkovPolynomial) -> bool {
    let poly = predicted_polygon(m.rho);
    let support: Vec<Point> =
        m.numerator.support().into_iter().map(|(i, j)| (i as i64, j as i64)).collect();
    let hull = convex_hull(&support);
    let corners = poly.corners();
    hull == poly.vertices() && hull.iter().all(|v| corners.contains(v))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SliceFamily {
    /// Diagonal `i + j = a + b - 1 - k`, ordered by `i`.
    T,
    /// Row `j = k`, ordered by `i`.
    R,
    /// Column `i = k`, ordered by `j`.
    S,
}

/// All `(i, j)` with `i, j >= 0`, `i + j <= d` on the given line, in slice order.
pub fn line_points(degree: i64, family: SliceFamily, k: i64) -> Vec<Point> {
    if k < 0 || k > degree {
        return Vec::new();
    }
    match family {
        SliceFamily::T => (0..=degree - k).map(|i| (i, degree - k - i)).collect(),
        SliceFamily::R => (0..=degree - k).map(|i| (i, k)).collect(),
        SliceFamily::S => (0..=degree - k).map(|j| (k, j)).collect(),
    }
}

/// Coefficients of the polygon points on a slice line, with their positions.
pub fn slice(m: &MarkovPolynomial, family: SliceFamily, k: i64) -> Vec<(Point, BigUint)> {
    let poly = predicted_polygon(m.rho);
    line_points(poly.degree(), family, k)
        .into_iter()
        .filter(|&p| poly.contains(p))
        .map(|p| (p, m.numerator.coeff(p.0, p.1).clone()))
        .collect()
}

/// Just the values of [`slice`].
pub fn slice_values(m: &MarkovPolynomial, family: SliceFamily, k: i64) -> Vec<BigUint> {
    slice(m, family, k).into_iter().map(|(_, c)| c).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PredictedSlice {
    S0,
    R0,
    R1,
    T0,
    T1,
    T2,
    S1Special,
}

impl PredictedSlice {
    pub const ALL_GENERAL: [PredictedSlice; 6] = [Self::S0, Self::R0, Self::R1, Self::T0, Self::T1, Self::T2];

    pub fn line(self) -> (SliceFamily, i64) {
        match self {
            Self::S0 => (SliceFamily::S, 0),
            Self::R0 => (SliceFamily::R, 0),
            Self::R1 => (SliceFamily::R, 1),
            Self::T0 => (SliceFamily::T, 0),
            Self::T1 => (SliceFamily::T, 1),
            Self::T2 => (SliceFamily::T, 2),
            Self::S1Special => (SliceFamily::S, 1),
        }
    }
}

/// `sum coef * X^p (X + Y)^q`, read off at powers of `X`.
struct BinomialForm(Vec<(BigInt, i64, i64)>);

impl BinomialForm {
    fn coefficient(&self, e: i64) -> BigInt {
        self.0.iter().map(|(c, p, q)| c * binom_int(*q, e - p)).sum()
    }

    /// A nonzero term with a negative power of `X + Y` is not a polynomial.
    fn is_defined(&self) -> bool {
        self.0.iter().all(|(c, _, q)| c.is_zero() || *q >= 0)
    }
}

fn closed_form(rho: Fraction, which: PredictedSlice) -> Result<BinomialForm> {
    let (a, b) = (rho.num() as i64, rho.den() as i64);
    let n = BigInt::from;
    let form = match which {
        PredictedSlice::S0 => vec![(n(1), b, a - 1)],
        PredictedSlice::R0 => vec![(n(1), a, b - 1)],
        PredictedSlice::R1 => vec![(n(3 * a - 1), a, b - 2), (n(b - 2 * a), a + 1, b - 3)],
        PredictedSlice::T0 => vec![(n(1), 0, a + b - 1)],
        PredictedSlice::T1 => vec![(n(a - 1), 0, a + b - 2), (n(b - a), 1, a + b - 3)],
        PredictedSlice::T2 => {
            let c0 = (a - 1) * (a - 2);
            let c2 = (b - a) * (b - a) + 5 * a - 3 * b;
            debug_assert!(c0 % 2 == 0 && c2 % 2 == 0);
            vec![(n(c0 / 2), 0, a + b - 3), (n(a * (b - a) - a), 1, a + b - 4), (n(c2 / 2), 2, a + b - 5)]
        }
        PredictedSlice::S1Special => return Err(Error::InvalidArgument("S1 has no binomial form".into())),
    };
    Ok(BinomialForm(form))
}

fn s1_special(rho: Fraction) -> Result<Vec<(Point, BigInt)>> {
    let (a, b) = (rho.num() as i64, rho.den() as i64);
    let d = a + b - 1;
    let value = |j: i64| -> BigInt {
        if a == 1 {
            // sum_{k=1}^{n} k v^(k-1) w^(n-k), n = b
            if (0..b).contains(&j) { BigInt::from(j + 1) } else { BigInt::zero() }
        } else {
            // 2n v^(2n-1) + sum_{k=1}^{n-1} 4k v^(n+k-1) w^(n-k), b = 2n - 1
            let n = (b + 1) / 2;
            if j == 2 * n - 1 {
                BigInt::from(2 * n)
            } else if j >= n && j <= 2 * n - 2 {
                BigInt::from(4 * (j - n + 1))
            } else {
                BigInt::zero()
            }
        }
    };
    let special = (a == 1 && b >= 1) || (a == 2 && b % 2 == 1 && b >= 3);
    if !special {
        return Err(Error::InvalidArgument(format!("S1 closed form needs 1/n or 2/(2n-1), got {rho}")));
    }
    Ok(line_points(d, SliceFamily::S, 1).into_iter().map(|p| (p, value(p.1))).collect())
}

/// Closed-form prediction along the whole line (all `i, j >= 0`), so that
/// comparisons also see the zeros off the polygon.
pub fn predicted_line(rho: Fraction, which: PredictedSlice) -> Result<Vec<(Point, BigInt)>> {
    if rho.num() == 0 || rho.den() == 0 {
        return Err(Error::OutOfRange { value: rho, expected: "a >= 1, b >= 1" });
    }
    if which == PredictedSlice::S1Special {
        return s1_special(rho);
    }
    let form = closed_form(rho, which)?;
    if !form.is_defined() {
        return Err(Error::Undefined { rho, detail: format!("{which:?} has a negative power") });
    }
    let d = rho.height() as i64 - 1;
    let (family, k) = which.line();
    Ok(line_points(d, family, k)
        .into_iter()
        .map(|p| {
            // X is u along rows and diagonals, v along columns
            let e = if family == SliceFamily::S { p.1 } else { p.0 };
            (p, form.coefficient(e))
        })
        .collect())
}

/// The prediction restricted to polygon points, aligned with [`slice`].
pub fn predicted_slice(rho: Fraction, which: PredictedSlice) -> Result<Vec<BigInt>> {
    let poly = predicted_polygon(rho);
    Ok(predicted_line(rho, which)?
        .into_iter()
        .filter(|(p, _)| poly.contains(*p))
        .map(|(_, c)| c)
        .collect())
}

/// Compares a closed-form line against the numerator; returns the first
/// disagreeing point.
pub fn compare_predicted_line(m: &MarkovPolynomial, which: PredictedSlice) -> Result<Option<(Point, BigInt, BigUint)>> {
    for (p, want) in predicted_line(m.rho, which)? {
        let got = m.numerator.coeff(p.0, p.1);
        if want != BigInt::from(got.clone()) {
            return Ok(Some((p, want, got.clone())));
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryLine {
    Col0,
    Row0,
    Row1,
    Diag1,
    Diag2,
    Diag3,
}

impl BoundaryLine {
    pub const ALL: [BoundaryLine; 6] =
        [Self::Col0, Self::Row0, Self::Row1, Self::Diag1, Self::Diag2, Self::Diag3];
}

/// Which second factor the `j = 1` row formula uses.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum Row1Variant {
    /// `(b - 2a)`, consistent with the `R_1` slice polynomial.
    #[default]
    Corrected,
    /// `(b - 2)`, kept to demonstrate the discrepancy.
    AsPrinted,
}

/// The lattice point addressed by `index` on a boundary line: `j` for the
/// column, `i` otherwise.
pub fn boundary_point(rho: Fraction, which: BoundaryLine, index: i64) -> Point {
    let d = rho.height() as i64 - 1;
    match which {
        BoundaryLine::Col0 => (0, index),
        BoundaryLine::Row0 => (index, 0),
        BoundaryLine::Row1 => (index, 1),
        BoundaryLine::Diag1 => (index, d - index),
        BoundaryLine::Diag2 => (index, d - 1 - index),
        BoundaryLine::Diag3 => (index, d - 2 - index),
    }
}

pub fn boundary_coefficient(rho: Fraction, which: BoundaryLine, index: i64) -> Result<BigInt> {
    boundary_coefficient_with(rho, which, index, Row1Variant::Corrected)
}

pub fn boundary_coefficient_with(
    rho: Fraction,
    which: BoundaryLine,
    index: i64,
    variant: Row1Variant,
) -> Result<BigInt> {
    if rho.num() == 0 || rho.den() == 0 {
        return Err(Error::OutOfRange { value: rho, expected: "a >= 1, b >= 1" });
    }
    let (a, b) = (rho.num() as i64, rho.den() as i64);
    let p = boundary_point(rho, which, index);
    if !predicted_polygon(rho).contains(p) {
        return Err(Error::NotOnLine { rho, i: p.0, j: p.1 });
    }
    let (i, j) = p;
    let n = BigInt::from;
    let c = binom_int;
    Ok(match which {
        BoundaryLine::Col0 => c(a - 1, j - b),
        BoundaryLine::Row0 => c(b - 1, i - a),
        BoundaryLine::Row1 => {
            if b < 2 {
                return Err(Error::Undefined { rho, detail: "row j = 1 formula needs b >= 2".into() });
            }
            let second = match variant {
                Row1Variant::Corrected => b - 2 * a,
                Row1Variant::AsPrinted => b - 2,
            };
            n(3 * a - 1) * c(b - 2, i - a) + n(second) * c(b - 3, i - a - 1)
        }
        BoundaryLine::Diag1 => c(a + b - 1, i),
        BoundaryLine::Diag2 => n(a - 1) * c(a + b - 2, i) + n(b - a) * c(a + b - 3, i - 1),
        BoundaryLine::Diag3 => {
            let c0 = (a - 1) * (a - 2) / 2;
            let c2 = ((b - a) * (b - a) + 5 * a - 3 * b) / 2;
            n(c0) * c(a + b - 3, i) + n(a * (b - a) - a) * c(a + b - 4, i - 1) + n(c2) * c(a + b - 5, i - 2)
        }
    })
}

/// Indices addressing the polygon points of a boundary line.
pub fn boundary_indices(rho: Fraction, which: BoundaryLine) -> Vec<i64> {
    let poly = predicted_polygon(rho);
    let d = poly.degree();
    (0..=d.max(0)).filter(|&t| poly.contains(boundary_point(rho, which, t))).collect()
}

/// First `k` with `x_k^2 < x_{k-1} x_{k+1}` (or `<=` when `strict`).
pub fn log_concavity_violation<T>(xs: &[T], strict: bool) -> Option<usize>
where
    for<'a> &'a T: std::ops::Mul<&'a T, Output = T>,
    T: Ord,
{
    (1..xs.len().saturating_sub(1)).find(|&k| {
        let sq = &xs[k] * &xs[k];
        let outer = &xs[k - 1] * &xs[k + 1];
        if strict {
            sq <= outer
        } else {
            sq < outer
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Row,
    Column,
    Diagonal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LogConcavityViolation {
    pub direction: Direction,
    pub points: [Point; 3],
    pub values: [String; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LogConcavityVerdict {
    pub pass: bool,
    pub lines_checked: usize,
    pub first_violation: Option<LogConcavityViolation>,
}

/// Polygon points on one principal line, asserting they are contiguous.
fn polygon_line(poly: &NewtonPolygon, direction: Direction, k: i64) -> Vec<Point> {
    let family = match direction {
        Direction::Row => SliceFamily::R,
        Direction::Column => SliceFamily::S,
        Direction::Diagonal => SliceFamily::T,
    };
    let d = poly.degree();
    let k = if direction == Direction::Diagonal { d - k } else { k };
    let pts: Vec<Point> = line_points(d, family, k).into_iter().filter(|&p| poly.contains(p)).collect();
    debug_assert!(
        pts.windows(2).all(|w| (w[1].0 - w[0].0).abs() + (w[1].1 - w[0].1).abs() <= 2),
        "polygon line is not contiguous"
    );
    pts
}

/// Log-concavity of the coefficients on one line: row `j = k`, column
/// `i = k`, or diagonal `i + j = k`.
pub fn log_concavity_on_line(
    m: &MarkovPolynomial,
    direction: Direction,
    k: i64,
    strict: bool,
) -> Option<LogConcavityViolation> {
    let poly = predicted_polygon(m.rho);
    let pts = polygon_line(&poly, direction, k);
    let vals: Vec<BigUint> = pts.iter().map(|&(i, j)| m.numerator.coeff(i, j).clone()).collect();
    log_concavity_violation(&vals, strict).map(|t| LogConcavityViolation {
        direction,
        points: [pts[t - 1], pts[t], pts[t + 1]],
        values: [vals[t - 1].to_string(), vals[t].to_string(), vals[t + 1].to_string()],
    })
}

/// Weak log-concavity along every row, column and `i + j` diagonal.
pub fn log_concavity_check(m: &MarkovPolynomial) -> LogConcavityVerdict {
    let d = m.rho.height() as i64 - 1;
    let mut lines = 0;
    for direction in [Direction::Row, Direction::Column, Direction::Diagonal] {
        for k in 0..=d.max(0) {
            lines += 1;
            if let Some(v) = log_concavity_on_line(m, direction, k, false) {
                return LogConcavityVerdict { pass: false, lines_checked: lines, first_violation: Some(v) };
            }
        }
    }
    LogConcavityVerdict { pass: true, lines_checked: lines, first_violation: None }
}

/// Lattice points with `i < a`, `j < b` and `b i + a j > a b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalTriangle {
    pub a: u64,
    pub b: u64,
    pub lattice_points: Vec<Point>,
}

impl CriticalTriangle {
    pub fn new(rho: Fraction) -> Self {
        let (a, b) = (rho.num() as i64, rho.den() as i64);
        let mut pts = Vec::new();
        for i in 0..a {
            for j in 0..b {
                if b * i + a * j > a * b {
                    pts.push((i, j));
                }
            }
        }
        CriticalTriangle { a: rho.num(), b: rho.den(), lattice_points: pts }
    }

    /// Strictly inside: the three defining inequalities hold.
    pub fn contains(&self, (i, j): Point) -> bool {
        let (a, b) = (self.a as i64, self.b as i64);
        i >= 0 && j >= 0 && i < a && j < b && b * i + a * j > a * b
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factor4Verdict {
    pub pass: bool,
    pub points_checked: usize,
    /// `(point, coefficient)` for every coefficient not divisible by 4.
    pub offending: Vec<(Point, String)>,
}

pub fn factor4_check(m: &MarkovPolynomial) -> Factor4Verdict {
    let tri = CriticalTriangle::new(m.rho);
    let four = BigUint::from(4u32);
    let offending: Vec<(Point, String)> = tri
        .lattice_points
        .iter()
        .filter_map(|&(i, j)| {
            let c = m.numerator.coeff(i, j);
            (!(c % &four).is_zero()).then(|| ((i, j), c.to_string()))
        })
        .collect();
    Factor4Verdict { pass: offending.is_empty(), points_checked: tri.lattice_points.len(), offending }
}
