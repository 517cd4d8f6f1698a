//! Klein sails of `b/a` carried into the critical triangle, and the checks
//! relating sail geometry to the coefficients sitting on it.
//!
//! Convergents `C_k = (q_k, p_k)` of `b/a = [a_1, ..., a_n]` alternate between
//! the two sides of the line `y = (b/a) x`. Odd ones form the `A` chain,
//! even ones the `B` chain, and in polygon coordinates
//!
//! ```text
//! A_i = (q_{2i-1}, b - p_{2i-1}),    B_i = (a - q_{2i}, p_{2i}).
//! ```
//!
//! Consecutive vertices of one chain `C_k -> C_{k+2}` are joined by a segment
//! made of `a_{k+2}` steps of the primitive vector `C_{k+1}`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::analysis::CriticalTriangle;
use crate::farey::{continued_fraction, ContinuedFraction, Fraction};
use crate::geometry::{convex_hull, integer_length, lattice_index, Point};
use crate::topograph::MarkovPolynomial;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Chain {
    A,
    B,
}

impl Chain {
    fn of(k: i64) -> Chain {
        if k.rem_euclid(2) == 1 {
            Chain::A
        } else {
            Chain::B
        }
    }
}

/// One sail vertex: the image of convergent `C_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SailVertex {
    pub name: String,
    pub k: i64,
    pub point: Point,
}

/// The lattice segment `C_k -> C_{k+2}` of one chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SailSegment {
    pub chain: Chain,
    pub from_k: i64,
    /// `a_{k+2}`, the number of lattice steps.
    pub quotient: u64,
    /// All lattice points from `C_k` to `C_{k+2}` inclusive.
    pub points: Vec<Point>,
}

impl SailSegment {
    pub fn integer_length(&self) -> u64 {
        integer_length(self.points[0], *self.points.last().expect("nonempty segment"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sail {
    pub rho: Fraction,
    pub cf: ContinuedFraction,
    pub a_vertices: Vec<SailVertex>,
    pub b_vertices: Vec<SailVertex>,
    /// Image of the last convergent `(a, b)`, which closes the chain of its
    /// parity: `(a, 0)` for the `A` chain, `(0, b)` for the `B` chain.
    pub terminal: SailVertex,
    pub segments: Vec<SailSegment>,
}

impl Sail {
    pub fn n(&self) -> i64 {
        self.cf.len() as i64
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    /// Polygon position of `C_k` for `-1 <= k <= n`.
    pub fn vertex(&self, k: i64) -> Option<Point> {
        let (p, q) = self.cf.convergent(k)?;
        Some(map_convergent(self.rho, k, (p, q)))
    }

    /// `C_k` with its `A_i`/`B_i` name.
    pub fn named_vertex(&self, k: i64) -> Option<SailVertex> {
        let point = self.vertex(k)?;
        let name = match Chain::of(k) {
            Chain::A => format!("A_{}", (k + 1) / 2),
            Chain::B => format!("B_{}", k / 2),
        };
        Some(SailVertex { name, k, point })
    }

    pub fn segment(&self, from_k: i64) -> Option<&SailSegment> {
        self.segments.iter().find(|s| s.from_k == from_k)
    }
}

fn map_convergent(rho: Fraction, k: i64, (p, q): (u64, u64)) -> Point {
    let (a, b) = (rho.num() as i64, rho.den() as i64);
    let (p, q) = (p as i64, q as i64);
    match Chain::of(k) {
        Chain::A => (q, b - p),
        Chain::B => (a - q, p),
    }
}

/// Builds the combined sail of `a/b`, `1 <= a < b`. For `a = 1` the critical
/// triangle is empty and so is the sail.
pub fn build_sail(rho: Fraction) -> Result<Sail> {
    let (a, b) = (rho.num(), rho.den());
    if a == 0 || b == 0 || a >= b {
        return Err(Error::OutOfRange { value: rho, expected: "1 <= a < b" });
    }
    let cf = continued_fraction(rho.reciprocal())?;
    let n = cf.len() as i64;
    let mut sail = Sail {
        rho,
        cf,
        a_vertices: Vec::new(),
        b_vertices: Vec::new(),
        terminal: SailVertex { name: String::new(), k: n, point: (0, 0) },
        segments: Vec::new(),
    };
    sail.terminal = sail.named_vertex(n).expect("terminal convergent");
    if a == 1 {
        return Ok(sail);
    }
    for k in -1..n {
        let v = sail.named_vertex(k).expect("convergent in range");
        match Chain::of(k) {
            Chain::A => sail.a_vertices.push(v),
            Chain::B => sail.b_vertices.push(v),
        }
    }
    for k in -1..=(n - 2) {
        let quotient = sail.cf.quotient((k + 2) as usize).expect("quotient in range");
        let start = sail.vertex(k).expect("convergent in range");
        let (p1, q1) = sail.cf.convergent(k + 1).expect("convergent in range");
        let step = match Chain::of(k) {
            Chain::A => (q1 as i64, -(p1 as i64)),
            Chain::B => (-(q1 as i64), p1 as i64),
        };
        let points =
            (0..=quotient as i64).map(|t| (start.0 + t * step.0, start.1 + t * step.1)).collect();
        sail.segments.push(SailSegment { chain: Chain::of(k), from_k: k, quotient, points });
    }
    Ok(sail)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DualityOutcome {
    Match,
    /// `d = +M` instead of `-M`.
    SignFlipped,
    Mismatch,
    /// Fewer than two interior points on the segment, or the dual vertex is
    /// not interior.
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SegmentReport {
    pub name: String,
    pub chain: Chain,
    pub from_k: i64,
    pub quotient: u64,
    pub integer_length: u64,
    pub points: Vec<Point>,
    /// Coefficient at each point, `None` outside the open critical triangle.
    pub m_values: Vec<Option<String>>,
    /// Interior values form an arithmetic progression (vacuous below three).
    pub arithmetic: bool,
    /// The segment takes part in a duality equation; `A_0 A_1` does not, and
    /// its progression status is reported without entering the verdict.
    pub covered: bool,
    /// Common difference from `C_k` towards `C_{k+2}`.
    pub difference: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityEntry {
    pub segment: String,
    pub dual_vertex: String,
    pub difference: Option<String>,
    pub dual_value: Option<String>,
    pub outcome: DualityOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocationOfFour {
    pub vertex: String,
    pub point: Point,
    pub value: Option<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reconstruction {
    pub pass: bool,
    pub checked: usize,
    /// `(point, predicted, actual)`.
    pub mismatches: Vec<(Point, String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeAngleEntry {
    pub relation: String,
    pub expected: u64,
    pub observed: Option<u64>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SailReport {
    pub fraction: Fraction,
    pub quotients: Vec<u64>,
    pub convergents: Vec<(u64, u64)>,
    pub empty: bool,
    pub a_vertices: Vec<SailVertex>,
    pub b_vertices: Vec<SailVertex>,
    pub terminal: SailVertex,
    pub vertex_values: Vec<(String, Point, Option<String>)>,
    pub segments: Vec<SegmentReport>,
    pub arithmetic_pass: bool,
    pub duality: Vec<DualityEntry>,
    pub duality_pass: bool,
    /// Every applicable duality entry came out as `SignFlipped`.
    pub global_sign_flip: bool,
    pub location_of_four: Option<LocationOfFour>,
    pub reconstruction: Reconstruction,
    pub edge_angle: Vec<EdgeAngleEntry>,
    pub edge_angle_pass: bool,
    pub hull_pass: bool,
}

impl SailReport {
    /// Sail duality verdict: progressions on every covered segment and both duality
    /// equations wherever they apply (a uniform sign flip counts as a pass).
    pub fn duality_verdict(&self) -> bool {
        self.arithmetic_pass && self.duality_pass
    }

    /// Location-of-4 together with the values reconstructed from it.
    pub fn location_verdict(&self) -> bool {
        self.location_of_four.as_ref().is_none_or(|l| l.pass) && self.reconstruction.pass
    }
}

fn segment_name(sail: &Sail, k: i64) -> String {
    let from = sail.named_vertex(k).map(|v| v.name).unwrap_or_default();
    let to = match Chain::of(k) {
        Chain::A => format!("A_{}", (k + 3) / 2),
        Chain::B => format!("B_{}", (k + 2) / 2),
    };
    format!("{from}{to}")
}

/// Runs every sail check on `m`, whose fraction must be `a/b` with `a < b`.
pub fn duality_check(m: &MarkovPolynomial) -> Result<SailReport> {
    let sail = build_sail(m.rho)?;
    let tri = CriticalTriangle::new(m.rho);
    let value = |p: Point| -> Option<BigInt> {
        tri.contains(p).then(|| BigInt::from(m.numerator.coeff(p.0, p.1).clone()))
    };
    let n = sail.n();

    let mut segments = Vec::new();
    let mut differences: Vec<(i64, Option<BigInt>)> = Vec::new();
    let mut arithmetic_pass = true;
    for seg in &sail.segments {
        let vals: Vec<Option<BigInt>> = seg.points.iter().map(|&p| value(p)).collect();
        let interior: Vec<&BigInt> = vals.iter().flatten().collect();
        let diffs: Vec<BigInt> = interior.windows(2).map(|w| w[1] - w[0]).collect();
        let arithmetic = diffs.windows(2).all(|w| w[0] == w[1]);
        if seg.from_k >= 0 {
            arithmetic_pass &= arithmetic;
        }
        let difference = diffs.first().cloned();
        differences.push((seg.from_k, difference.clone()));
        segments.push(SegmentReport {
            name: segment_name(&sail, seg.from_k),
            chain: seg.chain,
            from_k: seg.from_k,
            quotient: seg.quotient,
            integer_length: seg.integer_length(),
            points: seg.points.clone(),
            m_values: vals.iter().map(|v| v.as_ref().map(|x| x.to_string())).collect(),
            arithmetic,
            covered: seg.from_k >= 0,
            difference: difference.map(|d| d.to_string()),
        });
    }

    // d(C_k C_{k+2}) = -M(C_{k+1}) for k >= 0
    let mut duality = Vec::new();
    for &(k, ref d) in differences.iter().filter(|(k, _)| *k >= 0) {
        let dual = sail.named_vertex(k + 1).expect("dual vertex exists");
        let dual_value = value(dual.point);
        let outcome = match (d, &dual_value) {
            (Some(d), Some(mv)) if *d == -mv => DualityOutcome::Match,
            (Some(d), Some(mv)) if d == mv => DualityOutcome::SignFlipped,
            (Some(_), Some(_)) => DualityOutcome::Mismatch,
            _ => DualityOutcome::NotApplicable,
        };
        duality.push(DualityEntry {
            segment: segment_name(&sail, k),
            dual_vertex: dual.name,
            difference: d.as_ref().map(|x| x.to_string()),
            dual_value: dual_value.map(|x| x.to_string()),
            outcome,
        });
    }
    let applicable: Vec<DualityOutcome> =
        duality.iter().map(|e| e.outcome).filter(|o| *o != DualityOutcome::NotApplicable).collect();
    let global_sign_flip = !applicable.is_empty() && applicable.iter().all(|o| *o == DualityOutcome::SignFlipped);
    let duality_pass =
        applicable.iter().all(|o| *o == DualityOutcome::Match) || global_sign_flip;

    let location_of_four = (n >= 2).then(|| {
        let v = sail.named_vertex(n - 1).expect("penultimate convergent");
        let val = value(v.point);
        LocationOfFour {
            pass: val == Some(BigInt::from(4)),
            vertex: v.name,
            point: v.point,
            value: val.map(|x| x.to_string()),
        }
    });

    let reconstruction = reconstruct(&sail, &value);

    let mut edge_angle = Vec::new();
    for i in 0.. {
        let mut any = false;
        // angle at A_{i+1} against B_i B_{i+1}
        if 2 * i + 3 <= n {
            any = true;
            let q = sail.cf.quotient((2 * i + 2) as usize).expect("quotient");
            let apex = sail.vertex(2 * i + 1).expect("vertex");
            let idx = lattice_index(apex, sail.vertex(2 * i - 1).expect("vertex"), sail.vertex(2 * i + 3).expect("vertex"));
            edge_angle.push(EdgeAngleEntry {
                relation: format!("la(A_{}A_{}A_{})", i, i + 1, i + 2),
                expected: q,
                observed: idx,
                pass: idx == Some(q),
            });
        }
        if 2 * i + 2 <= n {
            any = true;
            let q = sail.cf.quotient((2 * i + 2) as usize).expect("quotient");
            let len = integer_length(sail.vertex(2 * i).expect("vertex"), sail.vertex(2 * i + 2).expect("vertex"));
            edge_angle.push(EdgeAngleEntry {
                relation: format!("ll(B_{}B_{})", i, i + 1),
                expected: q,
                observed: Some(len),
                pass: len == q,
            });
        }
        // angle at B_{i+1} against A_{i+1} A_{i+2}
        if 2 * i + 4 <= n {
            let q = sail.cf.quotient((2 * i + 3) as usize).expect("quotient");
            let apex = sail.vertex(2 * i + 2).expect("vertex");
            let idx = lattice_index(apex, sail.vertex(2 * i).expect("vertex"), sail.vertex(2 * i + 4).expect("vertex"));
            edge_angle.push(EdgeAngleEntry {
                relation: format!("la(B_{}B_{}B_{})", i, i + 1, i + 2),
                expected: q,
                observed: idx,
                pass: idx == Some(q),
            });
        }
        if 2 * i + 3 <= n {
            let q = sail.cf.quotient((2 * i + 3) as usize).expect("quotient");
            let len = integer_length(sail.vertex(2 * i + 1).expect("vertex"), sail.vertex(2 * i + 3).expect("vertex"));
            edge_angle.push(EdgeAngleEntry {
                relation: format!("ll(A_{}A_{})", i + 1, i + 2),
                expected: q,
                observed: Some(len),
                pass: len == q,
            });
        }
        if !any {
            break;
        }
    }
    let edge_angle_pass = edge_angle.iter().all(|e| e.pass)
        && sail.segments.iter().all(|s| s.integer_length() == s.quotient);

    let mut vertex_values: Vec<(String, Point, Option<String>)> = Vec::new();
    for v in sail.a_vertices.iter().chain(&sail.b_vertices) {
        vertex_values.push((v.name.clone(), v.point, value(v.point).map(|x| x.to_string())));
    }

    Ok(SailReport {
        fraction: m.rho,
        quotients: sail.cf.quotients().to_vec(),
        convergents: (1..=n).filter_map(|k| sail.cf.convergent(k)).collect(),
        empty: sail.is_empty(),
        a_vertices: sail.a_vertices.clone(),
        b_vertices: sail.b_vertices.clone(),
        terminal: sail.terminal.clone(),
        vertex_values,
        segments,
        arithmetic_pass,
        duality,
        duality_pass,
        global_sign_flip,
        location_of_four: if sail.is_empty() { None } else { location_of_four },
        reconstruction,
        edge_angle,
        edge_angle_pass,
        hull_pass: hull_cross_check(m.rho),
    })
}

/// Walks the duality equations backwards from `M(C_{n-1}) = 4`:
/// `M(C_{n-2}) = 4 a_n`, `M(C_k) = M(C_{k+2}) + a_{k+2} M(C_{k+1})`, and
/// `M(C_k + t C_{k+1}) = M(C_k) - t M(C_{k+1})` along each segment. The
/// segment `A_0 A_1` is not reachable this way and is left out.
fn reconstruct(sail: &Sail, value: &dyn Fn(Point) -> Option<BigInt>) -> Reconstruction {
    let n = sail.n();
    if sail.is_empty() {
        return Reconstruction { pass: true, checked: 0, mismatches: Vec::new() };
    }
    // predicted M(C_k) for k = 0..n-1
    let mut mv = vec![BigInt::zero(); n as usize];
    mv[(n - 1) as usize] = BigInt::from(4);
    if n >= 2 {
        let an = sail.cf.quotient(n as usize).expect("last quotient");
        mv[(n - 2) as usize] = BigInt::from(4 * an);
    }
    for k in (0..n - 2).rev() {
        let q = sail.cf.quotient((k + 2) as usize).expect("quotient");
        mv[k as usize] = &mv[(k + 2) as usize] + BigInt::from(q) * &mv[(k + 1) as usize];
    }
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for seg in sail.segments.iter().filter(|s| s.from_k >= 0) {
        let k = seg.from_k as usize;
        for (t, &p) in seg.points.iter().enumerate() {
            let predicted = &mv[k] - BigInt::from(t) * &mv[k + 1];
            if let Some(actual) = value(p) {
                checked += 1;
                if actual != predicted {
                    mismatches.push((p, predicted.to_string(), actual.to_string()));
                }
            }
        }
    }
    Reconstruction { pass: mismatches.is_empty(), checked, mismatches }
}

/// The sail chains recovered as convex-hull boundaries in the original
/// Klein-diagram coordinates `(q, p)`: the hull of lattice points of
/// `[0, a] x [0, b]` strictly above the line `y = (b/a) x`, plus `(a, b)`, faces
/// the line along the even convergents; the set strictly below along the odd
/// ones.
pub fn hull_cross_check(rho: Fraction) -> bool {
    let Ok(sail) = build_sail(rho) else { return false };
    if sail.is_empty() {
        return true;
    }
    let (a, b) = (rho.num() as i64, rho.den() as i64);
    let n = sail.n();
    let conv = |k: i64| {
        let (p, q) = sail.cf.convergent(k).expect("convergent");
        (q as i64, p as i64)
    };
    let mut above = vec![(a, b)];
    let mut below = vec![(a, b)];
    for x in 0..=a {
        for y in 0..=b {
            match (a * y).cmp(&(b * x)) {
                std::cmp::Ordering::Greater => above.push((x, y)),
                std::cmp::Ordering::Less => below.push((x, y)),
                std::cmp::Ordering::Equal => {}
            }
        }
    }
    let hull_above = convex_hull(&above);
    let Some(end) = hull_above.iter().position(|&p| p == (a, b)) else { return false };
    let upper_chain: Vec<Point> = hull_above[..=end].to_vec();

    let hull_below = convex_hull(&below);
    let Some(start) = hull_below.iter().position(|&p| p == (a, b)) else { return false };
    let mut lower_chain: Vec<Point> = hull_below[start..].to_vec();
    lower_chain.push(hull_below[0]);
    lower_chain.reverse();

    let mut even: Vec<Point> = (0..=n).filter(|k| k % 2 == 0).map(conv).collect();
    let mut odd: Vec<Point> = (-1..=n).filter(|k| k.rem_euclid(2) == 1).map(conv).collect();
    if n % 2 == 1 {
        even.push((a, b));
    } else {
        odd.push((a, b));
    }
    upper_chain == even && lower_chain == odd
}

/// Empty-sail report for `a = 1`.
pub fn empty_report(rho: Fraction) -> Result<SailReport> {
    let sail = build_sail(rho)?;
    Ok(SailReport {
        fraction: rho,
        quotients: sail.cf.quotients().to_vec(),
        convergents: (1..=sail.n()).filter_map(|k| sail.cf.convergent(k)).collect(),
        empty: true,
        a_vertices: Vec::new(),
        b_vertices: Vec::new(),
        terminal: sail.terminal.clone(),
        vertex_values: Vec::new(),
        segments: Vec::new(),
        arithmetic_pass: true,
        duality: Vec::new(),
        duality_pass: true,
        global_sign_flip: false,
        location_of_four: None,
        reconstruction: Reconstruction { pass: true, checked: 0, mismatches: Vec::new() },
        edge_angle: Vec::new(),
        edge_angle_pass: true,
        hull_pass: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topograph::{markov_polynomial, Engine};

    fn fr(s: &str) -> Fraction {
        s.parse().unwrap()
    }

    fn points(vs: &[SailVertex]) -> Vec<Point> {
        vs.iter().map(|v| v.point).collect()
    }

    #[test]
    fn thirteen_eighteenths_vertices() {
        let s = build_sail(fr("13/18")).unwrap();
        assert_eq!(points(&s.a_vertices), vec![(1, 18), (1, 17), (3, 14)]);
        assert_eq!(points(&s.b_vertices), vec![(13, 1), (11, 3), (8, 7)]);
        assert_eq!(s.terminal.point, (13, 0));
        assert_eq!(s.terminal.name, "A_3");
        assert_eq!(s.segment(0).unwrap().points, vec![(13, 1), (12, 2), (11, 3)]);
        assert_eq!(s.segment(3).unwrap().points, vec![(3, 14), (8, 7), (13, 0)]);
    }

    #[test]
    fn five_thirds_sail() {
        // 3/5: b/a = 5/3 = [1, 1, 2]
        let s = build_sail(fr("3/5")).unwrap();
        assert_eq!(points(&s.a_vertices), vec![(1, 5), (1, 4)]);
        assert_eq!(points(&s.b_vertices), vec![(3, 1), (2, 2)]);
        assert_eq!(s.terminal.point, (3, 0));
    }

    #[test]
    fn fibonacci_sail_is_empty() {
        let s = build_sail(fr("1/7")).unwrap();
        assert!(s.is_empty());
        assert!(build_sail(fr("0/1")).is_err());
        assert!(build_sail(fr("1/1")).is_err());
        let r = empty_report(fr("1/7")).unwrap();
        assert!(r.empty && r.duality_verdict() && r.location_verdict());
    }

    #[test]
    fn example_values() {
        let r = duality_check(&markov_polynomial(fr("13/18")).unwrap()).unwrap();
        let val = |name: &str| {
            r.vertex_values.iter().find(|v| v.0 == name).and_then(|v| v.2.clone()).unwrap()
        };
        assert_eq!(val("B_2"), "4");
        assert_eq!(val("A_2"), "8");
        assert_eq!(val("B_1"), "12");
        assert_eq!(val("A_1"), "20");
        assert_eq!(r.segments.iter().find(|s| s.name == "B_0B_1").unwrap().m_values[1].as_deref(), Some("32"));
        assert!(r.duality_verdict());
        assert!(!r.global_sign_flip);
        assert!(r.location_verdict());
        assert!(r.edge_angle_pass && r.hull_pass);
        let len = |name: &str| r.segments.iter().find(|s| s.name == name).unwrap().integer_length;
        assert_eq!((len("B_0B_1"), len("B_1B_2"), len("A_1A_2"), len("A_2A_3")), (2, 1, 1, 2));
    }

    #[test]
    fn two_thirds_location_of_four() {
        let r = duality_check(&markov_polynomial(fr("2/3")).unwrap()).unwrap();
        let l = r.location_of_four.unwrap();
        assert_eq!((l.vertex.as_str(), l.point, l.value.as_deref()), ("A_1", (1, 2), Some("4")));
    }

    #[test]
    fn lattice_index_at_a1() {
        let s = build_sail(fr("13/18")).unwrap();
        let (a0, a1, a2) = (s.vertex(-1).unwrap(), s.vertex(1).unwrap(), s.vertex(3).unwrap());
        assert_eq!(lattice_index(a1, a0, a2), Some(2));
    }

    #[test]
    fn pell_sails_step_by_four() {
        let mut e = Engine::new();
        for n in 2..10 {
            let m = e.markov_polynomial(Fraction::new(n, n + 1).unwrap()).unwrap();
            let r = duality_check(&m).unwrap();
            for seg in &r.segments {
                if let Some(d) = &seg.difference {
                    assert_eq!(d, "-4", "{n} {}", seg.name);
                }
            }
        }
    }

    #[test]
    fn geometry_matches_continued_fractions() {
        for f in crate::farey::fractions_up_to(60) {
            if f.num() < 2 {
                continue;
            }
            let s = build_sail(f).unwrap();
            assert!(s.segments.iter().all(|seg| seg.integer_length() == seg.quotient), "{f}");
            assert!(hull_cross_check(f), "{f}");
        }
    }
}
