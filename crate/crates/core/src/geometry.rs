//! Integer plane geometry: exact orientation, convex hulls, integer lengths
//! and lattice indices.

use num_integer::Integer;

pub type Point = (i64, i64);

/// Twice the signed area of `(o, a, b)`; positive for a left turn.
#[inline]
pub fn cross(o: Point, a: Point, b: Point) -> i128 {
    let (ax, ay) = ((a.0 - o.0) as i128, (a.1 - o.1) as i128);
    let (bx, by) = ((b.0 - o.0) as i128, (b.1 - o.1) as i128);
    ax * by - ay * bx
}

/// Convex hull vertices in counter-clockwise order starting from the
/// lexicographically smallest point. Collinear boundary points are dropped.
/// Degenerate inputs return one or two points.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Point> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() == 2 && lower[0] == lower[1] {
        lower.pop();
    }
    lower
}

/// Number of lattice steps between two lattice points: `gcd(|dx|, |dy|)`.
pub fn integer_length(p: Point, q: Point) -> u64 {
    let dx = (q.0 - p.0).unsigned_abs();
    let dy = (q.1 - p.1).unsigned_abs();
    dx.gcd(&dy)
}

/// All lattice points of the closed segment `p..=q`, in order from `p`.
pub fn segment_points(p: Point, q: Point) -> Vec<Point> {
    let n = integer_length(p, q) as i64;
    if n == 0 {
        return vec![p];
    }
    let (sx, sy) = ((q.0 - p.0) / n, (q.1 - p.1) / n);
    (0..=n).map(|t| (p.0 + t * sx, p.1 + t * sy)).collect()
}

/// Index of the sublattice spanned by the primitive vectors along the arms
/// `apex -> arm1` and `apex -> arm2`. `None` when the arms are collinear or
/// degenerate.
pub fn lattice_index(apex: Point, arm1: Point, arm2: Point) -> Option<u64> {
    let primitive = |p: Point| {
        let g = integer_length(apex, p) as i64;
        (g != 0).then(|| ((p.0 - apex.0) / g, (p.1 - apex.1) / g))
    };
    let (u, v) = (primitive(arm1)?, primitive(arm2)?);
    let det = (u.0 as i128 * v.1 as i128 - u.1 as i128 * v.0 as i128).unsigned_abs();
    (det != 0).then_some(det as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hull_of_square_with_interior() {
        let pts: Vec<Point> = (0..=3).flat_map(|x| (0..=3).map(move |y| (x, y))).collect();
        assert_eq!(convex_hull(&pts), vec![(0, 0), (3, 0), (3, 3), (0, 3)]);
    }

    #[test]
    fn hull_degenerate() {
        assert_eq!(convex_hull(&[(1, 1)]), vec![(1, 1)]);
        assert_eq!(convex_hull(&[(0, 0), (1, 1), (2, 2)]), vec![(0, 0), (2, 2)]);
    }

    #[test]
    fn lengths_and_indices() {
        assert_eq!(integer_length((13, 1), (11, 3)), 2);
        assert_eq!(integer_length((11, 3), (8, 7)), 1);
        assert_eq!(integer_length((0, 0), (5, 0)), 5);
        assert_eq!(lattice_index((0, 0), (1, 0), (0, 1)), Some(1));
        assert_eq!(lattice_index((0, 0), (2, 1), (1, 2)), Some(3));
        assert_eq!(lattice_index((0, 0), (4, 2), (1, 2)), Some(3));
        assert_eq!(lattice_index((0, 0), (1, 1), (3, 3)), None);
        assert_eq!(segment_points((3, 14), (13, 0)), vec![(3, 14), (8, 7), (13, 0)]);
    }
}
