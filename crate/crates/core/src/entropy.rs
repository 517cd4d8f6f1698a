//! Large-scale behaviour of coefficients: the scaled Newton polygon, the
//! empirical entropy `(1/b) ln A_{i,j}` and the closed-form Fibonacci surface
//!
//! ```text
//! F(xi, eta) = (1 - eta) H(xi / (1 - eta)) + (xi + eta) H(xi / (xi + eta)).
//! ```

use std::fmt::Write as _;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::binomial::ln_binom;
use crate::topograph::MarkovPolynomial;
use crate::{Error, Result};

/// Limit shape of the Newton polygons of `a_n/b_n -> alpha`, scaled by `1/b_n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScaledPolygon {
    pub alpha: f64,
}

impl ScaledPolygon {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::InvalidArgument(format!("alpha {alpha} outside [0, 1]")));
        }
        Ok(ScaledPolygon { alpha })
    }

    pub fn contains(&self, xi: f64, eta: f64) -> bool {
        xi > 0.0 && eta > 0.0 && xi + self.alpha * eta > self.alpha && xi + eta < self.alpha + 1.0
    }
}

/// `-p ln p - (1 - p) ln(1 - p)` with `0 ln 0 = 0`.
pub fn shannon_h(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("probability {p} outside [0, 1]")));
    }
    let xlnx = |x: f64| if x == 0.0 { 0.0 } else { x * x.ln() };
    Ok(-xlnx(p) - xlnx(1.0 - p))
}

fn check_triangle(xi: f64, eta: f64) -> Result<()> {
    if xi > 0.0 && eta > 0.0 && xi + eta < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("({xi}, {eta}) outside the open triangle")))
    }
}

/// Closed-form entropy of the Fibonacci family `1/n`.
pub fn fib_entropy(xi: f64, eta: f64) -> Result<f64> {
    check_triangle(xi, eta)?;
    Ok((1.0 - eta) * shannon_h(xi / (1.0 - eta))? + (xi + eta) * shannon_h(xi / (xi + eta))?)
}

/// Analytic gradient of [`fib_entropy`].
pub fn fib_gradient(xi: f64, eta: f64) -> [f64; 2] {
    let s = 1.0 - xi - eta;
    [
        (s * (xi + eta) / (xi * xi)).ln(),
        (s * (xi + eta) / (eta * (1.0 - eta))).ln(),
    ]
}

/// Analytic Hessian `[[F_xx, F_xe], [F_xe, F_ee]]` of [`fib_entropy`].
pub fn fib_hessian(xi: f64, eta: f64) -> [[f64; 2]; 2] {
    let t = 1.0 / (xi + eta - 1.0) + 1.0 / (xi + eta);
    let fxx = -2.0 / xi + t;
    let fee = t + 1.0 / (1.0 - eta) - 1.0 / eta;
    [[fxx, t], [t, fee]]
}

/// `1 / (eta (xi + eta) (1 - eta) (1 - xi - eta))`.
pub fn fib_hessian_det(xi: f64, eta: f64) -> f64 {
    1.0 / (eta * (xi + eta) * (1.0 - eta) * (1.0 - xi - eta))
}

/// `ln A_{i,j}(1/n) = ln [C(n-1-j, n-i-j) C(i+j, j)]`, `-inf` off the support.
pub fn fib_ln_coeff(n: u64, i: i64, j: i64) -> f64 {
    let n = n as f64;
    let (i, j) = (i as f64, j as f64);
    if i == 0.0 && j == n {
        return 0.0;
    }
    ln_binom(n - 1.0 - j, n - i - j) + ln_binom(i + j, j)
}

/// Lattice point of the Newton polygon of `1/n`: `i >= 1, j >= 0, i + j <= n`,
/// together with the apex `(0, n)`.
fn fib_polygon_contains(n: i64, (i, j): (i64, i64)) -> bool {
    (i, j) == (0, n) || (i >= 1 && j >= 0 && i + j <= n)
}

/// Nearest polygon point to `(x, y)` in L1 distance, ties to smaller `i`
/// then smaller `j`.
fn nearest_polygon_point(n: i64, x: f64, y: f64) -> (i64, i64) {
    let (cx, cy) = (x.floor() as i64, y.floor() as i64);
    let mut r = 2;
    loop {
        let mut best: Option<(f64, (i64, i64))> = None;
        for i in cx - r..=cx + r {
            for j in cy - r..=cy + r {
                if !fib_polygon_contains(n, (i, j)) {
                    continue;
                }
                let d = (i as f64 - x).abs() + (j as f64 - y).abs();
                if best.is_none_or(|(bd, _)| d < bd) {
                    best = Some((d, (i, j)));
                }
            }
        }
        // anything outside the window is at distance >= r - 1
        if let Some((d, p)) = best {
            if d <= (r - 1) as f64 {
                return p;
            }
        }
        r *= 2;
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntropySample {
    pub family: String,
    pub n: u64,
    pub xi: f64,
    pub eta: f64,
    pub i: i64,
    pub j: i64,
    pub value: f64,
}

/// `(1/n) ln A_{i_n, j_n}(1/n)` at the polygon point nearest `(n xi, n eta)`.
pub fn empirical_entropy(n: u64, xi: f64, eta: f64) -> Result<EntropySample> {
    check_triangle(xi, eta)?;
    if n < 3 {
        return Err(Error::InvalidArgument(format!("n = {n} below 3")));
    }
    let (i, j) = nearest_polygon_point(n as i64, n as f64 * xi, n as f64 * eta);
    Ok(EntropySample {
        family: format!("1/{n}"),
        n,
        xi,
        eta,
        i,
        j,
        value: fib_ln_coeff(n, i, j) / n as f64,
    })
}

/// `max_{i,j} (1/b) ln A_{i,j}` over an exact grid.
pub fn max_scaled_log_coefficient(m: &MarkovPolynomial) -> f64 {
    let b = m.b() as f64;
    m.numerator
        .terms()
        .map(|(_, _, c)| ln_biguint(c) / b)
        .fold(f64::NEG_INFINITY, f64::max)
}

/// `ln m_rho / b`: every coefficient is at most the Markov number.
pub fn scaled_log_markov_number(m: &MarkovPolynomial) -> f64 {
    ln_biguint(&m.markov_number()) / m.b() as f64
}

fn ln_biguint(x: &num_bigint::BigUint) -> f64 {
    let bits = x.bits();
    if bits < 1000 {
        x.to_f64().unwrap_or(f64::INFINITY).ln()
    } else {
        let shift = bits - 64;
        (x >> shift).to_f64().unwrap_or(f64::INFINITY).ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// Central second differences of [`fib_entropy`] with step `h`.
pub fn numeric_hessian(xi: f64, eta: f64, h: f64) -> Result<[[f64; 2]; 2]> {
    let f = |x: f64, y: f64| fib_entropy(x, y);
    let c = f(xi, eta)?;
    let fxx = (f(xi + h, eta)? - 2.0 * c + f(xi - h, eta)?) / (h * h);
    let fee = (f(xi, eta + h)? - 2.0 * c + f(xi, eta - h)?) / (h * h);
    let fxe = (f(xi + h, eta + h)? - f(xi + h, eta - h)? - f(xi - h, eta + h)? + f(xi - h, eta - h)?)
        / (4.0 * h * h);
    Ok([[fxx, fxe], [fxe, fee]])
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Maximum {
    pub xi: f64,
    pub eta: f64,
    pub value: f64,
}

/// Maximises [`fib_entropy`]: coarse grid, compass search, then Newton steps
/// on the analytic gradient.
pub fn maximize_fib_entropy() -> Maximum {
    let f = |x: f64, y: f64| fib_entropy(x, y).unwrap_or(f64::NEG_INFINITY);
    let g = 200;
    let mut best = (f64::NEG_INFINITY, 0.0, 0.0);
    for i in 1..g {
        for j in 1..g - i {
            let (x, y) = (i as f64 / g as f64, j as f64 / g as f64);
            let v = f(x, y);
            if v > best.0 {
                best = (v, x, y);
            }
        }
    }
    let (mut v, mut x, mut y) = best;
    let mut step = 1.0 / g as f64;
    while step > 1e-10 {
        let mut moved = false;
        for (dx, dy) in [(step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)] {
            let w = f(x + dx, y + dy);
            if w > v {
                (v, x, y) = (w, x + dx, y + dy);
                moved = true;
            }
        }
        if !moved {
            step /= 2.0;
        }
    }
    for _ in 0..5 {
        let [gx, gy] = fib_gradient(x, y);
        let [[a, b], [_, d]] = fib_hessian(x, y);
        let det = a * d - b * b;
        let (nx, ny) = (x - (d * gx - b * gy) / det, y - (a * gy - b * gx) / det);
        if f(nx, ny) < v - 1e-15 {
            break;
        }
        (x, y) = (nx, ny);
        v = f(x, y);
    }
    Maximum { xi: x, eta: y, value: v }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HessianVerdict {
    pub points: usize,
    /// Largest entry error, relative to `max(|closed form|, 1)`.
    pub max_entry_error: f64,
    /// Largest relative error of the numeric determinant.
    pub max_det_error: f64,
    pub concave: bool,
    pub maximum: Maximum,
    pub argmax_error: f64,
    pub max_value_error: f64,
    pub pass: bool,
}

pub const HESSIAN_TOLERANCE: f64 = 1e-4;
pub const ARGMAX_TOLERANCE: f64 = 1e-6;
pub const MAX_VALUE_TOLERANCE: f64 = 1e-9;

/// The exact maximiser `(1/sqrt 5, (5 - sqrt 5)/10)` and value `2 ln phi`.
pub fn fib_entropy_peak() -> Maximum {
    let s5 = 5f64.sqrt();
    Maximum { xi: 1.0 / s5, eta: (5.0 - s5) / 10.0, value: 2.0 * ((1.0 + s5) / 2.0).ln() }
}

/// Points of a `resolution x resolution` grid over `[margin, 1 - 2 margin]^2`
/// kept where `xi + eta <= 1 - margin`.
pub fn interior_grid(resolution: usize, margin: f64) -> Vec<(f64, f64)> {
    let span = 1.0 - 3.0 * margin;
    let step = span / (resolution - 1) as f64;
    let mut out = Vec::new();
    for i in 0..resolution {
        for j in 0..resolution {
            let (x, y) = (margin + i as f64 * step, margin + j as f64 * step);
            if x + y <= 1.0 - margin + 1e-12 {
                out.push((x, y));
            }
        }
    }
    out
}

/// Numeric against closed-form Hessian, strict concavity and the maximum.
pub fn hessian_checks(resolution: usize) -> Result<HessianVerdict> {
    let h = 1e-4;
    let grid = interior_grid(resolution, 0.05);
    let mut max_entry_error: f64 = 0.0;
    let mut max_det_error: f64 = 0.0;
    let mut concave = true;
    for &(x, y) in &grid {
        let exact = fib_hessian(x, y);
        let num = numeric_hessian(x, y, h)?;
        for r in 0..2 {
            for c in 0..2 {
                let e = (num[r][c] - exact[r][c]).abs() / exact[r][c].abs().max(1.0);
                max_entry_error = max_entry_error.max(e);
            }
        }
        let det = fib_hessian_det(x, y);
        let num_det = num[0][0] * num[1][1] - num[0][1] * num[1][0];
        max_det_error = max_det_error.max((num_det - det).abs() / det.abs());
        concave &= exact[0][0] < 0.0 && det > 0.0 && num[0][0] < 0.0 && num_det > 0.0;
    }
    let maximum = maximize_fib_entropy();
    let peak = fib_entropy_peak();
    let argmax_error = (maximum.xi - peak.xi).abs().max((maximum.eta - peak.eta).abs());
    let max_value_error = (maximum.value - peak.value).abs();
    let pass = max_entry_error <= HESSIAN_TOLERANCE
        && max_det_error <= HESSIAN_TOLERANCE
        && concave
        && argmax_error <= ARGMAX_TOLERANCE
        && max_value_error <= MAX_VALUE_TOLERANCE;
    Ok(HessianVerdict {
        points: grid.len(),
        max_entry_error,
        max_det_error,
        concave,
        maximum,
        argmax_error,
        max_value_error,
        pass,
    })
}

/// CSV of the surface on the cell-centred `grid x grid` lattice inside the
/// triangle, with the empirical value at size `n` alongside.
pub fn surface_csv(n: u64, grid: usize) -> Result<String> {
    let mut out = format!("xi,eta,F,empirical_n{n}\n");
    for i in 0..grid {
        for j in 0..grid {
            if i + j + 2 > grid {
                continue;
            }
            let (x, y) = ((i as f64 + 0.5) / grid as f64, (j as f64 + 0.5) / grid as f64);
            let f = fib_entropy(x, y)?;
            let e = empirical_entropy(n, x, y)?.value;
            writeln!(out, "{x},{y},{f},{e}").expect("write to string");
        }
    }
    Ok(out)
}
