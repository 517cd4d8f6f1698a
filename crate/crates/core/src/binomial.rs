//! Binomial coefficients with the conventions used by the closed-form
//! coefficient formulas.
//!
//! * `C(m, 0) = 1` for every integer `m`, negative included (so corner
//!   terms such as the `v^2` of `P_{1/2}` fall out of the Fibonacci formula).
//! * `C(m, k) = 0` for `k < 0`, and for `m >= 0, k > m`.
//! * `C(m, k) = 0` for `m < 0, k > 0`: such arguments only arise off the
//!   Newton polygon, where every formula must read zero.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

pub fn binom(m: i64, k: i64) -> BigUint {
    if k == 0 {
        return BigUint::one();
    }
    if k < 0 || m < 0 || k > m {
        return BigUint::zero();
    }
    let k = k.min(m - k) as u64;
    let m = m as u64;
    let mut acc = BigUint::one();
    for t in 0..k {
        acc *= m - t;
        acc /= t + 1;
    }
    acc
}

#[inline]
pub fn binom_int(m: i64, k: i64) -> BigInt {
    BigInt::from(binom(m, k))
}

/// `ln C(m, k)` through log-gamma, for arguments far beyond exact reach.
pub fn ln_binom(m: f64, k: f64) -> f64 {
    use statrs::function::gamma::ln_gamma;
    if k < 0.0 || k > m {
        return f64::NEG_INFINITY;
    }
    ln_gamma(m + 1.0) - ln_gamma(k + 1.0) - ln_gamma(m - k + 1.0)
}
