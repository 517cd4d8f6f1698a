//! Exact computation of Markov polynomials along the Conway topograph.
//!
//! The Markov polynomial `M_{a/b}(x, y, z)` is the Laurent polynomial obtained
//! from the initial triple `(x, y, z)` by Vieta moves, indexed by the rational
//! `a/b` in `[0, 1]` occupying the same topograph region. Its numerator
//! `P_{a/b}(u, v, w)` (with `u = x^2, v = y^2, w = z^2`) is a homogeneous
//! polynomial of degree `a + b - 1` with nonnegative integer coefficients; the
//! crate studies those coefficients as weights on the Newton polygon.
//!
//! Module map:
//!
//! * [`farey`]: fractions, mediants, continued fractions, Stern–Brocot descent.
//! * [`polynomial`] and [`laurent`]: exact sparse/dense polynomial arithmetic.
//! * [`topograph`]: the numerator recursion, Markov numbers, the generalised
//!   Markov equation and an independent Laurent/Vieta oracle.
//! * [`analysis`]: Newton polygons, slices, boundary coefficients,
//!   log-concavity and the factor-4 check.
//! * [`special`]: Fibonacci and Pell families.
//! * [`sails`]: Klein sails inside the critical triangle.
//! * [`entropy`]: continuum-limit entropy of the Fibonacci family.
//! * [`sweep`] and [`selftest`]: batch drivers used by the command line tool.

pub mod analysis;
pub mod binomial;
pub mod entropy;
mod error;
pub mod farey;
pub mod geometry;
pub mod laurent;
mod par;
pub mod polynomial;
pub mod sails;
pub mod selftest;
pub mod special;
pub mod sweep;
pub mod topograph;

pub use error::{Error, Result};
pub use farey::{ContinuedFraction, DescentStep, Fraction, Side};
pub use laurent::{LaurentPoly, LaurentPoly2, LaurentPoly3};
pub use polynomial::HomogPoly;
pub use topograph::{Engine, MarkovPolynomial, MarkovTriple};

/// Whether the crate was built with the rayon-backed parallel drivers.
pub const PARALLEL: bool = cfg!(feature = "parallel");
