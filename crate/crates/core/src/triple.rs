//! Principal-moment triples, validation, and the sheet involution.
//!
//! [`InertiaTriple`] is the ordered physical set `0 < A < B < C`. The complex
//! extension [`ComplexTriple`] carries no ordering; two complex triples that
//! differ only by swapping the outer components describe the same point of a
//! two-valued map, which is what [`eq_mod_involution`] tests.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default relative separation required between any two moments.
pub const EPS_DEG: f64 = 1e-12;

/// Numerical thresholds shared by the verification code.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Relative separation below which two moments count as equal.
    pub deg: f64,
    /// Relative tolerance for closed-form identities.
    pub id: f64,
    /// Agreement between closed forms and the eigen-solver oracle.
    pub oracle: f64,
    /// Agreement with finite-difference derivatives.
    pub fd: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            deg: EPS_DEG,
            id: 1e-11,
            oracle: 1e-9,
            fd: 1e-5,
        }
    }
}

impl Tolerances {
    pub fn new(deg: f64, id: f64, oracle: f64, fd: f64) -> Result<Self> {
        for (name, v) in [("deg", deg), ("id", id), ("oracle", oracle), ("fd", fd)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidTolerance(name));
            }
        }
        Ok(Tolerances {
            deg,
            id,
            oracle,
            fd,
        })
    }
}

/// Ordered principal moments of inertia, `0 < A < B < C`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InertiaTriple {
    a: f64,
    b: f64,
    c: f64,
}

impl InertiaTriple {
    /// Validates with the default degeneracy threshold.
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        validate_triple_with(a, b, c, EPS_DEG)
    }

    /// Caller guarantees `0 < a < b < c`.
    pub(crate) fn from_ordered(a: f64, b: f64, c: f64) -> Self {
        debug_assert!(0.0 < a && a < b && b < c, "unordered ({a}, {b}, {c})");
        InertiaTriple { a, b, c }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn to_array(&self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }

    pub fn to_complex(&self) -> ComplexTriple {
        ComplexTriple::from_real(self.a, self.b, self.c)
    }
}

impl fmt::Display for InertiaTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

impl TryFrom<[f64; 3]> for InertiaTriple {
    type Error = Error;

    fn try_from(v: [f64; 3]) -> Result<Self> {
        InertiaTriple::new(v[0], v[1], v[2])
    }
}

/// Checks membership in the ordered positive set with the default threshold.
pub fn validate_triple(a: f64, b: f64, c: f64) -> Result<InertiaTriple> {
    validate_triple_with(a, b, c, EPS_DEG)
}

pub fn validate_triple_with(a: f64, b: f64, c: f64, eps_deg: f64) -> Result<InertiaTriple> {
    if !(a.is_finite() && b.is_finite() && c.is_finite()) {
        return Err(Error::NonFinite(a, b, c));
    }
    if a <= 0.0 || b <= 0.0 || c <= 0.0 {
        return Err(Error::NonPositive(a, b, c));
    }
    let close = |p: f64, q: f64| (p - q).abs() < eps_deg * p.max(q);
    if close(a, b) || close(b, c) || close(a, c) {
        return Err(Error::Degenerate(a, b, c));
    }
    if !(a < b && b < c) {
        return Err(Error::Disordered(a, b, c));
    }
    Ok(InertiaTriple { a, b, c })
}

/// Unordered complex triple; the domain of the two-valued maps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexTriple {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
}

impl ComplexTriple {
    pub fn new(a: Complex64, b: Complex64, c: Complex64) -> Self {
        ComplexTriple { a, b, c }
    }

    pub fn from_real(a: f64, b: f64, c: f64) -> Self {
        ComplexTriple {
            a: Complex64::new(a, 0.0),
            b: Complex64::new(b, 0.0),
            c: Complex64::new(c, 0.0),
        }
    }

    pub fn to_array(&self) -> [Complex64; 3] {
        [self.a, self.b, self.c]
    }

    /// Largest component modulus.
    pub fn scale(&self) -> f64 {
        self.a.norm().max(self.b.norm()).max(self.c.norm())
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|z| z.is_finite())
    }
}

impl From<InertiaTriple> for ComplexTriple {
    fn from(t: InertiaTriple) -> Self {
        t.to_complex()
    }
}

impl fmt::Display for ComplexTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// Swaps the outer components: `(A, B, C) -> (C, B, A)`.
pub fn involution(t: &ComplexTriple) -> ComplexTriple {
    ComplexTriple {
        a: t.c,
        b: t.b,
        c: t.a,
    }
}

/// Largest discrepancy between two triples once the outer pair is treated
/// as unordered, normalized by the larger triple's scale.
///
/// Compares the middle components, the sums `A + C` (both scaled by `s`)
/// and the products `A C` (scaled by `s^2`). Returns `f64::INFINITY` for
/// non-finite input.
pub fn involution_residual(t1: &ComplexTriple, t2: &ComplexTriple) -> f64 {
    if !(t1.is_finite() && t2.is_finite()) {
        return f64::INFINITY;
    }
    let scale = t1.scale().max(t2.scale());
    if scale == 0.0 {
        return 0.0;
    }
    let mid = (t1.b - t2.b).norm() / scale;
    let sum = ((t1.a + t1.c) - (t2.a + t2.c)).norm() / scale;
    let prod = (t1.a * t1.c - t2.a * t2.c).norm() / (scale * scale);
    mid.max(sum).max(prod)
}

/// Equality of two-valued outputs: same middle component and the same
/// unordered outer pair, to relative tolerance `tol`.
pub fn eq_mod_involution(t1: &ComplexTriple, t2: &ComplexTriple, tol: f64) -> bool {
    involution_residual(t1, t2) <= tol
}
