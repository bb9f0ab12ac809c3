//! The real one-parameter semigroup of inertia maps `j(x)`.
//!
//! Shifting the inertia tensor by `x = m d^2` along a Galois axis keeps the
//! middle principal moment on the axis-orthogonal direction, `B -> B + x`,
//! and replaces the outer pair by the eigenvalues of the 2x2 block
//! `K(x)` with
//!
//! ```text
//! tr  = A + C + x
//! det = A C (1 + x / B)
//! delta = tr^2 - 4 det
//! ```
//!
//! The family satisfies `j(x) . j(y) = j(x + y)` for `x, y >= 0`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::triple::InertiaTriple;

/// Trace, determinant and discriminant of the outer 2x2 block.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InvariantScalars {
    pub tr: f64,
    pub det: f64,
    pub delta: f64,
}

/// Minimum of the discriminant over real `x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtremumReport {
    pub x_min: f64,
    pub delta_min: f64,
}

/// One closed-form check: its residual and whether it met the tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Check {
    pub residual: f64,
    pub pass: bool,
}

impl Check {
    fn within(residual: f64, tol: f64) -> Self {
        Check {
            residual,
            pass: residual <= tol,
        }
    }

    fn holds(ok: bool) -> Self {
        Check {
            residual: if ok { 0.0 } else { 1.0 },
            pass: ok,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClosureReport {
    /// `delta > 0`.
    pub delta_positive: Check,
    /// `D^2 - delta = -4 (B + x)(B - A)(C - B) / B` with `D = A + C - 2B - x`,
    /// residual relative to the largest term.
    pub d_identity: Check,
    /// `l1 + l3 = tr`.
    pub trace: Check,
    /// `l1 l3 = det`.
    pub product: Check,
    /// `0 < l1 < l2 < l3`.
    pub ordered: Check,
}

impl ClosureReport {
    pub fn all_pass(&self) -> bool {
        [
            self.delta_positive,
            self.d_identity,
            self.trace,
            self.product,
            self.ordered,
        ]
        .iter()
        .all(|c| c.pass)
    }
}

fn check_finite(x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFiniteParameter(x))
    }
}

fn check_nonnegative(x: f64) -> Result<()> {
    check_finite(x)?;
    if x < 0.0 {
        return Err(Error::NegativeParameter(x));
    }
    Ok(())
}

/// `tr^2 - 4 det` rewritten as a sum of two non-negative terms on each side
/// of `x = 0`:
///
/// ```text
/// x >= 0:  (C - A - x)^2 + 4 C x (B - A) / B
/// x <  0:  (C - A + x)^2 - 4 A x (C - B) / B
/// ```
pub(crate) fn discriminant(a: f64, b: f64, c: f64, x: f64) -> f64 {
    if x >= 0.0 {
        let u = (c - a) - x;
        u * u + 4.0 * c * x * (b - a) / b
    } else {
        let v = (c - a) + x;
        v * v - 4.0 * a * x * (c - b) / b
    }
}

/// Trace, determinant and discriminant of `K(x)`. Accepts any finite `x`,
/// including the negative values needed to locate the discriminant minimum.
pub fn invariants(t: &InertiaTriple, x: f64) -> Result<InvariantScalars> {
    check_finite(x)?;
    let (a, b, c) = (t.a(), t.b(), t.c());
    Ok(InvariantScalars {
        tr: (a + c) + x,
        det: a * c * (1.0 + x / b),
        delta: discriminant(a, b, c, x),
    })
}

/// Applies `j(x)` for `x >= 0`.
///
/// The middle moment is exactly `B + x`. The larger outer root is
/// `(tr + sqrt(delta)) / 2`; the smaller one is recovered as `det / l3`,
/// which is the same value without the cancellation in `tr - sqrt(delta)`.
/// The ordering `0 < l1 < l2 < l3` is checked, never imposed by sorting.
pub fn j_map(t: &InertiaTriple, x: f64) -> Result<InertiaTriple> {
    check_nonnegative(x)?;
    let inv = invariants(t, x)?;
    let root = inv.delta.sqrt();
    let l3 = 0.5 * (inv.tr + root);
    let l1 = inv.det / l3;
    let l2 = t.b() + x;
    if !(0.0 < l1 && l1 < l2 && l2 < l3 && l3.is_finite()) {
        return Err(Error::OrderViolation(l1, l2, l3));
    }
    Ok(InertiaTriple::from_ordered(l1, l2, l3))
}

/// Determinant of the Jacobian of `j(x)` with respect to `(A, B, C)` at
/// fixed `x`: `(C - A)(1 + x / B) / sqrt(delta)`.
pub fn jacobian_det(t: &InertiaTriple, x: f64) -> Result<f64> {
    check_nonnegative(x)?;
    let inv = invariants(t, x)?;
    Ok((t.c() - t.a()) * (1.0 + x / t.b()) / inv.delta.sqrt())
}

/// Location and value of the discriminant minimum over real `x`:
/// `x_min = 2AC/B - A - C`, `delta_min = 4AC(B - A)(C - B)/B^2`.
pub fn delta_extremum(t: &InertiaTriple) -> ExtremumReport {
    let (a, b, c) = (t.a(), t.b(), t.c());
    ExtremumReport {
        x_min: 2.0 * a * c / b - a - c,
        delta_min: 4.0 * a * c * (b - a) * (c - b) / (b * b),
    }
}

/// Evaluates the closed-form facts that make `j(x)` land in the ordered set.
pub fn closure_identities(t: &InertiaTriple, x: f64, tol: f64) -> Result<ClosureReport> {
    check_nonnegative(x)?;
    let (a, b, c) = (t.a(), t.b(), t.c());
    let inv = invariants(t, x)?;

    let d = inv.tr - 2.0 * (b + x);
    let lhs = d * d - inv.delta;
    let rhs = -4.0 * (b + x) * (b - a) * (c - b) / b;
    let d_scale = (d * d).max(inv.delta).max(rhs.abs());
    let d_identity = Check::within((lhs - rhs).abs() / d_scale, tol);

    let (trace, product, ordered) = match j_map(t, x) {
        Ok(img) => {
            let sum = img.a() + img.c();
            let prod = img.a() * img.c();
            (
                Check::within((sum - inv.tr).abs() / inv.tr.abs(), tol),
                Check::within((prod - inv.det).abs() / inv.det.abs(), tol),
                Check::holds(true),
            )
        }
        Err(Error::OrderViolation(..)) => (
            Check::holds(false),
            Check::holds(false),
            Check::holds(false),
        ),
        Err(e) => return Err(e),
    };

    Ok(ClosureReport {
        delta_positive: Check::holds(inv.delta > 0.0),
        d_identity,
        trace,
        product,
        ordered,
    })
}
