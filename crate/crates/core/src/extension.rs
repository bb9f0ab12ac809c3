//! Scaling maps and the two-parameter extension of the inertia (semi)group.
//!
//! An [`ExtendedElement`] `E(a, b)` stands for the coset `s(a) . j(b)` and
//! acts on a triple by scaling first and then applying the inertia map, so
//! the middle moment moves as `B -> a B + b`. In a product the right factor
//! acts first, which gives
//!
//! ```text
//! E(a1, b1) * E(a2, b2) = E(a1 a2, b1 + a1 b2)
//! ```
//!
//! exactly the multiplication of the affine maps `z -> a z + b`.

use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::complex_maps::jbar_map;
use crate::error::{Error, Result};
use crate::real_maps::j_map;
use crate::triple::{ComplexTriple, InertiaTriple};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Which structure an element lives in: the real semigroup (scale > 0,
/// shift >= 0) or the complex group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Context {
    Semigroup,
    Group,
}

/// `s(a)`: componentwise multiplication by a non-zero factor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScalingMap {
    factor: Complex64,
}

impl ScalingMap {
    pub fn real(a: f64) -> Result<Self> {
        if a == 0.0 {
            return Err(Error::ZeroScale);
        }
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::NonPositiveScale(a));
        }
        Ok(ScalingMap {
            factor: Complex64::new(a, 0.0),
        })
    }

    pub fn complex(a: Complex64) -> Result<Self> {
        if a == ZERO || !a.is_finite() {
            return Err(Error::ZeroScale);
        }
        Ok(ScalingMap { factor: a })
    }

    pub fn factor(&self) -> Complex64 {
        self.factor
    }

    pub fn inverse(&self) -> ScalingMap {
        ScalingMap {
            factor: ONE / self.factor,
        }
    }

    pub fn apply(&self, t: &ComplexTriple) -> ComplexTriple {
        let k = self.factor;
        ComplexTriple::new(k * t.a, k * t.b, k * t.c)
    }
}

/// Scales a physical triple by `a > 0`.
pub fn s_apply_real(t: &InertiaTriple, a: f64) -> Result<InertiaTriple> {
    ScalingMap::real(a)?;
    let (p, q, r) = (a * t.a(), a * t.b(), a * t.c());
    if !(0.0 < p && p < q && q < r && r.is_finite()) {
        return Err(Error::OrderViolation(p, q, r));
    }
    Ok(InertiaTriple::from_ordered(p, q, r))
}

/// Scales a complex triple by `a != 0`.
pub fn s_apply(t: &ComplexTriple, a: Complex64) -> Result<ComplexTriple> {
    Ok(ScalingMap::complex(a)?.apply(t))
}

/// The coset `s(a) . j(b)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtendedElement {
    scale: Complex64,
    shift: Complex64,
    context: Context,
}

impl ExtendedElement {
    /// Element of the real semigroup: `a > 0`, `b >= 0`.
    pub fn semigroup(a: f64, b: f64) -> Result<Self> {
        ScalingMap::real(a)?;
        if !(b >= 0.0 && b.is_finite()) {
            return Err(Error::NegativeShift);
        }
        Ok(ExtendedElement {
            scale: Complex64::new(a, 0.0),
            shift: Complex64::new(b, 0.0),
            context: Context::Semigroup,
        })
    }

    /// Element of the complex group: any `a != 0`, any finite `b`.
    pub fn group(a: Complex64, b: Complex64) -> Result<Self> {
        ScalingMap::complex(a)?;
        if !b.is_finite() {
            return Err(Error::NonFiniteParameter(b.norm()));
        }
        Ok(ExtendedElement {
            scale: a,
            shift: b,
            context: Context::Group,
        })
    }

    pub fn identity(context: Context) -> Self {
        ExtendedElement {
            scale: ONE,
            shift: ZERO,
            context,
        }
    }

    pub fn scale(&self) -> Complex64 {
        self.scale
    }

    pub fn shift(&self) -> Complex64 {
        self.shift
    }

    pub fn context(&self) -> Context {
        self.context
    }

    /// Real scale and shift if the element lies in the real semigroup,
    /// whatever its context flag.
    pub fn as_semigroup(&self) -> Option<(f64, f64)> {
        let real = self.scale.im == 0.0 && self.shift.im == 0.0;
        (real && self.scale.re > 0.0 && self.shift.re >= 0.0)
            .then_some((self.scale.re, self.shift.re))
    }
}

impl fmt::Display for ExtendedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E({}, {})", self.scale, self.shift)
    }
}

/// Applies `E(a, b)` to a physical triple: scale by `a`, then `j(b)`.
pub fn ext_apply_real(e: &ExtendedElement, t: &InertiaTriple) -> Result<InertiaTriple> {
    let (a, b) = e.as_semigroup().ok_or(Error::NotInSemigroup)?;
    j_map(&s_apply_real(t, a)?, b)
}

/// Applies `E(a, b)` to a complex triple; the result is one sheet of the
/// two-valued image.
pub fn ext_apply(e: &ExtendedElement, t: &ComplexTriple) -> Result<ComplexTriple> {
    let scaled = s_apply(t, e.scale)?;
    Ok(jbar_map(&scaled, e.shift)?.to_triple())
}

/// `E(a1, b1) * E(a2, b2) = E(a1 a2, b1 + a1 b2)`; `e2` acts first.
/// The product stays in the semigroup only when both factors do.
pub fn ext_mul(e1: &ExtendedElement, e2: &ExtendedElement) -> Result<ExtendedElement> {
    let scale = e1.scale * e2.scale;
    if scale == ZERO {
        return Err(Error::ZeroScale);
    }
    let context = if e1.context == Context::Semigroup && e2.context == Context::Semigroup {
        Context::Semigroup
    } else {
        Context::Group
    };
    Ok(ExtendedElement {
        scale,
        shift: e1.shift + e1.scale * e2.shift,
        context,
    })
}

/// `E(a, b)^-1 = E(1/a, -b/a)`. In the semigroup only pure scalings are
/// invertible.
pub fn ext_inverse(e: &ExtendedElement) -> Result<ExtendedElement> {
    if e.scale == ZERO {
        return Err(Error::ZeroScale);
    }
    if e.context == Context::Semigroup && e.shift != ZERO {
        return Err(Error::NoInverseInSemigroup);
    }
    let inv = ONE / e.scale;
    Ok(ExtendedElement {
        scale: inv,
        shift: ZERO - e.shift * inv,
        context: e.context,
    })
}

/// `al(a, b): z -> a z + b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AffineMap {
    pub a: Complex64,
    pub b: Complex64,
}

impl AffineMap {
    pub fn new(a: Complex64, b: Complex64) -> Result<Self> {
        if a == ZERO {
            return Err(Error::ZeroScale);
        }
        Ok(AffineMap { a, b })
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        self.a * z + self.b
    }
}

pub fn to_affine(e: &ExtendedElement) -> AffineMap {
    AffineMap {
        a: e.scale,
        b: e.shift,
    }
}

/// `f . g`, with `g` applied first.
pub fn affine_compose(f: &AffineMap, g: &AffineMap) -> AffineMap {
    AffineMap {
        a: f.a * g.a,
        b: f.a * g.b + f.b,
    }
}
