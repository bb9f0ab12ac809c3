//! Geometric ground truth for the inertia maps.
//!
//! The Galois axes are the normals of the two planes through the center of
//! mass that cut the ellipsoid `x^2/A + y^2/B + z^2/C = 1` in a circle. Shifting
//! the inertia tensor along such an axis with the parallel-axis rule and
//! diagonalizing it numerically reproduces `j(x)` without using any of its
//! closed forms. The same machinery, pointed at other axis rules, is the
//! search space of [`falsify_search`].

mod eigen;
mod falsify;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use eigen::{sym3_eigen, sym3_eigenvalues, SymEigen};
pub(crate) use falsify::{draw_triple, sample_rng};
pub use falsify::{falsify_search, FalsifyReport, RuleReport, SampleRecord};

use crate::error::{Error, Result};
use crate::triple::{validate_triple, InertiaTriple};

/// Residual below which a central section counts as a circle.
pub const CIRCULAR_THRESHOLD: f64 = 1e-10;

/// Unit vector in the principal frame at the center of mass.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AxisVector {
    n: [f64; 3],
}

impl AxisVector {
    /// Accepts a vector whose squared norm is 1 to within 4 ulp.
    pub fn new(n1: f64, n2: f64, n3: f64) -> Result<Self> {
        let norm2 = n1 * n1 + n2 * n2 + n3 * n3;
        if !((norm2 - 1.0).abs() <= 4.0 * f64::EPSILON) {
            return Err(Error::NonUnitAxis(norm2));
        }
        Ok(AxisVector { n: [n1, n2, n3] })
    }

    /// Normalizes any non-zero finite direction.
    pub fn normalized(v: [f64; 3]) -> Result<Self> {
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::NonUnitAxis(norm * norm));
        }
        let n = v.map(|c| c / norm);
        // one refinement step absorbs the rounding of the first division
        let r = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
        AxisVector::new(n[0] / r, n[1] / r, n[2] / r)
    }

    pub fn principal(index: usize) -> Result<Self> {
        let mut n = [0.0; 3];
        match index {
            1..=3 => n[index - 1] = 1.0,
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "principal axis index must be 1, 2 or 3, got {index}"
                )))
            }
        }
        Ok(AxisVector { n })
    }

    pub fn components(&self) -> [f64; 3] {
        self.n
    }
}

impl fmt::Display for AxisVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.n[0], self.n[1], self.n[2])
    }
}

/// Symmetric 3x3 inertia tensor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InertiaTensor {
    m: [[f64; 3]; 3],
}

impl InertiaTensor {
    pub fn diagonal(d: [f64; 3]) -> Self {
        let mut m = [[0.0; 3]; 3];
        for i in 0..3 {
            m[i][i] = d[i];
        }
        InertiaTensor { m }
    }

    /// Builds a symmetric tensor from the upper triangle of `m`.
    pub fn from_upper(m: [[f64; 3]; 3]) -> Self {
        let mut s = m;
        for i in 0..3 {
            for j in 0..i {
                s[i][j] = s[j][i];
            }
        }
        InertiaTensor { m: s }
    }

    pub fn matrix(&self) -> &[[f64; 3]; 3] {
        &self.m
    }

    pub fn eigenvalues(&self) -> [f64; 3] {
        sym3_eigenvalues(&self.m)
    }
}

/// The two Galois axes `(cos t, 0, +-sin t)` with
/// `sin^2 t = A(C - B) / (B(C - A))`, ordered `[+, -]` by the sign of `n3`.
pub fn galois_axes(t: &InertiaTriple) -> (AxisVector, AxisVector) {
    let (a, b, c) = (t.a(), t.b(), t.c());
    let sin2 = a * (c - b) / (b * (c - a));
    let cos2 = c * (b - a) / (b * (c - a));
    let norm = (sin2 + cos2).sqrt();
    let (cs, sn) = (cos2.sqrt() / norm, sin2.sqrt() / norm);
    (
        AxisVector { n: [cs, 0.0, sn] },
        AxisVector { n: [cs, 0.0, -sn] },
    )
}

/// `|sin^2 t / A + cos^2 t / C - 1 / B| * B` for an axis `(cos t, n2, sin t)`;
/// zero exactly when the axis lies in the 1-3 plane at a Galois angle.
pub fn circular_section_residual(t: &InertiaTriple, n: &AxisVector) -> f64 {
    let [c, _, s] = n.n;
    ((s * s / t.a() + c * c / t.c()) * t.b() - 1.0).abs()
}

/// Parallel-axis shift of the central tensor by `x = m d^2` along `n`:
/// `diag(A, B, C) + x (I - n n^T)`.
pub fn steiner_tensor(t: &InertiaTriple, n: &AxisVector, x: f64) -> Result<InertiaTensor> {
    if !x.is_finite() {
        return Err(Error::NonFiniteParameter(x));
    }
    if x < 0.0 {
        return Err(Error::NegativeParameter(x));
    }
    let d = t.to_array();
    let mut m = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let delta = if i == j { 1.0 } else { 0.0 };
            m[i][j] = delta * d[i] + x * (delta - n.n[i] * n.n[j]);
        }
    }
    Ok(InertiaTensor { m })
}

/// Symmetric 2x2 restriction of `diag(1/A, 1/B, 1/C)` to the plane
/// orthogonal to `n`, in an orthonormal in-plane basis.
fn section_form(t: &InertiaTriple, n: &AxisVector) -> [f64; 3] {
    let n = n.n;
    let k = (0..3)
        .min_by(|&i, &j| n[i].abs().total_cmp(&n[j].abs()))
        .unwrap_or(0);
    let mut e = [0.0; 3];
    e[k] = 1.0;
    let proj = n[k];
    let mut u = [e[0] - proj * n[0], e[1] - proj * n[1], e[2] - proj * n[2]];
    let un = (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]).sqrt();
    u = u.map(|c| c / un);
    let w = [
        n[1] * u[2] - n[2] * u[1],
        n[2] * u[0] - n[0] * u[2],
        n[0] * u[1] - n[1] * u[0],
    ];
    let inv = [1.0 / t.a(), 1.0 / t.b(), 1.0 / t.c()];
    let q = |p: &[f64; 3], r: &[f64; 3]| (0..3).map(|i| p[i] * inv[i] * r[i]).sum::<f64>();
    [q(&u, &u), q(&u, &w), q(&w, &w)]
}

/// Non-circularity of the central section of `x^2/A + y^2/B + z^2/C = 1`
/// orthogonal to `n`: `(r2_max - r2_min) / r2_max`, from the closed-form
/// extrema of the section's quadratic form.
pub fn maccullagh_residual(t: &InertiaTriple, n: &AxisVector) -> f64 {
    let [q11, q12, q22] = section_form(t, n);
    let half_gap = 0.5 * (q11 - q22).hypot(2.0 * q12);
    let mu_max = 0.5 * (q11 + q22) + half_gap;
    2.0 * half_gap / mu_max
}

/// Same residual from `points` equally spaced radii of the section.
pub fn maccullagh_residual_sampled(t: &InertiaTriple, n: &AxisVector, points: usize) -> f64 {
    let [q11, q12, q22] = section_form(t, n);
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for k in 0..points.max(1) {
        let phi = std::f64::consts::TAU * k as f64 / points as f64;
        let (s, c) = phi.sin_cos();
        let r2 = 1.0 / (q11 * c * c + 2.0 * q12 * c * s + q22 * s * s);
        lo = lo.min(r2);
        hi = hi.max(r2);
    }
    (hi - lo) / hi
}

/// Which Galois axis: sign of its third component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sheet {
    Plus,
    Minus,
}

/// A rule assigning a shift axis to each triple, in that triple's own
/// principal frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum AxisRule {
    Galois(Sheet),
    Principal(usize),
    FixedDirection(AxisVector),
}

impl AxisRule {
    pub fn resolve(&self, t: &InertiaTriple) -> Result<AxisVector> {
        match self {
            AxisRule::Galois(sheet) => {
                let (plus, minus) = galois_axes(t);
                Ok(match sheet {
                    Sheet::Plus => plus,
                    Sheet::Minus => minus,
                })
            }
            AxisRule::Principal(k) => AxisVector::principal(*k),
            AxisRule::FixedDirection(n) => Ok(*n),
        }
    }
}

impl fmt::Display for AxisRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxisRule::Galois(Sheet::Plus) => write!(f, "galois+"),
            AxisRule::Galois(Sheet::Minus) => write!(f, "galois-"),
            AxisRule::Principal(k) => write!(f, "principal{k}"),
            AxisRule::FixedDirection(n) => {
                let [a, b, c] = n.components();
                write!(f, "fixed:{a},{b},{c}")
            }
        }
    }
}

/// `galois`, `galois+`, `galois-`, `principal1..3`, or `fixed:n1,n2,n3`
/// (any non-zero direction, normalized on parse).
impl FromStr for AxisRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "galois" | "galois+" => return Ok(AxisRule::Galois(Sheet::Plus)),
            "galois-" => return Ok(AxisRule::Galois(Sheet::Minus)),
            _ => {}
        }
        if let Some(k) = s.strip_prefix("principal") {
            let k: usize = k
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad principal index in `{s}`")))?;
            AxisVector::principal(k)?;
            return Ok(AxisRule::Principal(k));
        }
        if let Some(v) = s.strip_prefix("fixed:") {
            let parts: Vec<f64> = v
                .split(',')
                .map(|p| p.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::InvalidArgument(format!("bad direction in `{s}`")))?;
            if parts.len() != 3 {
                return Err(Error::InvalidArgument(format!(
                    "direction needs three components in `{s}`"
                )));
            }
            return Ok(AxisRule::FixedDirection(AxisVector::normalized([
                parts[0], parts[1], parts[2],
            ])?));
        }
        Err(Error::InvalidArgument(format!("unknown axis rule `{s}`")))
    }
}

/// Ascending eigenvalues of the tensor shifted by `x` along the rule's axis.
pub fn axis_rule_map(rule: &AxisRule, t: &InertiaTriple, x: f64) -> Result<[f64; 3]> {
    let n = rule.resolve(t)?;
    Ok(steiner_tensor(t, &n, x)?.eigenvalues())
}

/// Relative max-norm gap between applying the rule twice (`y` then `x`)
/// and once with `x + y`. Zero for a rule that admits an additive family.
pub fn additivity_residual(rule: &AxisRule, t: &InertiaTriple, x: f64, y: f64) -> Result<f64> {
    let [p, q, r] = axis_rule_map(rule, t, y)?;
    let mid = validate_triple(p, q, r).map_err(|_| Error::IntermediateDegenerate(p, q, r))?;
    let composed = axis_rule_map(rule, &mid, x)?;
    let direct = axis_rule_map(rule, t, x + y)?;
    let scale = direct.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let gap = composed
        .iter()
        .zip(direct)
        .fold(0.0f64, |m, (c, d)| m.max((c - d).abs()));
    Ok(gap / scale)
}
