//! Two-valued complex inertia maps `jbar(x)` and their abelian group.
//!
//! Over `C^3` there is no ordering to pick the outer eigenvalues, so each map
//! is two-valued: the two sheets differ by the involution `(A, B, C) -> (C, B, A)`.
//! [`jbar_map`] returns the representative built from the principal square
//! root, `((tr - sqrt(delta)) / 2, B + x, (tr + sqrt(delta)) / 2)`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::triple::{ComplexTriple, EPS_DEG};

/// One representative of the two-valued image.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexMapResult {
    pub lambda1: Complex64,
    pub lambda2: Complex64,
    pub lambda3: Complex64,
}

impl ComplexMapResult {
    pub fn to_triple(&self) -> ComplexTriple {
        ComplexTriple::new(self.lambda1, self.lambda2, self.lambda3)
    }
}

impl From<ComplexMapResult> for ComplexTriple {
    fn from(r: ComplexMapResult) -> Self {
        r.to_triple()
    }
}

/// Principal square root with the cut on the negative real axis. Points on
/// the cut map to `+i sqrt(|z|)` whatever the sign of the zero imaginary part.
pub fn principal_sqrt(z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        if z.re >= 0.0 {
            Complex64::new(z.re.sqrt(), 0.0)
        } else {
            Complex64::new(0.0, (-z.re).sqrt())
        }
    } else {
        z.sqrt()
    }
}

/// Smith's complex division. Reduces to a single real division when both
/// operands are real, so real inputs reproduce real arithmetic bit for bit.
pub(crate) fn cdiv(n: Complex64, d: Complex64) -> Complex64 {
    if d.re.abs() >= d.im.abs() {
        let r = d.im / d.re;
        let den = d.re + d.im * r;
        Complex64::new((n.re + n.im * r) / den, (n.im - n.re * r) / den)
    } else {
        let r = d.re / d.im;
        let den = d.re * r + d.im;
        Complex64::new((n.re * r + n.im) / den, (n.im * r - n.re) / den)
    }
}

/// Complex counterpart of the real discriminant; same two algebraic forms,
/// selected by the sign of `Re(x)`.
fn discriminant(a: Complex64, b: Complex64, c: Complex64, x: Complex64) -> Complex64 {
    if x.re >= 0.0 {
        let u = (c - a) - x;
        u * u + cdiv(4.0 * c * x * (b - a), b)
    } else {
        let v = (c - a) + x;
        v * v - cdiv(4.0 * a * x * (c - b), b)
    }
}

/// Trace, determinant and discriminant of the outer block over `C`.
pub fn complex_invariants(
    t: &ComplexTriple,
    x: Complex64,
) -> Result<(Complex64, Complex64, Complex64)> {
    check_pole(t)?;
    if !x.is_finite() {
        return Err(Error::NonFiniteParameter(x.norm()));
    }
    let tr = (t.a + t.c) + x;
    let det = t.a * t.c * (Complex64::new(1.0, 0.0) + cdiv(x, t.b));
    Ok((tr, det, discriminant(t.a, t.b, t.c, x)))
}

fn check_pole(t: &ComplexTriple) -> Result<()> {
    let nb = t.b.norm();
    if nb == 0.0 || nb < EPS_DEG * t.scale() || !nb.is_finite() {
        return Err(Error::PoleAtZeroB(nb));
    }
    Ok(())
}

/// Applies `jbar(x)` and returns the principal-root representative.
///
/// The root of larger modulus is formed directly and the other as
/// `det / root`, so the symmetric functions stay accurate near branch points.
/// At a branch point (`delta = 0`) both outer values coincide.
pub fn jbar_map(t: &ComplexTriple, x: Complex64) -> Result<ComplexMapResult> {
    let (tr, det, delta) = complex_invariants(t, x)?;
    let root = principal_sqrt(delta);
    let plus = tr + root;
    let minus = tr - root;
    let (lambda1, lambda3) = if plus.norm() >= minus.norm() {
        let l3 = 0.5 * plus;
        let l1 = if l3 == Complex64::new(0.0, 0.0) {
            l3
        } else {
            cdiv(det, l3)
        };
        (l1, l3)
    } else {
        let l1 = 0.5 * minus;
        (l1, cdiv(det, l1))
    };
    Ok(ComplexMapResult {
        lambda1,
        lambda2: t.b + x,
        lambda3,
    })
}

/// Applies the inverse element `jbar(-x)`.
pub fn jbar_inverse_apply(t: &ComplexTriple, x: Complex64) -> Result<ComplexMapResult> {
    jbar_map(t, -x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real_maps::j_map;
    use crate::triple::{eq_mod_involution, involution, involution_residual, InertiaTriple};
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn t124() -> ComplexTriple {
        ComplexTriple::from_real(1.0, 2.0, 4.0)
    }

    #[test]
    fn principal_sqrt_branch() {
        assert_eq!(principal_sqrt(c(-4.0, 0.0)), c(0.0, 2.0));
        assert_eq!(principal_sqrt(c(-4.0, -0.0)), c(0.0, 2.0));
        assert_eq!(principal_sqrt(c(9.0, 0.0)), c(3.0, 0.0));
        let r = principal_sqrt(c(8.0, 2.0));
        assert!((r - c(2.850106248127894, 0.35086411275258766)).norm() < 1e-15);
        assert!(r.re > 0.0);
        let r = principal_sqrt(c(-1.0, -1e-300));
        assert!(r.im < 0.0);
    }

    #[test]
    fn cdiv_real_is_exact() {
        for (n, d) in [(1.0, 3.0), (7.0, -0.1), (1e300, 3e-10)] {
            assert_eq!(cdiv(c(n, 0.0), c(d, 0.0)), c(n / d, 0.0));
        }
        let q = cdiv(c(4.0, 2.0), c(1.0, 1.0));
        assert!((q - c(3.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn jbar_neutral_element() {
        let r = jbar_map(&t124(), c(0.0, 0.0)).unwrap();
        assert_eq!(r.to_triple(), t124());
    }

    #[test]
    fn jbar_at_minus_two() {
        let r = jbar_map(&t124(), c(-2.0, 0.0)).unwrap();
        assert_eq!(r.to_triple(), ComplexTriple::from_real(0.0, 0.0, 3.0));
        assert_eq!(r.lambda1 + r.lambda3, c(3.0, 0.0));
        assert_eq!(r.lambda1 * r.lambda3, c(0.0, 0.0));
    }

    #[test]
    fn jbar_at_imaginary_unit() {
        let (tr, det, delta) = complex_invariants(&t124(), c(0.0, 1.0)).unwrap();
        assert_eq!((tr, det), (c(5.0, 1.0), c(4.0, 2.0)));
        assert!((delta - c(8.0, 2.0)).norm() < 1e-14);

        let r = jbar_map(&t124(), c(0.0, 1.0)).unwrap();
        assert_eq!(r.lambda2, c(2.0, 1.0));
        assert!(
            (r.lambda1 - c(1.074946875936053, 0.32456794362370617)).norm() < 1e-14,
            "{}",
            r.lambda1
        );
        assert!(
            (r.lambda3 - c(3.925053124063947, 0.6754320563762939)).norm() < 1e-14,
            "{}",
            r.lambda3
        );
        assert!((r.lambda1 + r.lambda3 - tr).norm() < 1e-14);
        assert!((r.lambda1 * r.lambda3 - det).norm() < 1e-14);
    }

    #[test]
    fn pole_is_rejected() {
        let t = ComplexTriple::from_real(1.0, 0.0, 4.0);
        assert!(matches!(
            jbar_map(&t, c(1.0, 0.0)),
            Err(Error::PoleAtZeroB(_))
        ));
        let t = ComplexTriple::from_real(1.0, 1e-14, 4.0);
        assert!(jbar_map(&t, c(1.0, 0.0)).is_err());
    }

    #[test]
    fn branch_point_returns_coincident_pair() {
        // delta(x) = 0 at x = x_min +- i sqrt(delta_min); for (1,2,4) that is -1 +- i sqrt(8)
        let x = c(-1.0, 8f64.sqrt());
        let r = jbar_map(&t124(), x).unwrap();
        assert!((r.lambda1 - r.lambda3).norm() < 1e-6);
    }

    #[test]
    fn inverse_examples() {
        let img = ComplexTriple::from_real(1.4384472, 4.0, 5.5615528);
        let back = jbar_inverse_apply(&img, c(2.0, 0.0)).unwrap();
        assert!(eq_mod_involution(&back.to_triple(), &t124(), 1e-6));

        let exact = jbar_map(&t124(), c(2.0, 0.0)).unwrap().to_triple();
        let back = jbar_inverse_apply(&exact, c(2.0, 0.0)).unwrap();
        assert!(eq_mod_involution(&back.to_triple(), &t124(), 1e-14));

        let r = jbar_inverse_apply(&t124(), c(0.0, 0.0)).unwrap();
        assert_eq!(r.to_triple(), t124());

        let fwd = jbar_map(&t124(), c(0.0, 1.0)).unwrap().to_triple();
        let back = jbar_inverse_apply(&fwd, c(0.0, 1.0)).unwrap().to_triple();
        assert!(eq_mod_involution(&back, &t124(), 1e-14), "{back}");
    }

    #[test]
    fn agrees_with_real_map_on_real_domain() {
        let t = InertiaTriple::new(0.3, 2.5, 7.0).unwrap();
        for x in [0.0, 0.1, 1.0, 17.0, 1234.5] {
            let real = j_map(&t, x).unwrap();
            let cplx = jbar_map(&t.to_complex(), c(x, 0.0)).unwrap();
            for (r, z) in real.to_array().iter().zip(cplx.to_triple().to_array()) {
                assert!(z.im == 0.0);
                assert!((r - z.re).abs() <= 2.0 * f64::EPSILON * r.abs());
            }
        }
    }

    fn cpx(range: f64) -> impl Strategy<Value = Complex64> {
        (-range..range, -range..range).prop_map(|(re, im)| Complex64::new(re, im))
    }

    fn complex_triple() -> impl Strategy<Value = ComplexTriple> {
        (cpx(10.0), cpx(10.0), cpx(10.0))
            .prop_filter("B near zero", |(_, b, _)| b.norm() > 1e-3)
            .prop_map(|(a, b, c)| ComplexTriple::new(a, b, c))
    }

    proptest! {
        #[test]
        fn group_law_mod_involution(t in complex_triple(), x in cpx(10.0), y in cpx(10.0)) {
            prop_assume!((t.b + y).norm() > 1e-3);
            let mid = jbar_map(&t, y).unwrap().to_triple();
            let composed = jbar_map(&mid, x).unwrap().to_triple();
            let direct = jbar_map(&t, x + y).unwrap().to_triple();
            prop_assert!(involution_residual(&composed, &direct) <= 1e-10);
        }

        #[test]
        fn sheet_identities(t in complex_triple(), x in cpx(10.0)) {
            let img = jbar_map(&t, x).unwrap().to_triple();
            let swapped_in = jbar_map(&involution(&t), x).unwrap().to_triple();
            prop_assert!(eq_mod_involution(&swapped_in, &img, 1e-12));
            prop_assert!(eq_mod_involution(&involution(&img), &img, 0.0));
        }

        #[test]
        fn composition_commutes(t in complex_triple(), x in cpx(10.0), y in cpx(10.0)) {
            prop_assume!((t.b + y).norm() > 1e-3 && (t.b + x).norm() > 1e-3);
            let xy = jbar_map(&jbar_map(&t, y).unwrap().to_triple(), x).unwrap().to_triple();
            let yx = jbar_map(&jbar_map(&t, x).unwrap().to_triple(), y).unwrap().to_triple();
            prop_assert!(involution_residual(&xy, &yx) <= 1e-10);
        }
    }
}
