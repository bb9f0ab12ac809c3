//! Property suites over seeded samples, reported as worst residual per
//! property.
//!
//! Sample `i` draws from its own ChaCha8 stream (`seed`, stream `i`), so a
//! report depends only on `(triple, samples, seed)`. Inputs per sample:
//!
//! - the given triple, or moments log-uniform in `[1e-2, 1e2]`
//! - real parameters `x, y` uniform in `[0, 10]`
//! - complex parameters uniform in the disk of radius 10
//! - extension elements with scale log-uniform in `[0.1, 10]`, shift in `[0, 10]`
//!
//! A property that cannot be evaluated on a sample (a complex parameter
//! landing within `1e-6` of the pole) skips it; an unexpected error counts
//! as an infinite residual.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::complex_maps::{jbar_inverse_apply, jbar_map};
use crate::error::{Error, Result};
use crate::extension::{
    affine_compose, ext_apply_real, ext_mul, s_apply_real, to_affine, ExtendedElement,
};
use crate::geometry::{
    additivity_residual, draw_triple, galois_axes, maccullagh_residual, sample_rng, steiner_tensor,
    AxisRule, Sheet,
};
use crate::real_maps::{closure_identities, delta_extremum, invariants, j_map, jacobian_det};
use crate::triple::{involution, involution_residual, ComplexTriple, InertiaTriple};

const POLE_GUARD: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyReport {
    pub property: &'static str,
    pub samples: usize,
    pub worst_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub samples: usize,
    pub triple: Option<[f64; 3]>,
    pub pass: bool,
    pub properties: Vec<PropertyReport>,
}

struct Sample {
    t: InertiaTriple,
    x: f64,
    y: f64,
    zx: Complex64,
    zy: Complex64,
    e1: (f64, f64),
    e2: (f64, f64),
}

fn in_disk(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    let r = radius * rng.random::<f64>().sqrt();
    let phi = rng.random_range(0.0..std::f64::consts::TAU);
    Complex64::from_polar(r, phi)
}

fn draw(fixed: Option<&InertiaTriple>, seed: u64, index: usize) -> Sample {
    let mut rng = sample_rng(seed, index);
    let t = match fixed {
        Some(t) => *t,
        None => draw_triple(&mut rng),
    };
    let element = |rng: &mut ChaCha8Rng| {
        (
            10f64.powf(rng.random_range(-1.0..1.0)),
            rng.random_range(0.0..10.0),
        )
    };
    Sample {
        t,
        x: rng.random_range(0.0..10.0),
        y: rng.random_range(0.0..10.0),
        zx: in_disk(&mut rng, 10.0),
        zy: in_disk(&mut rng, 10.0),
        e1: element(&mut rng),
        e2: element(&mut rng),
    }
}

fn rel(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

fn max_rel(p: [f64; 3], q: [f64; 3]) -> f64 {
    (0..3).map(|i| rel(p[i], q[i])).fold(0.0, f64::max)
}

/// `Some(residual)`, `None` to skip the sample, or an error.
type Eval = Result<Option<f64>>;

fn semigroup(s: &Sample) -> Eval {
    let composed = j_map(&j_map(&s.t, s.y)?, s.x)?;
    let direct = j_map(&s.t, s.x + s.y)?;
    Ok(Some(max_rel(composed.to_array(), direct.to_array())))
}

fn commutativity(s: &Sample) -> Eval {
    let xy = j_map(&j_map(&s.t, s.y)?, s.x)?;
    let yx = j_map(&j_map(&s.t, s.x)?, s.y)?;
    Ok(Some(max_rel(xy.to_array(), yx.to_array())))
}

fn neutral(s: &Sample) -> Eval {
    Ok(Some(max_rel(j_map(&s.t, 0.0)?.to_array(), s.t.to_array())))
}

fn closure_checks(s: &Sample) -> Eval {
    let r = closure_identities(&s.t, s.x, f64::INFINITY)?;
    if !(r.delta_positive.pass && r.ordered.pass) {
        return Ok(Some(f64::INFINITY));
    }
    Ok(Some(
        r.d_identity
            .residual
            .max(r.trace.residual)
            .max(r.product.residual),
    ))
}

fn delta_minimum(s: &Sample) -> Eval {
    let ext = delta_extremum(&s.t);
    let at_min = invariants(&s.t, ext.x_min)?.delta;
    Ok(Some(rel(at_min, ext.delta_min)))
}

fn fd_jacobian_det(t: &InertiaTriple, x: f64) -> Result<f64> {
    let p = t.to_array();
    let mut jac = [[0.0; 3]; 3];
    for k in 0..3 {
        let h = 1e-6 * p[k];
        let (mut plus, mut minus) = (p, p);
        plus[k] += h;
        minus[k] -= h;
        let fp = j_map(&InertiaTriple::try_from(plus)?, x)?.to_array();
        let fm = j_map(&InertiaTriple::try_from(minus)?, x)?.to_array();
        for i in 0..3 {
            jac[i][k] = (fp[i] - fm[i]) / (plus[k] - minus[k]);
        }
    }
    Ok(jac[0][0] * (jac[1][1] * jac[2][2] - jac[1][2] * jac[2][1])
        - jac[0][1] * (jac[1][0] * jac[2][2] - jac[1][2] * jac[2][0])
        + jac[0][2] * (jac[1][0] * jac[2][1] - jac[1][1] * jac[2][0]))
}

fn jacobian_fd(s: &Sample) -> Eval {
    Ok(Some(rel(
        jacobian_det(&s.t, s.x)?,
        fd_jacobian_det(&s.t, s.x)?,
    )))
}

fn jacobian_identity(s: &Sample) -> Eval {
    Ok(Some((jacobian_det(&s.t, 0.0)? - 1.0).abs()))
}

fn near_pole(t: &ComplexTriple, z: Complex64) -> bool {
    (t.b + z).norm() < POLE_GUARD * t.scale().max(1.0)
}

fn complex_composition(s: &Sample) -> Eval {
    let t = s.t.to_complex();
    if near_pole(&t, s.zy) || near_pole(&t, s.zx + s.zy) {
        return Ok(None);
    }
    let composed = jbar_map(&jbar_map(&t, s.zy)?.to_triple(), s.zx)?.to_triple();
    let direct = jbar_map(&t, s.zx + s.zy)?.to_triple();
    Ok(Some(involution_residual(&composed, &direct)))
}

fn complex_inverse(s: &Sample) -> Eval {
    let t = s.t.to_complex();
    if near_pole(&t, s.zx) {
        return Ok(None);
    }
    let there = jbar_map(&t, s.zx)?.to_triple();
    let back = jbar_inverse_apply(&there, s.zx)?.to_triple();
    Ok(Some(involution_residual(&back, &t)))
}

fn complex_sheets(s: &Sample) -> Eval {
    let t = s.t.to_complex();
    let img = jbar_map(&t, s.zx)?.to_triple();
    let swapped = jbar_map(&involution(&t), s.zx)?.to_triple();
    Ok(Some(
        involution_residual(&involution(&img), &img).max(involution_residual(&swapped, &img)),
    ))
}

fn complex_real_branch(s: &Sample) -> Eval {
    let real = j_map(&s.t, s.x)?;
    let img = jbar_map(&s.t.to_complex(), Complex64::new(s.x, 0.0))?;
    let parts = [img.lambda1, img.lambda2, img.lambda3];
    let mut worst = max_rel(parts.map(|z| z.re), real.to_array());
    for z in parts {
        worst = worst.max(z.im.abs());
    }
    Ok(Some(worst))
}

fn conjugation(s: &Sample) -> Eval {
    let (a, _) = s.e1;
    let lhs = s_apply_real(&j_map(&s_apply_real(&s.t, a)?, s.x)?, 1.0 / a)?;
    let rhs = j_map(&s.t, s.x / a)?;
    Ok(Some(max_rel(lhs.to_array(), rhs.to_array())))
}

fn product_action(s: &Sample) -> Eval {
    let e1 = ExtendedElement::semigroup(s.e1.0, s.e1.1)?;
    let e2 = ExtendedElement::semigroup(s.e2.0, s.e2.1)?;
    let prod = ext_apply_real(&ext_mul(&e1, &e2)?, &s.t)?;
    let seq = ext_apply_real(&e1, &ext_apply_real(&e2, &s.t)?)?;
    Ok(Some(max_rel(prod.to_array(), seq.to_array())))
}

fn affine_homomorphism(s: &Sample) -> Eval {
    let f = ExtendedElement::group(Complex64::new(s.e1.0, 0.0) + s.zx * 0.1, s.zy)?;
    let g = ExtendedElement::group(Complex64::new(s.e2.0, 0.0) + s.zy * 0.1, s.zx)?;
    let via_group = to_affine(&ext_mul(&f, &g)?);
    let via_affine = affine_compose(&to_affine(&f), &to_affine(&g));
    if via_group != via_affine {
        return Ok(Some(f64::INFINITY));
    }
    let z = Complex64::new(s.x, s.y);
    let direct = to_affine(&f).apply(to_affine(&g).apply(z));
    let scale = direct
        .norm()
        .max(via_group.a.norm() * z.norm())
        .max(via_group.b.norm());
    Ok(Some((via_group.apply(z) - direct).norm() / scale))
}

fn steiner_oracle(s: &Sample) -> Eval {
    let (plus, _) = galois_axes(&s.t);
    let eig = steiner_tensor(&s.t, &plus, s.x)?.eigenvalues();
    Ok(Some(max_rel(eig, j_map(&s.t, s.x)?.to_array())))
}

fn sheet_agreement(s: &Sample) -> Eval {
    let (plus, minus) = galois_axes(&s.t);
    let p = steiner_tensor(&s.t, &plus, s.x)?.eigenvalues();
    let m = steiner_tensor(&s.t, &minus, s.x)?.eigenvalues();
    Ok(Some(max_rel(p, m)))
}

fn maccullagh(s: &Sample) -> Eval {
    let (plus, minus) = galois_axes(&s.t);
    Ok(Some(
        maccullagh_residual(&s.t, &plus).max(maccullagh_residual(&s.t, &minus)),
    ))
}

fn galois_additivity(s: &Sample) -> Eval {
    let rule = AxisRule::Galois(Sheet::Plus);
    Ok(Some(additivity_residual(&rule, &s.t, s.x, s.y)?))
}

type Property = (&'static str, f64, fn(&Sample) -> Eval);

const PROPERTIES: [Property; 18] = [
    ("real.semigroup", 1e-11, semigroup),
    ("real.commutativity", 1e-11, commutativity),
    ("real.neutral", 1e-15, neutral),
    ("real.closure_identities", 1e-11, closure_checks),
    ("real.delta_minimum", 1e-12, delta_minimum),
    ("real.jacobian_fd", 1e-5, jacobian_fd),
    ("real.jacobian_identity", 1e-12, jacobian_identity),
    ("complex.composition", 1e-10, complex_composition),
    ("complex.inverse", 1e-10, complex_inverse),
    ("complex.sheets", 1e-12, complex_sheets),
    ("complex.real_branch", 0.0, complex_real_branch),
    ("extension.conjugation", 1e-11, conjugation),
    ("extension.product_action", 1e-11, product_action),
    ("extension.affine_homomorphism", 1e-12, affine_homomorphism),
    ("geometry.steiner_oracle", 1e-9, steiner_oracle),
    ("geometry.sheet_agreement", 1e-12, sheet_agreement),
    ("geometry.maccullagh", 1e-10, maccullagh),
    ("geometry.galois_additivity", 1e-10, galois_additivity),
];

/// Names of every property [`verify_suite`] reports, in report order.
pub fn property_names() -> impl Iterator<Item = &'static str> {
    PROPERTIES.iter().map(|p| p.0)
}

/// Runs every property on `samples` seeded inputs. With `triple` given, only
/// the parameters are sampled.
pub fn verify_suite(
    triple: Option<&InertiaTriple>,
    samples: usize,
    seed: u64,
) -> Result<VerifyReport> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    let per_sample: Vec<Vec<Option<f64>>> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let s = draw(triple, seed, i);
            PROPERTIES
                .iter()
                .map(|(_, _, eval)| match eval(&s) {
                    Ok(r) => r.map(|v| if v.is_nan() { f64::INFINITY } else { v }),
                    Err(_) => Some(f64::INFINITY),
                })
                .collect()
        })
        .collect();

    let properties: Vec<PropertyReport> = PROPERTIES
        .iter()
        .enumerate()
        .map(|(k, &(property, tolerance, _))| {
            let (mut count, mut worst) = (0, 0.0f64);
            for r in per_sample.iter().filter_map(|row| row[k]) {
                count += 1;
                worst = worst.max(r);
            }
            PropertyReport {
                property,
                samples: count,
                worst_residual: worst,
                tolerance,
                pass: worst <= tolerance,
            }
        })
        .collect();

    Ok(VerifyReport {
        seed,
        samples,
        triple: triple.map(InertiaTriple::to_array),
        pass: properties.iter().all(|p| p.pass),
        properties,
    })
}
