//! Seeded search for axis rules whose shifts compose additively.
//!
//! Sample `i` draws its own ChaCha8 stream (`seed`, stream `i`), so every
//! sample is independent of evaluation order and thread count:
//!
//! - moments: three draws log-uniform in `[1e-2, 1e2]`, sorted; redrawn if
//!   degenerate
//! - `x`, `y`: uniform in `[0, 10]`

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{additivity_residual, AxisRule};
use crate::error::{Error, Result};
use crate::triple::{validate_triple, InertiaTriple};

const LOG10_MOMENT_RANGE: (f64, f64) = (-2.0, 2.0);
const OFFSET_MAX: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SampleRecord {
    pub index: usize,
    pub triple: [f64; 3],
    pub x: f64,
    pub y: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RuleReport {
    pub rule: String,
    pub samples: usize,
    pub evaluated: usize,
    pub errors: usize,
    pub max_residual: f64,
    pub median_residual: f64,
    pub argmax: Option<SampleRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FalsifyReport {
    pub seed: u64,
    pub samples: usize,
    pub rules: Vec<RuleReport>,
}

/// The generator for sample `index`: ChaCha8 keyed by `seed`, stream `index`.
pub(crate) fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Three moments log-uniform in `[1e-2, 1e2]`, sorted; redrawn if degenerate.
pub(crate) fn draw_triple(rng: &mut ChaCha8Rng) -> InertiaTriple {
    let (lo, hi) = LOG10_MOMENT_RANGE;
    loop {
        let mut m: [f64; 3] = std::array::from_fn(|_| 10f64.powf(rng.random_range(lo..hi)));
        m.sort_by(f64::total_cmp);
        if let Ok(t) = validate_triple(m[0], m[1], m[2]) {
            return t;
        }
    }
}

fn draw_sample(seed: u64, index: usize) -> (InertiaTriple, f64, f64) {
    let mut rng = sample_rng(seed, index);
    let t = draw_triple(&mut rng);
    let x = rng.random_range(0.0..OFFSET_MAX);
    let y = rng.random_range(0.0..OFFSET_MAX);
    (t, x, y)
}

fn median(sorted: &[f64]) -> f64 {
    match sorted.len() {
        0 => f64::NAN,
        n if n % 2 == 1 => sorted[n / 2],
        n => 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]),
    }
}

/// Additivity residual of every rule over `samples` seeded draws.
pub fn falsify_search(rules: &[AxisRule], samples: usize, seed: u64) -> Result<FalsifyReport> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    let draws: Vec<_> = (0..samples)
        .into_par_iter()
        .map(|i| draw_sample(seed, i))
        .collect();

    let reports = rules
        .iter()
        .map(|rule| {
            let results: Vec<Result<f64>> = draws
                .par_iter()
                .map(|(t, x, y)| additivity_residual(rule, t, *x, *y))
                .collect();

            let mut argmax: Option<SampleRecord> = None;
            let mut ok = Vec::with_capacity(samples);
            for (index, r) in results.iter().enumerate() {
                let Ok(residual) = r else { continue };
                ok.push(*residual);
                if argmax.is_none_or(|a| residual.total_cmp(&a.residual).is_gt()) {
                    let (t, x, y) = draws[index];
                    argmax = Some(SampleRecord {
                        index,
                        triple: t.to_array(),
                        x,
                        y,
                        residual: *residual,
                    });
                }
            }
            ok.sort_by(f64::total_cmp);
            RuleReport {
                rule: rule.to_string(),
                samples,
                evaluated: ok.len(),
                errors: samples - ok.len(),
                max_residual: ok.last().copied().unwrap_or(f64::NAN),
                median_residual: median(&ok),
                argmax,
            }
        })
        .collect();

    Ok(FalsifyReport {
        seed,
        samples,
        rules: reports,
    })
}
