//! Randomly shifted rank-1 lattice (Kronecker) rule.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::{QuadResult, QuadSettings, QuadValue};
use crate::math::sqrt;
use crate::Result;

/// Number of independent random shifts.
const SHIFTS: usize = 16;

fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Root of `x^(D+1) = x + 1`, the generalized golden ratio.
fn golden(d: usize) -> f64 {
    let mut x = 2.0f64;
    for _ in 0..64 {
        x = libm::pow(1.0 + x, 1.0 / (d as f64 + 1.0));
    }
    x
}

/// Quasi-random estimate over `[0, 1]^D` from `SHIFTS` randomly shifted copies
/// of the additive recurrence `x_n = frac(shift + n alpha)`.
///
/// The error estimate is three standard errors of the shift means; it is
/// reported as converged when that falls under the requested tolerance.
pub fn integrate_qmc<const D: usize, V, F>(f: &F, settings: &QuadSettings) -> Result<QuadResult<V>>
where
    V: QuadValue,
    F: Fn(&[f64; D]) -> V + Sync,
{
    settings.validate()?;
    let g = golden(D);
    let alpha: [f64; D] = core::array::from_fn(|a| libm::fmod(libm::pow(1.0 / g, a as f64 + 1.0), 1.0));
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    let shifts: Vec<[f64; D]> = (0..SHIFTS).map(|_| core::array::from_fn(|_| uniform(&mut rng))).collect();
    let per_shift = (settings.max_evaluations / SHIFTS as u64).max(1);
    let estimates: Vec<V> = super::map_ordered(shifts, |shift| {
        let mut acc = super::Accumulator::new();
        for n in 0..per_shift {
            let x: [f64; D] = core::array::from_fn(|a| {
                let v = shift[a] + n as f64 * alpha[a];
                v - libm::floor(v)
            });
            acc.add(f(&x));
        }
        acc.value().scale(1.0 / per_shift as f64)
    });
    let mean = super::ordered_sum(estimates.iter().copied()).scale(1.0 / SHIFTS as f64);
    let var = estimates
        .iter()
        .map(|e| {
            let d = e.add(mean.scale(-1.0)).norm();
            d * d
        })
        .sum::<f64>()
        / (SHIFTS as f64 - 1.0);
    let error = 3.0 * sqrt(var / SHIFTS as f64);
    Ok(QuadResult {
        value: mean,
        error_estimate: error,
        evaluations: per_shift * SHIFTS as u64,
        converged: error <= settings.tolerance(mean.norm()),
    })
}
