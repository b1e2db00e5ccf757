//! Cubature on unit cubes and the kappa-schedule driver.
//!
//! [`integrate_unit_cube`] refines composite Gauss-Legendre tensor grids by
//! doubling the points per axis and reports the difference of the last two
//! levels as its error. [`integrate_adaptive`] subdivides boxes with a
//! Genz-Malik rule and accepts a screening callback that discards boxes on
//! which the integrand is provably negligible; the regularized path-integral
//! terms rely on it because their integrands concentrate on sets of width
//! `~ 1/kappa`.

mod adaptive;
mod gauss;
mod qmc;
mod schedule;

use alloc::vec::Vec;

pub use adaptive::{integrate_adaptive, Screen};
pub use gauss::{gauss_legendre, AxisRule, PANEL_ORDER};
pub use qmc::integrate_qmc;
pub use schedule::{run_schedule, ConvergenceRow, ConvergenceTable, Metric};

use crate::math::abs;
use crate::{Error, Result};

/// Values that can be integrated: scalars or small fixed-size vectors.
pub trait QuadValue: Copy + Send + Sync {
    fn zero() -> Self;
    fn add(self, other: Self) -> Self;
    fn scale(self, k: f64) -> Self;
    /// Largest absolute component.
    fn norm(&self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn scale(self, k: f64) -> Self {
        self * k
    }
    fn norm(&self) -> f64 {
        abs(*self)
    }
}

impl<const N: usize> QuadValue for [f64; N] {
    fn zero() -> Self {
        [0.0; N]
    }
    fn add(self, other: Self) -> Self {
        core::array::from_fn(|i| self[i] + other[i])
    }
    fn scale(self, k: f64) -> Self {
        self.map(|v| v * k)
    }
    fn norm(&self) -> f64 {
        self.iter().map(|v| abs(*v)).fold(0.0, f64::max)
    }
}

/// Kahan-compensated accumulator over [`QuadValue`]s.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Accumulator<V> {
    sum: V,
    comp: V,
}

impl<V: QuadValue> Accumulator<V> {
    pub(crate) fn new() -> Self {
        Accumulator { sum: V::zero(), comp: V::zero() }
    }

    #[inline]
    pub(crate) fn add(&mut self, v: V) {
        let y = v.add(self.comp.scale(-1.0));
        let t = self.sum.add(y);
        self.comp = t.add(self.sum.scale(-1.0)).add(y.scale(-1.0));
        self.sum = t;
    }

    pub(crate) fn value(&self) -> V {
        self.sum
    }
}

/// Compensated sum in iteration order.
pub(crate) fn ordered_sum<V: QuadValue>(values: impl IntoIterator<Item = V>) -> V {
    let mut acc = Accumulator::new();
    for v in values {
        acc.add(v);
    }
    acc.value()
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuadSettings {
    /// Points per axis on the first grid; at least 4.
    pub base_points_per_axis: usize,
    /// Number of grid doublings after the first grid.
    pub max_refinements: u32,
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Cap on integrand evaluations for the adaptive and quasi-random rules.
    pub max_evaluations: u64,
    /// Seed of the random shifts used by the quasi-random fallback.
    pub seed: u64,
}

impl Default for QuadSettings {
    fn default() -> Self {
        QuadSettings {
            base_points_per_axis: 16,
            max_refinements: 6,
            rel_tol: 1e-3,
            abs_tol: 1e-9,
            max_evaluations: 50_000_000,
            seed: 0x5eed,
        }
    }
}

impl QuadSettings {
    pub fn validate(&self) -> Result<()> {
        if self.base_points_per_axis < 4 {
            return Err(Error::InvalidSettings(alloc::format!(
                "base_points_per_axis must be at least 4, got {}",
                self.base_points_per_axis
            )));
        }
        if !(self.rel_tol >= 0.0 && self.abs_tol >= 0.0) || (self.rel_tol == 0.0 && self.abs_tol == 0.0) {
            return Err(Error::InvalidSettings("tolerances must be non-negative and not both zero".into()));
        }
        Ok(())
    }

    /// Base resolution scaled to resolve peaks of width `~ 1/kappa`.
    pub fn scaled_for(&self, kappa: f64) -> QuadSettings {
        let needed = libm::ceil(2.0 * kappa) as usize;
        QuadSettings { base_points_per_axis: self.base_points_per_axis.max(needed), ..self.clone() }
    }

    pub(crate) fn tolerance(&self, magnitude: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * magnitude)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuadResult<V> {
    pub value: V,
    pub error_estimate: f64,
    pub evaluations: u64,
    pub converged: bool,
}

impl<V: QuadValue> QuadResult<V> {
    /// Turns a non-converged result into [`Error::NonConvergence`].
    pub fn into_converged(self) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::NonConvergence {
                value: self.value.norm(),
                error: self.error_estimate,
                evaluations: self.evaluations,
            })
        }
    }
}

/// Grids above this many points switch to the quasi-random rule in four dimensions.
pub const TENSOR_POINT_LIMIT: u64 = 100_000_000;

/// Integrates `f` over `[0, 1]^D` on successively doubled tensor grids.
///
/// Stops once two consecutive levels agree to `max(rel_tol |value|, abs_tol)`.
/// A four-dimensional grid that would exceed [`TENSOR_POINT_LIMIT`] points is
/// replaced by [`integrate_qmc`].
pub fn integrate_unit_cube<const D: usize, V, F>(f: F, settings: &QuadSettings) -> Result<QuadResult<V>>
where
    V: QuadValue,
    F: Fn(&[f64; D]) -> V + Sync,
{
    settings.validate()?;
    if D == 0 {
        return Err(Error::InvalidSettings("dimension must be positive".into()));
    }
    let mut evaluations = 0u64;
    let mut previous: Option<V> = None;
    let mut points = settings.base_points_per_axis;
    for level in 0..=settings.max_refinements {
        let total = (points as u64).saturating_pow(D as u32);
        if D == 4 && total > TENSOR_POINT_LIMIT {
            let mut qmc = integrate_qmc(&f, settings)?;
            qmc.evaluations += evaluations;
            return Ok(qmc);
        }
        let rule = AxisRule::composite(points);
        let value = tensor_sum(&f, &rule);
        evaluations += (rule.len() as u64).pow(D as u32);
        if let Some(prev) = previous {
            let err = value.add(prev.scale(-1.0)).norm();
            if err <= settings.tolerance(value.norm()) || level == settings.max_refinements {
                return Ok(QuadResult {
                    value,
                    error_estimate: err,
                    evaluations,
                    converged: err <= settings.tolerance(value.norm()),
                });
            }
        }
        previous = Some(value);
        points *= 2;
    }
    let value = previous.unwrap_or_else(V::zero);
    Ok(QuadResult { value, error_estimate: f64::INFINITY, evaluations, converged: false })
}

/// Plain tensor-product sum of `f` with `rule` on every axis.
pub fn tensor_sum<const D: usize, V, F>(f: &F, rule: &AxisRule) -> V
where
    V: QuadValue,
    F: Fn(&[f64; D]) -> V + Sync,
{
    let n = rule.len();
    let slab = |i0: usize| -> V {
        let mut idx = [0usize; D];
        idx[0] = i0;
        let inner = n.pow(D as u32 - 1);
        let mut acc = Accumulator::new();
        for _ in 0..inner {
            let mut x = [0.0; D];
            let mut w = 1.0;
            for a in 0..D {
                x[a] = rule.nodes[idx[a]];
                w *= rule.weights[idx[a]];
            }
            acc.add(f(&x).scale(w));
            for a in (1..D).rev() {
                idx[a] += 1;
                if idx[a] < n {
                    break;
                }
                idx[a] = 0;
            }
        }
        acc.value()
    };
    let slabs = map_ordered(0..n, slab);
    ordered_sum(slabs)
}

/// Maps `f` over `items` and returns results in input order, in parallel when
/// the `std` feature is enabled.
#[cfg(feature = "std")]
pub(crate) fn map_ordered<I, R, F>(items: I, f: F) -> Vec<R>
where
    I: IntoIterator,
    I::Item: Send,
    R: Send,
    F: Fn(I::Item) -> R + Sync + Send,
{
    use rayon::prelude::*;
    let items: Vec<I::Item> = items.into_iter().collect();
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "std"))]
pub(crate) fn map_ordered<I, R, F>(items: I, f: F) -> Vec<R>
where
    I: IntoIterator,
    F: Fn(I::Item) -> R,
{
    items.into_iter().map(f).collect()
}
