//! Box bounds on point differences, used to screen Gaussian-localized integrands.

use crate::math::{abs, SQRT_2};
use crate::quadrature::Screen;

/// Exponents `k^2 |d|^2 / 8` above this are treated as zero.
pub(crate) const NEGLIGIBLE_EXPONENT: f64 = 50.0;

/// Boxes whose difference vectors vary by more than this many Gaussian widths
/// `2 sqrt 2 / kappa` are bisected before the rule is applied.
const RESOLVED_WIDTHS: f64 = 2.0;

/// Bounds of a difference `sigma - rho` over a parameter box.
#[derive(Clone, Copy, Debug)]
pub(crate) struct DiffBound {
    /// Lower bounds of `|d_c|`.
    pub min_abs: [f64; 4],
    /// Upper bounds of the variation of `d_c` across the box.
    pub spread: [f64; 4],
}

impl DiffBound {
    pub(crate) fn new(center: [f64; 4], half_spread: [f64; 4]) -> Self {
        DiffBound {
            min_abs: core::array::from_fn(|c| (abs(center[c]) - half_spread[c]).max(0.0)),
            spread: half_spread.map(|v| 2.0 * v),
        }
    }

    /// Lower bound of `k^2 sum_{c in mask} d_c^2 / 8`.
    pub(crate) fn exponent(&self, kappa: f64, mask: &[usize]) -> f64 {
        kappa * kappa * mask.iter().map(|&c| self.min_abs[c] * self.min_abs[c]).sum::<f64>() / 8.0
    }

    fn max_spread(&self) -> f64 {
        self.spread.iter().copied().fold(0.0, f64::max)
    }
}

/// Splits along the parameter axis with the largest physical extent while any
/// difference varies by more than the resolved width; keeps the box otherwise.
pub(crate) fn refine<const D: usize>(
    kappa: f64,
    bounds: &[DiffBound],
    extent: [f64; D],
    widths: [f64; D],
) -> Screen {
    let limit = RESOLVED_WIDTHS * 2.0 * SQRT_2 / kappa;
    let spread = bounds.iter().map(DiffBound::max_spread).fold(0.0, f64::max);
    if spread <= limit {
        return Screen::Keep;
    }
    let mut axis = 0;
    for a in 1..D {
        if extent[a] > extent[axis] {
            axis = a;
        }
    }
    if widths[axis] < 1e-7 {
        return Screen::Keep;
    }
    Screen::Split(axis)
}
