//! The scalar exponent of the regularized Wilson loop.

use alloc::vec::Vec;

use super::screen::{refine, DiffBound, NEGLIGIBLE_EXPONENT};
use crate::geometry::{eval_curve, Hyperlink, Loop};
use crate::kernels::{kernel_w, Kappa};
use crate::math::{cross, PI};
use crate::quadrature::{integrate_adaptive, QuadResult, QuadSettings, Screen};
use crate::Result;

const W_MASKS: [[usize; 2]; 3] = [[2, 3], [1, 3], [1, 2]];

/// `I(kappa) = (k^3 / 4 pi) sum_v int eps^{ijk} <p^{y_s}, p^{rho_sbar}>_k y'_i rho'_j`
/// for the matter loop `y` against the geometric hyperlink; `I / 4 pi` tends
/// to the hyperlinking number.
pub fn wilson_exponent(y: &Loop, link: &Hyperlink, kappa: Kappa, settings: &QuadSettings) -> Result<QuadResult<f64>> {
    let k = kappa.value();
    let pref = k * k * k / (4.0 * PI);
    let by = y.derivative_bounds();
    let mut parts: Vec<QuadResult<f64>> = Vec::new();
    for rho in &link.components {
        let br = rho.derivative_bounds();
        let screen = |lo: &[f64; 2], hi: &[f64; 2]| {
            let h = [hi[0] - lo[0], hi[1] - lo[1]];
            let a = eval_curve(y, 0.5 * (lo[0] + hi[0])).point;
            let b = eval_curve(rho, 0.5 * (lo[1] + hi[1])).point;
            let half: [f64; 4] = core::array::from_fn(|c| 0.5 * (by[c] * h[0] + br[c] * h[1]));
            let bound = DiffBound::new(a.sub(&b), half);
            if W_MASKS.iter().all(|m| bound.exponent(k, m) > NEGLIGIBLE_EXPONENT) {
                return Screen::Negligible;
            }
            let ey = by.iter().copied().fold(0.0, f64::max) * h[0];
            let er = br.iter().copied().fold(0.0, f64::max) * h[1];
            refine(k, &[bound], [ey, er], h)
        };
        let f = |x: &[f64; 2]| {
            let a = eval_curve(y, x[0]);
            let b = eval_curve(rho, x[1]);
            let d = a.point.sub(&b.point);
            let ta = [a.tangent[1], a.tangent[2], a.tangent[3]];
            let tb = [b.tangent[1], b.tangent[2], b.tangent[3]];
            let c = cross(ta, tb);
            pref * (0..3).map(|kk| kernel_w(k, &d, kk + 1) * c[kk]).sum::<f64>()
        };
        parts.push(integrate_adaptive(f, screen, settings)?);
    }
    let mut out = QuadResult { value: 0.0, error_estimate: 0.0, evaluations: 0, converged: true };
    for p in parts {
        out.value += p.value;
        out.error_estimate += p.error_estimate;
        out.evaluations += p.evaluations;
        out.converged &= p.converged;
    }
    Ok(out)
}
