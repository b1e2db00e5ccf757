//! Closed-form Gaussian inner products.
//!
//! The regularizing Gaussians are `q_k^x(t) = sqrt(k)/(2 pi)^{1/4} exp(-k^2 (t - x)^2 / 4)`
//! on the line and their fourfold product `p_k^x` on R^4. `D^{-1}` is the
//! antiderivative `(D^{-1} f)(t) = (int_{-inf}^t f - int_t^inf f) / 2`.

use crate::geometry::Point4;
use crate::math::{erf, exp, sqrt, PI, SQRT_2, SQRT_2PI};
use crate::{Error, Result};

/// The regularization parameter; always positive and finite.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Kappa(f64);

impl Kappa {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value > 0.0 {
            Ok(Kappa(value))
        } else {
            Err(Error::InvalidKappa(value))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// `(D^{-1} q_k^x)(t) = C(k) erf(k (t - x) / 2)` with `C(k) = sqrt(pi) (2 pi)^{-1/4} k^{-1/2}`.
pub fn inv_antideriv_gauss(kappa: Kappa, x: f64, t: f64) -> f64 {
    let k = kappa.value();
    let c = sqrt(PI) / sqrt(sqrt(2.0 * PI)) / sqrt(k);
    c * erf(k * (t - x) / 2.0)
}

/// `<q^z, (k / sqrt(2 pi)) D^{-1} q^x> = erf(k (z - x) / (2 sqrt 2))`.
pub fn erf_pair(kappa: Kappa, z: f64, x: f64) -> f64 {
    erf(kappa.value() * (z - x) / (2.0 * SQRT_2))
}

/// Inner products appearing in the regularized terms.
///
/// With `Delta = sigma - rho` and spatial axes `(i, j, k)`:
///
/// * `A(j)`: `<p^sigma, k D_j^{-1} p^rho>`
/// * `B`: `k <D_0^{-1} p^sigma, p^rho>`
/// * `C(j)`: `<D_0^{-1} p^sigma, k D_j^{-1} p^rho>`
/// * `W(k)`: `<p^y, p^rho>_k`, the Wilson-loop kernel with `y = sigma`:
///   `<q^{y_k}, k D^{-1} q^{rho_k}> <D^{-1} q^{y_0}, q^{rho_0}>` times the
///   overlaps of the two remaining coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelKind {
    A(usize),
    B,
    C(usize),
    W(usize),
}

#[inline]
fn gauss(k: f64, d2: f64) -> f64 {
    exp(-k * k * d2 / 8.0)
}

#[inline]
fn erf_scaled(k: f64, d: f64) -> f64 {
    erf(k * d / (2.0 * SQRT_2))
}

fn others(j: usize) -> (usize, usize) {
    match j {
        1 => (2, 3),
        2 => (1, 3),
        _ => (1, 2),
    }
}

/// Evaluates one kernel at a pair of points.
pub fn factorized_kernel(kind: KernelKind, kappa: Kappa, sigma: &Point4, rho: &Point4) -> Result<f64> {
    let axis = match kind {
        KernelKind::A(j) | KernelKind::C(j) | KernelKind::W(j) => Some(j),
        KernelKind::B => None,
    };
    if let Some(j) = axis {
        if !(1..=3).contains(&j) {
            return Err(Error::InvalidAxis(j));
        }
    }
    let k = kappa.value();
    let d = sigma.sub(rho);
    Ok(match kind {
        KernelKind::A(j) => kernel_a(k, &d, j),
        KernelKind::B => kernel_b(k, &d),
        KernelKind::C(j) => kernel_c(k, &d, j),
        KernelKind::W(j) => kernel_w(k, &d, j),
    })
}

/// `A(j)` as a function of `Delta = sigma - rho`.
#[inline]
pub(crate) fn kernel_a(k: f64, d: &[f64; 4], j: usize) -> f64 {
    let (i, l) = others(j);
    let g = d[0] * d[0] + d[i] * d[i] + d[l] * d[l];
    let e = gauss(k, g);
    if e == 0.0 {
        return 0.0;
    }
    SQRT_2PI * erf_scaled(k, d[j]) * e
}

#[inline]
pub(crate) fn kernel_b(k: f64, d: &[f64; 4]) -> f64 {
    let e = gauss(k, d[1] * d[1] + d[2] * d[2] + d[3] * d[3]);
    if e == 0.0 {
        return 0.0;
    }
    -SQRT_2PI * erf_scaled(k, d[0]) * e
}

#[inline]
pub(crate) fn kernel_c(k: f64, d: &[f64; 4], j: usize) -> f64 {
    let (i, l) = others(j);
    let e = gauss(k, d[i] * d[i] + d[l] * d[l]);
    if e == 0.0 {
        return 0.0;
    }
    -(2.0 * PI / k) * erf_scaled(k, d[0]) * erf_scaled(k, d[j]) * e
}

#[inline]
pub(crate) fn kernel_w(k: f64, d: &[f64; 4], j: usize) -> f64 {
    let (i, l) = others(j);
    let e = gauss(k, d[i] * d[i] + d[l] * d[l]);
    if e == 0.0 {
        return 0.0;
    }
    -(2.0 * PI / k) * erf_scaled(k, d[j]) * erf_scaled(k, d[0]) * e
}

/// `[C(1), C(2), C(3)]` sharing the time factor.
#[inline]
pub(crate) fn kernel_c_all(k: f64, d: &[f64; 4]) -> [f64; 3] {
    let g = [gauss(k, d[1] * d[1]), gauss(k, d[2] * d[2]), gauss(k, d[3] * d[3])];
    let pair = [g[1] * g[2], g[0] * g[2], g[0] * g[1]];
    if pair.iter().all(|&p| p == 0.0) {
        return [0.0; 3];
    }
    let lead = -(2.0 * PI / k) * erf_scaled(k, d[0]);
    core::array::from_fn(|j| if pair[j] == 0.0 { 0.0 } else { lead * erf_scaled(k, d[j + 1]) * pair[j] })
}
