//! The three families of regularized terms.

use alloc::vec::Vec;

use num_complex::Complex64;

use super::screen::{refine, DiffBound, NEGLIGIBLE_EXPONENT};
use super::{Chirality, OperatorValue, Scene};
use crate::geometry::{eval_curve, eval_patch, Loop, Patch};
use crate::kernels::{kernel_a, kernel_b, kernel_c_all, Kappa};
use crate::math::{dot, sqrt, PI, SQRT_4PI};
use crate::quadrature::{gauss_legendre, integrate_adaptive, QuadResult, QuadSettings, QuadValue, Screen, PANEL_ORDER};
use crate::Result;

/// A term of the expansion with its quadrature error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TermValue {
    pub value: OperatorValue,
    pub error_estimate: f64,
}

/// Spatial index pairs `(i, k)` completing `j` to the lemma triples
/// `(1,2,3), (3,1,2), (2,3,1)` read as `(i, j, k)`.
const LEMMA_PAIRS: [(usize, usize); 3] = [(3, 2), (1, 3), (2, 1)];

/// Gaussian coordinates of the kernel `A(j)`.
const A_MASKS: [[usize; 3]; 3] = [[0, 2, 3], [0, 1, 3], [0, 1, 2]];

struct Bounds {
    t: [f64; 4],
    tbar: [f64; 4],
}

fn patch_bounds(patch: &Patch) -> Bounds {
    let (t, tbar) = patch.derivative_bounds();
    Bounds { t, tbar }
}

fn max4(v: &[f64; 4]) -> f64 {
    v.iter().copied().fold(0.0, f64::max)
}

fn patch_loop_bound(
    patch: &Patch,
    pb: &Bounds,
    lp: &Loop,
    lb: &[f64; 4],
    t: [f64; 2],
    ht: [f64; 2],
    s: f64,
    hs: f64,
) -> DiffBound {
    let sigma = eval_patch(patch, t[0], t[1]).point;
    let rho = eval_curve(lp, s).point;
    let half: [f64; 4] = core::array::from_fn(|a| 0.5 * (pb.t[a] * ht[0] + pb.tbar[a] * ht[1] + lb[a] * hs));
    DiffBound::new(sigma.sub(&rho), half)
}

fn combine<V: QuadValue>(parts: Vec<QuadResult<V>>) -> QuadResult<V> {
    let mut out = QuadResult { value: V::zero(), error_estimate: 0.0, evaluations: 0, converged: true };
    for p in parts {
        out.value = out.value.add(p.value);
        out.error_estimate += p.error_estimate;
        out.evaluations += p.evaluations;
        out.converged &= p.converged;
    }
    out
}

/// Integrates a `(t, tbar, s)` integrand over every (patch, geometric loop) pair.
fn patch_loop_integral<V, F>(
    scene: &Scene,
    kappa: Kappa,
    settings: &QuadSettings,
    masks: &[&[usize]],
    integrand: F,
) -> Result<QuadResult<V>>
where
    V: QuadValue,
    F: Fn(&crate::geometry::SurfaceSample, &crate::geometry::CurveSample) -> V + Sync + Send,
{
    let k = kappa.value();
    let mut parts = Vec::new();
    for patch in &scene.surface.patches {
        let pb = patch_bounds(patch);
        for lp in &scene.geometric.components {
            let lb = lp.derivative_bounds();
            let screen = |lo: &[f64; 3], hi: &[f64; 3]| {
                let h = [hi[0] - lo[0], hi[1] - lo[1], hi[2] - lo[2]];
                let b = patch_loop_bound(
                    patch,
                    &pb,
                    lp,
                    &lb,
                    [0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1])],
                    [h[0], h[1]],
                    0.5 * (lo[2] + hi[2]),
                    h[2],
                );
                if masks.iter().all(|m| b.exponent(k, m) > NEGLIGIBLE_EXPONENT) {
                    return Screen::Negligible;
                }
                refine(k, &[b], [max4(&pb.t) * h[0], max4(&pb.tbar) * h[1], max4(&lb) * h[2]], h)
            };
            let f = |x: &[f64; 3]| {
                let ss = eval_patch(patch, x[0], x[1]);
                let cs = eval_curve(lp, x[2]);
                integrand(&ss, &cs)
            };
            parts.push(integrate_adaptive(f, screen, settings)?);
        }
    }
    Ok(combine(parts))
}

/// The three axis-`j` lemma integrals
/// `(k^3 / 32 pi) int <p^sigma, k D_j^{-1} p^rho> (rho'_k J_0i - rho'_i J_0k)`,
/// summed over geometric loops and patches. Each tends to `pi lk`.
pub fn a_lemmas(scene: &Scene, kappa: Kappa, settings: &QuadSettings) -> Result<QuadResult<[f64; 3]>> {
    let k = kappa.value();
    let pref = k * k * k / (32.0 * PI);
    let masks: [&[usize]; 3] = [&A_MASKS[0], &A_MASKS[1], &A_MASKS[2]];
    patch_loop_integral(scene, kappa, settings, &masks, |ss, cs| {
        let d = ss.point.sub(&cs.point);
        let r = cs.tangent;
        core::array::from_fn(|jj| {
            let j = jj + 1;
            let (i, l) = LEMMA_PAIRS[jj];
            let weight = r[l] * ss.jacobian(0, i) - r[i] * ss.jacobian(0, l);
            if weight == 0.0 {
                return 0.0;
            }
            pref * kernel_a(k, &d, j) * weight
        })
    })
}

/// `(k^3 / 32 pi) int k <D_0^{-1} p^sigma, p^rho> rho' . J_sigma`; tends to `-pi lk`.
pub fn b_lemma(scene: &Scene, kappa: Kappa, settings: &QuadSettings) -> Result<QuadResult<f64>> {
    let k = kappa.value();
    let pref = k * k * k / (32.0 * PI);
    let masks: [&[usize]; 1] = [&[1, 2, 3]];
    patch_loop_integral(scene, kappa, settings, &masks, |ss, cs| {
        let d = ss.point.sub(&cs.point);
        let r = [cs.tangent[1], cs.tangent[2], cs.tangent[3]];
        pref * kernel_b(k, &d) * dot(r, ss.j_sigma())
    })
}

/// `A^+` or `A^-`: `-+ (i / sqrt(4 pi)) sum_j lemma_j (x) F^{+-}`.
pub fn term_a(scene: &Scene, kappa: Kappa, sign: Chirality, settings: &QuadSettings) -> Result<TermValue> {
    let q = a_lemmas(scene, kappa, settings)?.into_converged()?;
    let total: f64 = q.value.iter().sum();
    let s = match sign {
        Chirality::Plus => -1.0,
        Chirality::Minus => 1.0,
    };
    Ok(TermValue {
        value: OperatorValue { coefficient: Complex64::new(0.0, s * total / SQRT_4PI), algebra: sign.algebra() },
        error_estimate: 3.0 * q.error_estimate / SQRT_4PI,
    })
}

/// `B`: `(i / sqrt(4 pi)) b_lemma (x) (F^+ - F^-)`.
pub fn term_b(scene: &Scene, kappa: Kappa, settings: &QuadSettings) -> Result<TermValue> {
    let q = b_lemma(scene, kappa, settings)?.into_converged()?;
    Ok(TermValue {
        value: OperatorValue {
            coefficient: Complex64::new(0.0, q.value / SQRT_4PI),
            algebra: crate::liealg::AlgebraElement::f_plus() - crate::liealg::AlgebraElement::f_minus(),
        },
        error_estimate: q.error_estimate / SQRT_4PI,
    })
}

/// Spatial cyclic triples `(i, j, k)` of the C term.
const C_TRIPLES: [(usize, usize, usize); 3] = [(1, 2, 3), (2, 3, 1), (3, 1, 2)];

/// Coordinate pairs carrying the Gaussian factor of `C(1)`, `C(2)`, `C(3)`.
const C_MASKS: [[usize; 2]; 3] = [[2, 3], [1, 3], [1, 2]];

/// Gauss-Legendre nodes of one geometric loop, pre-evaluated at a fixed kappa.
struct LoopNodes {
    /// `(center, half extent)` of each panel.
    panels: Vec<([f64; 4], [f64; 4])>,
    /// `(point, weighted tangent)` per node, `PANEL_ORDER` per panel.
    nodes: Vec<([f64; 4], [f64; 4])>,
}

impl LoopNodes {
    fn new(lp: &Loop, kappa: f64) -> Self {
        let lb = lp.derivative_bounds();
        let speed = sqrt(lb.iter().map(|v| v * v).sum::<f64>());
        let count = (libm::ceil(kappa * speed / 2.0) as usize).max(16);
        let h = 1.0 / count as f64;
        let (x, w) = gauss_legendre(PANEL_ORDER);
        let mut panels = Vec::with_capacity(count);
        let mut nodes = Vec::with_capacity(count * PANEL_ORDER);
        for p in 0..count {
            let a = p as f64 * h;
            let center = eval_curve(lp, a + 0.5 * h).point.0;
            panels.push((center, lb.map(|v| 0.5 * h * v)));
            for (xi, wi) in x.iter().zip(&w) {
                let cs = eval_curve(lp, a + h * xi);
                nodes.push((cs.point.0, cs.tangent.map(|v| v * h * wi)));
            }
        }
        LoopNodes { panels, nodes }
    }

    /// Whether every `C(j)` is negligible for all of the loop within `half`
    /// of `sigma`, coordinatewise.
    fn negligible(&self, kappa: f64, sigma: &[f64; 4], half: &[f64; 4]) -> bool {
        self.panels.iter().all(|(c, e)| {
            let b = DiffBound::new(core::array::from_fn(|a| sigma[a] - c[a]), core::array::from_fn(|a| half[a] + e[a]));
            C_MASKS.iter().all(|m| b.exponent(kappa, m) > NEGLIGIBLE_EXPONENT)
        })
    }

    /// Accumulates `h[j][m] += int rho'_m C(j)(sigma, rho)`.
    fn accumulate(&self, kappa: f64, sigma: &[f64; 4], h: &mut [[f64; 3]; 3]) {
        for (p, (c, e)) in self.panels.iter().enumerate() {
            let b = DiffBound::new(core::array::from_fn(|a| sigma[a] - c[a]), *e);
            if C_MASKS.iter().all(|m| b.exponent(kappa, m) > NEGLIGIBLE_EXPONENT) {
                continue;
            }
            for (rho, wt) in &self.nodes[p * PANEL_ORDER..(p + 1) * PANEL_ORDER] {
                let kc = kernel_c_all(kappa, &core::array::from_fn(|a| sigma[a] - rho[a]));
                for (j, &kj) in kc.iter().enumerate() {
                    if kj != 0.0 {
                        for m in 0..3 {
                            h[j][m] += kj * wt[m + 1];
                        }
                    }
                }
            }
        }
    }
}

/// Real coefficient `c` with `C^+ = c F^+` and `C^- = c F^-`:
///
/// `c = -(k^4 / 32 pi^2) sum_{(i,j,k)} sum_{v, w} int J_ij
///      [rho'_k C(j) - rho'_j C(k)](sigma, rho^v) [rho'_i C(k) - rho'_k C(i)](sigma, rho^w)`.
///
/// The sums over `v` and `w` and the two loop parameters factor, leaving a
/// surface integral of products of line integrals. The outer integral is
/// adaptive; the inner ones use fixed panels of width about `2 / kappa`.
pub fn c_coefficient(scene: &Scene, kappa: Kappa, settings: &QuadSettings) -> Result<QuadResult<f64>> {
    let k = kappa.value();
    let pref = -(k * k * k * k) / (32.0 * PI * PI);
    let loops: Vec<LoopNodes> = scene.geometric.components.iter().map(|lp| LoopNodes::new(lp, k)).collect();
    let mut parts = Vec::new();
    for patch in &scene.surface.patches {
        let pb = patch_bounds(patch);
        let screen = |lo: &[f64; 2], hi: &[f64; 2]| {
            let h = [hi[0] - lo[0], hi[1] - lo[1]];
            let sigma = eval_patch(patch, 0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1])).point.0;
            let half: [f64; 4] = core::array::from_fn(|a| 0.5 * (pb.t[a] * h[0] + pb.tbar[a] * h[1]));
            if loops.iter().all(|l| l.negligible(k, &sigma, &half)) {
                return Screen::Negligible;
            }
            refine(k, &[DiffBound::new([0.0; 4], half)], [max4(&pb.t) * h[0], max4(&pb.tbar) * h[1]], h)
        };
        let f = |x: &[f64; 2]| {
            let ss = eval_patch(patch, x[0], x[1]);
            let sigma = ss.point.0;
            let mut h = [[0.0; 3]; 3];
            for l in &loops {
                l.accumulate(k, &sigma, &mut h);
            }
            let d = |a: usize, b: usize| h[a - 1][b - 1] - h[b - 1][a - 1];
            let total: f64 = C_TRIPLES.iter().map(|&(i, j, l)| ss.jacobian(i, j) * d(j, l) * d(l, i)).sum();
            pref * total
        };
        parts.push(integrate_adaptive(f, screen, settings)?);
    }
    Ok(combine(parts))
}

/// `C^+` or `C^-`.
pub fn term_c(scene: &Scene, kappa: Kappa, sign: Chirality, settings: &QuadSettings) -> Result<TermValue> {
    let q = c_coefficient(scene, kappa, settings)?.into_converged()?;
    Ok(TermValue {
        value: OperatorValue { coefficient: Complex64::new(q.value, 0.0), algebra: sign.algebra() },
        error_estimate: q.error_estimate,
    })
}
