//! Slow, independent reference computations used by the test suites.
//!
//! Nothing here shares numerical code with `linkcurv-core` beyond curve and
//! patch evaluation.

pub mod fixtures;

use linkcurv_core::geometry::{eval_curve, eval_patch, Loop, Patch, Surface};
use linkcurv_core::kernels::KernelKind;

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn legendre_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    (x, w)
}

/// Composite rule with `panels` panels of order `order` on `[a, b]`.
pub fn composite(a: f64, b: f64, panels: usize, order: usize) -> Vec<(f64, f64)> {
    let (x, w) = legendre_rule(order);
    let h = (b - a) / panels as f64;
    let mut out = Vec::with_capacity(panels * order);
    for p in 0..panels {
        let lo = a + p as f64 * h;
        for (xi, wi) in x.iter().zip(&w) {
            out.push((lo + 0.5 * h * (xi + 1.0), 0.5 * h * wi));
        }
    }
    out
}

fn gaussian(kappa: f64, center: f64, t: f64) -> f64 {
    kappa.sqrt() / (2.0 * std::f64::consts::PI).powf(0.25) * (-kappa * kappa * (t - center).powi(2) / 4.0).exp()
}

/// `(int_{-inf}^t q - int_t^inf q) / 2` by quadrature of both half-lines.
fn antiderivative(kappa: f64, center: f64, t: f64) -> f64 {
    let reach = 14.0 / kappa;
    let (lo, hi) = (center - reach, center + reach);
    let part = |a: f64, b: f64| -> f64 {
        if b <= a {
            return 0.0;
        }
        composite(a, b, 8, 12).iter().map(|&(x, w)| w * gaussian(kappa, center, x)).sum()
    };
    let left = part(lo, t.clamp(lo, hi));
    let right = part(t.clamp(lo, hi), hi);
    0.5 * (left - right)
}

#[derive(Clone, Copy)]
enum Factor {
    Gauss(f64),
    Anti(f64),
}

impl Factor {
    fn eval(self, kappa: f64, t: f64) -> f64 {
        match self {
            Factor::Gauss(c) => gaussian(kappa, c, t),
            Factor::Anti(c) => antiderivative(kappa, c, t),
        }
    }
}

/// `<p^sigma, k D_j^{-1} p^rho>` and its relatives, as a 4D tensor-product
/// quadrature of the defining integral on `R^4`.
pub fn brute_kernel(kind: KernelKind, kappa: f64, sigma: &[f64; 4], rho: &[f64; 4]) -> f64 {
    let mut left: [Factor; 4] = core::array::from_fn(|a| Factor::Gauss(sigma[a]));
    let mut right: [Factor; 4] = core::array::from_fn(|a| Factor::Gauss(rho[a]));
    match kind {
        KernelKind::A(j) => {
            right[j] = Factor::Anti(rho[j]);
        }
        KernelKind::B => {
            left[0] = Factor::Anti(sigma[0]);
        }
        KernelKind::C(j) | KernelKind::W(j) => {
            left[0] = Factor::Anti(sigma[0]);
            right[j] = Factor::Anti(rho[j]);
        }
    }
    let axes: [Vec<(f64, f64)>; 4] = core::array::from_fn(|a| {
        let (lo, hi) = match (left[a], right[a]) {
            (Factor::Gauss(x), Factor::Gauss(y)) => {
                let m = 0.5 * (x + y);
                (m - 9.0 / kappa, m + 9.0 / kappa)
            }
            (Factor::Gauss(x), Factor::Anti(_)) | (Factor::Anti(_), Factor::Gauss(x)) => {
                (x - 12.0 / kappa, x + 12.0 / kappa)
            }
            (Factor::Anti(_), Factor::Anti(_)) => unreachable!("one side is always a Gaussian"),
        };
        composite(lo, hi, 6, 8)
            .into_iter()
            .map(|(t, w)| (w * left[a].eval(kappa, t) * right[a].eval(kappa, t), t))
            .collect()
    });
    let mut total = 0.0;
    for (f0, _) in &axes[0] {
        for (f1, _) in &axes[1] {
            let p01 = f0 * f1;
            for (f2, _) in &axes[2] {
                let p012 = p01 * f2;
                for (f3, _) in &axes[3] {
                    total += p012 * f3;
                }
            }
        }
    }
    kappa * total
}

/// Linking number of the spatial projections of two loops, counted from
/// signed crossings of a planar diagram along a generic viewing direction.
pub fn crossing_linking(a: &Loop, b: &Loop, segments: usize) -> f64 {
    let view = normalize([0.1234, 0.3141, 0.9412]);
    let e1 = normalize(cross(view, [1.0, 0.0, 0.0]));
    let e2 = cross(view, e1);
    let poly = |lp: &Loop| -> Vec<[f64; 3]> {
        (0..=segments).map(|i| spatial(&eval_curve(lp, i as f64 / segments as f64).point.0)).collect()
    };
    let pa = poly(a);
    let pb = poly(b);
    let mut total = 0.0;
    for sa in pa.windows(2) {
        let (a0, a1) = (plane(sa[0], e1, e2), plane(sa[1], e1, e2));
        for sb in pb.windows(2) {
            let (b0, b1) = (plane(sb[0], e1, e2), plane(sb[1], e1, e2));
            let Some((u, v)) = segment_cross(a0, a1, b0, b1) else { continue };
            let ta = sub(sa[1], sa[0]);
            let tb = sub(sb[1], sb[0]);
            let ha = dot(add(sa[0], scale3(ta, u)), view);
            let hb = dot(add(sb[0], scale3(tb, v)), view);
            total += (ha - hb).signum() * dot(view, cross(ta, tb)).signum();
        }
    }
    0.5 * total
}

fn segment_cross(a0: [f64; 2], a1: [f64; 2], b0: [f64; 2], b1: [f64; 2]) -> Option<(f64, f64)> {
    let r = [a1[0] - a0[0], a1[1] - a0[1]];
    let s = [b1[0] - b0[0], b1[1] - b0[1]];
    let den = r[0] * s[1] - r[1] * s[0];
    if den == 0.0 {
        return None;
    }
    let q = [b0[0] - a0[0], b0[1] - a0[1]];
    let u = (q[0] * s[1] - q[1] * s[0]) / den;
    let v = (q[0] * r[1] - q[1] * r[0]) / den;
    ((0.0..1.0).contains(&u) && (0.0..1.0).contains(&v)).then_some((u, v))
}

/// Signed piercing count of the axis projection of `lp` through `surface`,
/// from a triangulated surface and a polygonal loop.
pub fn mesh_linking(lp: &Loop, surface: &Surface, axis: usize, segments: usize, cells: usize) -> i64 {
    let keep: Vec<usize> = (0..4).filter(|&a| a != axis).collect();
    let curve: Vec<[f64; 4]> = (0..=segments).map(|i| eval_curve(lp, i as f64 / segments as f64).point.0).collect();
    let mut total = 0;
    for patch in &surface.patches {
        for tri in triangles(patch, cells) {
            let t3 = tri.map(|p| [p[keep[0]], p[keep[1]], p[keep[2]]]);
            let lo: [f64; 3] = core::array::from_fn(|c| t3.iter().map(|p| p[c]).fold(f64::INFINITY, f64::min));
            let hi: [f64; 3] = core::array::from_fn(|c| t3.iter().map(|p| p[c]).fold(f64::NEG_INFINITY, f64::max));
            for seg in curve.windows(2) {
                let s0 = [seg[0][keep[0]], seg[0][keep[1]], seg[0][keep[2]]];
                let s1 = [seg[1][keep[0]], seg[1][keep[1]], seg[1][keep[2]]];
                if (0..3).any(|c| s0[c].max(s1[c]) < lo[c] || s0[c].min(s1[c]) > hi[c]) {
                    continue;
                }
                let Some((u, beta, gamma)) = segment_triangle(s0, s1, t3) else { continue };
                let e1 = sub4(tri[1], tri[0]);
                let e2 = sub4(tri[2], tri[0]);
                let d = sub4(seg[1], seg[0]).map(|v| -v);
                let mut ax = [0.0; 4];
                ax[axis] = 1.0;
                let orientation = det4([e1, e2, d, ax]).signum() as i64;
                let surf = tri[0][axis] + beta * e1[axis] + gamma * e2[axis];
                let line = seg[0][axis] + u * (seg[1][axis] - seg[0][axis]);
                total += orientation * (surf - line).signum() as i64;
            }
        }
    }
    total
}

/// Triangles `(p00, p10, p11)` and `(p00, p11, p01)` of a `cells x cells` grid,
/// oriented like `(d_t, d_tbar)`.
fn triangles(patch: &Patch, cells: usize) -> Vec<[[f64; 4]; 3]> {
    let h = 1.0 / cells as f64;
    let at = |i: usize, j: usize| eval_patch(patch, i as f64 * h, j as f64 * h).point.0;
    let mut out = Vec::with_capacity(2 * cells * cells);
    for i in 0..cells {
        for j in 0..cells {
            let (p00, p10, p11, p01) = (at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1));
            out.push([p00, p10, p11]);
            out.push([p00, p11, p01]);
        }
    }
    out
}

fn segment_triangle(s0: [f64; 3], s1: [f64; 3], t: [[f64; 3]; 3]) -> Option<(f64, f64, f64)> {
    let d = sub(s1, s0);
    let e1 = sub(t[1], t[0]);
    let e2 = sub(t[2], t[0]);
    let p = cross(d, e2);
    let det = dot(e1, p);
    if det.abs() < 1e-300 {
        return None;
    }
    let s = sub(s0, t[0]);
    let beta = dot(s, p) / det;
    let q = cross(s, e1);
    let gamma = dot(d, q) / det;
    let u = dot(e2, q) / det;
    let inside = beta >= 0.0 && gamma >= 0.0 && beta + gamma < 1.0 && (0.0..1.0).contains(&u);
    inside.then_some((u, beta, gamma))
}

/// `1/2 oint_{boundary} sum_i w_i dx_i` for an abelian connection with spatial
/// components `w`, traced around the parameter square of every patch.
pub fn stokes_boundary(surface: &Surface, w: impl Fn(&[f64; 4]) -> [f64; 3], nodes: usize) -> f64 {
    let rule = composite(0.0, 1.0, nodes.div_ceil(16), 16);
    let mut total = 0.0;
    for patch in &surface.patches {
        // counterclockwise in (t, tbar)
        let edges: [(fn(f64) -> (f64, f64), bool, f64); 4] = [
            (|x| (x, 0.0), true, 1.0),
            (|x| (1.0, x), false, 1.0),
            (|x| (x, 1.0), true, -1.0),
            (|x| (0.0, x), false, -1.0),
        ];
        for (at, along_t, sign) in edges {
            for &(x, wt) in &rule {
                let (t, tb) = at(x);
                let ss = eval_patch(patch, t, tb);
                let tangent = if along_t { ss.d_t } else { ss.d_tbar };
                let form = w(&ss.point.0);
                total += sign * wt * (0..3).map(|i| form[i] * tangent[i + 1]).sum::<f64>();
            }
        }
    }
    0.5 * total
}

fn spatial(p: &[f64; 4]) -> [f64; 3] {
    [p[1], p[2], p[3]]
}

fn plane(p: [f64; 3], e1: [f64; 3], e2: [f64; 3]) -> [f64; 2] {
    [dot(p, e1), dot(p, e2)]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn add(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn scale3(a: [f64; 3], s: f64) -> [f64; 3] {
    a.map(|v| v * s)
}

fn normalize(a: [f64; 3]) -> [f64; 3] {
    let n = dot(a, a).sqrt();
    a.map(|v| v / n)
}

fn sub4(a: [f64; 4], b: [f64; 4]) -> [f64; 4] {
    core::array::from_fn(|i| a[i] - b[i])
}

/// Determinant with the vectors as columns, by Gaussian elimination.
fn det4(cols: [[f64; 4]; 4]) -> f64 {
    let mut m: [[f64; 4]; 4] = core::array::from_fn(|r| core::array::from_fn(|c| cols[c][r]));
    let mut det = 1.0;
    for c in 0..4 {
        let p = (c..4).max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs())).unwrap();
        if m[p][c] == 0.0 {
            return 0.0;
        }
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= m[c][c];
        for r in (c + 1)..4 {
            let f = m[r][c] / m[c][c];
            for k in c..4 {
                m[r][k] -= f * m[c][k];
            }
        }
    }
    det
}

/// `Tr exp(m)` for a Hermitian-times-scalar matrix given as dense rows,
/// by a plain Taylor series with many terms and repeated squaring.
pub fn trace_expm(rows: &[Vec<num_complex::Complex64>]) -> num_complex::Complex64 {
    use num_complex::Complex64;
    let n = rows.len();
    let norm: f64 = rows.iter().map(|r| r.iter().map(|v| v.norm()).sum::<f64>()).fold(0.0, f64::max);
    let squarings = (norm.max(1.0).log2().ceil() as u32) + 4;
    let s = 0.5f64.powi(squarings as i32);
    let a: Vec<Vec<Complex64>> = rows.iter().map(|r| r.iter().map(|v| v * s).collect()).collect();
    let mul = |x: &Vec<Vec<Complex64>>, y: &Vec<Vec<Complex64>>| -> Vec<Vec<Complex64>> {
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| x[i][k] * y[k][j]).sum()).collect())
            .collect()
    };
    let mut result: Vec<Vec<Complex64>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) }).collect()).collect();
    let mut term = result.clone();
    for k in 1..40 {
        term = mul(&term, &a).into_iter().map(|r| r.into_iter().map(|v| v / k as f64).collect()).collect();
        for i in 0..n {
            for j in 0..n {
                result[i][j] += term[i][j];
            }
        }
    }
    for _ in 0..squarings {
        result = mul(&result, &result);
    }
    (0..n).map(|i| result[i][i]).sum()
}
