//! Small numeric helpers shared by the modules.

pub(crate) use core::f64::consts::PI;

pub(crate) const SQRT_2PI: f64 = 2.506_628_274_631_000_5;
pub(crate) const SQRT_PI: f64 = 1.772_453_850_905_516;
pub(crate) const SQRT_4PI: f64 = 3.544_907_701_811_032;
pub(crate) const SQRT_2: f64 = core::f64::consts::SQRT_2;

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub(crate) fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub(crate) fn erf(x: f64) -> f64 {
    libm::erf(x)
}

#[inline]
pub(crate) fn sin_cos(x: f64) -> (f64, f64) {
    libm::sincos(x)
}

#[inline]
pub(crate) fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

#[inline]
pub(crate) fn round(x: f64) -> f64 {
    libm::round(x)
}

#[inline]
pub(crate) fn sign(x: f64) -> i64 {
    if x > 0.0 {
        1
    } else if x < 0.0 {
        -1
    } else {
        0
    }
}

pub(crate) fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub(crate) fn dot<const N: usize>(a: [f64; N], b: [f64; N]) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm<const N: usize>(a: [f64; N]) -> f64 {
    sqrt(dot(a, a))
}

/// Determinant of the 4x4 matrix whose columns are `cols`.
pub(crate) fn det4(cols: [[f64; 4]; 4]) -> f64 {
    let m = |r: usize, c: usize| cols[c][r];
    let mut total = 0.0;
    for c in 0..4 {
        let mut minor = [[0.0; 3]; 3];
        for (mr, r) in (1..4).enumerate() {
            let mut mc = 0;
            for cc in 0..4 {
                if cc == c {
                    continue;
                }
                minor[mr][mc] = m(r, cc);
                mc += 1;
            }
        }
        let d = minor[0][0] * (minor[1][1] * minor[2][2] - minor[1][2] * minor[2][1])
            - minor[0][1] * (minor[1][0] * minor[2][2] - minor[1][2] * minor[2][0])
            + minor[0][2] * (minor[1][0] * minor[2][1] - minor[1][1] * minor[2][0]);
        let s = if c % 2 == 0 { 1.0 } else { -1.0 };
        total += s * m(0, c) * d;
    }
    total
}

/// Solves `m x = r` by Cramer's rule; `None` for a singular matrix.
pub(crate) fn solve3(m: [[f64; 3]; 3], r: [f64; 3]) -> Option<[f64; 3]> {
    let cols = [[m[0][0], m[1][0], m[2][0]], [m[0][1], m[1][1], m[2][1]], [m[0][2], m[1][2], m[2][2]]];
    let det = dot(cols[0], cross(cols[1], cols[2]));
    if abs(det) < 1e-300 {
        return None;
    }
    let x0 = dot(r, cross(cols[1], cols[2])) / det;
    let x1 = dot(cols[0], cross(r, cols[2])) / det;
    let x2 = dot(cols[0], cross(cols[1], r)) / det;
    Some([x0, x1, x2])
}
