//! The Lie algebra su(2) x su(2), its irreducible representations and the
//! character sums entering the Wilson-loop observable.
//!
//! Each factor uses the basis `e_1, e_2, e_3` with `[e_1, e_2] = e_3` (cyclic).
//! In the spin-1/2 representation
//!
//! ```text
//! e_1 -> [[0, 1/2], [-1/2, 0]]   e_2 -> [[0, i/2], [i/2, 0]]   e_3 -> diag(i/2, -i/2)
//! ```
//!
//! Higher spins use `rho_j(e_a) = -i J_a` with `(J_1, J_2, J_3) = (-J_y, -J_x, -J_z)`
//! built from the standard angular momentum matrices.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_complex::Complex64;

use crate::math::{abs, exp, sin_cos, sqrt};
use crate::{Error, Result};

/// A spin label `j`, stored as the non-negative integer `2j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Spin(u32);

impl Spin {
    pub const ZERO: Spin = Spin(0);
    pub const HALF: Spin = Spin(1);

    pub fn from_twice(twice: u32) -> Self {
        Spin(twice)
    }

    pub fn twice(self) -> u32 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn dimension(self) -> usize {
        self.0 as usize + 1
    }

    /// The weights `m = j, j-1, ..., -j`.
    pub fn weights(self) -> impl Iterator<Item = f64> {
        let j = self.value();
        (0..self.dimension()).map(move |k| j - k as f64)
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for Spin {
    type Err = Error;

    /// Accepts `"0"`, `"1"`, `"3/2"`, `"2/2"` and the like.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidSpin(format!("cannot read {s:?} as a spin"));
        let s = s.trim();
        match s.split_once('/') {
            Some((num, "2")) => num.trim().parse::<u32>().map(Spin).map_err(|_| bad()),
            Some(_) => Err(bad()),
            None => s.parse::<u32>().ok().and_then(|n| n.checked_mul(2)).map(Spin).ok_or_else(bad),
        }
    }
}

/// The pair of spins `(j+, j-)` labelling an irreducible representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IrrepSpec {
    pub plus: Spin,
    pub minus: Spin,
}

impl IrrepSpec {
    pub fn new(plus: Spin, minus: Spin) -> Self {
        IrrepSpec { plus, minus }
    }
}

/// An element of su(2) x su(2) in the basis `(e_i, 0)` and `(0, e_i)`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct AlgebraElement {
    pub plus: [f64; 3],
    pub minus: [f64; 3],
}

impl AlgebraElement {
    pub const ZERO: AlgebraElement = AlgebraElement { plus: [0.0; 3], minus: [0.0; 3] };

    pub fn new(plus: [f64; 3], minus: [f64; 3]) -> Self {
        AlgebraElement { plus, minus }
    }

    /// `E^{01} + E^{02} + E^{03}`.
    pub fn f_plus() -> Self {
        AlgebraElement { plus: [1.0; 3], minus: [0.0; 3] }
    }

    /// `E^{23} + E^{31} + E^{12}`.
    pub fn f_minus() -> Self {
        AlgebraElement { plus: [0.0; 3], minus: [1.0; 3] }
    }

    pub fn norm(&self) -> f64 {
        sqrt(self.plus.iter().chain(self.minus.iter()).map(|v| v * v).sum())
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.plus
            .iter()
            .zip(other.plus.iter())
            .chain(self.minus.iter().zip(other.minus.iter()))
            .map(|(a, b)| abs(a - b))
            .fold(0.0, f64::max)
    }
}

impl Add for AlgebraElement {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        AlgebraElement {
            plus: core::array::from_fn(|i| self.plus[i] + o.plus[i]),
            minus: core::array::from_fn(|i| self.minus[i] + o.minus[i]),
        }
    }
}

impl Sub for AlgebraElement {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for AlgebraElement {
    type Output = Self;
    fn neg(self) -> Self {
        self * -1.0
    }
}

impl Mul<f64> for AlgebraElement {
    type Output = Self;
    fn mul(self, k: f64) -> Self {
        AlgebraElement { plus: self.plus.map(|v| k * v), minus: self.minus.map(|v| k * v) }
    }
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    crate::math::cross(a, b)
}

/// Componentwise su(2) bracket; the two factors commute.
pub fn bracket(u: &AlgebraElement, v: &AlgebraElement) -> AlgebraElement {
    AlgebraElement { plus: cross(u.plus, v.plus), minus: cross(u.minus, v.minus) }
}

/// `E^{alpha beta}` for spacetime indices `alpha != beta` in `0..4`.
///
/// `E^{0i}` is `(e_i, 0)`; `E^{23}, E^{31}, E^{12}` are `(0, e_1), (0, e_2), (0, e_3)`.
/// Swapping the indices negates the element.
pub fn basis_element(alpha: usize, beta: usize) -> Result<AlgebraElement> {
    if alpha > 3 || beta > 3 {
        return Err(Error::InvalidAxis(alpha.max(beta)));
    }
    if alpha == beta {
        return Err(Error::DegenerateIndex(alpha, beta));
    }
    let (lo, hi, sign) = if alpha < beta { (alpha, beta, 1.0) } else { (beta, alpha, -1.0) };
    let mut e = AlgebraElement::ZERO;
    match (lo, hi) {
        (0, i) => e.plus[i - 1] = 1.0,
        (2, 3) => e.minus[0] = 1.0,
        (1, 3) => e.minus[1] = -1.0,
        (1, 2) => e.minus[2] = 1.0,
        _ => unreachable!(),
    }
    Ok(e * sign)
}

/// Totally antisymmetric symbol on `{1, 2, 3}`; zero for repeated or out-of-range indices.
pub fn levi_civita(i: usize, j: usize, k: usize) -> i32 {
    match (i, j, k) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1,
        (3, 2, 1) | (1, 3, 2) | (2, 1, 3) => -1,
        _ => 0,
    }
}

/// Dense complex square matrix, row major.
#[derive(Clone, Debug, PartialEq)]
pub struct RepMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl RepMatrix {
    pub fn zeros(dim: usize) -> Self {
        RepMatrix { dim, data: vec![Complex64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[&[Complex64]]) -> Self {
        let dim = rows.len();
        let mut m = Self::zeros(dim);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), dim, "matrix must be square");
            m.data[i * dim..(i + 1) * dim].copy_from_slice(row);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.dim + j] = v;
    }

    pub fn scale(&self, k: Complex64) -> Self {
        RepMatrix { dim: self.dim, data: self.data.iter().map(|v| v * k).collect() }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &self.matmul(other) - &other.matmul(self)
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.data[i * self.dim + i]).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Matrix exponential by scaling and squaring of a Taylor series.
    pub fn exp(&self) -> Self {
        let norm1 = (0..self.dim)
            .map(|j| (0..self.dim).map(|i| self.get(i, j).norm()).sum::<f64>())
            .fold(0.0, f64::max);
        let mut squarings = 0u32;
        let mut scale = 1.0;
        while norm1 * scale > 0.25 {
            scale *= 0.5;
            squarings += 1;
        }
        let a = self.scale(Complex64::new(scale, 0.0));
        let mut result = Self::identity(self.dim);
        let mut term = Self::identity(self.dim);
        for k in 1..=30 {
            term = term.matmul(&a).scale(Complex64::new(1.0 / k as f64, 0.0));
            result = &result + &term;
            if term.max_abs() < 1e-18 * result.max_abs() {
                break;
            }
        }
        for _ in 0..squarings {
            result = result.matmul(&result);
        }
        result
    }
}

impl<'a> Add<&'a RepMatrix> for &'a RepMatrix {
    type Output = RepMatrix;
    fn add(self, o: &RepMatrix) -> RepMatrix {
        assert_eq!(self.dim, o.dim);
        RepMatrix { dim: self.dim, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }
}

impl<'a> Sub<&'a RepMatrix> for &'a RepMatrix {
    type Output = RepMatrix;
    fn sub(self, o: &RepMatrix) -> RepMatrix {
        assert_eq!(self.dim, o.dim);
        RepMatrix { dim: self.dim, data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() }
    }
}

/// Images of `e_1, e_2, e_3` in the spin-`j` representation.
pub fn spin_matrices(j: Spin) -> [RepMatrix; 3] {
    let n = j.dimension();
    let jv = j.value();
    let weights: Vec<f64> = j.weights().collect();
    let mut jx = RepMatrix::zeros(n);
    let mut jy = RepMatrix::zeros(n);
    let mut jz = RepMatrix::zeros(n);
    for (r, &m) in weights.iter().enumerate() {
        jz.set(r, r, Complex64::new(m, 0.0));
        // <m+1| J+ |m> sits at (r-1, r)
        if r > 0 {
            let c = sqrt(jv * (jv + 1.0) - m * (m + 1.0));
            jx.set(r - 1, r, Complex64::new(c / 2.0, 0.0));
            jx.set(r, r - 1, Complex64::new(c / 2.0, 0.0));
            jy.set(r - 1, r, Complex64::new(0.0, -c / 2.0));
            jy.set(r, r - 1, Complex64::new(0.0, c / 2.0));
        }
    }
    let i = Complex64::new(0.0, 1.0);
    // rho(e_a) = -i J_a with J = (-J_y, -J_x, -J_z)
    [jy.scale(i), jx.scale(i), jz.scale(i)]
}

fn combine(mats: &[RepMatrix; 3], coeffs: [f64; 3], dim: usize) -> RepMatrix {
    let mut out = RepMatrix::zeros(dim);
    for (m, &c) in mats.iter().zip(coeffs.iter()) {
        if c != 0.0 {
            out = &out + &m.scale(Complex64::new(c, 0.0));
        }
    }
    out
}

/// `(rho_{j+}(u_+), rho_{j-}(u_-))`.
pub fn apply_rep(spec: IrrepSpec, u: &AlgebraElement) -> (RepMatrix, RepMatrix) {
    let p = spin_matrices(spec.plus);
    let m = spin_matrices(spec.minus);
    (
        combine(&p, u.plus, spec.plus.dimension()),
        combine(&m, u.minus, spec.minus.dimension()),
    )
}

/// `Tr exp(c rho_j(e_1 + e_2 + e_3))`, evaluated from the eigenvalues
/// `i sqrt(3) m`, `m = -j..j`.
pub fn trace_exp_character(j: Spin, c: Complex64) -> Complex64 {
    let root3 = sqrt(3.0);
    j.weights()
        .map(|m| {
            let z = c * Complex64::new(0.0, root3 * m);
            let (s, co) = sin_cos(z.im);
            Complex64::new(co, s) * exp(z.re)
        })
        .sum()
}

/// Same quantity through a dense matrix exponential.
pub fn trace_exp_dense(j: Spin, c: Complex64) -> Complex64 {
    let mats = spin_matrices(j);
    let e = combine(&mats, [1.0; 3], j.dimension());
    e.scale(c).exp().trace()
}
