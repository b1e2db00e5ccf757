//! Classical counterpart: the curvature of an explicit su(2) x su(2)
//! connection and its integral over a surface.
//!
//! A connection carries one scalar field `A^i_{ab}` per spatial index `i` and
//! antisymmetric spacetime pair `(a, b)`, paired with `E^{ab}`. The algebra
//! valued one-form components are `w_i = sum_{a != b} A^i_{ab} E^{ab}`.

use alloc::vec::Vec;

use crate::geometry::{eval_patch, Surface};
use crate::liealg::{basis_element, bracket, AlgebraElement};
use crate::math::exp;
use crate::quadrature::{integrate_unit_cube, QuadResult, QuadSettings};
use crate::{Error, Result};

/// `coeff * prod_a x_a^{powers[a]} * exp(-gamma |x - center|^2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldTerm {
    pub coeff: f64,
    pub powers: [u32; 4],
    pub gamma: f64,
    pub center: [f64; 4],
}

impl FieldTerm {
    pub fn monomial(coeff: f64, powers: [u32; 4]) -> Self {
        FieldTerm { coeff, powers, gamma: 0.0, center: [0.0; 4] }
    }

    fn value(&self, x: &[f64; 4]) -> f64 {
        let poly: f64 = (0..4).map(|a| powi(x[a], self.powers[a])).product();
        self.coeff * poly * self.envelope(x)
    }

    fn envelope(&self, x: &[f64; 4]) -> f64 {
        if self.gamma == 0.0 {
            return 1.0;
        }
        let r2: f64 = (0..4).map(|a| (x[a] - self.center[a]) * (x[a] - self.center[a])).sum();
        exp(-self.gamma * r2)
    }

    fn derivative(&self, x: &[f64; 4], axis: usize) -> f64 {
        let env = self.envelope(x);
        let poly: f64 = (0..4).map(|a| powi(x[a], self.powers[a])).product();
        let p = self.powers[axis];
        let dpoly = if p == 0 {
            0.0
        } else {
            (0..4)
                .map(|a| if a == axis { p as f64 * powi(x[a], p - 1) } else { powi(x[a], self.powers[a]) })
                .product()
        };
        let denv = -2.0 * self.gamma * (x[axis] - self.center[axis]);
        self.coeff * env * (dpoly + poly * denv)
    }
}

fn powi(x: f64, n: u32) -> f64 {
    (0..n).fold(1.0, |acc, _| acc * x)
}

/// A finite sum of [`FieldTerm`]s.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ScalarField {
    pub terms: Vec<FieldTerm>,
}

impl ScalarField {
    pub fn new(terms: Vec<FieldTerm>) -> Self {
        ScalarField { terms }
    }

    pub fn value(&self, x: &[f64; 4]) -> f64 {
        self.terms.iter().map(|t| t.value(x)).sum()
    }

    pub fn derivative(&self, x: &[f64; 4], axis: usize) -> f64 {
        self.terms.iter().map(|t| t.derivative(x, axis)).sum()
    }

    fn negated(&self) -> Self {
        ScalarField {
            terms: self.terms.iter().map(|t| FieldTerm { coeff: -t.coeff, ..t.clone() }).collect(),
        }
    }
}

/// How partial derivatives of the components are obtained.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DerivativeMode {
    /// Differentiate the field terms analytically.
    #[default]
    Exact,
    /// Central differences with step `1e-5`, one Richardson step.
    FiniteDifference,
}

/// Ordered pairs `a < b` used as storage slots.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

fn slot(a: usize, b: usize) -> Result<(usize, bool)> {
    if a > 3 || b > 3 {
        return Err(Error::InvalidAxis(a.max(b)));
    }
    if a == b {
        return Err(Error::DegenerateIndex(a, b));
    }
    let (lo, hi, flip) = if a < b { (a, b, false) } else { (b, a, true) };
    let idx = PAIRS.iter().position(|&p| p == (lo, hi)).expect("pair table covers a < b");
    Ok((idx, flip))
}

/// Connection components `A^i_{ab}` for `i = 1..3`, stored for `a < b`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConnectionField {
    components: [[ScalarField; 6]; 3],
    pub mode: DerivativeMode,
}

impl ConnectionField {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `field` to `A^i_{ab}`; `(b, a)` stores the negated field in `(a, b)`.
    pub fn add(&mut self, i: usize, a: usize, b: usize, field: ScalarField) -> Result<()> {
        if !(1..=3).contains(&i) {
            return Err(Error::InvalidAxis(i));
        }
        let (idx, flip) = slot(a, b)?;
        let f = if flip { field.negated() } else { field };
        self.components[i - 1][idx].terms.extend(f.terms);
        Ok(())
    }

    pub fn with_mode(mut self, mode: DerivativeMode) -> Self {
        self.mode = mode;
        self
    }

    /// `A^i_{ab}(x)` for any ordered pair.
    pub fn component(&self, i: usize, a: usize, b: usize, x: &[f64; 4]) -> Result<f64> {
        let (idx, flip) = slot(a, b)?;
        let v = self.components[i - 1][idx].value(x);
        Ok(if flip { -v } else { v })
    }

    fn slot_derivative(&self, i: usize, idx: usize, x: &[f64; 4], axis: usize) -> f64 {
        let field = &self.components[i - 1][idx];
        match self.mode {
            DerivativeMode::Exact => field.derivative(x, axis),
            DerivativeMode::FiniteDifference => {
                let h = 1e-5;
                let central = |h: f64| {
                    let mut p = *x;
                    let mut m = *x;
                    p[axis] += h;
                    m[axis] -= h;
                    (field.value(&p) - field.value(&m)) / (2.0 * h)
                };
                (4.0 * central(h / 2.0) - central(h)) / 3.0
            }
        }
    }

    /// `w_i(x) = sum_{a != b} A^i_{ab}(x) E^{ab}`.
    pub fn form(&self, i: usize, x: &[f64; 4]) -> AlgebraElement {
        self.sum_pairs(|idx| self.components[i - 1][idx].value(x))
    }

    /// `d w_i / d x_axis`.
    pub fn form_derivative(&self, i: usize, x: &[f64; 4], axis: usize) -> AlgebraElement {
        self.sum_pairs(|idx| self.slot_derivative(i, idx, x, axis))
    }

    fn sum_pairs(&self, value: impl Fn(usize) -> f64) -> AlgebraElement {
        let mut out = AlgebraElement::ZERO;
        for (idx, &(a, b)) in PAIRS.iter().enumerate() {
            let v = value(idx);
            if v == 0.0 {
                continue;
            }
            let e_ab = basis_element(a, b).expect("distinct indices");
            let e_ba = basis_element(b, a).expect("distinct indices");
            // A^i_{ba} = -A^i_{ab}
            out = out + e_ab * v + e_ba * (-v);
        }
        out
    }
}

/// Curvature components at a point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurvatureComponents {
    /// `R_{0i} = d_0 w_i`.
    pub time_space: [AlgebraElement; 3],
    /// `R_{ij} = d_i w_j - d_j w_i + [w_i, w_j]`, indexed `[i-1][j-1]`.
    pub space_space: [[AlgebraElement; 3]; 3],
}

pub fn curvature_at_point(omega: &ConnectionField, x: &[f64; 4]) -> CurvatureComponents {
    let w: [AlgebraElement; 3] = core::array::from_fn(|i| omega.form(i + 1, x));
    let time_space = core::array::from_fn(|i| omega.form_derivative(i + 1, x, 0));
    let space_space = core::array::from_fn(|i| {
        core::array::from_fn(|j| {
            omega.form_derivative(j + 1, x, i + 1) - omega.form_derivative(i + 1, x, j + 1) + bracket(&w[i], &w[j])
        })
    });
    CurvatureComponents { time_space, space_space }
}

fn to_vec(e: &AlgebraElement) -> [f64; 6] {
    [e.plus[0], e.plus[1], e.plus[2], e.minus[0], e.minus[1], e.minus[2]]
}

fn from_vec(v: &[f64; 6]) -> AlgebraElement {
    AlgebraElement { plus: [v[0], v[1], v[2]], minus: [v[3], v[4], v[5]] }
}

/// Surface integral of the curvature, summed over patches:
///
/// `F_S = 1/2 int_S (d_0 w_i dx_0^dx_i + d_i w_j dx_i^dx_j + [w_i, w_j] dx_i^dx_j)`
///
/// with `i, j` running over all spatial indices, pulled back through the
/// patch Jacobians.
pub fn total_curvature_surface(
    omega: &ConnectionField,
    surface: &Surface,
    settings: &QuadSettings,
) -> Result<(AlgebraElement, QuadResult<[f64; 6]>)> {
    let mut total = [0.0; 6];
    let mut err = 0.0;
    let mut evaluations = 0;
    let mut converged = true;
    for patch in &surface.patches {
        let f = |u: &[f64; 2]| {
            let ss = eval_patch(patch, u[0], u[1]);
            let x = ss.point.0;
            let w: [AlgebraElement; 3] = core::array::from_fn(|i| omega.form(i + 1, &x));
            let mut acc = AlgebraElement::ZERO;
            for i in 1..=3 {
                acc = acc + omega.form_derivative(i, &x, 0) * ss.jacobian(0, i);
                for j in 1..=3 {
                    if i == j {
                        continue;
                    }
                    let jac = ss.jacobian(i, j);
                    acc = acc + (omega.form_derivative(j, &x, i) + bracket(&w[i - 1], &w[j - 1])) * jac;
                }
            }
            to_vec(&(acc * 0.5))
        };
        let q = integrate_unit_cube(f, settings)?;
        for (t, v) in total.iter_mut().zip(q.value.iter()) {
            *t += v;
        }
        err += q.error_estimate;
        evaluations += q.evaluations;
        converged &= q.converged;
    }
    let q = QuadResult { value: total, error_estimate: err, evaluations, converged };
    Ok((from_vec(&total), q))
}
