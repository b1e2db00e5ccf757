//! Loops, hyperlinks and surface patches in R^4.
//!
//! Coordinates are indexed `0..4`; index 0 is time. Loops are truncated
//! Fourier series on the unit interval, surfaces are finite unions of patches
//! parametrized over the unit square.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Index;

use crate::math::{abs, dot, sin_cos, sqrt, PI};
use crate::{Error, Result};

/// A point of R^4, `x0` being time.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Point4(pub [f64; 4]);

impl Point4 {
    pub const fn new(x0: f64, x1: f64, x2: f64, x3: f64) -> Self {
        Point4([x0, x1, x2, x3])
    }

    pub fn time(&self) -> f64 {
        self.0[0]
    }

    pub fn spatial(&self) -> [f64; 3] {
        [self.0[1], self.0[2], self.0[3]]
    }

    pub fn sub(&self, other: &Point4) -> [f64; 4] {
        core::array::from_fn(|a| self.0[a] - other.0[a])
    }
}

impl Index<usize> for Point4 {
    type Output = f64;
    fn index(&self, a: usize) -> &f64 {
        &self.0[a]
    }
}

/// A point of R^3 produced by a projection.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Point3(pub [f64; 3]);

impl Index<usize> for Point3 {
    type Output = f64;
    fn index(&self, a: usize) -> &f64 {
        &self.0[a]
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Orientation {
    #[default]
    Positive,
    Negative,
}

impl Orientation {
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Positive => 1.0,
            Orientation::Negative => -1.0,
        }
    }

    pub fn from_sign(sign: i64) -> Result<Self> {
        match sign {
            1 => Ok(Orientation::Positive),
            -1 => Ok(Orientation::Negative),
            _ => Err(Error::InvalidGeometry(alloc::format!(
                "orientation must be +1 or -1, got {sign}"
            ))),
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    Matter,
    Geometric,
}

/// `constant + sum_n cos[n-1] cos(2 pi n s) + sin[n-1] sin(2 pi n s)`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FourierSeries {
    pub constant: f64,
    pub cos: Vec<f64>,
    pub sin: Vec<f64>,
}

impl FourierSeries {
    pub fn new(constant: f64, cos: Vec<f64>, sin: Vec<f64>) -> Self {
        FourierSeries { constant, cos, sin }
    }

    pub fn constant(value: f64) -> Self {
        FourierSeries { constant: value, ..Default::default() }
    }

    pub fn order(&self) -> usize {
        self.cos.len().max(self.sin.len())
    }

    /// Value and first derivative at `s`.
    pub fn eval(&self, s: f64) -> (f64, f64) {
        let n = self.order();
        let mut value = self.constant;
        let mut deriv = 0.0;
        if n == 0 {
            return (value, deriv);
        }
        let (s1, c1) = sin_cos(2.0 * PI * s);
        let (mut sk, mut ck) = (s1, c1);
        for k in 1..=n {
            let a = self.cos.get(k - 1).copied().unwrap_or(0.0);
            let b = self.sin.get(k - 1).copied().unwrap_or(0.0);
            let w = 2.0 * PI * k as f64;
            value += a * ck + b * sk;
            deriv += w * (b * ck - a * sk);
            let next_c = ck * c1 - sk * s1;
            let next_s = sk * c1 + ck * s1;
            ck = next_c;
            sk = next_s;
        }
        (value, deriv)
    }

    /// Upper bound of `|d/ds|` over the unit interval.
    pub fn derivative_bound(&self) -> f64 {
        (1..=self.order())
            .map(|k| {
                let a = self.cos.get(k - 1).copied().unwrap_or(0.0);
                let b = self.sin.get(k - 1).copied().unwrap_or(0.0);
                2.0 * PI * k as f64 * sqrt(a * a + b * b)
            })
            .sum()
    }
}

/// Position and velocity of a loop at one parameter value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurveSample {
    pub point: Point4,
    pub tangent: [f64; 4],
}

/// A closed curve `I -> R^4` given by one Fourier series per coordinate.
#[derive(Clone, Debug, PartialEq)]
pub struct Loop {
    pub name: String,
    pub coords: [FourierSeries; 4],
    pub orientation: Orientation,
}

impl Loop {
    pub fn new(name: impl Into<String>, coords: [FourierSeries; 4]) -> Result<Self> {
        let lp = Loop { name: name.into(), coords, orientation: Orientation::Positive };
        lp.check()?;
        Ok(lp)
    }

    /// Rejects constant loops and loops whose velocity vanishes on a fine grid.
    pub fn check(&self) -> Result<()> {
        if self.coords.iter().all(|c| c.order() == 0) {
            return Err(Error::InvalidGeometry(alloc::format!(
                "loop {} is constant",
                self.name
            )));
        }
        const GRID: usize = 1024;
        for i in 0..GRID {
            let t = eval_curve(self, i as f64 / GRID as f64).tangent;
            if dot(t, t) < 1e-20 {
                return Err(Error::InvalidGeometry(alloc::format!(
                    "loop {} is singular near s = {}",
                    self.name,
                    i as f64 / GRID as f64
                )));
            }
        }
        Ok(())
    }

    pub fn reversed(&self) -> Self {
        Loop { orientation: self.orientation.flipped(), ..self.clone() }
    }

    /// Largest harmonic present in any coordinate.
    pub fn order(&self) -> usize {
        self.coords.iter().map(FourierSeries::order).max().unwrap_or(0)
    }

    /// Per-coordinate bounds of `|d x_a / ds|`.
    pub fn derivative_bounds(&self) -> [f64; 4] {
        core::array::from_fn(|a| self.coords[a].derivative_bound())
    }
}

pub fn eval_curve(lp: &Loop, s: f64) -> CurveSample {
    let (param, sign) = match lp.orientation {
        Orientation::Positive => (s, 1.0),
        Orientation::Negative => (1.0 - s, -1.0),
    };
    let mut point = [0.0; 4];
    let mut tangent = [0.0; 4];
    for a in 0..4 {
        let (v, d) = lp.coords[a].eval(param);
        point[a] = v;
        tangent[a] = sign * d;
    }
    CurveSample { point: Point4(point), tangent }
}

/// Finitely many pairwise disjoint loops sharing a role.
#[derive(Clone, Debug, PartialEq)]
pub struct Hyperlink {
    pub role: Role,
    pub components: Vec<Loop>,
}

impl Hyperlink {
    pub fn new(role: Role, components: Vec<Loop>) -> Self {
        Hyperlink { role, components }
    }
}

/// Basis used along one parameter direction of a [`ParamPatch`].
///
/// `Polynomial` uses monomials `u^m`. `Trigonometric` indexes
/// `1, cos(pi u), sin(pi u), cos(2 pi u), sin(2 pi u), ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    Polynomial,
    Trigonometric,
}

impl Basis {
    fn eval(self, len: usize, u: f64, values: &mut [f64], derivs: &mut [f64]) {
        match self {
            Basis::Polynomial => {
                let mut p = 1.0;
                for m in 0..len {
                    values[m] = p;
                    derivs[m] = if m == 0 { 0.0 } else { m as f64 * pow(u, m - 1) };
                    p *= u;
                }
            }
            Basis::Trigonometric => {
                for k in 0..len {
                    if k == 0 {
                        values[0] = 1.0;
                        derivs[0] = 0.0;
                        continue;
                    }
                    let m = k.div_ceil(2) as f64;
                    let (sn, cs) = sin_cos(m * PI * u);
                    if k % 2 == 1 {
                        values[k] = cs;
                        derivs[k] = -m * PI * sn;
                    } else {
                        values[k] = sn;
                        derivs[k] = m * PI * cs;
                    }
                }
            }
        }
    }

    fn bounds(self, k: usize) -> (f64, f64) {
        match self {
            Basis::Polynomial => (1.0, k as f64),
            Basis::Trigonometric => (1.0, k.div_ceil(2) as f64 * PI),
        }
    }
}

fn pow(u: f64, n: usize) -> f64 {
    (0..n).fold(1.0, |acc, _| acc * u)
}

/// Planar disk `center + radius * t * (cos(2 pi tbar) u + sin(2 pi tbar) w)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Disk {
    pub center: Point4,
    pub u: [f64; 4],
    pub w: [f64; 4],
    pub radius: f64,
}

/// Tensor-product patch: `x_a(t, tbar) = sum_{m,n} coeffs[a][m][n] phi_m(t) psi_n(tbar)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamPatch {
    pub basis_t: Basis,
    pub basis_tbar: Basis,
    pub coeffs: [Vec<Vec<f64>>; 4],
}

impl ParamPatch {
    fn dims(&self) -> (usize, usize) {
        let m = self.coeffs.iter().map(Vec::len).max().unwrap_or(0);
        let n = self
            .coeffs
            .iter()
            .flat_map(|rows| rows.iter().map(Vec::len))
            .max()
            .unwrap_or(0);
        (m, n)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum PatchShape {
    Disk(Disk),
    Param(ParamPatch),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Patch {
    pub name: String,
    pub shape: PatchShape,
    pub orientation: Orientation,
}

impl Patch {
    pub fn disk(name: impl Into<String>, disk: Disk) -> Self {
        Patch { name: name.into(), shape: PatchShape::Disk(disk), orientation: Orientation::Positive }
    }

    pub fn param(name: impl Into<String>, patch: ParamPatch) -> Self {
        Patch { name: name.into(), shape: PatchShape::Param(patch), orientation: Orientation::Positive }
    }

    pub fn reversed(&self) -> Self {
        Patch { orientation: self.orientation.flipped(), ..self.clone() }
    }

    /// Whether `tbar = 0` and `tbar = 1` describe the same seam.
    pub fn periodic_tbar(&self) -> bool {
        matches!(self.shape, PatchShape::Disk(_))
    }

    /// Per-coordinate bounds of `|d sigma_a / dt|` and `|d sigma_a / dtbar|`.
    pub fn derivative_bounds(&self) -> ([f64; 4], [f64; 4]) {
        match &self.shape {
            PatchShape::Disk(d) => {
                let span: [f64; 4] =
                    core::array::from_fn(|a| d.radius * sqrt(d.u[a] * d.u[a] + d.w[a] * d.w[a]));
                (span, span.map(|v| 2.0 * PI * v))
            }
            PatchShape::Param(p) => {
                let mut bt = [0.0; 4];
                let mut btb = [0.0; 4];
                for a in 0..4 {
                    for (m, row) in p.coeffs[a].iter().enumerate() {
                        for (n, &c) in row.iter().enumerate() {
                            let (vt, dt) = p.basis_t.bounds(m);
                            let (vb, db) = p.basis_tbar.bounds(n);
                            bt[a] += abs(c) * dt * vb;
                            btb[a] += abs(c) * vt * db;
                        }
                    }
                }
                (bt, btb)
            }
        }
    }
}

/// Position and parameter derivatives of a patch at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SurfaceSample {
    pub point: Point4,
    pub d_t: [f64; 4],
    pub d_tbar: [f64; 4],
}

impl SurfaceSample {
    /// `J_ab = d_t sigma_a * d_tbar sigma_b - d_t sigma_b * d_tbar sigma_a`.
    pub fn jacobian(&self, a: usize, b: usize) -> f64 {
        self.d_t[a] * self.d_tbar[b] - self.d_t[b] * self.d_tbar[a]
    }

    /// `(J_23, J_31, J_12)`.
    pub fn j_sigma(&self) -> [f64; 3] {
        [self.jacobian(2, 3), self.jacobian(3, 1), self.jacobian(1, 2)]
    }

    /// `(J_01, J_02, J_03)`.
    pub fn k_sigma(&self) -> [f64; 3] {
        [self.jacobian(0, 1), self.jacobian(0, 2), self.jacobian(0, 3)]
    }
}

pub fn eval_patch(patch: &Patch, t: f64, tbar: f64) -> SurfaceSample {
    let (tb, sign) = match patch.orientation {
        Orientation::Positive => (tbar, 1.0),
        Orientation::Negative => (1.0 - tbar, -1.0),
    };
    let mut sample = match &patch.shape {
        PatchShape::Disk(d) => {
            let (sn, cs) = sin_cos(2.0 * PI * tb);
            let dir: [f64; 4] = core::array::from_fn(|a| cs * d.u[a] + sn * d.w[a]);
            let ddir: [f64; 4] = core::array::from_fn(|a| -sn * d.u[a] + cs * d.w[a]);
            SurfaceSample {
                point: Point4(core::array::from_fn(|a| d.center[a] + d.radius * t * dir[a])),
                d_t: dir.map(|v| d.radius * v),
                d_tbar: ddir.map(|v| 2.0 * PI * d.radius * t * v),
            }
        }
        PatchShape::Param(p) => {
            let (m, n) = p.dims();
            let mut phi = vec![0.0; m];
            let mut dphi = vec![0.0; m];
            let mut psi = vec![0.0; n];
            let mut dpsi = vec![0.0; n];
            p.basis_t.eval(m, t, &mut phi, &mut dphi);
            p.basis_tbar.eval(n, tb, &mut psi, &mut dpsi);
            let mut point = [0.0; 4];
            let mut d_t = [0.0; 4];
            let mut d_tbar = [0.0; 4];
            for a in 0..4 {
                for (i, row) in p.coeffs[a].iter().enumerate() {
                    for (j, &c) in row.iter().enumerate() {
                        point[a] += c * phi[i] * psi[j];
                        d_t[a] += c * dphi[i] * psi[j];
                        d_tbar[a] += c * phi[i] * dpsi[j];
                    }
                }
            }
            SurfaceSample { point: Point4(point), d_t, d_tbar }
        }
    };
    sample.d_tbar = sample.d_tbar.map(|v| sign * v);
    sample
}

/// A finite union of oriented patches. May be empty.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Surface {
    pub patches: Vec<Patch>,
}

impl Surface {
    pub fn new(patches: Vec<Patch>) -> Self {
        Surface { patches }
    }

    pub fn is_empty(&self) -> bool {
        self.patches.is_empty()
    }
}

/// Drops coordinate `axis`: axis 0 keeps `(x1, x2, x3)`, axis `i > 0` keeps
/// `(x0, x_j, x_k)` with `j < k` the remaining spatial indices.
pub fn project(p: &Point4, axis: usize) -> Result<Point3> {
    let keep = projection_axes(axis)?;
    Ok(Point3(keep.map(|a| p[a])))
}

pub(crate) fn projection_axes(axis: usize) -> Result<[usize; 3]> {
    match axis {
        0 => Ok([1, 2, 3]),
        1 => Ok([0, 2, 3]),
        2 => Ok([0, 1, 3]),
        3 => Ok([0, 1, 2]),
        _ => Err(Error::InvalidAxis(axis)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    /// Two distinct parameters map to the same point of R^3.
    SpatialCoincidence,
    /// Two spatial coordinates coincide while the times agree.
    TimeDegenerate { axes: (usize, usize) },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub loop_a: String,
    pub s_a: f64,
    pub loop_b: String,
    pub s_b: f64,
    pub kind: ViolationKind,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct TimelikeReport {
    pub violations: Vec<Violation>,
}

impl TimelikeReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Grid check of the time-like conditions on the union of `loops`.
///
/// Same-loop pairs closer than `2 / grid_n` in cyclic parameter distance are
/// skipped.
pub fn validate_timelike(loops: &[Loop], grid_n: usize, tol: f64) -> TimelikeReport {
    let samples: Vec<Vec<[f64; 4]>> = loops
        .iter()
        .map(|lp| (0..grid_n).map(|i| eval_curve(lp, i as f64 / grid_n as f64).point.0).collect())
        .collect();
    let min_gap = 2.0 / grid_n as f64;
    let mut report = TimelikeReport::default();
    for (la, pa) in samples.iter().enumerate() {
        for (lb, pb) in samples.iter().enumerate().skip(la) {
            for (ia, xa) in pa.iter().enumerate() {
                let start = if la == lb { ia + 1 } else { 0 };
                for (ib, xb) in pb.iter().enumerate().skip(start) {
                    if la == lb {
                        let d = (ib - ia) as f64 / grid_n as f64;
                        if d.min(1.0 - d) < min_gap - 1e-12 {
                            continue;
                        }
                    }
                    let close: [bool; 4] = core::array::from_fn(|a| abs(xa[a] - xb[a]) <= tol);
                    let kind = if close[1] && close[2] && close[3] {
                        Some(ViolationKind::SpatialCoincidence)
                    } else if close[0] {
                        [(1, 2), (1, 3), (2, 3)]
                            .into_iter()
                            .find(|&(i, j)| close[i] && close[j])
                            .map(|axes| ViolationKind::TimeDegenerate { axes })
                    } else {
                        None
                    };
                    if let Some(kind) = kind {
                        report.violations.push(Violation {
                            loop_a: loops[la].name.clone(),
                            s_a: ia as f64 / grid_n as f64,
                            loop_b: loops[lb].name.clone(),
                            s_b: ib as f64 / grid_n as f64,
                            kind,
                        });
                    }
                }
            }
        }
    }
    report
}

/// Smallest 4D distance between a loop and a surface: the best sample of a
/// `grid_n` grid on every patch, polished by Gauss-Newton steps.
pub fn min_distance(lp: &Loop, surface: &Surface, grid_n: usize) -> f64 {
    let curve: Vec<Point4> =
        (0..grid_n).map(|i| eval_curve(lp, i as f64 / grid_n as f64).point).collect();
    let mut best = f64::INFINITY;
    for patch in &surface.patches {
        let mut seed = ([0.0; 3], f64::INFINITY);
        for it in 0..=grid_n {
            for jt in 0..=grid_n {
                let (t, tb) = (it as f64 / grid_n as f64, jt as f64 / grid_n as f64);
                let p = eval_patch(patch, t, tb).point;
                for (is, c) in curve.iter().enumerate() {
                    let d = p.sub(c);
                    let d2 = dot(d, d);
                    if d2 < seed.1 {
                        seed = ([t, tb, is as f64 / grid_n as f64], d2);
                    }
                }
            }
        }
        best = best.min(polish_distance(lp, patch, seed.0));
    }
    best
}

fn polish_distance(lp: &Loop, patch: &Patch, mut x: [f64; 3]) -> f64 {
    let dist = |x: &[f64; 3]| {
        let ss = eval_patch(patch, x[0], x[1]);
        let cs = eval_curve(lp, x[2]);
        (ss.point.sub(&cs.point), ss, cs)
    };
    let (mut r, mut ss, mut cs) = dist(&x);
    for _ in 0..50 {
        let cols = [ss.d_t, ss.d_tbar, cs.tangent.map(|v| -v)];
        let m: [[f64; 3]; 3] = core::array::from_fn(|i| core::array::from_fn(|j| dot(cols[i], cols[j])));
        let g: [f64; 3] = core::array::from_fn(|i| dot(cols[i], r));
        let Some(step) = crate::math::solve3(m, g) else { break };
        let mut trial = [x[0] - step[0], x[1] - step[1], x[2] - step[2]];
        trial[0] = trial[0].clamp(0.0, 1.0);
        trial[1] = if patch.periodic_tbar() { trial[1] - libm::floor(trial[1]) } else { trial[1].clamp(0.0, 1.0) };
        let (rt, st, ct) = dist(&trial);
        if dot(rt, rt) >= dot(r, r) {
            break;
        }
        x = trial;
        r = rt;
        ss = st;
        cs = ct;
    }
    sqrt(dot(r, r))
}

/// Rejects degenerate disks.
pub fn check_patch(patch: &Patch) -> Result<()> {
    if let PatchShape::Disk(d) = &patch.shape {
        let n = cross3_norm(d.u, d.w);
        if !(d.radius > 0.0) || n < 1e-12 {
            return Err(Error::InvalidGeometry(patch.name.to_string() + ": degenerate disk"));
        }
    }
    Ok(())
}

fn cross3_norm(u: [f64; 4], w: [f64; 4]) -> f64 {
    let mut total = 0.0;
    for a in 0..4 {
        for b in (a + 1)..4 {
            let j = u[a] * w[b] - u[b] * w[a];
            total += j * j;
        }
    }
    sqrt(total)
}
