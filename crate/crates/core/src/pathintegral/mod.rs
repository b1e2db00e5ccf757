//! The regularized expectation of the curvature operator and its pieces.
//!
//! For a scene (matter hyperlink, geometric hyperlink, surface, charge) the
//! regularized curvature splits into terms `A^+ + A^-`, `B`, `C^+ + C^-`,
//! each a finite-dimensional integral of closed-form Gaussian kernels. Their
//! `kappa -> infinity` limits are fixed multiples of the linking number
//! between the geometric hyperlink and the surface, which is what
//! [`convergence_study`] checks against exact invariants.

mod screen;
mod study;
mod terms;
mod wilson;

use alloc::format;
use alloc::vec::Vec;
use core::ops::Add;

use num_complex::Complex64;

use crate::geometry::{check_patch, min_distance, validate_timelike, Hyperlink, Loop, Role, Surface, TimelikeReport};
use crate::liealg::{trace_exp_character, AlgebraElement, IrrepSpec};
use crate::math::{sqrt, PI};
use crate::quadrature::Metric;
use crate::{Error, Result};

pub use study::{convergence_study, Study, StudyOptions};
pub use terms::{a_lemmas, b_lemma, c_coefficient, term_a, term_b, term_c, TermValue};
pub use wilson::wilson_exponent;

/// Grid resolution of the time-like check performed when building a scene.
pub const TIMELIKE_GRID: usize = 512;
/// Coincidence tolerance of the time-like check.
pub const TIMELIKE_TOL: f64 = 1e-9;

/// A complete problem instance.
#[derive(Clone, Debug, PartialEq)]
pub struct Scene {
    pub matter: Hyperlink,
    /// One representation per matter component; may be shorter when colors
    /// are not needed.
    pub colors: Vec<Option<IrrepSpec>>,
    pub geometric: Hyperlink,
    pub surface: Surface,
    pub charge: f64,
}

impl Scene {
    /// Builds a scene and checks roles, loop regularity, the time-like
    /// conditions on the union of both hyperlinks and disjointness of the
    /// geometric hyperlink from the surface.
    pub fn new(
        matter: Hyperlink,
        colors: Vec<Option<IrrepSpec>>,
        geometric: Hyperlink,
        surface: Surface,
        charge: f64,
    ) -> Result<Self> {
        let scene = Scene { matter, colors, geometric, surface, charge };
        scene.validate()?;
        Ok(scene)
    }

    pub fn validate(&self) -> Result<()> {
        if self.matter.role != Role::Matter || self.geometric.role != Role::Geometric {
            return Err(Error::InvalidGeometry("hyperlink roles are swapped".into()));
        }
        if !self.charge.is_finite() {
            return Err(Error::InvalidGeometry("charge must be finite".into()));
        }
        let mut names: Vec<&str> = self.loops().map(|l| l.name.as_str()).collect();
        names.extend(self.surface.patches.iter().map(|p| p.name.as_str()));
        let mut sorted = names.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGeometry(format!("duplicate name {}", w[0])));
        }
        for lp in self.loops() {
            lp.check()?;
        }
        for p in &self.surface.patches {
            check_patch(p)?;
        }
        let report = self.timelike_report();
        if let Some(v) = report.violations.first() {
            return Err(Error::InvalidGeometry(format!(
                "not time-like: {} at s = {} and {} at s = {} ({:?})",
                v.loop_a, v.s_a, v.loop_b, v.s_b, v.kind
            )));
        }
        if !self.surface.is_empty() {
            for lp in &self.geometric.components {
                let d = min_distance(lp, &self.surface, 128);
                if d < 1e-6 {
                    return Err(Error::InvalidGeometry(format!("{} touches the surface", lp.name)));
                }
            }
        }
        Ok(())
    }

    pub fn loops(&self) -> impl Iterator<Item = &Loop> {
        self.matter.components.iter().chain(self.geometric.components.iter())
    }

    /// Time-like check of the union of both hyperlinks.
    pub fn timelike_report(&self) -> TimelikeReport {
        let all: Vec<Loop> = self.loops().cloned().collect();
        validate_timelike(&all, TIMELIKE_GRID, TIMELIKE_TOL)
    }

    /// Representation of matter component `u`.
    pub fn color(&self, u: usize) -> Result<IrrepSpec> {
        self.colors
            .get(u)
            .copied()
            .flatten()
            .ok_or_else(|| Error::UncoloredMatter(self.matter.components[u].name.clone()))
    }
}

/// `coefficient (x) algebra`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OperatorValue {
    pub coefficient: Complex64,
    pub algebra: AlgebraElement,
}

/// Sign selecting `F^+ = sum E^{0i}` or `F^- = sum E^{tau(j)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chirality {
    Plus,
    Minus,
}

impl Chirality {
    pub fn algebra(self) -> AlgebraElement {
        match self {
            Chirality::Plus => AlgebraElement::f_plus(),
            Chirality::Minus => AlgebraElement::f_minus(),
        }
    }
}

/// `plus F^+ + minus F^-`; every term of the expansion has this shape.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SplitValue {
    pub plus: Complex64,
    pub minus: Complex64,
}

impl SplitValue {
    /// `c (F^+ - F^-)`.
    pub fn difference(c: Complex64) -> Self {
        SplitValue { plus: c, minus: -c }
    }

    /// `c (F^+ + F^-)`.
    pub fn sum(c: Complex64) -> Self {
        SplitValue { plus: c, minus: c }
    }

    /// Splits `c (a F^+ + b F^-)`; fails for any other algebra element.
    pub fn from_operator(op: &OperatorValue) -> Result<Self> {
        let uniform = |v: &[f64; 3]| (v[0] == v[1] && v[1] == v[2]).then_some(v[0]);
        match (uniform(&op.algebra.plus), uniform(&op.algebra.minus)) {
            (Some(a), Some(b)) => Ok(SplitValue { plus: op.coefficient * a, minus: op.coefficient * b }),
            _ => Err(Error::InvalidGeometry("operator is not a combination of F+ and F-".into())),
        }
    }

    /// Coefficient along `F^+ - F^-`.
    pub fn along_difference(&self) -> Complex64 {
        (self.plus - self.minus) * 0.5
    }

    /// Coefficient along `F^+ + F^-`.
    pub fn along_sum(&self) -> Complex64 {
        (self.plus + self.minus) * 0.5
    }

    /// The element of the complexified algebra, as `(real, imaginary)` parts.
    pub fn algebra_parts(&self) -> (AlgebraElement, AlgebraElement) {
        let re = AlgebraElement::f_plus() * self.plus.re + AlgebraElement::f_minus() * self.minus.re;
        let im = AlgebraElement::f_plus() * self.plus.im + AlgebraElement::f_minus() * self.minus.im;
        (re, im)
    }
}

impl Add for SplitValue {
    type Output = SplitValue;
    fn add(self, o: SplitValue) -> SplitValue {
        SplitValue { plus: self.plus + o.plus, minus: self.minus + o.minus }
    }
}

impl Metric for SplitValue {
    /// Euclidean distance in the complexified algebra divided by `|F^+ - F^-|`,
    /// so that `c (F^+ - F^-)` has magnitude `|c|`.
    fn distance(&self, other: &Self) -> f64 {
        let dp = (self.plus - other.plus).norm_sqr();
        let dm = (self.minus - other.minus).norm_sqr();
        sqrt((dp + dm) / 2.0)
    }

    fn magnitude(&self) -> f64 {
        sqrt((self.plus.norm_sqr() + self.minus.norm_sqr()) / 2.0)
    }
}

/// `Z = prod_u [chi_{j+}(-pi i q sk_u) + chi_{j-}(pi i q sk_u)]` for real `sk_u`.
pub fn z_from_sk(colors: &[IrrepSpec], charge: f64, sk: &[f64]) -> Result<f64> {
    if colors.len() != sk.len() {
        return Err(Error::InvalidGeometry("one sk value per matter loop is required".into()));
    }
    let mut z = Complex64::new(1.0, 0.0);
    for (spec, &s) in colors.iter().zip(sk) {
        let c = Complex64::new(0.0, PI * charge * s);
        z *= trace_exp_character(spec.plus, -c) + trace_exp_character(spec.minus, c);
    }
    debug_assert!(z.im.abs() <= 1e-10 * z.norm().max(1.0));
    Ok(z.re)
}

/// Per-matter-loop hyperlinking numbers and the resulting `Z`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZValue {
    pub sk: Vec<i64>,
    pub value: f64,
}

/// `Z(q; chi)` from the hyperlinking numbers `sk(matter_u, geometric)`.
pub fn z_observable(scene: &Scene, schedule: &[crate::kernels::Kappa], settings: &crate::quadrature::QuadSettings) -> Result<ZValue> {
    let colors: Vec<IrrepSpec> = (0..scene.matter.components.len()).map(|u| scene.color(u)).collect::<Result<_>>()?;
    let sk: Vec<i64> = scene
        .matter
        .components
        .iter()
        .map(|lp| crate::invariants::sk_hyperlink(lp, &scene.geometric, schedule, settings).map(|s| s.value))
        .collect::<Result<_>>()?;
    let value = z_from_sk(&colors, scene.charge, &sk.iter().map(|&v| v as f64).collect::<Vec<_>>())?;
    Ok(ZValue { sk, value })
}

/// `Z` with each `sk_u` replaced by `I(kappa) / 4 pi` at a single kappa.
pub fn z_numeric(scene: &Scene, kappa: crate::kernels::Kappa, settings: &crate::quadrature::QuadSettings) -> Result<f64> {
    let colors: Vec<IrrepSpec> = (0..scene.matter.components.len()).map(|u| scene.color(u)).collect::<Result<_>>()?;
    let sk: Vec<f64> = scene
        .matter
        .components
        .iter()
        .map(|lp| wilson_exponent(lp, &scene.geometric, kappa, settings).map(|q| q.value / (4.0 * PI)))
        .collect::<Result<_>>()?;
    z_from_sk(&colors, scene.charge, &sk)
}

/// The limiting operator `F_S`.
#[derive(Clone, Debug, PartialEq)]
pub enum FHat {
    /// `S` is empty and `F_S` is the identity: the expectation is `Z`.
    Identity { z: f64 },
    /// `-i sqrt(4 pi) lk Z (F^+ - F^-)`.
    Operator { value: OperatorValue, lk: i64, z: f64, sk: Vec<i64> },
}

/// Closed-form limit from the exact linking number and hyperlinking numbers.
pub fn f_hat_operator(
    scene: &Scene,
    schedule: &[crate::kernels::Kappa],
    settings: &crate::quadrature::QuadSettings,
    piercing: &crate::invariants::PiercingSettings,
) -> Result<FHat> {
    let z = z_observable(scene, schedule, settings)?;
    if scene.surface.is_empty() {
        return Ok(FHat::Identity { z: z.value });
    }
    let lk = crate::invariants::lk_hyperlink_surface(&scene.geometric, &scene.surface, piercing)?;
    Ok(FHat::Operator { value: f_hat_value(lk, z.value), lk, z: z.value, sk: z.sk })
}

/// `-i sqrt(4 pi) lk z (F^+ - F^-)`.
pub fn f_hat_value(lk: i64, z: f64) -> OperatorValue {
    OperatorValue {
        coefficient: Complex64::new(0.0, -crate::math::SQRT_4PI * lk as f64 * z),
        algebra: AlgebraElement::f_plus() - AlgebraElement::f_minus(),
    }
}
