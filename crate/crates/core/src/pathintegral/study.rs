//! Sweeps of every term along a kappa schedule, with exact references.

use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::terms::{a_lemmas, b_lemma, c_coefficient};
use super::{wilson_exponent, z_from_sk, Scene, SplitValue};
use crate::invariants::{lk_hyperlink_surface, PiercingSettings};
use crate::kernels::Kappa;
use crate::liealg::IrrepSpec;
use crate::math::{abs, round, PI, SQRT_4PI, SQRT_PI};
use crate::quadrature::{run_schedule, ConvergenceTable, QuadResult, QuadSettings};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct StudyOptions {
    pub settings: QuadSettings,
    pub piercing: PiercingSettings,
    /// Skip the four-dimensional C term.
    pub skip_c: bool,
}

impl Default for StudyOptions {
    fn default() -> Self {
        StudyOptions { settings: QuadSettings::default(), piercing: PiercingSettings::default(), skip_c: false }
    }
}

/// `I(kappa) / 4 pi` for one matter loop.
#[derive(Clone, Debug, PartialEq)]
pub struct WilsonSweep {
    pub name: String,
    pub table: ConvergenceTable<f64>,
    /// Nearest integer to the last row, when within 0.1 of it.
    pub sk: Option<i64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Study {
    pub lk: i64,
    /// `|3 sqrt(pi)/2 + sqrt(pi)/2 - sqrt(4 pi)|`.
    pub identity_residual: f64,
    pub a_sum: Option<ConvergenceTable<SplitValue>>,
    pub b: Option<ConvergenceTable<SplitValue>>,
    pub c_sum: Option<ConvergenceTable<SplitValue>>,
    pub total: Option<ConvergenceTable<SplitValue>>,
    pub wilson: Vec<WilsonSweep>,
    /// `Z` from the rounded hyperlinking numbers, when every matter loop is
    /// colored and every sweep settled.
    pub z: Option<f64>,
}

/// Coefficients of `A^+ + A^-`, `B` and `C^+ + C^-` at one kappa.
struct Cell {
    a: Result<(SplitValue, f64)>,
    b: Result<(SplitValue, f64)>,
    c: Result<(SplitValue, f64)>,
}

fn converged<V: crate::quadrature::QuadValue>(q: Result<QuadResult<V>>) -> Result<QuadResult<V>> {
    q.and_then(QuadResult::into_converged)
}

fn cell(scene: &Scene, kappa: Kappa, options: &StudyOptions) -> Cell {
    let i = Complex64::new(0.0, 1.0);
    let a = converged(a_lemmas(scene, kappa, &options.settings)).map(|q| {
        let total: f64 = q.value.iter().sum();
        (SplitValue::difference(-i * (total / SQRT_4PI)), q.error_estimate / SQRT_4PI)
    });
    let b = converged(b_lemma(scene, kappa, &options.settings))
        .map(|q| (SplitValue::difference(i * (q.value / SQRT_4PI)), q.error_estimate / SQRT_4PI));
    let c = if options.skip_c {
        Ok((SplitValue::default(), 0.0))
    } else {
        converged(c_coefficient(scene, kappa, &options.settings))
            .map(|q| (SplitValue::sum(Complex64::new(q.value, 0.0)), q.error_estimate))
    };
    Cell { a, b, c }
}

fn table(
    schedule: &[Kappa],
    cells: &[Cell],
    pick: impl Fn(&Cell) -> Result<(SplitValue, f64)>,
    reference: SplitValue,
) -> Result<ConvergenceTable<SplitValue>> {
    let mut idx = 0;
    run_schedule(
        |_| {
            let out = pick(&cells[idx]);
            idx += 1;
            out
        },
        schedule,
        Some(reference),
    )
}

fn sum_cells(c: &Cell) -> Result<(SplitValue, f64)> {
    let (a, ea) = c.a.clone()?;
    let (b, eb) = c.b.clone()?;
    let (cc, ec) = c.c.clone()?;
    Ok((a + b + cc, ea + eb + ec))
}

fn wilson_sweep(scene: &Scene, schedule: &[Kappa], settings: &QuadSettings) -> Result<Vec<WilsonSweep>> {
    let mut out = Vec::new();
    for lp in &scene.matter.components {
        let values: Vec<Result<(f64, f64)>> = schedule
            .iter()
            .map(|&k| {
                converged(wilson_exponent(lp, &scene.geometric, k, settings))
                    .map(|q| (q.value / (4.0 * PI), q.error_estimate / (4.0 * PI)))
            })
            .collect();
        let last = values.last().and_then(|v| v.as_ref().ok()).map(|v| v.0);
        let sk = last.and_then(|v| (abs(v - round(v)) < 0.1).then(|| round(v) as i64));
        let mut idx = 0;
        let table = run_schedule(
            |_| {
                let v = values[idx].clone();
                idx += 1;
                v
            },
            schedule,
            sk.map(|v| v as f64),
        )?;
        out.push(WilsonSweep { name: lp.name.clone(), table, sk });
    }
    Ok(out)
}

/// Evaluates every term along `schedule`.
///
/// References: `A^+ + A^- -> -(3 i sqrt(pi) / 2) lk (F^+ - F^-)`,
/// `B -> -(i sqrt(pi) / 2) lk (F^+ - F^-)`, `C^+ + C^- -> 0` and their sum
/// `-i sqrt(4 pi) lk (F^+ - F^-)`, with `lk` the exact piercing count. The
/// hyperlinking sweeps use the nearest integer of their last row. An empty
/// surface leaves only the sweeps and `Z`.
pub fn convergence_study(scene: &Scene, schedule: &[Kappa], options: &StudyOptions) -> Result<Study> {
    if schedule.is_empty() {
        return Err(Error::EmptySchedule);
    }
    let identity_residual = abs(3.0 * SQRT_PI / 2.0 + SQRT_PI / 2.0 - SQRT_4PI);
    assert!(identity_residual <= 1e-15, "coefficient identity violated: {identity_residual:e}");

    let wilson = wilson_sweep(scene, schedule, &options.settings)?;
    let colors: Option<Vec<IrrepSpec>> = scene.colors.iter().copied().collect::<Option<Vec<_>>>()
        .filter(|c| c.len() == scene.matter.components.len());
    let sks: Option<Vec<f64>> = wilson.iter().map(|w| w.sk.map(|v| v as f64)).collect();
    let z = match (colors, sks) {
        (Some(c), Some(s)) => Some(z_from_sk(&c, scene.charge, &s)?),
        _ => None,
    };

    if scene.surface.is_empty() {
        return Ok(Study { lk: 0, identity_residual, a_sum: None, b: None, c_sum: None, total: None, wilson, z });
    }

    let lk = lk_hyperlink_surface(&scene.geometric, &scene.surface, &options.piercing)?;
    let lkf = lk as f64;
    let i = Complex64::new(0.0, 1.0);
    let cells: Vec<Cell> = schedule.iter().map(|&k| cell(scene, k, options)).collect();
    let a_sum = table(schedule, &cells, |c| c.a.clone(), SplitValue::difference(-i * (1.5 * SQRT_PI * lkf)))?;
    let b = table(schedule, &cells, |c| c.b.clone(), SplitValue::difference(-i * (0.5 * SQRT_PI * lkf)))?;
    let c_sum = table(schedule, &cells, |c| c.c.clone(), SplitValue::default())?;
    let total = table(schedule, &cells, sum_cells, SplitValue::difference(-i * (SQRT_4PI * lkf)))?;
    Ok(Study {
        lk,
        identity_residual,
        a_sum: Some(a_sum),
        b: Some(b),
        c_sum: Some(c_sum),
        total: Some(total),
        wilson,
        z,
    })
}
