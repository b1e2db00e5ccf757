//! Evaluation of a quantity along an increasing kappa schedule.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::kernels::Kappa;
use crate::math::abs;
use crate::{Error, Result};

/// Distance used to compare a value with its reference.
pub trait Metric: Clone {
    fn distance(&self, other: &Self) -> f64;
    fn magnitude(&self) -> f64;
}

impl Metric for f64 {
    fn distance(&self, other: &Self) -> f64 {
        abs(self - other)
    }
    fn magnitude(&self) -> f64 {
        abs(*self)
    }
}

impl Metric for Complex64 {
    fn distance(&self, other: &Self) -> f64 {
        (self - other).norm()
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceRow<V> {
    pub kappa: Kappa,
    /// `None` when the evaluator failed at this kappa.
    pub value: Option<V>,
    pub error_estimate: f64,
    pub reference: Option<V>,
    pub abs_error: Option<f64>,
    pub failure: Option<Error>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceTable<V> {
    pub rows: Vec<ConvergenceRow<V>>,
}

impl<V: Metric> ConvergenceTable<V> {
    /// Whether `|value - reference|` is non-increasing over the last three rows.
    pub fn tail_monotone(&self) -> bool {
        let tail = &self.rows[self.rows.len().saturating_sub(3)..];
        let errs: Option<Vec<f64>> = tail.iter().map(|r| r.abs_error).collect();
        match errs {
            Some(e) if !e.is_empty() => e.windows(2).all(|w| w[1] <= w[0] + 1e-15 * (1.0 + w[0])),
            _ => false,
        }
    }

    pub fn final_row(&self) -> Option<&ConvergenceRow<V>> {
        self.rows.last()
    }

    pub fn final_abs_error(&self) -> Option<f64> {
        self.final_row().and_then(|r| r.abs_error)
    }

    /// Whether the last row lies within `rel_tol * |reference|` (or `abs_floor`).
    pub fn final_within(&self, rel_tol: f64, abs_floor: f64) -> bool {
        match self.final_row() {
            Some(ConvergenceRow { abs_error: Some(e), reference: Some(r), .. }) => {
                *e <= (rel_tol * r.magnitude()).max(abs_floor)
            }
            _ => false,
        }
    }

    pub fn any_failure(&self) -> bool {
        self.rows.iter().any(|r| r.failure.is_some())
    }
}

/// Evaluates `evaluator` at each kappa of an increasing `schedule`.
///
/// The evaluator returns a value and its quadrature error estimate. Failures
/// are recorded in the corresponding row and do not stop the sweep.
pub fn run_schedule<V, F>(mut evaluator: F, schedule: &[Kappa], reference: Option<V>) -> Result<ConvergenceTable<V>>
where
    V: Metric,
    F: FnMut(Kappa) -> Result<(V, f64)>,
{
    if schedule.is_empty() {
        return Err(Error::EmptySchedule);
    }
    if schedule.windows(2).any(|w| w[1].value() <= w[0].value()) {
        return Err(Error::InvalidSettings("kappa schedule must be strictly increasing".into()));
    }
    let rows = schedule
        .iter()
        .map(|&kappa| match evaluator(kappa) {
            Ok((value, error_estimate)) => {
                let abs_error = reference.as_ref().map(|r| value.distance(r));
                ConvergenceRow {
                    kappa,
                    value: Some(value),
                    error_estimate,
                    reference: reference.clone(),
                    abs_error,
                    failure: None,
                }
            }
            Err(e) => ConvergenceRow {
                kappa,
                value: None,
                error_estimate: f64::INFINITY,
                reference: reference.clone(),
                abs_error: None,
                failure: Some(e),
            },
        })
        .collect();
    Ok(ConvergenceTable { rows })
}
