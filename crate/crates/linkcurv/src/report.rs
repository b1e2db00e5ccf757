//! CSV output of convergence studies.

use std::io::Write;

use linkcurv_core::pathintegral::{SplitValue, Study};
use linkcurv_core::quadrature::ConvergenceTable;
use serde::Serialize;

/// One row of the convergence CSV.
///
/// For the algebra-valued terms `re_value`/`im_value` hold the coefficient of
/// `F^+`; `abs_err` is the full distance to the reference in the algebra.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CsvRow {
    pub kappa: f64,
    pub term: String,
    pub re_value: Option<f64>,
    pub im_value: Option<f64>,
    pub err_est: f64,
    pub re_ref: Option<f64>,
    pub im_ref: Option<f64>,
    pub abs_err: Option<f64>,
}

/// Maps `-0.0` to `0.0` so that exactly vanishing terms print uniformly.
fn clean(x: f64) -> f64 {
    x + 0.0
}

fn split_rows(term: &str, table: &ConvergenceTable<SplitValue>, out: &mut Vec<CsvRow>) {
    for r in &table.rows {
        out.push(CsvRow {
            kappa: r.kappa.value(),
            term: term.to_string(),
            re_value: r.value.map(|v| clean(v.plus.re)),
            im_value: r.value.map(|v| clean(v.plus.im)),
            err_est: r.error_estimate,
            re_ref: r.reference.map(|v| clean(v.plus.re)),
            im_ref: r.reference.map(|v| clean(v.plus.im)),
            abs_err: r.abs_error,
        });
    }
}

/// Flattens a study: `a_sum`, `b`, `c_sum`, `total`, then `wilson:<loop>`.
pub fn study_rows(study: &Study) -> Vec<CsvRow> {
    let mut out = Vec::new();
    let terms = [("a_sum", &study.a_sum), ("b", &study.b), ("c_sum", &study.c_sum), ("total", &study.total)];
    for (name, table) in terms {
        if let Some(t) = table {
            split_rows(name, t, &mut out);
        }
    }
    for w in &study.wilson {
        for r in &w.table.rows {
            out.push(CsvRow {
                kappa: r.kappa.value(),
                term: format!("wilson:{}", w.name),
                re_value: r.value.map(clean),
                im_value: r.value.map(|_| 0.0),
                err_est: r.error_estimate,
                re_ref: r.reference.map(clean),
                im_ref: r.reference.map(|_| 0.0),
                abs_err: r.abs_error,
            });
        }
    }
    out
}

pub fn write_convergence_csv(rows: &[CsvRow], w: impl Write) -> csv::Result<()> {
    let mut writer = csv::Writer::from_writer(w);
    for r in rows {
        writer.serialize(r)?;
    }
    writer.flush()?;
    Ok(())
}

/// Wide table for log-scale plots: one `kappa` column, then `abs_err` per term.
pub fn write_plot_csv(rows: &[CsvRow], w: impl Write) -> csv::Result<()> {
    let mut terms: Vec<&str> = Vec::new();
    let mut kappas: Vec<f64> = Vec::new();
    for r in rows {
        if !terms.contains(&r.term.as_str()) {
            terms.push(&r.term);
        }
        if !kappas.contains(&r.kappa) {
            kappas.push(r.kappa);
        }
    }
    let mut writer = csv::Writer::from_writer(w);
    let mut header = vec!["kappa".to_string()];
    header.extend(terms.iter().map(|t| t.to_string()));
    writer.write_record(&header)?;
    for k in kappas {
        let mut record = vec![format!("{k:?}")];
        for t in &terms {
            let cell = rows
                .iter()
                .find(|r| r.kappa == k && r.term == *t)
                .and_then(|r| r.abs_err)
                .map(|e| format!("{e:?}"))
                .unwrap_or_default();
            record.push(cell);
        }
        writer.write_record(&record)?;
    }
    writer.flush()?;
    Ok(())
}
