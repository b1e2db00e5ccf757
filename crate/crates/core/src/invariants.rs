//! Topological integers: signed piercing counts of loops through surfaces,
//! the spatial Gauss linking number and the hyperlinking number of a
//! time-like pair.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::geometry::{eval_curve, eval_patch, projection_axes, Hyperlink, Loop, Surface};
use crate::kernels::Kappa;
use crate::math::{abs, cross, det4, dot, norm, round, sign, solve3, sqrt, PI};
use crate::pathintegral::wilson_exponent;
use crate::quadrature::{integrate_unit_cube, run_schedule, ConvergenceTable, QuadSettings};
use crate::{Error, Result};

/// Transversal intersection of the projections of a loop and a patch.
#[derive(Clone, Debug, PartialEq)]
pub struct Piercing {
    pub patch: usize,
    pub s: f64,
    pub t: f64,
    pub tbar: f64,
    /// Sign of `det(d_t sigma, d_tbar sigma, -rho', e_axis)`.
    pub orientation: i64,
    /// Sign of `sigma_axis - rho_axis`.
    pub height: i64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PiercingSettings {
    /// Residual tolerance of the Newton solve.
    pub root_tol: f64,
    /// Cells per parameter axis in the initial scan.
    pub scan_n: usize,
}

impl Default for PiercingSettings {
    fn default() -> Self {
        PiercingSettings { root_tol: 1e-10, scan_n: 64 }
    }
}

fn wrap(x: f64) -> f64 {
    x - libm::floor(x)
}

fn cyclic_gap(a: f64, b: f64) -> f64 {
    let d = abs(wrap(a) - wrap(b));
    d.min(1.0 - d)
}

/// Roots of `pi_axis(sigma(t, tbar)) = pi_axis(rho(s))` over every patch.
///
/// A coarse scan keeps the cells on which a root cannot be excluded by the
/// derivative bounds; damped Newton then polishes each candidate. Roots on a
/// patch edge (or at a disk center) are rejected as ambiguous, as are
/// tangential ones.
pub fn find_piercings(lp: &Loop, surface: &Surface, axis: usize, settings: &PiercingSettings) -> Result<Vec<Piercing>> {
    let keep = projection_axes(axis)?;
    let n = settings.scan_n.max(4);
    let h = 1.0 / n as f64;
    let lb = lp.derivative_bounds();
    let curve: Vec<_> = (0..n).map(|i| eval_curve(lp, (i as f64 + 0.5) * h)).collect();
    let mut found: Vec<Piercing> = Vec::new();
    for (pi, patch) in surface.patches.iter().enumerate() {
        let (bt, bb) = patch.derivative_bounds();
        let slack: [f64; 3] = core::array::from_fn(|c| {
            let a = keep[c];
            0.5 * h * (bt[a] + bb[a] + lb[a]) * 1.01 + 1e-12
        });
        let mut seeds = Vec::new();
        for it in 0..n {
            for ib in 0..n {
                let t = (it as f64 + 0.5) * h;
                let tb = (ib as f64 + 0.5) * h;
                let sp = eval_patch(patch, t, tb).point;
                for (is, cs) in curve.iter().enumerate() {
                    if (0..3).all(|c| abs(sp[keep[c]] - cs.point[keep[c]]) <= slack[c]) {
                        seeds.push([t, tb, (is as f64 + 0.5) * h]);
                    }
                }
            }
        }
        for seed in seeds {
            let Some(root) = newton(lp, patch, &keep, seed, settings.root_tol) else { continue };
            let [t, mut tb, s] = root;
            let s = wrap(s);
            if patch.periodic_tbar() {
                tb = wrap(tb);
            }
            let band = 1e3 * settings.root_tol;
            let outside = t < -band || t > 1.0 + band || tb < -band || tb > 1.0 + band;
            if outside {
                continue;
            }
            let on_edge = t < band || t > 1.0 - band || (!patch.periodic_tbar() && (tb < band || tb > 1.0 - band));
            if on_edge {
                return Err(Error::AmbiguousPiercing { loop_name: lp.name.to_string(), s });
            }
            let dup = found.iter().any(|p| {
                p.patch == pi
                    && abs(p.t - t) < 1e-6
                    && cyclic_gap(p.s, s) < 1e-6
                    && if patch.periodic_tbar() { cyclic_gap(p.tbar, tb) < 1e-6 } else { abs(p.tbar - tb) < 1e-6 }
            });
            if dup {
                continue;
            }
            let ss = eval_patch(patch, t, tb);
            let cs = eval_curve(lp, s);
            let mut e = [0.0; 4];
            e[axis] = 1.0;
            let det = det4([ss.d_t, ss.d_tbar, cs.tangent.map(|v| -v), e]);
            let scale = norm(ss.d_t) * norm(ss.d_tbar) * norm(cs.tangent);
            if abs(det) <= 1e-9 * scale {
                return Err(Error::AmbiguousPiercing { loop_name: lp.name.to_string(), s });
            }
            found.push(Piercing {
                patch: pi,
                s,
                t,
                tbar: tb,
                orientation: sign(det),
                height: sign(ss.point[axis] - cs.point[axis]),
            });
        }
    }
    found.sort_by(|a, b| a.patch.cmp(&b.patch).then(a.s.total_cmp(&b.s)));
    Ok(found)
}

fn newton(lp: &Loop, patch: &crate::geometry::Patch, keep: &[usize; 3], mut x: [f64; 3], tol: f64) -> Option<[f64; 3]> {
    let residual = |x: &[f64; 3]| {
        let ss = eval_patch(patch, x[0], x[1]);
        let cs = eval_curve(lp, x[2]);
        let r: [f64; 3] = core::array::from_fn(|c| ss.point[keep[c]] - cs.point[keep[c]]);
        (r, ss, cs)
    };
    let (mut r, mut ss, mut cs) = residual(&x);
    for _ in 0..60 {
        let rn = norm(r);
        if rn < tol {
            return Some(x);
        }
        let m: [[f64; 3]; 3] =
            core::array::from_fn(|c| [ss.d_t[keep[c]], ss.d_tbar[keep[c]], -cs.tangent[keep[c]]]);
        let step = solve3(m, r)?;
        let mut lambda = 1.0;
        loop {
            let trial: [f64; 3] = core::array::from_fn(|i| x[i] - lambda * step[i]);
            let (rt, st, ct) = residual(&trial);
            if norm(rt) < rn || lambda < 1e-4 {
                x = trial;
                r = rt;
                ss = st;
                cs = ct;
                break;
            }
            lambda *= 0.5;
        }
        if x.iter().any(|v| !v.is_finite()) || x[0] < -1.0 || x[0] > 2.0 {
            return None;
        }
    }
    let rn = norm(r);
    (rn < tol).then_some(x)
}

/// `sum orientation * height` over the piercings of one projection.
pub fn projected_linking(lp: &Loop, surface: &Surface, axis: usize, settings: &PiercingSettings) -> Result<i64> {
    Ok(find_piercings(lp, surface, axis, settings)?.iter().map(|p| p.orientation * p.height).sum())
}

/// Linking number of a loop with a surface: the signed count along the time axis.
pub fn lk_loop_surface(lp: &Loop, surface: &Surface, settings: &PiercingSettings) -> Result<i64> {
    projected_linking(lp, surface, 0, settings)
}

pub fn lk_hyperlink_surface(link: &Hyperlink, surface: &Surface, settings: &PiercingSettings) -> Result<i64> {
    link.components.iter().map(|lp| lk_loop_surface(lp, surface, settings)).sum()
}

/// Unrounded Gauss double integral of the spatial projections.
pub fn gauss_linking_value(l1: &Loop, l2: &Loop, settings: &QuadSettings) -> Result<crate::quadrature::QuadResult<f64>> {
    let f = |x: &[f64; 2]| {
        let a = eval_curve(l1, x[0]);
        let b = eval_curve(l2, x[1]);
        let r = [a.point[1] - b.point[1], a.point[2] - b.point[2], a.point[3] - b.point[3]];
        let ta = [a.tangent[1], a.tangent[2], a.tangent[3]];
        let tb = [b.tangent[1], b.tangent[2], b.tangent[3]];
        let d2 = dot(r, r);
        dot(r, cross(ta, tb)) / (d2 * sqrt(d2)) / (4.0 * PI)
    };
    integrate_unit_cube(f, settings)
}

/// Gauss linking number of the spatial projections, rounded.
pub fn gauss_linking_spatial(l1: &Loop, l2: &Loop, settings: &QuadSettings) -> Result<i64> {
    let q = gauss_linking_value(l1, l2, settings)?;
    let nearest = round(q.value);
    let residual = abs(q.value - nearest);
    if residual >= 0.05 || !q.converged {
        return Err(Error::InsufficientResolution {
            residual,
            hint: format!("raise base_points_per_axis above {}", settings.base_points_per_axis),
        });
    }
    Ok(nearest as i64)
}

/// Default kappa schedule of the convergence sweeps.
pub const DEFAULT_SCHEDULE: [f64; 5] = [5.0, 10.0, 20.0, 40.0, 80.0];

pub fn default_schedule() -> Vec<Kappa> {
    DEFAULT_SCHEDULE.iter().map(|&k| Kappa::new(k).expect("positive")).collect()
}

/// Outcome of a hyperlinking-number sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SkSweep {
    pub value: i64,
    /// `I(kappa) / 4 pi` at each kappa, with the rounded value as reference.
    pub table: ConvergenceTable<f64>,
}

/// `sum_v sk(l, rho^v)`: the limit of `I(kappa) / 4 pi` along `schedule`, rounded.
///
/// Fails when the last ratio is 0.1 or more from an integer or when the
/// distance to that integer is not non-increasing over the last three kappas.
/// Distances below `settings.abs_tol` count as settled.
pub fn sk_hyperlink(lp: &Loop, link: &Hyperlink, schedule: &[Kappa], settings: &QuadSettings) -> Result<SkSweep> {
    let raw = run_schedule(
        |k| {
            let q = wilson_exponent(lp, link, k, settings)?;
            Ok((q.value / (4.0 * PI), q.error_estimate / (4.0 * PI)))
        },
        schedule,
        None,
    )?;
    if let Some(e) = raw.rows.iter().find_map(|r| r.failure.clone()) {
        return Err(e);
    }
    let last = raw.rows.last().and_then(|r| r.value).ok_or(Error::EmptySchedule)?;
    let nearest = round(last);
    let table = run_schedule(
        |k| {
            let row = raw.rows.iter().find(|r| r.kappa == k).expect("same schedule");
            Ok((row.value.unwrap_or(f64::NAN), row.error_estimate))
        },
        schedule,
        Some(nearest),
    )?;
    let residual = abs(last - nearest);
    let settled = residual <= settings.abs_tol || table.tail_monotone();
    if residual >= 0.1 || (schedule.len() >= 3 && !settled) {
        return Err(Error::InsufficientResolution {
            residual,
            hint: "extend the kappa schedule".into(),
        });
    }
    Ok(SkSweep { value: nearest as i64, table })
}

/// Pairwise hyperlinking number `sk(l, rho)`.
pub fn sk_pair(lp: &Loop, other: &Loop, schedule: &[Kappa], settings: &QuadSettings) -> Result<SkSweep> {
    let link = Hyperlink::new(crate::geometry::Role::Geometric, alloc::vec![other.clone()]);
    sk_hyperlink(lp, &link, schedule, settings)
}
