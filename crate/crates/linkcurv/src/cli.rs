//! Command-line driver.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use linkcurv_core::classical::total_curvature_surface;
use linkcurv_core::invariants::{
    find_piercings, gauss_linking_spatial, lk_hyperlink_surface, projected_linking, sk_hyperlink, PiercingSettings,
};
use linkcurv_core::kernels::Kappa;
use linkcurv_core::liealg::AlgebraElement;
use linkcurv_core::pathintegral::{convergence_study, f_hat_operator, z_observable, FHat, Scene, StudyOptions};
use linkcurv_core::quadrature::QuadSettings;
use linkcurv_core::Error;

use crate::connection::parse_connection;
use crate::report::{study_rows, write_convergence_csv, write_plot_csv};
use crate::scene::parse_scene;

#[derive(Debug, Parser)]
#[command(name = "linkcurv", version, about = "Linking invariants and regularized curvature of hyperlinks in R^4")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check time-likeness and surface disjointness.
    Validate { scene: PathBuf },
    /// Linking number of the geometric hyperlink with the surface.
    Lk { scene: PathBuf },
    /// Hyperlinking numbers of each matter loop with the geometric hyperlink.
    Sk { scene: PathBuf },
    /// Wilson loop observable.
    Z { scene: PathBuf },
    /// Limiting curvature operator.
    Fhat { scene: PathBuf },
    /// Regularized terms along the kappa schedule, written as CSV.
    Converge { scene: PathBuf },
    /// Total curvature of a connection over the scene's surface.
    Classical {
        scene: PathBuf,
        #[arg(long)]
        connection: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct Flags {
    /// Comma-separated increasing kappa schedule.
    #[arg(long, global = true, value_delimiter = ',', default_value = "5,10,20,40,80")]
    pub kappa: Vec<f64>,
    /// Base points per axis of the quadrature grids.
    #[arg(long, global = true)]
    pub grid: Option<usize>,
    /// Relative quadrature tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Print independent cross-checks next to the exact invariants.
    #[arg(long, global = true)]
    pub oracle: bool,
    /// Directory receiving CSV output.
    #[arg(long, global = true, default_value = ".")]
    pub out: PathBuf,
    /// Seed of the quasi-random fallback.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    NonConvergence(String),
    #[error(transparent)]
    Other(#[from] anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::NonConvergence(_) => 3,
            CliError::Other(_) => 1,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidGeometry(_)
            | Error::DegenerateIndex(..)
            | Error::InvalidAxis(_)
            | Error::InvalidSpin(_)
            | Error::AmbiguousPiercing { .. }
            | Error::UncoloredMatter(_)
            | Error::InvalidKappa(_)
            | Error::EmptySchedule
            | Error::InvalidSettings(_) => CliError::Validation(e.to_string()),
            Error::NonConvergence { .. } | Error::InsufficientResolution { .. } => {
                CliError::NonConvergence(e.to_string())
            }
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Other(e.into())
    }
}

impl Flags {
    fn settings(&self) -> QuadSettings {
        let mut s = QuadSettings::default();
        if let Some(g) = self.grid {
            s.base_points_per_axis = g;
        }
        if let Some(t) = self.tol {
            s.rel_tol = t;
        }
        if let Some(seed) = self.seed {
            s.seed = seed;
        }
        s
    }

    fn schedule(&self) -> Result<Vec<Kappa>, CliError> {
        let ks = self.kappa.iter().map(|&k| Kappa::new(k)).collect::<Result<Vec<_>, _>>()?;
        if ks.is_empty() {
            return Err(Error::EmptySchedule.into());
        }
        if ks.windows(2).any(|w| w[1].value() <= w[0].value()) {
            return Err(CliError::Validation("kappa schedule must be strictly increasing".into()));
        }
        Ok(ks)
    }
}

fn load(path: &Path) -> Result<Scene, CliError> {
    parse_scene(path).map_err(|d| CliError::Validation(format!("{}:{d}", path.display())))
}

fn algebra(e: &AlgebraElement) -> String {
    let v = |x: &[f64; 3]| format!("[{:.9}, {:.9}, {:.9}]", x[0], x[1], x[2]);
    format!("plus {} minus {}", v(&e.plus), v(&e.minus))
}

/// Runs one command, writing human-readable output to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let flags = &cli.flags;
    let settings = flags.settings();
    settings.validate()?;
    let piercing = PiercingSettings::default();
    match &cli.command {
        Command::Validate { scene } => {
            let scene = load(scene)?;
            writeln!(
                out,
                "matter loops {}, geometric loops {}, patches {}, charge {}",
                scene.matter.components.len(),
                scene.geometric.components.len(),
                scene.surface.patches.len(),
                scene.charge
            )?;
            writeln!(out, "time-like: ok")?;
            for (u, lp) in scene.matter.components.iter().enumerate() {
                match scene.colors.get(u).copied().flatten() {
                    Some(c) => writeln!(out, "{}: color ({}, {})", lp.name, c.plus, c.minus)?,
                    None => writeln!(out, "{}: uncolored", lp.name)?,
                }
            }
            if !scene.surface.is_empty() {
                for lp in &scene.geometric.components {
                    let d = linkcurv_core::geometry::min_distance(lp, &scene.surface, 128);
                    writeln!(out, "{}: distance to surface {d:.6}", lp.name)?;
                }
            }
        }
        Command::Lk { scene } => {
            let scene = load(scene)?;
            let lk = lk_hyperlink_surface(&scene.geometric, &scene.surface, &piercing)?;
            writeln!(out, "lk = {lk}")?;
            writeln!(out, "{:<12} {:<12} {:>10} {:>10} {:>10} {:>6} {:>6}", "loop", "patch", "s", "t", "tbar", "orient", "height")?;
            for lp in &scene.geometric.components {
                for p in find_piercings(lp, &scene.surface, 0, &piercing)? {
                    writeln!(
                        out,
                        "{:<12} {:<12} {:>10.6} {:>10.6} {:>10.6} {:>6} {:>6}",
                        lp.name, scene.surface.patches[p.patch].name, p.s, p.t, p.tbar, p.orientation, p.height
                    )?;
                }
            }
            if flags.oracle {
                for axis in 1..4 {
                    let v: i64 = scene
                        .geometric
                        .components
                        .iter()
                        .map(|lp| projected_linking(lp, &scene.surface, axis, &piercing))
                        .sum::<Result<i64, _>>()?;
                    let verdict = if v == lk { "agrees" } else { "DISAGREES" };
                    writeln!(out, "oracle: projection {axis} count {v} ({verdict})")?;
                }
            }
        }
        Command::Sk { scene } => {
            let scene = load(scene)?;
            let schedule = flags.schedule()?;
            for lp in &scene.matter.components {
                let sweep = sk_hyperlink(lp, &scene.geometric, &schedule, &settings)?;
                for r in &sweep.table.rows {
                    writeln!(
                        out,
                        "{} kappa {:>6} I/4pi {:.9} err {:.2e}",
                        lp.name,
                        r.kappa.value(),
                        r.value.unwrap_or(f64::NAN),
                        r.error_estimate
                    )?;
                }
                writeln!(out, "sk({}) = {}", lp.name, sweep.value)?;
                if flags.oracle {
                    for g in &scene.geometric.components {
                        let gl = gauss_linking_spatial(lp, g, &settings)?;
                        writeln!(out, "oracle: gauss linking({}, {}) = {gl}", lp.name, g.name)?;
                    }
                }
            }
        }
        Command::Z { scene } => {
            let scene = load(scene)?;
            let z = z_observable(&scene, &flags.schedule()?, &settings)?;
            for (lp, sk) in scene.matter.components.iter().zip(&z.sk) {
                writeln!(out, "sk({}) = {sk}", lp.name)?;
            }
            writeln!(out, "Z = {:.12}", z.value)?;
        }
        Command::Fhat { scene } => {
            let scene = load(scene)?;
            match f_hat_operator(&scene, &flags.schedule()?, &settings, &piercing)? {
                FHat::Identity { z } => {
                    writeln!(out, "surface is empty: F = identity")?;
                    writeln!(out, "Z = {z:.12}")?;
                }
                FHat::Operator { value, lk, z, sk } => {
                    writeln!(out, "lk = {lk}")?;
                    writeln!(out, "sk = {sk:?}")?;
                    writeln!(out, "Z = {z:.12}")?;
                    writeln!(out, "coefficient = {:.12} {:+.12}i", value.coefficient.re, value.coefficient.im)?;
                    writeln!(out, "algebra = {}", algebra(&value.algebra))?;
                }
            }
        }
        Command::Converge { scene } => {
            let scene = load(scene)?;
            let schedule = flags.schedule()?;
            let options = StudyOptions { settings, piercing, skip_c: false };
            let study = convergence_study(&scene, &schedule, &options)?;
            let rows = study_rows(&study);
            std::fs::create_dir_all(&flags.out).with_context(|| format!("creating {}", flags.out.display()))?;
            let table_path = flags.out.join("convergence.csv");
            let plot_path = flags.out.join("convergence_plot.csv");
            let file = |p: &Path| File::create(p).with_context(|| format!("creating {}", p.display()));
            write_convergence_csv(&rows, BufWriter::new(file(&table_path)?)).context("writing table")?;
            write_plot_csv(&rows, BufWriter::new(file(&plot_path)?)).context("writing plot data")?;
            writeln!(out, "lk = {}", study.lk)?;
            let mut failed = Vec::new();
            for (name, table) in
                [("a_sum", &study.a_sum), ("b", &study.b), ("c_sum", &study.c_sum), ("total", &study.total)]
            {
                let Some(t) = table else { continue };
                if let Some(r) = t.final_row() {
                    writeln!(out, "{name}: abs_err {:.3e} at kappa {}", r.abs_error.unwrap_or(f64::NAN), r.kappa.value())?;
                }
                if t.any_failure() {
                    failed.push(name.to_string());
                }
            }
            for w in &study.wilson {
                match w.sk {
                    Some(sk) => writeln!(out, "sk({}) = {sk}", w.name)?,
                    None => failed.push(format!("wilson:{}", w.name)),
                }
            }
            writeln!(out, "wrote {} and {}", table_path.display(), plot_path.display())?;
            if !failed.is_empty() {
                return Err(CliError::NonConvergence(format!("no convergence for {}", failed.join(", "))));
            }
        }
        Command::Classical { scene, connection } => {
            let scene = load(scene)?;
            let omega = parse_connection(connection)
                .map_err(|d| CliError::Validation(format!("{}:{d}", connection.display())))?;
            let (f, q) = total_curvature_surface(&omega, &scene.surface, &settings)?;
            writeln!(out, "F_S = {}", algebra(&f))?;
            writeln!(out, "error estimate {:.3e}, evaluations {}", q.error_estimate, q.evaluations)?;
            if !q.converged {
                return Err(Error::NonConvergence { value: f.norm(), error: q.error_estimate, evaluations: q.evaluations }.into());
            }
        }
    }
    Ok(())
}
