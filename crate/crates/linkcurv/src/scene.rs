//! Scene files: TOML with top-level `charge`, `[[loops]]` and `[[surfaces]]`.
//!
//! ```toml
//! charge = 1.0
//!
//! [[loops]]
//! name = "probe"
//! role = "matter"
//! color = { j_plus = "1/2", j_minus = "1/2" }
//! x0 = { constant = 1.0, cos = [0.2], sin = [0.3] }
//! x1 = { cos = [0.5] }
//! x2 = { sin = [0.5] }
//!
//! [[surfaces]]
//! name = "disk"
//! kind = "disk"
//! center = [0.0, 0.0, 0.0, 0.0]
//! u = [0.0, 1.0, 0.0, 0.0]
//! w = [0.0, 0.0, 1.0, 0.0]
//! radius = 2.0
//! ```
//!
//! A `param` surface lists `basis_t`, `basis_tbar` (`polynomial` or
//! `trigonometric`) and one coefficient matrix `x0..x3` per coordinate.

use std::fmt::{self, Write as _};
use std::ops::Range;
use std::path::Path;

use linkcurv_core::geometry::{
    check_patch, min_distance, Basis, Disk, FourierSeries, Hyperlink, Loop, Orientation, ParamPatch, Patch,
    PatchShape, Point4, Role, Surface,
};
use linkcurv_core::liealg::{IrrepSpec, Spin};
use linkcurv_core::pathintegral::Scene;
use serde::Deserialize;
use toml::Spanned;

/// A parse or validation failure, located in the source when possible.
#[derive(Clone, Debug, PartialEq)]
pub struct Diagnostic {
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub message: String,
}

impl Diagnostic {
    pub(crate) fn at(src: &str, span: Option<Range<usize>>, message: impl Into<String>) -> Self {
        let (line, column) = match span {
            Some(r) => {
                let (l, c) = line_col(src, r.start);
                (Some(l), Some(c))
            }
            None => (None, None),
        };
        Diagnostic { line, column, message: message.into() }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.column) {
            (Some(l), Some(c)) => write!(f, "{l}:{c}: {}", self.message),
            _ => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for Diagnostic {}

/// One-based line and column (in characters) of byte offset `pos`.
pub fn line_col(src: &str, pos: usize) -> (usize, usize) {
    let before = &src[..pos.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |s| s.chars().count()) + 1;
    (line, col)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScene {
    charge: f64,
    #[serde(default)]
    loops: Vec<RawLoop>,
    #[serde(default)]
    surfaces: Vec<RawSurface>,
}

#[derive(Clone, Copy, Deserialize, PartialEq)]
#[serde(rename_all = "lowercase")]
enum RawRole {
    Matter,
    Geometric,
}

#[derive(Clone, Copy, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
enum RawOrientation {
    #[default]
    Positive,
    Negative,
}

impl From<RawOrientation> for Orientation {
    fn from(o: RawOrientation) -> Self {
        match o {
            RawOrientation::Positive => Orientation::Positive,
            RawOrientation::Negative => Orientation::Negative,
        }
    }
}

#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSeries {
    #[serde(default)]
    constant: f64,
    #[serde(default)]
    cos: Vec<f64>,
    #[serde(default)]
    sin: Vec<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawColor {
    j_plus: Spanned<String>,
    j_minus: Spanned<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLoop {
    name: Spanned<String>,
    role: RawRole,
    #[serde(default)]
    orientation: RawOrientation,
    color: Option<RawColor>,
    #[serde(default)]
    x0: RawSeries,
    #[serde(default)]
    x1: RawSeries,
    #[serde(default)]
    x2: RawSeries,
    #[serde(default)]
    x3: RawSeries,
}

#[derive(Clone, Copy, Deserialize, PartialEq)]
#[serde(rename_all = "lowercase")]
enum RawKind {
    Disk,
    Param,
}

#[derive(Clone, Copy, Deserialize)]
#[serde(rename_all = "lowercase")]
enum RawBasis {
    Polynomial,
    Trigonometric,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSurface {
    name: Spanned<String>,
    kind: Spanned<RawKind>,
    #[serde(default)]
    orientation: RawOrientation,
    center: Option<[f64; 4]>,
    u: Option<[f64; 4]>,
    w: Option<[f64; 4]>,
    radius: Option<f64>,
    basis_t: Option<RawBasis>,
    basis_tbar: Option<RawBasis>,
    x0: Option<Vec<Vec<f64>>>,
    x1: Option<Vec<Vec<f64>>>,
    x2: Option<Vec<Vec<f64>>>,
    x3: Option<Vec<Vec<f64>>>,
}

fn basis(b: RawBasis) -> Basis {
    match b {
        RawBasis::Polynomial => Basis::Polynomial,
        RawBasis::Trigonometric => Basis::Trigonometric,
    }
}

fn spin(src: &str, s: &Spanned<String>) -> Result<Spin, Diagnostic> {
    s.get_ref()
        .parse::<Spin>()
        .map_err(|e| Diagnostic::at(src, Some(s.span()), e.to_string()))
}

impl RawSurface {
    fn build(self, src: &str) -> Result<Patch, Diagnostic> {
        let span = self.kind.span();
        let kind = *self.kind.get_ref();
        let name = self.name.into_inner();
        let disk_keys = [self.center.is_some(), self.u.is_some(), self.w.is_some(), self.radius.is_some()];
        let coeffs = [self.x0, self.x1, self.x2, self.x3];
        let param_keys = [self.basis_t.is_some(), self.basis_tbar.is_some()]
            .into_iter()
            .chain(coeffs.iter().map(Option::is_some));
        let shape = match kind {
            RawKind::Disk => {
                if param_keys.into_iter().any(|b| b) {
                    return Err(Diagnostic::at(src, Some(span), format!("disk surface {name} has param keys")));
                }
                let (Some(center), Some(u), Some(w), Some(radius)) = (self.center, self.u, self.w, self.radius) else {
                    return Err(Diagnostic::at(
                        src,
                        Some(span),
                        format!("disk surface {name} needs center, u, w and radius"),
                    ));
                };
                PatchShape::Disk(Disk { center: Point4(center), u, w, radius })
            }
            RawKind::Param => {
                if disk_keys.into_iter().any(|b| b) {
                    return Err(Diagnostic::at(src, Some(span), format!("param surface {name} has disk keys")));
                }
                let (Some(bt), Some(btb)) = (self.basis_t, self.basis_tbar) else {
                    return Err(Diagnostic::at(
                        src,
                        Some(span),
                        format!("param surface {name} needs basis_t and basis_tbar"),
                    ));
                };
                let [c0, c1, c2, c3] = coeffs.map(Option::unwrap_or_default);
                PatchShape::Param(ParamPatch { basis_t: basis(bt), basis_tbar: basis(btb), coeffs: [c0, c1, c2, c3] })
            }
        };
        Ok(Patch { name, shape, orientation: self.orientation.into() })
    }
}

/// Parses and validates a scene held in memory.
pub fn parse_scene_str(src: &str) -> Result<Scene, Diagnostic> {
    let raw: RawScene =
        toml::from_str(src).map_err(|e| Diagnostic::at(src, e.span(), e.message().trim_end().to_string()))?;

    let mut spans: Vec<(String, Range<usize>)> = Vec::new();
    let mut record = |name: &Spanned<String>| -> Result<(), Diagnostic> {
        if spans.iter().any(|(n, _)| n == name.get_ref()) {
            return Err(Diagnostic::at(src, Some(name.span()), format!("duplicate identifier {}", name.get_ref())));
        }
        spans.push((name.get_ref().clone(), name.span()));
        Ok(())
    };

    let mut matter = Vec::new();
    let mut colors = Vec::new();
    let mut geometric = Vec::new();
    for raw_loop in raw.loops {
        record(&raw_loop.name)?;
        let span = raw_loop.name.span();
        let series = |s: RawSeries| FourierSeries::new(s.constant, s.cos, s.sin);
        let lp = Loop {
            name: raw_loop.name.get_ref().clone(),
            coords: [series(raw_loop.x0), series(raw_loop.x1), series(raw_loop.x2), series(raw_loop.x3)],
            orientation: raw_loop.orientation.into(),
        };
        lp.check().map_err(|e| Diagnostic::at(src, Some(span.clone()), e.to_string()))?;
        let color = match &raw_loop.color {
            Some(c) => Some(IrrepSpec::new(spin(src, &c.j_plus)?, spin(src, &c.j_minus)?)),
            None => None,
        };
        match raw_loop.role {
            RawRole::Matter => {
                matter.push(lp);
                colors.push(color);
            }
            RawRole::Geometric => {
                if color.is_some() {
                    return Err(Diagnostic::at(src, Some(span), format!("geometric loop {} cannot be colored", lp.name)));
                }
                geometric.push(lp);
            }
        }
    }

    let mut patches = Vec::new();
    for raw_surface in raw.surfaces {
        record(&raw_surface.name)?;
        let span = raw_surface.name.span();
        let patch = raw_surface.build(src)?;
        check_patch(&patch).map_err(|e| Diagnostic::at(src, Some(span), e.to_string()))?;
        patches.push(patch);
    }

    let locate = |name: &str| spans.iter().find(|(n, _)| n == name).map(|(_, s)| s.clone());
    let scene = Scene {
        matter: Hyperlink::new(Role::Matter, matter),
        colors,
        geometric: Hyperlink::new(Role::Geometric, geometric),
        surface: Surface::new(patches),
        charge: raw.charge,
    };
    if let Some(v) = scene.timelike_report().violations.first() {
        return Err(Diagnostic::at(
            src,
            locate(&v.loop_a),
            format!(
                "not time-like: {} at s = {:.6} and {} at s = {:.6} ({:?})",
                v.loop_a, v.s_a, v.loop_b, v.s_b, v.kind
            ),
        ));
    }
    if !scene.surface.is_empty() {
        for lp in &scene.geometric.components {
            let d = min_distance(lp, &scene.surface, 128);
            if d < 1e-6 {
                return Err(Diagnostic::at(src, locate(&lp.name), format!("{} touches the surface", lp.name)));
            }
        }
    }
    scene.validate().map_err(|e| Diagnostic::at(src, None, e.to_string()))?;
    Ok(scene)
}

/// Reads, parses and validates a scene file.
pub fn parse_scene(path: &Path) -> Result<Scene, Diagnostic> {
    let src = std::fs::read_to_string(path)
        .map_err(|e| Diagnostic::at("", None, format!("cannot read {}: {e}", path.display())))?;
    parse_scene_str(&src)
}

fn floats(v: &[f64]) -> String {
    let items: Vec<String> = v.iter().map(|x| format!("{x:?}")).collect();
    format!("[{}]", items.join(", "))
}

fn orientation_key(out: &mut String, o: Orientation) {
    if o == Orientation::Negative {
        out.push_str("orientation = \"negative\"\n");
    }
}

fn write_loop(out: &mut String, lp: &Loop, role: &str, color: Option<IrrepSpec>) {
    let _ = writeln!(out, "\n[[loops]]\nname = {:?}\nrole = \"{role}\"", lp.name);
    orientation_key(out, lp.orientation);
    if let Some(c) = color {
        let _ = writeln!(out, "color = {{ j_plus = \"{}\", j_minus = \"{}\" }}", c.plus, c.minus);
    }
    for (a, s) in lp.coords.iter().enumerate() {
        let mut parts = Vec::new();
        if s.constant != 0.0 {
            parts.push(format!("constant = {:?}", s.constant));
        }
        if !s.cos.is_empty() {
            parts.push(format!("cos = {}", floats(&s.cos)));
        }
        if !s.sin.is_empty() {
            parts.push(format!("sin = {}", floats(&s.sin)));
        }
        if !parts.is_empty() {
            let _ = writeln!(out, "x{a} = {{ {} }}", parts.join(", "));
        }
    }
}

fn basis_name(b: Basis) -> &'static str {
    match b {
        Basis::Polynomial => "polynomial",
        Basis::Trigonometric => "trigonometric",
    }
}

/// Canonical text of a scene; parsing it yields an identical scene.
pub fn serialize_scene(scene: &Scene) -> String {
    let mut out = format!("charge = {:?}\n", scene.charge);
    for (u, lp) in scene.matter.components.iter().enumerate() {
        write_loop(&mut out, lp, "matter", scene.colors.get(u).copied().flatten());
    }
    for lp in &scene.geometric.components {
        write_loop(&mut out, lp, "geometric", None);
    }
    for p in &scene.surface.patches {
        let _ = writeln!(out, "\n[[surfaces]]\nname = {:?}", p.name);
        match &p.shape {
            PatchShape::Disk(d) => {
                out.push_str("kind = \"disk\"\n");
                orientation_key(&mut out, p.orientation);
                let _ = writeln!(out, "center = {}", floats(&d.center.0));
                let _ = writeln!(out, "u = {}", floats(&d.u));
                let _ = writeln!(out, "w = {}", floats(&d.w));
                let _ = writeln!(out, "radius = {:?}", d.radius);
            }
            PatchShape::Param(pp) => {
                out.push_str("kind = \"param\"\n");
                orientation_key(&mut out, p.orientation);
                let _ = writeln!(out, "basis_t = \"{}\"", basis_name(pp.basis_t));
                let _ = writeln!(out, "basis_tbar = \"{}\"", basis_name(pp.basis_tbar));
                for (a, rows) in pp.coeffs.iter().enumerate() {
                    let rows: Vec<String> = rows.iter().map(|r| floats(r)).collect();
                    let _ = writeln!(out, "x{a} = [{}]", rows.join(", "));
                }
            }
        }
    }
    out
}
