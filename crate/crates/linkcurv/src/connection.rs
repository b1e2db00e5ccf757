//! Connection files for the classical curvature integral.
//!
//! ```toml
//! mode = "exact"            # or "finite-difference"
//!
//! [[terms]]
//! component = 1             # spatial index i of A^i_{ab}
//! pair = [0, 1]             # (a, b); (b, a) stores the negated term
//! coeff = 0.5
//! powers = [0, 1, 0, 0]     # optional, monomial exponents
//! gamma = 0.2               # optional Gaussian envelope exp(-gamma |x - center|^2)
//! center = [0.0, 0.0, 0.0, 0.0]
//! ```

use linkcurv_core::classical::{ConnectionField, DerivativeMode, FieldTerm, ScalarField};
use serde::Deserialize;
use toml::Spanned;

use crate::scene::Diagnostic;

#[derive(Clone, Copy, Default, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum RawMode {
    #[default]
    Exact,
    FiniteDifference,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    component: Spanned<usize>,
    pair: [usize; 2],
    coeff: f64,
    #[serde(default)]
    powers: [u32; 4],
    #[serde(default)]
    gamma: f64,
    #[serde(default)]
    center: [f64; 4],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConnection {
    #[serde(default)]
    mode: RawMode,
    #[serde(default)]
    terms: Vec<RawTerm>,
}

pub fn parse_connection_str(src: &str) -> Result<ConnectionField, Diagnostic> {
    let located = |span, message: String| Diagnostic::at(src, span, message);
    let raw: RawConnection = toml::from_str(src).map_err(|e| located(e.span(), e.message().trim_end().to_string()))?;
    let mode = match raw.mode {
        RawMode::Exact => DerivativeMode::Exact,
        RawMode::FiniteDifference => DerivativeMode::FiniteDifference,
    };
    let mut omega = ConnectionField::new().with_mode(mode);
    for t in raw.terms {
        if !(t.gamma >= 0.0) {
            return Err(located(Some(t.component.span()), format!("gamma must be non-negative, got {}", t.gamma)));
        }
        let term = FieldTerm { coeff: t.coeff, powers: t.powers, gamma: t.gamma, center: t.center };
        omega
            .add(*t.component.get_ref(), t.pair[0], t.pair[1], ScalarField::new(vec![term]))
            .map_err(|e| located(Some(t.component.span()), e.to_string()))?;
    }
    Ok(omega)
}

pub fn parse_connection(path: &std::path::Path) -> Result<ConnectionField, Diagnostic> {
    let src = std::fs::read_to_string(path)
        .map_err(|e| Diagnostic::at("", None, format!("cannot read {}: {e}", path.display())))?;
    parse_connection_str(&src)
}
