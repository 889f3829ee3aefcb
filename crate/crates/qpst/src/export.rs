//! Formatting helpers for file output.
//!
//! Floats are written with 12 significant digits everywhere so CSV/JSON
//! goldens stay stable across platforms and re-parsing reproduces values to
//! the printed precision.

/// Format a float with 12 significant digits (scientific notation).
pub fn fmt_g12(x: f64) -> String {
    format!("{x:.11e}")
}

/// Round a float to 12 significant digits, the precision used for file
/// output.
pub fn round_g12(x: f64) -> f64 {
    fmt_g12(x).parse().expect("formatted float always re-parses")
}
