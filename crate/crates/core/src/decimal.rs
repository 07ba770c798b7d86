//! Fixed decimal formatting for every floating-point value written to disk.

/// Twelve significant digits in scientific notation; `-0` prints as `0`.
pub fn sig12(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.11e}")
}
