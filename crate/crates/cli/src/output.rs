//! Data serialization: the fixed CSV schema and JSON, plus file/stdout
//! plumbing with path-carrying errors.

use std::io::Write;
use std::path::Path;

use kgscatter::{SpectrumPoint, SweepResult};

use crate::CliError;

/// Formats a value with twelve significant digits: fixed-point notation for
/// decimal exponents in `[-4, 12)`, scientific otherwise, and the fixed
/// string `0.000000000000` for an exact zero.
pub fn fmt12(x: f64) -> String {
    if x == 0.0 {
        return "0.000000000000".to_string();
    }
    let exp10 = x.abs().log10().floor() as i32;
    if (-4..12).contains(&exp10) {
        let decimals = (11 - exp10).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.11e}")
    }
}

/// The fixed CSV header.
pub const CSV_HEADER: &str = "E,k_L,k_R,regime,R,T,flag";

fn csv_row(point: &SpectrumPoint) -> String {
    format!(
        "{},{},{},{},{},{},{}",
        fmt12(point.e),
        fmt12(point.k_l),
        fmt12(point.k_r),
        point.regime.csv_label(),
        fmt12(point.big_r),
        fmt12(point.big_t),
        if point.conventional { "conv" } else { "" }
    )
}

/// Renders spectrum points as a newline-terminated CSV document.
pub fn points_to_csv(points: &[SpectrumPoint]) -> String {
    let mut out = String::with_capacity(64 * (points.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for point in points {
        out.push_str(&csv_row(point));
        out.push('\n');
    }
    out
}

/// Renders a sweep (points plus metadata) as pretty JSON, newline-terminated.
pub fn sweep_to_json(result: &SweepResult) -> String {
    let mut out = serde_json::to_string_pretty(result).expect("sweep serializes");
    out.push('\n');
    out
}

/// Renders a single point as pretty JSON, newline-terminated.
pub fn point_to_json(point: &SpectrumPoint) -> String {
    let mut out = serde_json::to_string_pretty(point).expect("point serializes");
    out.push('\n');
    out
}

/// Writes `content` to `path`, or to stdout when no path is given.
pub fn write_output(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        Some(path) => std::fs::write(path, content).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => std::io::stdout()
            .write_all(content.as_bytes())
            .map_err(|source| CliError::Io {
                path: "<stdout>".to_string(),
                source,
            }),
    }
}
