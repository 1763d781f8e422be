//! Phase-portrait rendering as a minimal SVG 1.1 subset: `svg`, `g`,
//! `polyline`, `line` and `text` elements only, no timestamps or other
//! non-deterministic content.

use std::fmt::Write;

use chua_dual::Trajectory;

use crate::csv::CsvMode;
use crate::error::CliError;

/// Pair of state components to plot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Projection {
    Xy,
    Xz,
    Yz,
}

impl Projection {
    fn indices(self) -> (usize, usize) {
        match self {
            Projection::Xy => (0, 1),
            Projection::Xz => (0, 2),
            Projection::Yz => (1, 2),
        }
    }

    fn labels(self, mode: CsvMode) -> (&'static str, &'static str) {
        let names = match mode {
            CsvMode::Dimensionless => ["x", "y", "z"],
            CsvMode::Physical => ["i1 (mA)", "i2 (mA)", "uC (V)"],
        };
        let (ix, iy) = self.indices();
        (names[ix], names[iy])
    }
}

/// Data range with a 5% margin on each side; degenerate ranges are padded
/// so a constant trajectory still renders.
fn padded(lo: f64, hi: f64) -> (f64, f64) {
    let span = hi - lo;
    if span > 0.0 {
        (lo - 0.05 * span, hi + 0.05 * span)
    } else {
        (lo - 0.5, hi + 0.5)
    }
}

/// Renders the projected trajectory as one polyline with labeled axes.
pub fn render_svg(
    traj: &Trajectory,
    projection: Projection,
    size: (u32, u32),
    mode: CsvMode,
) -> Result<String, CliError> {
    if traj.is_empty() {
        return Err(CliError::Usage("cannot render an empty trajectory".into()));
    }
    let (w, h) = (size.0 as f64, size.1 as f64);
    if size.0 < 120 || size.1 < 90 {
        return Err(CliError::Usage(format!(
            "svg size {}x{} is too small to label",
            size.0, size.1
        )));
    }
    let (ix, iy) = projection.indices();
    let (x_label, y_label) = projection.labels(mode);

    let mut x_lo = f64::INFINITY;
    let mut x_hi = f64::NEG_INFINITY;
    let mut y_lo = f64::INFINITY;
    let mut y_hi = f64::NEG_INFINITY;
    for s in traj.states() {
        x_lo = x_lo.min(s[ix]);
        x_hi = x_hi.max(s[ix]);
        y_lo = y_lo.min(s[iy]);
        y_hi = y_hi.max(s[iy]);
    }
    let (x_lo, x_hi) = padded(x_lo, x_hi);
    let (y_lo, y_hi) = padded(y_lo, y_hi);

    let (left, right, top, bottom) = (55.0, w - 15.0, 15.0, h - 40.0);
    let px = |v: f64| left + (v - x_lo) / (x_hi - x_lo) * (right - left);
    let py = |v: f64| bottom - (v - y_lo) / (y_hi - y_lo) * (bottom - top);

    let mut points = String::with_capacity(traj.len() * 14);
    for s in traj.states() {
        if !points.is_empty() {
            points.push(' ');
        }
        write!(points, "{:.2},{:.2}", px(s[ix]), py(s[iy])).expect("writing to a string");
    }

    let mut out = String::with_capacity(points.len() + 1024);
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        size.0, size.1, size.0, size.1
    )
    .expect("writing to a string");
    writeln!(out, "  <g stroke=\"#555555\" stroke-width=\"1\">").expect("writing to a string");
    writeln!(
        out,
        "    <line x1=\"{left}\" y1=\"{bottom}\" x2=\"{right}\" y2=\"{bottom}\"/>"
    )
    .expect("writing to a string");
    writeln!(
        out,
        "    <line x1=\"{left}\" y1=\"{bottom}\" x2=\"{left}\" y2=\"{top}\"/>"
    )
    .expect("writing to a string");
    writeln!(out, "  </g>").expect("writing to a string");
    writeln!(
        out,
        "  <text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\" font-size=\"13\">{}</text>",
        0.5 * (left + right),
        h - 12.0,
        x_label
    )
    .expect("writing to a string");
    writeln!(
        out,
        "  <text x=\"14\" y=\"{0:.1}\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 14 {0:.1})\">{1}</text>",
        0.5 * (top + bottom),
        y_label
    )
    .expect("writing to a string");
    writeln!(
        out,
        "  <polyline fill=\"none\" stroke=\"#1f4e79\" stroke-width=\"0.8\" points=\"{points}\"/>"
    )
    .expect("writing to a string");
    out.push_str("</svg>\n");
    Ok(out)
}
