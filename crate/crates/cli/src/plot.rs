//! Minimal self-contained SVG line plots.
//!
//! Hand-rolled on purpose: the plots are simple (one polyline, reference
//! lines, ticks) and emitting the SVG directly keeps the binary free of a
//! plotting stack. Output is deterministic for identical inputs.

const WIDTH: f64 = 960.0;
const HEIGHT: f64 = 600.0;
const MARGIN_LEFT: f64 = 85.0;
const MARGIN_RIGHT: f64 = 30.0;
const MARGIN_TOP: f64 = 50.0;
const MARGIN_BOTTOM: f64 = 65.0;

/// Styling and annotation for [`line_plot`].
pub struct PlotConfig<'a> {
    pub title: &'a str,
    pub x_label: &'a str,
    pub y_label: &'a str,
    /// Dashed vertical reference lines (drawn where they fall in range).
    pub v_lines: &'a [f64],
    /// Solid horizontal reference lines; also included in the y auto-fit.
    pub h_lines: &'a [f64],
}

fn fmt_tick(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let formatted = format!("{v:.10}");
    let trimmed = formatted.trim_end_matches('0').trim_end_matches('.');
    trimmed.to_string()
}

/// Tick positions covering `[lo, hi]` at a round step near `span / 5`.
fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    let span = hi - lo;
    let raw = span / 5.0;
    let magnitude = 10f64.powf(raw.log10().floor());
    let residual = raw / magnitude;
    let step = magnitude
        * if residual < 1.5 {
            1.0
        } else if residual < 3.5 {
            2.0
        } else if residual < 7.5 {
            5.0
        } else {
            10.0
        };
    let mut v = (lo / step).ceil() * step;
    let mut out = Vec::new();
    while v <= hi + 1e-9 * span {
        // Snap values like 0.30000000000000004 back onto the grid.
        out.push((v / step).round() * step);
        v += step;
    }
    out
}

/// Renders one `(xs, ys)` series as an SVG line chart with auto-fitted axes.
/// Non-finite samples are skipped.
pub fn line_plot(config: &PlotConfig<'_>, xs: &[f64], ys: &[f64]) -> String {
    let finite: Vec<(f64, f64)> = xs
        .iter()
        .zip(ys)
        .filter(|(x, y)| x.is_finite() && y.is_finite())
        .map(|(&x, &y)| (x, y))
        .collect();
    let (x_lo, x_hi) = finite
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &(x, _)| {
            (lo.min(x), hi.max(x))
        });
    let (mut y_lo, mut y_hi) = finite
        .iter()
        .map(|&(_, y)| y)
        .chain(config.h_lines.iter().copied())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), y| {
            (lo.min(y), hi.max(y))
        });
    if !x_lo.is_finite() || x_lo >= x_hi {
        return format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\">\
             <text x=\"20\" y=\"40\">no finite data to plot</text></svg>\n"
        );
    }
    if y_lo == y_hi {
        y_lo -= 1.0;
        y_hi += 1.0;
    }
    let pad = 0.05 * (y_hi - y_lo);
    y_lo -= pad;
    y_hi += pad;

    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let sx = move |x: f64| MARGIN_LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w;
    let sy = move |y: f64| MARGIN_TOP + (y_hi - y) / (y_hi - y_lo) * plot_h;

    let mut svg = String::with_capacity(16 * 1024);
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    // Axis ticks with labels and light grid lines.
    for tx in ticks(x_lo, x_hi) {
        let px = sx(tx);
        svg.push_str(&format!(
            "<line x1=\"{px:.2}\" y1=\"{:.2}\" x2=\"{px:.2}\" y2=\"{:.2}\" \
             stroke=\"#eeeeee\" stroke-width=\"1\"/>\n",
            MARGIN_TOP,
            MARGIN_TOP + plot_h
        ));
        svg.push_str(&format!(
            "<text x=\"{px:.2}\" y=\"{:.2}\" font-size=\"13\" text-anchor=\"middle\" \
             fill=\"#333333\">{}</text>\n",
            MARGIN_TOP + plot_h + 20.0,
            fmt_tick(tx)
        ));
    }
    for ty in ticks(y_lo, y_hi) {
        let py = sy(ty);
        svg.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{py:.2}\" x2=\"{:.2}\" y2=\"{py:.2}\" \
             stroke=\"#eeeeee\" stroke-width=\"1\"/>\n",
            MARGIN_LEFT,
            MARGIN_LEFT + plot_w
        ));
        let label_y = py + 4.0;
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{label_y:.2}\" font-size=\"13\" text-anchor=\"end\" \
             fill=\"#333333\">{}</text>\n",
            MARGIN_LEFT - 8.0,
            fmt_tick(ty)
        ));
    }

    // Reference lines.
    for &h in config.h_lines {
        if h >= y_lo && h <= y_hi {
            let py = sy(h);
            svg.push_str(&format!(
                "<line x1=\"{:.2}\" y1=\"{py:.2}\" x2=\"{:.2}\" y2=\"{py:.2}\" \
                 stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n",
                MARGIN_LEFT,
                MARGIN_LEFT + plot_w
            ));
        }
    }
    for &v in config.v_lines {
        if v >= x_lo && v <= x_hi {
            let px = sx(v);
            svg.push_str(&format!(
                "<line x1=\"{px:.2}\" y1=\"{:.2}\" x2=\"{px:.2}\" y2=\"{:.2}\" \
                 stroke=\"#999999\" stroke-width=\"1\" stroke-dasharray=\"6 4\"/>\n",
                MARGIN_TOP,
                MARGIN_TOP + plot_h
            ));
        }
    }

    // The series itself.
    let points: Vec<String> = finite
        .iter()
        .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
        .collect();
    svg.push_str(&format!(
        "<polyline fill=\"none\" stroke=\"#3465a4\" stroke-width=\"1.5\" points=\"{}\"/>\n",
        points.join(" ")
    ));

    // Frame and labels.
    svg.push_str(&format!(
        "<rect x=\"{MARGIN_LEFT}\" y=\"{MARGIN_TOP}\" width=\"{plot_w}\" height=\"{plot_h}\" \
         fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n"
    ));
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"28\" font-size=\"17\" text-anchor=\"middle\" \
         fill=\"#111111\">{}</text>\n",
        MARGIN_LEFT + plot_w / 2.0,
        config.title
    ));
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"14\" text-anchor=\"middle\" \
         fill=\"#111111\">{}</text>\n",
        MARGIN_LEFT + plot_w / 2.0,
        HEIGHT - 15.0,
        config.x_label
    ));
    svg.push_str(&format!(
        "<text x=\"20\" y=\"{:.2}\" font-size=\"14\" text-anchor=\"middle\" \
         transform=\"rotate(-90 20 {:.2})\" fill=\"#111111\">{}</text>\n",
        MARGIN_TOP + plot_h / 2.0,
        MARGIN_TOP + plot_h / 2.0,
        config.y_label
    ));
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn produces_wellformed_svg_with_annotations() {
        let xs: Vec<f64> = (0..100).map(|i| -8.0 + 0.2 * i as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 1.0 + (x / 4.0).sin()).collect();
        let config = PlotConfig {
            title: "demo",
            x_label: "E",
            y_label: "R",
            v_lines: &[-6.0, -4.0, 4.0, 6.0],
            h_lines: &[1.0],
        };
        let svg = line_plot(&config, &xs, &ys);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains("polyline"));
        assert_eq!(svg.matches("stroke-dasharray").count(), 4);
        assert!(svg.contains(">demo<"));
    }

    #[test]
    fn skips_non_finite_samples() {
        let xs = [0.0, 1.0, 2.0, 3.0];
        let ys = [1.0, f64::NAN, 2.0, 1.5];
        let config = PlotConfig {
            title: "t",
            x_label: "x",
            y_label: "y",
            v_lines: &[],
            h_lines: &[],
        };
        let svg = line_plot(&config, &xs, &ys);
        let polyline = svg.lines().find(|l| l.contains("polyline")).unwrap();
        assert_eq!(polyline.matches(',').count(), 3);
    }

    #[test]
    fn ticks_are_round_numbers() {
        let t = ticks(-8.0, 12.0);
        assert!(t.contains(&0.0));
        assert!(t.contains(&4.0) || t.contains(&5.0) || t.contains(&10.0));
        for v in ticks(0.9, 1.7) {
            let s = fmt_tick(v);
            assert!(s.len() <= 6, "tick label {s}");
        }
    }

    #[test]
    fn degenerate_input_still_renders() {
        let config = PlotConfig {
            title: "t",
            x_label: "x",
            y_label: "y",
            v_lines: &[],
            h_lines: &[],
        };
        let svg = line_plot(&config, &[1.0], &[2.0]);
        assert!(svg.starts_with("<svg"));
        let svg = line_plot(&config, &[1.0, 2.0], &[3.0, 3.0]);
        assert!(svg.contains("polyline"));
    }
}
