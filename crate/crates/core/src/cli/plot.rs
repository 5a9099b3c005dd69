//! Self-contained SVG rendering of sweep results on log-log axes.

use std::fmt::Write;

use crate::cli::results::ResultsData;
use crate::error::{Error, Result};

const WIDTH: f64 = 760.0;
const HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 80.0;
const MARGIN_RIGHT: f64 = 170.0;
const MARGIN_TOP: f64 = 24.0;
const MARGIN_BOTTOM: f64 = 56.0;

const PALETTE: [&str; 5] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"];

/// Integer decade bounds covering all of `values`, widened when degenerate
/// so the mapped span never collapses.
fn decade_bounds(values: impl Iterator<Item = f64>) -> (i32, i32) {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    let mut lo = lo.log10().floor() as i32;
    let mut hi = hi.log10().ceil() as i32;
    if lo == hi {
        lo -= 1;
        hi += 1;
    }
    (lo, hi)
}

/// Renders one curve per estimator column on log-log axes with decade grid
/// lines. Data sets with a single grid point draw point markers instead of
/// line segments. The output embeds everything it needs.
pub fn render_loglog_svg(data: &ResultsData) -> Result<String> {
    for &s in &data.sigma2 {
        if !(s > 0.0) || !s.is_finite() {
            return Err(Error::Validation(format!(
                "log-log plot requires positive finite sigma2 values, found {s}"
            )));
        }
    }
    for (name, series) in data.names.iter().zip(&data.series) {
        for &v in series {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Validation(format!(
                    "log-log plot requires positive finite values, found {v} in column {name}"
                )));
            }
        }
    }

    let (x_lo, x_hi) = decade_bounds(data.sigma2.iter().copied());
    let (y_lo, y_hi) = decade_bounds(data.series.iter().flatten().copied());

    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let to_x = |v: f64| MARGIN_LEFT + (v.log10() - x_lo as f64) / (x_hi - x_lo) as f64 * plot_w;
    let to_y = |v: f64| MARGIN_TOP + (y_hi as f64 - v.log10()) / (y_hi - y_lo) as f64 * plot_h;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    );
    let _ = writeln!(svg, "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"#ffffff\"/>");

    // decade grid and tick labels
    for e in x_lo..=x_hi {
        let x = MARGIN_LEFT + (e - x_lo) as f64 / (x_hi - x_lo) as f64 * plot_w;
        let _ = writeln!(
            svg,
            "<line x1=\"{x:.2}\" y1=\"{MARGIN_TOP}\" x2=\"{x:.2}\" y2=\"{:.2}\" stroke=\"#dddddd\"/>",
            MARGIN_TOP + plot_h
        );
        let _ = writeln!(
            svg,
            "<text x=\"{x:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">1e{e}</text>",
            MARGIN_TOP + plot_h + 18.0
        );
    }
    for e in y_lo..=y_hi {
        let y = MARGIN_TOP + (y_hi - e) as f64 / (y_hi - y_lo) as f64 * plot_h;
        let _ = writeln!(
            svg,
            "<line x1=\"{MARGIN_LEFT}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\" stroke=\"#dddddd\"/>",
            MARGIN_LEFT + plot_w
        );
        let _ = writeln!(
            svg,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">1e{e}</text>",
            MARGIN_LEFT - 8.0,
            y + 4.0
        );
    }

    let _ = writeln!(
        svg,
        "<rect x=\"{MARGIN_LEFT}\" y=\"{MARGIN_TOP}\" width=\"{plot_w:.2}\" height=\"{plot_h:.2}\" fill=\"none\" stroke=\"#000000\"/>"
    );
    let _ = writeln!(
        svg,
        "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">sigma2</text>",
        MARGIN_LEFT + plot_w / 2.0,
        HEIGHT - 14.0
    );
    let _ = writeln!(
        svg,
        "<text x=\"20\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 20 {:.2})\">average BMSE</text>",
        MARGIN_TOP + plot_h / 2.0,
        MARGIN_TOP + plot_h / 2.0
    );

    let single_point = data.sigma2.len() == 1;
    for (j, (name, series)) in data.names.iter().zip(&data.series).enumerate() {
        let color = PALETTE[j % PALETTE.len()];
        if single_point {
            for (&s, &v) in data.sigma2.iter().zip(series) {
                let _ = writeln!(
                    svg,
                    "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3.5\" fill=\"{color}\"/>",
                    to_x(s),
                    to_y(v)
                );
            }
        } else {
            let points: Vec<String> = data
                .sigma2
                .iter()
                .zip(series)
                .map(|(&s, &v)| format!("{:.2},{:.2}", to_x(s), to_y(v)))
                .collect();
            let _ = writeln!(
                svg,
                "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>",
                points.join(" ")
            );
        }

        // legend entry
        let ly = MARGIN_TOP + 14.0 + j as f64 * 20.0;
        let lx = WIDTH - MARGIN_RIGHT + 16.0;
        let _ = writeln!(
            svg,
            "<line x1=\"{lx:.2}\" y1=\"{ly:.2}\" x2=\"{:.2}\" y2=\"{ly:.2}\" stroke=\"{color}\" stroke-width=\"2\"/>",
            lx + 22.0
        );
        let _ = writeln!(
            svg,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\">{name}</text>",
            lx + 28.0,
            ly + 4.0
        );
    }

    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(points: usize) -> ResultsData {
        ResultsData {
            names: vec!["blue".into(), "rbwlue".into()],
            sigma2: (0..points).map(|i| 10f64.powi(i as i32 - 2)).collect(),
            series: vec![
                (0..points).map(|i| 0.5 * 10f64.powi(i as i32 - 2)).collect(),
                (0..points).map(|i| 0.01 * 10f64.powi(i as i32 - 2)).collect(),
            ],
        }
    }

    #[test]
    fn multi_point_plots_use_one_polyline_per_series() {
        let svg = render_loglog_svg(&data(5)).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert_eq!(svg.matches("<circle").count(), 0);
        assert!(svg.contains(">blue</text>"));
        assert!(svg.contains(">rbwlue</text>"));
        assert!(svg.contains("1e-2"));
        assert!(!svg.contains("http://") || svg.contains("xmlns"), "only the xmlns may reference a URL");
    }

    #[test]
    fn single_point_plots_use_markers() {
        let svg = render_loglog_svg(&data(1)).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 0);
        assert_eq!(svg.matches("<circle").count(), 2);
    }

    #[test]
    fn nonpositive_values_cannot_be_plotted() {
        let mut d = data(3);
        d.series[0][1] = 0.0;
        assert!(matches!(render_loglog_svg(&d), Err(Error::Validation(_))));
        let mut d = data(3);
        d.series[1][0] = -1.0;
        assert!(render_loglog_svg(&d).is_err());
    }

    #[test]
    fn output_is_deterministic() {
        let a = render_loglog_svg(&data(4)).unwrap();
        let b = render_loglog_svg(&data(4)).unwrap();
        assert_eq!(a, b);
    }
}
